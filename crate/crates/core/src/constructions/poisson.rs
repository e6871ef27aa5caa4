use std::collections::BTreeMap;

use super::{monomial_name, truncated_monomials, truncated_polynomial};
use crate::algebra::{Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A commutative associative algebra with an antisymmetric bracket
/// satisfying `{xy, z} = x{y, z} + y{x, z}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonData {
    base: StructureAlgebra,
    /// `{e_i, e_j}` at index `i * dim + j`.
    bracket: Vec<Element>,
}

impl PoissonData {
    /// Validates the base and the bracket given on basis pairs.
    pub fn new(base: StructureAlgebra, bracket: Vec<Element>) -> Result<Self> {
        let n = base.dim();
        if !base.is_commutative() {
            return Err(Error::InvalidConstruction(
                "base algebra is not commutative".into(),
            ));
        }
        if !base.is_associative() {
            return Err(Error::InvalidConstruction(
                "base algebra is not associative".into(),
            ));
        }
        if bracket.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: bracket.len(),
            });
        }
        for b in &bracket {
            base.check(b)?;
        }
        let names = base.basis_names().to_vec();
        for i in 0..n {
            for j in 0..=i {
                if bracket[i * n + j] != -&bracket[j * n + i] {
                    return Err(Error::InvalidConstruction(format!(
                        "bracket is not antisymmetric on ({}, {})",
                        names[i], names[j]
                    )));
                }
            }
        }
        let p = PoissonData { base, bracket };
        if let Some((x, y, z)) = p.leibniz_witness() {
            return Err(Error::LeibnizFailure {
                x: names[x].clone(),
                y: names[y].clone(),
                z: names[z].clone(),
            });
        }
        Ok(p)
    }

    /// A bracket given by `(i, j, value)` entries for `i < j`; the rest is
    /// filled in by antisymmetry.
    pub fn from_upper(base: StructureAlgebra, upper: &[(usize, usize, Element)]) -> Result<Self> {
        let n = base.dim();
        let mut bracket = vec![base.zero(); n * n];
        for (i, j, v) in upper {
            if *i >= n || *j >= n || i >= j {
                return Err(Error::InvalidConstruction(format!(
                    "bracket entry ({i}, {j}) must satisfy i < j < {n}"
                )));
            }
            bracket[i * n + j] = v.clone();
            bracket[j * n + i] = -v;
        }
        Self::new(base, bracket)
    }

    pub fn zero_bracket(base: StructureAlgebra) -> Result<Self> {
        let n = base.dim();
        let z = base.zero();
        Self::new(base, vec![z; n * n])
    }

    pub fn base(&self) -> &StructureAlgebra {
        &self.base
    }

    pub fn bracket(&self, u: &Element, v: &Element) -> Result<Element> {
        self.base.check(u)?;
        self.base.check(v)?;
        let n = self.base.dim();
        let mut out = self.base.zero();
        for (i, a) in u.coords().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.coords().iter().enumerate() {
                if !b.is_zero() {
                    out = &out + &self.bracket[i * n + j].scale(&(a * b));
                }
            }
        }
        Ok(out)
    }

    fn leibniz_witness(&self) -> Option<(usize, usize, usize)> {
        let a = &self.base;
        let n = a.dim();
        let br = |u: &Element, v: &Element| self.bracket(u, v).expect("same algebra");
        for x in 0..n {
            for y in 0..n {
                let xy = a.mul(&a.basis(x), &a.basis(y)).expect("basis");
                for z in 0..n {
                    let lhs = br(&xy, &a.basis(z));
                    let r1 = a.mul(&a.basis(x), &self.bracket[y * n + z]).expect("basis");
                    let r2 = a.mul(&a.basis(y), &self.bracket[x * n + z]).expect("basis");
                    if lhs != &r1 + &r2 {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// `a * b = a . b + {a, b}`; the result is checked to satisfy the Kokoris
/// identity, to be flexible, and to have the base algebra as its plus algebra.
pub fn kokoris_from_poisson(p: &PoissonData) -> Result<StructureAlgebra> {
    let base = p.base();
    let n = base.dim();
    let mut entries: Vec<(usize, usize, usize, Scalar)> = base
        .entries()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .collect();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in p.bracket[i * n + j].coords().iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c.clone()));
                }
            }
        }
    }
    let out = StructureAlgebra::new(base.field(), base.basis_names().to_vec(), entries)?;
    if let Some((i, j, k)) = out.kokoris_witness() {
        let names = out.basis_names();
        return Err(Error::InvalidConstruction(format!(
            "Kokoris identity fails on ({}, {}, {})",
            names[i], names[j], names[k]
        )));
    }
    if !out.is_flexible() {
        return Err(Error::InvalidConstruction("result is not flexible".into()));
    }
    if base.field().require_two_invertible().is_ok() && !out.plus()?.same_table(base) {
        return Err(Error::InvalidConstruction(
            "plus algebra differs from the base algebra".into(),
        ));
    }
    Ok(out)
}

type Poly = BTreeMap<Vec<u32>, Scalar>;

fn poly_add(acc: &mut Poly, m: Vec<u32>, c: Scalar) {
    let e = acc.entry(m).or_insert_with(|| c.zero_like());
    *e += &c;
    // zero entries are dropped by the caller
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            poly_add(&mut out, m, ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn partial(p: &Poly, var: usize) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p {
        if m[var] == 0 {
            continue;
        }
        let mut d = m.clone();
        d[var] -= 1;
        poly_add(&mut out, d, c.scale_i64(m[var] as i64));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn element_to_poly(alg_monos: &[Vec<u32>], u: &Element) -> Poly {
    alg_monos
        .iter()
        .zip(u.coords())
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// `{f, g} = sum_{i<j} c_ij (d_i f d_j g - d_j f d_i g)` in the full
/// polynomial ring, with `c_ij` given as polynomials.
fn raw_bracket(vars: usize, c: &[Vec<Poly>], f: &Poly, g: &Poly) -> Poly {
    let mut out = Poly::new();
    for i in 0..vars {
        for j in i + 1..vars {
            if c[i][j].is_empty() {
                continue;
            }
            let t1 = poly_mul(&partial(f, i), &partial(g, j));
            let t2 = poly_mul(&partial(f, j), &partial(g, i));
            let mut diff = t1;
            for (m, v) in t2 {
                poly_add(&mut diff, m, -v);
            }
            diff.retain(|_, v| !v.is_zero());
            for (m, v) in poly_mul(&c[i][j], &diff) {
                poly_add(&mut out, m, v);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn poly_to_string(p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .map(|(m, c)| {
            if c.is_one() {
                monomial_name(m)
            } else {
                format!("{c}*{}", monomial_name(m))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

struct TruncatedSetup {
    base: StructureAlgebra,
    monos: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    c: Vec<Vec<Poly>>,
}

fn setup(
    field: FieldSpec,
    vars: usize,
    cap: usize,
    c_table: &[Vec<Element>],
) -> Result<TruncatedSetup> {
    if field.characteristic() != 0 && field.characteristic() as usize <= cap {
        return Err(Error::CharacteristicTooSmall {
            characteristic: field.characteristic(),
            degree: cap,
        });
    }
    let base = truncated_polynomial(vars, cap, field, true)?;
    let monos = truncated_monomials(vars, cap, true);
    if c_table.len() != vars || c_table.iter().any(|r| r.len() != vars) {
        return Err(Error::DimensionMismatch {
            expected: vars,
            found: c_table.len(),
        });
    }
    for i in 0..vars {
        for j in 0..vars {
            base.check(&c_table[i][j])?;
            if c_table[i][j] != -&c_table[j][i] {
                return Err(Error::InvalidConstruction(format!(
                    "c_{}{} != -c_{}{}",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    let c = c_table
        .iter()
        .map(|row| row.iter().map(|u| element_to_poly(&monos, u)).collect())
        .collect();
    let index = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    Ok(TruncatedSetup {
        base,
        monos,
        index,
        c,
    })
}

impl TruncatedSetup {
    fn truncate(&self, p: &Poly) -> Element {
        let mut coords = vec![self.base.field().zero(); self.base.dim()];
        for (m, c) in p {
            if let Some(&k) = self.index.get(m) {
                coords[k] = c.clone();
            }
        }
        Element::new(coords)
    }
}

/// The bracket formula on two elements of the truncated polynomial
/// algebra, computed in the polynomial ring and then truncated.
pub fn poisson_bracket_truncated(
    field: FieldSpec,
    vars: usize,
    cap: usize,
    c_table: &[Vec<Element>],
    f: &Element,
    g: &Element,
) -> Result<Element> {
    let s = setup(field, vars, cap, c_table)?;
    s.base.check(f)?;
    s.base.check(g)?;
    let pf = element_to_poly(&s.monos, f);
    let pg = element_to_poly(&s.monos, g);
    Ok(s.truncate(&raw_bracket(vars, &s.c, &pf, &pg)))
}

/// Poisson data on `F[x_1..x_vars] / (degree > cap)` with the polynomial
/// bracket; fails when the bracket does not preserve the truncation ideal.
pub fn poisson_polynomial_truncated(
    field: FieldSpec,
    vars: usize,
    cap: usize,
    c_table: &[Vec<Element>],
) -> Result<PoissonData> {
    let s = setup(field, vars, cap, c_table)?;
    // the ideal is spanned by monomials of degree > cap; brackets with
    // monomials of degree > cap + 1 stay in it automatically
    for m in truncated_monomials(vars, cap + 1, false)
        .into_iter()
        .filter(|m| m.iter().sum::<u32>() as usize == cap + 1)
    {
        let pm: Poly = [(m.clone(), field.one())].into_iter().collect();
        for g in &s.monos {
            let pg: Poly = [(g.clone(), field.one())].into_iter().collect();
            let r = raw_bracket(vars, &s.c, &pm, &pg);
            let low: Poly = r
                .into_iter()
                .filter(|(k, _)| s.index.contains_key(k))
                .collect();
            if !low.is_empty() {
                return Err(Error::IllDefined(format!(
                    "{{{}, {}}} = {} is not in the truncation ideal",
                    monomial_name(&m),
                    monomial_name(g),
                    poly_to_string(&low)
                )));
            }
        }
    }
    let n = s.monos.len();
    let mut bracket = Vec::with_capacity(n * n);
    for a in &s.monos {
        let pa: Poly = [(a.clone(), field.one())].into_iter().collect();
        for b in &s.monos {
            let pb: Poly = [(b.clone(), field.one())].into_iter().collect();
            bracket.push(s.truncate(&raw_bracket(vars, &s.c, &pa, &pb)));
        }
    }
    PoissonData::new(s.base, bracket)
}

/// `F 1 + span(a, b, c)` with all products of `a, b, c` zero and bracket
/// `{a, b} = c`; as a Kokoris algebra `a * b = c`, `b * a = -c`.
pub fn kokoris_example(field: FieldSpec) -> Result<StructureAlgebra> {
    let names = ["1", "a", "b", "c"].map(String::from).to_vec();
    let mut entries = vec![(0, 0, 0, field.one())];
    for i in 1..4 {
        entries.push((0, i, i, field.one()));
        entries.push((i, 0, i, field.one()));
    }
    let base = StructureAlgebra::new(field, names, entries)?;
    let c = base.basis(3);
    let p = PoissonData::from_upper(base, &[(1, 2, c)])?;
    kokoris_from_poisson(&p)
}

/// `span(a, b, c, d)` with `a . a = d` and bracket `{a, b} = c`; as a
/// Kokoris algebra `a * a = d`, `a * b = c`, `b * a = -c`, and its cube is zero.
pub fn kokoris_nilpotent_example(field: FieldSpec) -> Result<StructureAlgebra> {
    let names = ["a", "b", "c", "d"].map(String::from).to_vec();
    let base = StructureAlgebra::new(field, names, [(0, 0, 3, field.one())])?;
    let c = base.basis(2);
    let p = PoissonData::from_upper(base, &[(0, 1, c)])?;
    kokoris_from_poisson(&p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn const_c(base: &StructureAlgebra, c12: i64) -> Vec<Vec<Element>> {
        let one = base.basis(0).scale(&q().from_i64(c12));
        vec![vec![base.zero(), one.clone()], vec![-&one, base.zero()]]
    }

    #[test]
    fn kokoris_example_products() {
        let k = kokoris_example(q()).unwrap();
        let (a, b, c) = (k.basis(1), k.basis(2), k.basis(3));
        assert_eq!(k.mul(&a, &b).unwrap(), c);
        assert_eq!(k.mul(&b, &a).unwrap(), -&c);
        assert!(k.mul(&a, &a).unwrap().is_zero());
        assert!(k.satisfies_kokoris() && k.is_flexible());
        assert!(k.plus().unwrap().is_associative());
    }

    #[test]
    fn zero_bracket_keeps_base() {
        let base = truncated_polynomial(2, 2, q(), true).unwrap();
        let p = PoissonData::zero_bracket(base.clone()).unwrap();
        assert_eq!(kokoris_from_poisson(&p).unwrap(), base);
    }

    #[test]
    fn leibniz_failure_is_reported() {
        // {1, a} = a breaks {1 . 1, a} = 1 . {1, a} + 1 . {1, a}
        let base = truncated_polynomial(1, 1, q(), true).unwrap();
        let a = base.basis(1);
        let err = PoissonData::from_upper(base, &[(0, 1, a)]).unwrap_err();
        assert!(matches!(err, Error::LeibnizFailure { .. }));
    }

    #[test]
    fn raw_bracket_values() {
        let base = truncated_polynomial(2, 2, q(), true).unwrap();
        let c = const_c(&base, 1);
        let br = |f: usize, g: usize| {
            poisson_bracket_truncated(q(), 2, 2, &c, &base.basis(f), &base.basis(g)).unwrap()
        };
        // basis 1, x1, x2, x1^2, x1*x2, x2^2
        assert_eq!(br(1, 2), base.basis(0));
        assert_eq!(br(3, 2), base.basis(1).scale(&q().from_i64(2)));
        assert_eq!(br(2, 1), -&base.basis(0));
    }

    #[test]
    fn constant_bracket_is_ill_defined_after_truncation() {
        let base = truncated_polynomial(2, 2, q(), true).unwrap();
        let err = poisson_polynomial_truncated(q(), 2, 2, &const_c(&base, 1)).unwrap_err();
        match err {
            Error::IllDefined(msg) => assert!(msg.contains("3*x1^2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_c_gives_zero_bracket() {
        let base = truncated_polynomial(2, 3, q(), true).unwrap();
        let p = poisson_polynomial_truncated(q(), 2, 3, &const_c(&base, 0)).unwrap();
        assert_eq!(kokoris_from_poisson(&p).unwrap(), base);
    }

    #[test]
    fn high_degree_coefficients_are_well_defined() {
        // c_12 = x1*x2 raises degree, so the truncation ideal is preserved
        let base = truncated_polynomial(2, 3, q(), true).unwrap();
        let c12 = base.basis(4);
        let c = vec![vec![base.zero(), c12.clone()], vec![-&c12, base.zero()]];
        let p = poisson_polynomial_truncated(q(), 2, 3, &c).unwrap();
        let k = kokoris_from_poisson(&p).unwrap();
        assert!(k.satisfies_kokoris());
        assert!(!k.is_commutative());
    }

    #[test]
    fn small_characteristic_is_refused() {
        let f = FieldSpec::prime(3).unwrap();
        let base = truncated_polynomial(2, 3, f, true).unwrap();
        let c = vec![vec![base.zero(); 2]; 2];
        assert!(matches!(
            poisson_polynomial_truncated(f, 2, 3, &c),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn nilpotent_example() {
        let k = kokoris_nilpotent_example(q()).unwrap();
        assert_eq!(k.mul(&k.basis(0), &k.basis(0)).unwrap(), k.basis(3));
        assert_eq!(k.mul(&k.basis(0), &k.basis(1)).unwrap(), k.basis(2));
        assert_eq!(k.mul(&k.basis(1), &k.basis(0)).unwrap(), -&k.basis(2));
        assert!(k.satisfies_kokoris());
    }
}
