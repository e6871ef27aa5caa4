//! Algebra families: matrix and Jordan algebras, algebras of a bilinear
//! form, Cayley–Dickson doublings, quadratic algebras `F 1 + V`, truncated
//! polynomial algebras with Poisson brackets, Kokoris algebras, mutations,
//! free nilpotent algebras and seeded random algebras.

mod cayley_dickson;
mod poisson;
pub mod random;
pub mod recipe;

pub use cayley_dickson::{
    cayley_dickson, cayley_dickson_tower, octonions, quaternions, split_octonions,
    InvolutiveAlgebra,
};
pub use poisson::{
    kokoris_example, kokoris_from_poisson, kokoris_nilpotent_example, poisson_bracket_truncated,
    poisson_polynomial_truncated, PoissonData,
};
pub use recipe::Recipe;

use std::collections::BTreeMap;

use crate::algebra::{Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

fn unit_name(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{}_{}", i + 1, j + 1)
    }
}

/// `M_n(F)` with matrix units `e_ij` in row-major order.
pub fn matrix_algebra(n: usize, field: FieldSpec) -> Result<StructureAlgebra> {
    if n == 0 {
        return Err(Error::InvalidConstruction(
            "matrix size must be positive".into(),
        ));
    }
    let mut names = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            names.push(unit_name(i, j, n));
        }
    }
    let mut entries = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // e_ij e_jl = e_il
                entries.push((i * n + j, j * n + l, i * n + l, field.one()));
            }
        }
    }
    StructureAlgebra::new(field, names, entries)
}

/// Coordinates of a symmetric `n x n` matrix in the basis
/// `e_11, ..., e_nn, e_12 + e_21, e_13 + e_31, ...`.
fn sym_coords(m: &[Vec<Scalar>], n: usize) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = (0..n).map(|i| m[i][i].clone()).collect();
    for i in 0..n {
        for j in i + 1..n {
            v.push(m[i][j].clone());
        }
    }
    v
}

fn sym_matrix(idx: usize, n: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![field.zero(); n]; n];
    if idx < n {
        m[idx][idx] = field.one();
        return m;
    }
    let mut k = n;
    for i in 0..n {
        for j in i + 1..n {
            if k == idx {
                m[i][j] = field.one();
                m[j][i] = field.one();
                return m;
            }
            k += 1;
        }
    }
    unreachable!("symmetric basis index out of range")
}

/// `H(M_n)`: symmetric matrices under `x . y = (xy + yx)/2`.
///
/// Basis: `e11, ..., enn`, then `sij = e_ij + e_ji` for `i < j`.
pub fn jordan_sym(n: usize, field: FieldSpec) -> Result<StructureAlgebra> {
    if n == 0 {
        return Err(Error::InvalidConstruction(
            "matrix size must be positive".into(),
        ));
    }
    field.require_two_invertible()?;
    let half = field.from_ratio(1, 2)?;
    let mut names: Vec<String> = (0..n).map(|i| unit_name(i, i, n)).collect();
    for i in 0..n {
        for j in i + 1..n {
            names.push(if n < 10 {
                format!("s{}{}", i + 1, j + 1)
            } else {
                format!("s{}_{}", i + 1, j + 1)
            });
        }
    }
    let mats: Vec<_> = (0..names.len()).map(|k| sym_matrix(k, n, field)).collect();
    StructureAlgebra::from_fn(field, names, |a, b| {
        let xy = crate::algebra::mat_mul(&mats[a], &mats[b], field);
        let yx = crate::algebra::mat_mul(&mats[b], &mats[a], field);
        let s: Vec<Vec<Scalar>> = xy
            .iter()
            .zip(&yx)
            .map(|(r, t)| r.iter().zip(t).map(|(p, q)| &(p + q) * &half).collect())
            .collect();
        sym_coords(&s, n)
    })
}

/// `M_n^(+)`.
pub fn jordan_plus(n: usize, field: FieldSpec) -> Result<StructureAlgebra> {
    matrix_algebra(n, field)?.plus()
}

fn check_square(form: &[Vec<Scalar>], field: FieldSpec, symmetric: bool) -> Result<()> {
    let n = form.len();
    for (i, row) in form.iter().enumerate() {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        for (j, c) in row.iter().enumerate() {
            if !field.contains(c) {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: c.field().to_string(),
                });
            }
            if symmetric && c != &form[j][i] {
                return Err(Error::InvalidConstruction(format!(
                    "form is not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// `J(V, f) = F 1 + V` with `(a + v)(b + u) = (ab + f(v, u)) + (a u + b v)`.
pub fn bilinear_form_jordan(form: &[Vec<Scalar>], field: FieldSpec) -> Result<StructureAlgebra> {
    let zero_cross = vec![vec![vec![field.zero(); form.len()]; form.len()]; form.len()];
    quadratic_algebra(&QuadraticData::new(field, form.to_vec(), zero_cross)?)
}

/// Data of a quadratic algebra `F 1 + V`: a symmetric form and an
/// anticommutative cross product on `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticData {
    pub field: FieldSpec,
    /// `form[i][j] = (v_i, v_j)`.
    pub form: Vec<Vec<Scalar>>,
    /// `cross[i][j]` = coordinates of `v_i x v_j` in `V`.
    pub cross: Vec<Vec<Vec<Scalar>>>,
    pub names: Vec<String>,
}

impl QuadraticData {
    /// Validates symmetry, antisymmetry and `(u x v, w) = (u, v x w)`.
    pub fn new(
        field: FieldSpec,
        form: Vec<Vec<Scalar>>,
        cross: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let names = (1..=form.len()).map(|i| format!("v{i}")).collect();
        Self::with_names(field, form, cross, names)
    }

    pub fn with_names(
        field: FieldSpec,
        form: Vec<Vec<Scalar>>,
        cross: Vec<Vec<Vec<Scalar>>>,
        names: Vec<String>,
    ) -> Result<Self> {
        let n = form.len();
        check_square(&form, field, true)?;
        if names.len() != n || cross.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: names.len().min(cross.len()),
            });
        }
        for i in 0..n {
            if cross[i].len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: cross[i].len(),
                });
            }
            for j in 0..n {
                let v = &cross[i][j];
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                if v.iter().any(|c| !field.contains(c)) {
                    return Err(Error::FieldMismatch {
                        expected: field.to_string(),
                        found: "other".into(),
                    });
                }
                if v.iter().zip(&cross[j][i]).any(|(a, b)| a != &-b) {
                    return Err(Error::InvalidConstruction(format!(
                        "cross product is not antisymmetric at ({}, {})",
                        names[i], names[j]
                    )));
                }
            }
        }
        let q = QuadraticData {
            field,
            form,
            cross,
            names,
        };
        if let Some((i, j, k)) = q.form_associativity_witness() {
            return Err(Error::InvalidConstruction(format!(
                "(u x v, w) != (u, v x w) for u = {}, v = {}, w = {}",
                q.names[i], q.names[j], q.names[k]
            )));
        }
        Ok(q)
    }

    pub fn v_dim(&self) -> usize {
        self.form.len()
    }

    /// `(u, v)` for coordinate vectors in `V`.
    pub fn pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut s = self.field.zero();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    s += &(&(a * b) * &self.form[i][j]);
                }
            }
        }
        s
    }

    /// `u x v` for coordinate vectors in `V`.
    pub fn cross_product(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.v_dim();
        let mut out = vec![self.field.zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.cross[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    fn unit_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.v_dim()];
        v[i] = self.field.one();
        v
    }

    fn form_associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.v_dim();
        for i in 0..n {
            for j in 0..n {
                let uv = self.cross_product(&self.unit_vec(i), &self.unit_vec(j));
                for k in 0..n {
                    let vw = self.cross_product(&self.unit_vec(j), &self.unit_vec(k));
                    if self.pair(&uv, &self.unit_vec(k)) != self.pair(&self.unit_vec(i), &vw) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis pair `(u, v)` of `V` with `(u x v) x u != 0`.
    pub fn cross_cross_witness(&self) -> Option<(usize, usize, Vec<Scalar>)> {
        let n = self.v_dim();
        for i in 0..n {
            for j in 0..n {
                let u = self.unit_vec(i);
                let w = self.cross_product(&self.cross_product(&u, &self.unit_vec(j)), &u);
                if w.iter().any(|c| !c.is_zero()) {
                    return Some((i, j, w));
                }
            }
        }
        None
    }

    /// Quaternion data: `V = span(i, j, k)`, form `-I`, standard cross product.
    pub fn quaternion(field: FieldSpec) -> Result<Self> {
        let z = field.zero();
        let o = field.one();
        let m = -&o;
        let form = vec![
            vec![m.clone(), z.clone(), z.clone()],
            vec![z.clone(), m.clone(), z.clone()],
            vec![z.clone(), z.clone(), m.clone()],
        ];
        let e = |k: usize, s: &Scalar| {
            let mut v = vec![z.clone(); 3];
            v[k] = s.clone();
            v
        };
        let zero = vec![z.clone(); 3];
        let cross = vec![
            vec![zero.clone(), e(2, &o), e(1, &m)],
            vec![e(2, &m), zero.clone(), e(0, &o)],
            vec![e(1, &o), e(0, &m), zero],
        ];
        Self::with_names(field, form, cross, vec!["i".into(), "j".into(), "k".into()])
    }

    /// Reads off `(u, v)` and `u x v` from a unital algebra whose basis
    /// vector 0 is the unit and whose remaining basis vectors `u` satisfy
    /// `u v = (u, v) 1 + u x v` with `u x v` in their span.
    pub fn from_algebra(alg: &StructureAlgebra) -> Result<Self> {
        if alg.unit() != Some(alg.basis(0)) {
            return Err(Error::InvalidConstruction(
                "basis vector 0 must be the unit".into(),
            ));
        }
        let f = alg.field();
        let n = alg.dim() - 1;
        let mut form = vec![vec![f.zero(); n]; n];
        let mut cross = vec![vec![vec![f.zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in alg.basis_product(i + 1, j + 1) {
                    if *k == 0 {
                        form[i][j] = c.clone();
                    } else {
                        cross[i][j][k - 1] = c.clone();
                    }
                }
            }
        }
        Self::with_names(f, form, cross, alg.basis_names()[1..].to_vec())
    }
}

/// `F 1 + V` with `(a + v)(b + u) = (ab + (v, u)) + (a u + b v + v x u)`.
pub fn quadratic_algebra(q: &QuadraticData) -> Result<StructureAlgebra> {
    let n = q.v_dim();
    let f = q.field;
    let mut names = vec!["1".to_string()];
    names.extend(q.names.iter().cloned());
    let mut entries = vec![(0, 0, 0, f.one())];
    for i in 1..=n {
        entries.push((0, i, i, f.one()));
        entries.push((i, 0, i, f.one()));
        for j in 1..=n {
            entries.push((i, j, 0, q.form[i - 1][j - 1].clone()));
            for (k, c) in q.cross[i - 1][j - 1].iter().enumerate() {
                entries.push((i, j, k + 1, c.clone()));
            }
        }
    }
    StructureAlgebra::new(f, names, entries)
}

fn check_extension(from: FieldSpec, to: FieldSpec) -> Result<()> {
    match (from, to) {
        (a, b) if a == b => Ok(()),
        (FieldSpec::Rationals, FieldSpec::QuadraticExtension { .. }) => Ok(()),
        _ => Err(Error::InvalidConstruction(format!(
            "{to} is not an extension of {from}"
        ))),
    }
}

/// Embeds a scalar of `from` into the extension `to`.
pub fn extend_scalar(c: &Scalar, to: FieldSpec) -> Result<Scalar> {
    check_extension(c.field(), to)?;
    match c {
        Scalar::Rational(q) => to.from_rational(q),
        other => Ok(other.clone()),
    }
}

/// `K (x) A`: the same table read over `new_field`.
pub fn scalar_extension(alg: &StructureAlgebra, new_field: FieldSpec) -> Result<StructureAlgebra> {
    check_extension(alg.field(), new_field)?;
    let entries = alg
        .entries()
        .map(|(i, j, k, c)| Ok((i, j, k, extend_scalar(c, new_field)?)))
        .collect::<Result<Vec<_>>>()?;
    StructureAlgebra::new(new_field, alg.basis_names().to_vec(), entries)
}

/// Exponent vectors of monomials of total degree `<= cap` (and `>= 1`
/// unless `unital`), ordered by degree, then with higher powers of
/// earlier variables first.
pub fn truncated_monomials(vars: usize, cap: usize, unital: bool) -> Vec<Vec<u32>> {
    fn rec(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == vars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(vars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let start = if unital { 0 } else { 1 };
    for d in start..=cap as u32 {
        rec(vars, d, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) fn monomial_name(exps: &[u32]) -> String {
    let var = |i: usize| {
        if exps.len() == 1 {
            "t".to_string()
        } else {
            format!("x{}", i + 1)
        }
    };
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                var(i)
            } else {
                format!("{}^{e}", var(i))
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `F[x_1..x_vars] / (monomials of degree > cap)`, or its augmentation
/// ideal when `unital` is false. A single variable is named `t`.
pub fn truncated_polynomial(
    vars: usize,
    cap: usize,
    field: FieldSpec,
    unital: bool,
) -> Result<StructureAlgebra> {
    if vars == 0 || (cap == 0 && !unital) {
        return Err(Error::InvalidConstruction(
            "truncated polynomial algebra would be zero".into(),
        ));
    }
    let monos = truncated_monomials(vars, cap, unital);
    let index: BTreeMap<&[u32], usize> = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut entries = Vec::new();
    for (i, a) in monos.iter().enumerate() {
        for (j, b) in monos.iter().enumerate() {
            let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if let Some(&k) = index.get(s.as_slice()) {
                entries.push((i, j, k, field.one()));
            }
        }
    }
    StructureAlgebra::new(
        field,
        monos.iter().map(|m| monomial_name(m)).collect(),
        entries,
    )
}

/// The free nonassociative algebra on `gens` generators modulo all
/// monomials of degree `> max_degree`; nilpotent of index `max_degree + 1`.
pub fn free_nilpotent(
    gens: usize,
    max_degree: usize,
    field: FieldSpec,
) -> Result<StructureAlgebra> {
    if gens == 0 || gens > 26 || max_degree == 0 {
        return Err(Error::InvalidConstruction(
            "need 1..=26 generators and positive degree".into(),
        ));
    }
    // monomials grouped by degree, each as a display string
    let mut by_degree: Vec<Vec<String>> = vec![Vec::new(); max_degree + 1];
    by_degree[1] = (0..gens)
        .map(|g| ((b'a' + g as u8) as char).to_string())
        .collect();
    for d in 2..=max_degree {
        let mut level = Vec::new();
        for l in 1..d {
            for a in &by_degree[l] {
                for b in &by_degree[d - l] {
                    level.push(format!("({a}*{b})"));
                }
            }
        }
        by_degree[d] = level;
    }
    let mut offsets = vec![0usize; max_degree + 2];
    for d in 1..=max_degree {
        offsets[d + 1] = offsets[d] + by_degree[d].len();
    }
    let names: Vec<String> = by_degree.iter().flatten().cloned().collect();
    // index of (a*b) within degree d: sum over left degrees < l of block sizes
    let mut entries = Vec::new();
    for d in 2..=max_degree {
        let mut pos = 0;
        for l in 1..d {
            let r = d - l;
            for ia in 0..by_degree[l].len() {
                for ib in 0..by_degree[r].len() {
                    entries.push((
                        offsets[l] + ia,
                        offsets[r] + ib,
                        offsets[d] + pos,
                        field.one(),
                    ));
                    pos += 1;
                }
            }
        }
    }
    StructureAlgebra::new(field, names, entries)
}

/// `B(lambda)`: the `lambda`-mutation of `M_2`.
pub fn matrix_mutation(lambda: &Scalar, field: FieldSpec) -> Result<StructureAlgebra> {
    matrix_algebra(2, field)?.mutation(lambda)
}

/// Named elements used as witnesses: the four matrix units inside the
/// split octonions, `E11 = (1+i)/2, E12 = (j+k)/2, E21 = (j-k)/2, E22 = (1-i)/2`.
pub fn split_octonion_matrix_units(field: FieldSpec) -> Result<[Element; 4]> {
    let half = field.from_ratio(1, 2)?;
    let mh = -&half;
    let z = field.zero();
    let v = |c: [&Scalar; 4]| {
        let mut coords = vec![z.clone(); 8];
        for (k, x) in c.iter().enumerate() {
            coords[k] = (*x).clone();
        }
        Element::new(coords)
    };
    Ok([
        v([&half, &half, &z, &z]),
        v([&z, &z, &half, &half]),
        v([&z, &z, &half, &mh]),
        v([&half, &mh, &z, &z]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::{holds_in, parse, HoldsVerdict};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn one_by_one_matrices_are_the_field() {
        let a = matrix_algebra(1, q()).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.is_commutative() && a.is_associative());
        assert_eq!(a.unit(), Some(a.basis(0)));
    }

    #[test]
    fn matrix_algebra_is_associative_with_unit() {
        let a = matrix_algebra(3, q()).unwrap();
        assert!(a.is_associative());
        assert_eq!(a.basis_names()[1], "e12");
        assert_eq!(
            a.unit(),
            Some(a.element(&[1, 0, 0, 0, 1, 0, 0, 0, 1]).unwrap())
        );
    }

    #[test]
    fn jordan_sym_basis_and_identity() {
        let h = jordan_sym(2, q()).unwrap();
        assert_eq!(h.basis_names(), ["e11", "e22", "s12"]);
        assert!(h.is_commutative());
        // s12^2 = e11 + e22
        assert_eq!(
            h.mul(&h.basis(2), &h.basis(2)).unwrap(),
            h.element(&[1, 1, 0]).unwrap()
        );
        let jordan = parse("((x*x)*y)*x - (x*x)*(y*x)").unwrap();
        assert_eq!(holds_in(&h, &jordan, 1 << 20).unwrap(), HoldsVerdict::Holds);
        assert!(jordan_sym(2, FieldSpec::prime(2).unwrap()).is_err());
    }

    #[test]
    fn jordan_plus_is_commutative() {
        let j = jordan_plus(2, q()).unwrap();
        assert!(j.is_commutative());
        assert!(!j.is_associative());
    }

    #[test]
    fn bilinear_form_algebra() {
        let f = q();
        let form = vec![
            vec![f.from_i64(1), f.zero()],
            vec![f.zero(), f.from_i64(-3)],
        ];
        let j = bilinear_form_jordan(&form, f).unwrap();
        assert_eq!(j.dim(), 3);
        assert!(j.is_commutative());
        assert_eq!(j.unit(), Some(j.basis(0)));
        for (i, d) in [(1, 1), (2, -3)] {
            assert_eq!(
                j.mul(&j.basis(i), &j.basis(i)).unwrap(),
                j.basis(0).scale(&f.from_i64(d))
            );
        }
        let bad = vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]];
        assert!(bilinear_form_jordan(&bad, f).is_err());
        let field_only = bilinear_form_jordan(&[], f).unwrap();
        assert!(field_only.same_table(&matrix_algebra(1, f).unwrap()));
    }

    #[test]
    fn quaternion_data_matches_cayley_dickson() {
        let qd = QuadraticData::quaternion(q()).unwrap();
        let a = quadratic_algebra(&qd).unwrap();
        let h = quaternions(q()).unwrap();
        assert_eq!(&a, h.algebra());
        assert!(a.is_flexible() && a.is_associative());
        let back = QuadraticData::from_algebra(h.algebra()).unwrap();
        assert_eq!(back, qd);
    }

    #[test]
    fn zero_cross_gives_bilinear_form_algebra() {
        let f = q();
        let form = vec![vec![f.from_i64(2)]];
        let qd = QuadraticData::new(f, form.clone(), vec![vec![vec![f.zero()]]]).unwrap();
        assert!(quadratic_algebra(&qd)
            .unwrap()
            .same_table(&bilinear_form_jordan(&form, f).unwrap()));
    }

    #[test]
    fn bad_cross_products_are_rejected() {
        let f = q();
        let o = f.one();
        let z = f.zero();
        let form = vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]];
        // not antisymmetric
        let cross = vec![
            vec![vec![z.clone(), z.clone()], vec![o.clone(), z.clone()]],
            vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
        ];
        assert!(QuadraticData::new(f, form.clone(), cross).is_err());
        // antisymmetric, but (v1 x v2, v1) = 1 while (v1, v2 x v1) = -1
        let cross = vec![
            vec![vec![z.clone(), z.clone()], vec![o.clone(), z.clone()]],
            vec![vec![-&o, z.clone()], vec![z.clone(), z.clone()]],
        ];
        assert!(QuadraticData::new(f, form, cross).is_err());
    }

    #[test]
    fn scalar_extension_rules() {
        let h = quaternions(q()).unwrap();
        let same = scalar_extension(h.algebra(), q()).unwrap();
        assert_eq!(&same, h.algebra());
        let k = FieldSpec::quadratic(-1).unwrap();
        let hk = scalar_extension(h.algebra(), k).unwrap();
        let eps = k.adjoined_root().unwrap();
        // n = i + eps j squares to zero
        let n = &hk.basis(1) + &hk.basis(2).scale(&eps);
        assert!(hk.mul(&n, &n).unwrap().is_zero());
        assert!(scalar_extension(h.algebra(), FieldSpec::prime(5).unwrap()).is_err());
        assert!(scalar_extension(&hk, q()).is_err());
    }

    #[test]
    fn truncated_polynomial_layout() {
        let a = truncated_polynomial(2, 2, q(), true).unwrap();
        assert_eq!(a.basis_names(), ["1", "x1", "x2", "x1^2", "x1*x2", "x2^2"]);
        assert!(a.is_commutative() && a.is_associative());
        let t = truncated_polynomial(1, 2, q(), false).unwrap();
        assert_eq!(t.basis_names(), ["t", "t^2"]);
    }

    #[test]
    fn free_nilpotent_dimensions() {
        assert_eq!(free_nilpotent(1, 8, q()).unwrap().dim(), 626);
        assert_eq!(free_nilpotent(2, 4, q()).unwrap().dim(), 102);
        let a = free_nilpotent(2, 2, q()).unwrap();
        assert_eq!(
            a.basis_names(),
            ["a", "b", "(a*a)", "(a*b)", "(b*a)", "(b*b)"]
        );
        assert_eq!(a.mul(&a.basis(1), &a.basis(0)).unwrap(), a.basis(4));
        assert!(a.mul(&a.basis(2), &a.basis(0)).unwrap().is_zero());
    }

    #[test]
    fn split_octonions_contain_matrix_units() {
        let o = split_octonions(q()).unwrap();
        let a = o.algebra();
        let e = split_octonion_matrix_units(q()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let p = a.mul(&e[2 * i + j], &e[2 * k + l]).unwrap();
                        let expect = if j == k {
                            e[2 * i + l].clone()
                        } else {
                            a.zero()
                        };
                        assert_eq!(p, expect, "E{}{} E{}{}", i + 1, j + 1, k + 1, l + 1);
                    }
                }
            }
        }
        assert_eq!(&e[0] + &e[3], a.unit().unwrap());
    }

    #[test]
    fn mutation_alpha_for_matrix_mutations() {
        let f = q();
        for (n, d) in [(2, 1), (-1, 1), (1, 3), (3, 4)] {
            let lambda = f.from_ratio(n, d).unwrap();
            let b = matrix_mutation(&lambda, f).unwrap();
            // [x,y] in B(l) is (2l-1)[x,y] in M2
            let t = &lambda.scale_i64(2) - &f.one();
            let alpha = &(&lambda * &(&lambda - &f.one())) * &(&t * &t).inv().unwrap();
            assert_ne!(alpha, f.from_ratio(1, 4).unwrap());
            assert!(b.satisfies_quasi_associative(&alpha));
            assert_eq!(b.quasi_associative_alpha(), Some(alpha));
        }
    }
}
