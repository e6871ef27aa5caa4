use crate::algebra::{Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A unital algebra with basis vector 0 as its unit, together with an
/// explicit involution and, once verified, its trace and norm forms.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutiveAlgebra {
    algebra: StructureAlgebra,
    /// Image of each basis vector.
    involution: Vec<Element>,
    /// `t(e_i)`.
    trace: Vec<Scalar>,
    /// `n(x) = sum_{i <= j} norm[i][j] x_i x_j`.
    norm: Vec<Vec<Scalar>>,
}

impl InvolutiveAlgebra {
    /// The ground field with the identity involution.
    pub fn ground_field(field: FieldSpec) -> Result<Self> {
        let algebra = StructureAlgebra::new(field, vec!["1".into()], [(0, 0, 0, field.one())])?;
        Self::new(algebra, vec![Element::basis(field, 1, 0)])
    }

    /// Validates that basis vector 0 is the unit, that the involution is a
    /// linear map of order two fixing the unit, and that every element
    /// satisfies `x^2 - t(x) x + n(x) 1 = 0` with `t(x) = x + x*` and
    /// `n(x) = x x*`.
    pub fn new(algebra: StructureAlgebra, involution: Vec<Element>) -> Result<Self> {
        let n = algebra.dim();
        if algebra.unit() != Some(algebra.basis(0)) {
            return Err(Error::InvalidConstruction(
                "algebra must be unital with basis vector 0 as unit".into(),
            ));
        }
        if involution.len() != n {
            return Err(Error::InvalidConstruction(
                "involution metadata is missing".into(),
            ));
        }
        for v in &involution {
            algebra.check(v)?;
        }
        let mut inv = InvolutiveAlgebra {
            algebra,
            involution,
            trace: Vec::new(),
            norm: Vec::new(),
        };
        if inv.conjugate(&inv.algebra.basis(0)) != inv.algebra.basis(0) {
            return Err(Error::InvalidConstruction(
                "involution must fix the unit".into(),
            ));
        }
        for i in 0..n {
            let b = inv.algebra.basis(i);
            if inv.conjugate(&inv.conjugate(&b)) != b {
                return Err(Error::InvalidConstruction(
                    "involution is not of order two".into(),
                ));
            }
        }
        inv.compute_forms()?;
        Ok(inv)
    }

    fn scalar_part(&self, u: &Element, what: &str) -> Result<Scalar> {
        if u.coords()[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidConstruction(format!(
                "{what} is not a multiple of the unit"
            )));
        }
        Ok(u.coords()[0].clone())
    }

    fn compute_forms(&mut self) -> Result<()> {
        let a = &self.algebra;
        let n = a.dim();
        let f = a.field();
        let mut trace = Vec::with_capacity(n);
        for i in 0..n {
            let b = a.basis(i);
            trace.push(self.scalar_part(&(&b + &self.conjugate(&b)), "x + x*")?);
        }
        let mut norm = vec![vec![f.zero(); n]; n];
        for i in 0..n {
            let bi = a.basis(i);
            norm[i][i] = self.scalar_part(&a.mul(&bi, &self.conjugate(&bi))?, "x x*")?;
            for j in i + 1..n {
                let bj = a.basis(j);
                let s = &a.mul(&bi, &self.conjugate(&bj))? + &a.mul(&bj, &self.conjugate(&bi))?;
                norm[i][j] = self.scalar_part(&s, "x y* + y x*")?;
            }
        }
        self.trace = trace;
        self.norm = norm;
        // x^2 - t(x) x + n(x) 1 is quadratic in x, so vanishing on every
        // e_i and e_i + e_j means it vanishes identically
        for i in 0..n {
            for j in i..n {
                let x = if i == j {
                    a.basis(i)
                } else {
                    &a.basis(i) + &a.basis(j)
                };
                if !self.quadratic_defect(&x).is_zero() {
                    return Err(Error::InvalidConstruction(format!(
                        "x^2 - t(x)x + n(x) != 0 for x = {}",
                        a.format_element(&x)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> StructureAlgebra {
        self.algebra
    }

    pub fn involution(&self) -> &[Element] {
        &self.involution
    }

    pub fn conjugate(&self, u: &Element) -> Element {
        let mut out = self.algebra.zero();
        for (c, img) in u.coords().iter().zip(&self.involution) {
            if !c.is_zero() {
                out = &out + &img.scale(c);
            }
        }
        out
    }

    pub fn trace(&self, u: &Element) -> Scalar {
        let mut s = self.algebra.field().zero();
        for (c, t) in u.coords().iter().zip(&self.trace) {
            s += &(c * t);
        }
        s
    }

    pub fn norm(&self, u: &Element) -> Scalar {
        let x = u.coords();
        let mut s = self.algebra.field().zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            for j in i..x.len() {
                if !x[j].is_zero() && !self.norm[i][j].is_zero() {
                    s += &(&(&x[i] * &x[j]) * &self.norm[i][j]);
                }
            }
        }
        s
    }

    /// `x^2 - t(x) x + n(x) 1`.
    pub fn quadratic_defect(&self, u: &Element) -> Element {
        let a = &self.algebra;
        let sq = a.mul(u, u).expect("element of this algebra");
        let t = self.trace(u);
        let nx = self.norm(u);
        &(&sq - &u.scale(&t)) + &a.basis(0).scale(&nx)
    }

    fn with_names(mut self, names: &[&str]) -> Result<Self> {
        self.algebra = self
            .algebra
            .with_basis_names(names.iter().map(|s| s.to_string()).collect())?;
        Ok(self)
    }
}

fn generator_name(level: usize) -> String {
    const NAMES: [&str; 6] = ["i", "j", "l", "m", "n", "o"];
    NAMES
        .get(level)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("g{}", level + 1))
}

/// One doubling step: on pairs `(a, b)` of elements of `A`,
/// `(a, b)(c, d) = (ac + mu d* b, da + b c*)` and `(a, b)* = (a*, -b)`.
///
/// The first half of the new basis is `(e_i, 0)`, the second half `(0, e_i)`.
pub fn cayley_dickson(base: &InvolutiveAlgebra, mu: &Scalar) -> Result<InvolutiveAlgebra> {
    let a = base.algebra();
    let f = a.field();
    if !f.contains(mu) {
        return Err(Error::FieldMismatch {
            expected: f.to_string(),
            found: mu.field().to_string(),
        });
    }
    let n = a.dim();
    let level = (n as f64).log2().round() as usize;
    let g = generator_name(level);
    let mut names: Vec<String> = a.basis_names().to_vec();
    for name in a.basis_names() {
        names.push(match name.as_str() {
            "1" => g.clone(),
            other => format!("{other}{g}"),
        });
    }
    let conj: Vec<Element> = (0..n).map(|i| base.conjugate(&a.basis(i))).collect();
    let prod = |x: &Element, y: &Element| a.mul(x, y).expect("basis elements");
    let mut entries = Vec::new();
    let mut push = |i: usize, j: usize, off: usize, v: &Element, scale: Option<&Scalar>| {
        for (k, c) in v.coords().iter().enumerate() {
            if !c.is_zero() {
                let c = scale.map_or_else(|| c.clone(), |s| s * c);
                entries.push((i, j, k + off, c));
            }
        }
    };
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis(i), a.basis(j));
            // (e_i, 0)(e_j, 0) = (e_i e_j, 0)
            push(i, j, 0, &prod(&ei, &ej), None);
            // (e_i, 0)(0, e_j) = (0, e_j e_i)
            push(i, n + j, n, &prod(&ej, &ei), None);
            // (0, e_i)(e_j, 0) = (0, e_i e_j*)
            push(n + i, j, n, &prod(&ei, &conj[j]), None);
            // (0, e_i)(0, e_j) = (mu e_j* e_i, 0)
            push(n + i, n + j, 0, &prod(&conj[j], &ei), Some(mu));
        }
    }
    let algebra = StructureAlgebra::new(f, names, entries)?;
    let mut involution: Vec<Element> = conj
        .iter()
        .map(|c| {
            let mut coords = c.coords().to_vec();
            coords.extend(std::iter::repeat_n(f.zero(), n));
            Element::new(coords)
        })
        .collect();
    for i in 0..n {
        involution.push(-&Element::basis(f, 2 * n, n + i));
    }
    InvolutiveAlgebra::new(algebra, involution)
}

/// Iterated doubling of the ground field with the given parameters.
/// Basis names are `1, i, j, k, l, il, jl, kl, m, ...`.
pub fn cayley_dickson_tower(field: FieldSpec, mus: &[Scalar]) -> Result<InvolutiveAlgebra> {
    let mut a = InvolutiveAlgebra::ground_field(field)?;
    for mu in mus {
        a = cayley_dickson(&a, mu)?;
        if a.algebra().dim() == 4 {
            a = a.with_names(&["1", "i", "j", "k"])?;
        }
    }
    Ok(a)
}

/// `CD(F; -1, -1)` with basis `1, i, j, k`.
pub fn quaternions(field: FieldSpec) -> Result<InvolutiveAlgebra> {
    let m = -&field.one();
    cayley_dickson_tower(field, &[m.clone(), m])
}

/// `CD(F; -1, -1, -1)` with basis `1, i, j, k, l, il, jl, kl`.
pub fn octonions(field: FieldSpec) -> Result<InvolutiveAlgebra> {
    let m = -&field.one();
    cayley_dickson_tower(field, &[m.clone(), m.clone(), m])
}

/// `CD(F; 1, 1, 1)`, which contains a copy of `M_2`.
pub fn split_octonions(field: FieldSpec) -> Result<InvolutiveAlgebra> {
    let o = field.one();
    cayley_dickson_tower(field, &[o.clone(), o.clone(), o])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn complex_numbers() {
        let c = cayley_dickson_tower(q(), &[-&q().one()]).unwrap();
        let a = c.algebra();
        assert_eq!(a.dim(), 2);
        assert!(a.is_commutative() && a.is_associative());
        assert_eq!(
            a.mul(&a.basis(1), &a.basis(1)).unwrap(),
            a.element(&[-1, 0]).unwrap()
        );
    }

    #[test]
    fn quaternion_table() {
        let h = quaternions(q()).unwrap();
        let a = h.algebra();
        assert_eq!(a.basis_names(), ["1", "i", "j", "k"]);
        let (i, j, k) = (a.basis(1), a.basis(2), a.basis(3));
        assert_eq!(a.mul(&i, &j).unwrap(), k);
        assert_eq!(a.mul(&j, &k).unwrap(), i);
        assert_eq!(a.mul(&k, &i).unwrap(), j);
        assert_eq!(a.mul(&j, &i).unwrap(), -&k);
        for u in [&i, &j, &k] {
            assert_eq!(a.mul(u, u).unwrap(), a.element(&[-1, 0, 0, 0]).unwrap());
        }
        assert!(a.is_associative() && !a.is_commutative() && a.is_flexible());
        let x = a.element(&[2, 3, -1, 5]).unwrap();
        assert_eq!(h.trace(&x), q().from_i64(4));
        assert_eq!(h.norm(&x), q().from_i64(4 + 9 + 1 + 25));
        assert!(h.quadratic_defect(&x).is_zero());
    }

    #[test]
    fn octonions_are_alternative_not_associative() {
        let o = octonions(q()).unwrap();
        let a = o.algebra();
        assert_eq!(a.basis_names(), ["1", "i", "j", "k", "l", "il", "jl", "kl"]);
        assert!(a.is_alternative());
        assert!(a.is_flexible());
        assert!(!a.is_associative());
        let (i, j, l) = (a.basis(1), a.basis(2), a.basis(4));
        assert!(!a.associator(&i, &j, &l).unwrap().is_zero());
        let x = a.element(&[1, -2, 3, 0, 1, 4, -1, 2]).unwrap();
        assert!(o.quadratic_defect(&x).is_zero());
    }

    #[test]
    fn doubling_needs_unit_at_zero() {
        let z = StructureAlgebra::zero_algebra(q(), 1).unwrap();
        assert!(InvolutiveAlgebra::new(z, vec![Element::basis(q(), 1, 0)]).is_err());
        let f = InvolutiveAlgebra::ground_field(q()).unwrap();
        assert!(InvolutiveAlgebra::new(f.algebra().clone(), vec![]).is_err());
    }

    #[test]
    fn mu_from_another_field_is_rejected() {
        let f = InvolutiveAlgebra::ground_field(q()).unwrap();
        let bad = FieldSpec::prime(7).unwrap().one();
        assert!(cayley_dickson(&f, &bad).is_err());
    }
}
