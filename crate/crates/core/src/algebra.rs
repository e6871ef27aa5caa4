//! Finite-dimensional algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Echelon, SparseRow};

/// A coordinate vector with respect to the basis of some algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Element {
            coords: vec![field.zero(); dim],
        }
    }

    pub fn basis(field: FieldSpec, dim: usize, i: usize) -> Self {
        let mut e = Self::zero(field, dim);
        e.coords[i] = field.one();
        e
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn to_sparse(&self) -> SparseRow {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.clone()))
            .collect()
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions differ");
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions differ");
        Element {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

/// Algebras derived from a given one on the same underlying space.
#[derive(Clone, Debug, PartialEq)]
pub enum Derived {
    /// `x . y = (xy + yx)/2`
    Plus,
    /// `x . y = (xy - yx)/2`
    Minus,
    /// `x * y = l xy + (1 - l) yx`
    Mutation(Scalar),
    /// External unit adjoined as basis vector 0.
    UnitalHull,
}

#[derive(Clone, Debug, Default)]
struct Flags {
    flexible: OnceLock<bool>,
    jordan_admissible: OnceLock<bool>,
    unit: OnceLock<Option<Element>>,
}

/// `e_i e_j = sum_k c_ij^k e_k` over an exact field.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    field: FieldSpec,
    dim: usize,
    basis_names: Vec<String>,
    // row-major over (i, j); each entry sorted by k without zeros
    table: Vec<SparseRow>,
    flags: Flags,
}

impl PartialEq for StructureAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.basis_names == other.basis_names
            && self.table == other.table
    }
}

impl StructureAlgebra {
    /// Builds an algebra from `(i, j, k, c)` entries; repeated `(i, j, k)`
    /// entries are summed.
    pub fn new<I>(field: FieldSpec, basis_names: Vec<String>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let dim = basis_names.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if !field.contains(&c) {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: c.field().to_string(),
                });
            }
            *acc.entry((i, j, k)).or_insert_with(|| field.zero()) += &c;
        }
        let mut table = vec![Vec::new(); dim * dim];
        for ((i, j, k), c) in acc {
            if !c.is_zero() {
                table[i * dim + j].push((k, c));
            }
        }
        Ok(StructureAlgebra {
            field,
            dim,
            basis_names,
            table,
            flags: Flags::default(),
        })
    }

    /// Builds an algebra from a function giving the product of two basis vectors.
    pub fn from_fn<F>(field: FieldSpec, basis_names: Vec<String>, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<Scalar>,
    {
        let dim = basis_names.len();
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        Self::new(field, basis_names, entries)
    }

    pub fn zero_algebra(field: FieldSpec, dim: usize) -> Result<Self> {
        let names = (1..=dim).map(|i| format!("e{i}")).collect();
        Self::new(field, names, std::iter::empty())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.basis_names = names;
        Ok(self)
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim, i)
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim).map(|i| self.basis(i)).collect()
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim)
    }

    /// Element with small integer coordinates.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Ok(Element::new(
            coords.iter().map(|&c| self.field.from_i64(c)).collect(),
        ))
    }

    pub fn element_from(&self, coords: Vec<Scalar>) -> Result<Element> {
        let e = Element::new(coords);
        self.check(&e)?;
        Ok(e)
    }

    /// Products `e_i e_j` as `(k, c)` pairs.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// All nonzero `(i, j, k, c)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        (0..self.dim * self.dim).flat_map(move |ij| {
            let (i, j) = (ij / self.dim, ij % self.dim);
            self.table[ij].iter().map(move |(k, c)| (i, j, *k, c))
        })
    }

    /// Same field and structure constants, ignoring basis names.
    pub fn same_table(&self, other: &StructureAlgebra) -> bool {
        self.field == other.field && self.dim == other.dim && self.table == other.table
    }

    pub fn check(&self, u: &Element) -> Result<()> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            });
        }
        if let Some(c) = u.coords().iter().find(|c| !self.field.contains(c)) {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: c.field().to_string(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    pub(crate) fn mul_unchecked(&self, u: &Element, v: &Element) -> Element {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, a) in u.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        Element::new(out)
    }

    /// Product of two sparse coordinate vectors.
    pub(crate) fn mul_sparse(&self, u: &SparseRow, v: &SparseRow) -> SparseRow {
        if let ([(i, a)], [(j, b)]) = (u.as_slice(), v.as_slice()) {
            let t = &self.table[i * self.dim + j];
            if a.is_one() && b.is_one() {
                return t.clone();
            }
            let ab = a * b;
            return t.iter().map(|(k, c)| (*k, &ab * c)).collect();
        }
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, a) in u {
            for (j, b) in v {
                let t = &self.table[i * self.dim + j];
                if t.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in t {
                    *acc.entry(*k).or_insert_with(|| self.field.zero()) += &(&ab * c);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn commutator(&self, u: &Element, v: &Element) -> Result<Element> {
        Ok(&self.mul(u, v)? - &self.mul(v, u)?)
    }

    pub fn associator(&self, u: &Element, v: &Element, w: &Element) -> Result<Element> {
        let left = self.mul(&self.mul(u, v)?, w)?;
        let right = self.mul(u, &self.mul(v, w)?)?;
        Ok(&left - &right)
    }

    /// `u o v = uv + vu` (no factor 1/2).
    pub fn circle(&self, u: &Element, v: &Element) -> Result<Element> {
        Ok(&self.mul(u, v)? + &self.mul(v, u)?)
    }

    fn assoc_basis(&self, i: usize, j: usize, k: usize) -> Element {
        let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
        let left = self.mul_unchecked(&self.mul_unchecked(&a, &b), &c);
        let right = self.mul_unchecked(&a, &self.mul_unchecked(&b, &c));
        &left - &right
    }

    fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let n = self.dim;
        (0..n * n * n).map(move |t| (t / (n * n), (t / n) % n, t % n))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn is_anticommutative(&self) -> bool {
        (0..self.dim).all(|i| {
            self.basis_product(i, i).is_empty()
                && (0..i).all(|j| {
                    let a = self.basis_product(i, j);
                    let b = self.basis_product(j, i);
                    a.len() == b.len()
                        && a.iter().zip(b).all(|((k, x), (l, y))| k == l && x == &(-y))
                })
        })
    }

    pub fn is_associative(&self) -> bool {
        self.triples()
            .all(|(i, j, k)| self.assoc_basis(i, j, k).is_zero())
    }

    /// `(x, y, x) = 0`, checked on basis vectors together with its
    /// linearization, which is exact in every characteristic.
    pub fn is_flexible(&self) -> bool {
        *self.flags.flexible.get_or_init(|| {
            self.triples().all(|(i, j, k)| {
                if k < i {
                    return true;
                }
                let a = self.assoc_basis(i, j, k);
                if i == k {
                    a.is_zero()
                } else {
                    (&a + &self.assoc_basis(k, j, i)).is_zero()
                }
            })
        })
    }

    /// `(x, x, y) = 0 = (y, x, x)`.
    pub fn is_alternative(&self) -> bool {
        self.triples().all(|(i, j, k)| {
            if j < i {
                return true;
            }
            let (l, r) = if i == j {
                (self.assoc_basis(i, i, k), self.assoc_basis(k, i, i))
            } else {
                (
                    &self.assoc_basis(i, j, k) + &self.assoc_basis(j, i, k),
                    &self.assoc_basis(k, i, j) + &self.assoc_basis(k, j, i),
                )
            };
            l.is_zero() && r.is_zero()
        })
    }

    /// Memo slot for the Jordan-admissibility flag (computed by the identity engine).
    pub(crate) fn jordan_admissible_slot(&self) -> &OnceLock<bool> {
        &self.flags.jordan_admissible
    }

    /// Two-sided unit, if one exists.
    pub fn unit(&self) -> Option<Element> {
        self.flags
            .unit
            .get_or_init(|| {
                let n = self.dim;
                let mut rows = Vec::with_capacity(2 * n * n);
                let mut rhs = Vec::with_capacity(2 * n * n);
                for j in 0..n {
                    for k in 0..n {
                        // sum_i x_i c_ij^k = delta_jk and sum_i x_i c_ji^k = delta_jk
                        let left: Vec<Scalar> =
                            (0..n).map(|i| self.structure_constant(i, j, k)).collect();
                        let right: Vec<Scalar> =
                            (0..n).map(|i| self.structure_constant(j, i, k)).collect();
                        let delta = if j == k {
                            self.field.one()
                        } else {
                            self.field.zero()
                        };
                        rows.push(left);
                        rhs.push(delta.clone());
                        rows.push(right);
                        rhs.push(delta);
                    }
                }
                Echelon::solve(self.field, n, &rows, &rhs).map(Element::new)
            })
            .clone()
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }

    /// Matrix of `x -> u x` (column `j` is `u e_j`).
    pub fn left_mult_matrix(&self, u: &Element) -> Vec<Vec<Scalar>> {
        let cols: Vec<Element> = (0..self.dim)
            .map(|j| self.mul_unchecked(u, &self.basis(j)))
            .collect();
        transpose(&cols, self.dim, self.field)
    }

    /// Matrix of `x -> x u`.
    pub fn right_mult_matrix(&self, u: &Element) -> Vec<Vec<Scalar>> {
        let cols: Vec<Element> = (0..self.dim)
            .map(|j| self.mul_unchecked(&self.basis(j), u))
            .collect();
        transpose(&cols, self.dim, self.field)
    }

    pub fn derived(&self, kind: &Derived) -> Result<StructureAlgebra> {
        let f = self.field;
        match kind {
            Derived::Plus | Derived::Minus => {
                f.require_two_invertible()?;
                let half = f.from_ratio(1, 2)?;
                let sign = if *kind == Derived::Plus {
                    half.clone()
                } else {
                    -&half
                };
                self.combine_with_opposite(&half, &sign)
            }
            Derived::Mutation(lambda) => {
                if !f.contains(lambda) {
                    return Err(Error::FieldMismatch {
                        expected: f.to_string(),
                        found: lambda.field().to_string(),
                    });
                }
                let mu = &f.one() - lambda;
                self.combine_with_opposite(lambda, &mu)
            }
            Derived::UnitalHull => {
                let mut unit_name = "1".to_string();
                while self.basis_names.contains(&unit_name) {
                    unit_name.push('#');
                }
                let mut names = vec![unit_name];
                names.extend(self.basis_names.iter().cloned());
                let n = self.dim + 1;
                let mut entries = vec![(0, 0, 0, f.one())];
                for i in 1..n {
                    entries.push((0, i, i, f.one()));
                    entries.push((i, 0, i, f.one()));
                }
                for (i, j, k, c) in self.entries() {
                    entries.push((i + 1, j + 1, k + 1, c.clone()));
                }
                StructureAlgebra::new(f, names, entries)
            }
        }
    }

    /// Algebra with product `a xy + b yx`.
    fn combine_with_opposite(&self, a: &Scalar, b: &Scalar) -> Result<StructureAlgebra> {
        let mut entries = Vec::new();
        for (i, j, k, c) in self.entries() {
            entries.push((i, j, k, a * c));
            entries.push((j, i, k, b * c));
        }
        StructureAlgebra::new(self.field, self.basis_names.clone(), entries)
    }

    pub fn plus(&self) -> Result<StructureAlgebra> {
        self.derived(&Derived::Plus)
    }

    pub fn minus(&self) -> Result<StructureAlgebra> {
        self.derived(&Derived::Minus)
    }

    pub fn mutation(&self, lambda: &Scalar) -> Result<StructureAlgebra> {
        self.derived(&Derived::Mutation(lambda.clone()))
    }

    pub fn unital_hull(&self) -> Result<StructureAlgebra> {
        self.derived(&Derived::UnitalHull)
    }

    /// `J(a,b,c) - 4(a,b,c) + [[a,c],b]` on basis vectors, where
    /// `J(a,b,c) = [[a,b],c] + [[b,c],a] + [[c,a],b]`.
    pub fn kokoris_defect(&self, a: &Element, b: &Element, c: &Element) -> Result<Element> {
        let comm = |x: &Element, y: &Element| self.commutator(x, y);
        let j = &(&comm(&comm(a, b)?, c)? + &comm(&comm(b, c)?, a)?) + &comm(&comm(c, a)?, b)?;
        let four = self.field.from_i64(4);
        let assoc = self.associator(a, b, c)?.scale(&four);
        Ok(&(&j - &assoc) + &comm(&comm(a, c)?, b)?)
    }

    /// Whether the Kokoris identity holds (multilinear, so basis triples suffice).
    pub fn satisfies_kokoris(&self) -> bool {
        self.kokoris_witness().is_none()
    }

    pub fn kokoris_witness(&self) -> Option<(usize, usize, usize)> {
        self.triples().find(|&(i, j, k)| {
            !self
                .kokoris_defect(&self.basis(i), &self.basis(j), &self.basis(k))
                .expect("basis elements belong to the algebra")
                .is_zero()
        })
    }

    /// Solves `(x, y, z) = alpha [[x, z], y]` for `alpha`.
    ///
    /// Returns `None` when no single scalar works. When every `[[x, z], y]`
    /// vanishes the algebra is associative iff any `alpha` works; then `0`
    /// is returned.
    pub fn quasi_associative_alpha(&self) -> Option<Scalar> {
        let mut alpha: Option<Scalar> = None;
        for (i, j, k) in self.triples() {
            let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
            let lhs = self.associator(&x, &y, &z).ok()?;
            let rhs = self.commutator(&self.commutator(&x, &z).ok()?, &y).ok()?;
            match &alpha {
                Some(a) => {
                    if lhs != rhs.scale(a) {
                        return None;
                    }
                }
                None => {
                    if let Some(p) = rhs.coords().iter().position(|c| !c.is_zero()) {
                        let a = &lhs.coords()[p] * &rhs.coords()[p].inv().unwrap();
                        if lhs != rhs.scale(&a) {
                            return None;
                        }
                        alpha = Some(a);
                    } else if !lhs.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(alpha.unwrap_or_else(|| self.field.zero()))
    }

    /// Checks `(x, y, z) = alpha [[x, z], y]` for a given `alpha`.
    pub fn satisfies_quasi_associative(&self, alpha: &Scalar) -> bool {
        self.triples().all(|(i, j, k)| {
            let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
            let lhs = self.associator(&x, &y, &z).unwrap();
            let rhs = self
                .commutator(&self.commutator(&x, &z).unwrap(), &y)
                .unwrap();
            lhs == rhs.scale(alpha)
        })
    }

    /// Human-readable linear combination of basis names.
    pub fn format_element(&self, u: &Element) -> String {
        let mut parts = Vec::new();
        for (c, name) in u.coords().iter().zip(&self.basis_names) {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let term = if c.is_one() {
                name.clone()
            } else if cs.contains(['+', '/']) || cs[1..].contains('-') {
                format!("({cs})*{name}")
            } else {
                format!("{cs}*{name}")
            };
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn transpose(cols: &[Element], n: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![field.zero(); n]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.coords().iter().enumerate() {
            m[i][j] = c.clone();
        }
    }
    m
}

pub(crate) fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>], field: FieldSpec) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![field.zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &(aik * &b[k][j]);
                }
            }
        }
    }
    out
}

pub(crate) fn trace(a: &[Vec<Scalar>], field: FieldSpec) -> Scalar {
    let mut t = field.zero();
    for (i, row) in a.iter().enumerate() {
        t += &row[i];
    }
    t
}

impl fmt::Display for StructureAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "algebra over {} with basis [{}]",
            self.field,
            self.basis_names.join(", ")
        )?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.basis_product(i, j);
                if p.is_empty() {
                    continue;
                }
                let mut v = self.zero();
                for (k, c) in p {
                    v.coords[*k] = c.clone();
                }
                writeln!(
                    f,
                    "  {} * {} = {}",
                    self.basis_names[i],
                    self.basis_names[j],
                    self.format_element(&v)
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> StructureAlgebra {
        crate::constructions::matrix_algebra(2, FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn matrix_units_multiply() {
        let a = m2();
        let e12 = a.basis(1);
        let e21 = a.basis(2);
        assert_eq!(a.mul(&e12, &e21).unwrap(), a.basis(0));
        let c = a.commutator(&e12, &e21).unwrap();
        assert_eq!(c, a.element(&[1, 0, 0, -1]).unwrap());
        assert!(a.commutator(&e12, &e12).unwrap().is_zero());
    }

    #[test]
    fn unit_is_found() {
        let a = m2();
        assert_eq!(a.unit(), Some(a.element(&[1, 0, 0, 1]).unwrap()));
        let x = a.element(&[3, -1, 2, 5]).unwrap();
        assert_eq!(a.mul(&a.unit().unwrap(), &x).unwrap(), x);
        let z = StructureAlgebra::zero_algebra(FieldSpec::Rationals, 2).unwrap();
        assert!(z.unit().is_none());
    }

    #[test]
    fn mismatched_elements_rejected() {
        let a = m2();
        let bad = Element::zero(FieldSpec::Rationals, 3);
        assert!(matches!(
            a.mul(&bad, &a.basis(0)),
            Err(Error::DimensionMismatch { .. })
        ));
        let gf = Element::zero(FieldSpec::prime(5).unwrap(), 4);
        assert!(matches!(
            a.mul(&gf, &a.basis(0)),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn derived_algebras() {
        let a = m2();
        let plus = a.plus().unwrap();
        assert!(plus.is_commutative());
        let half = FieldSpec::Rationals.from_ratio(1, 2).unwrap();
        assert!(a.mutation(&half).unwrap().same_table(&plus));
        assert!(a
            .mutation(&FieldSpec::Rationals.one())
            .unwrap()
            .same_table(&a));
        let comm =
            crate::constructions::truncated_polynomial(1, 2, FieldSpec::Rationals, true).unwrap();
        assert_eq!(comm.minus().unwrap().entries().count(), 0);
        let hull = StructureAlgebra::zero_algebra(FieldSpec::Rationals, 2)
            .unwrap()
            .unital_hull()
            .unwrap();
        assert_eq!(hull.dim(), 3);
        assert_eq!(hull.unit(), Some(hull.basis(0)));
        let gf2 = StructureAlgebra::zero_algebra(FieldSpec::prime(2).unwrap(), 1).unwrap();
        assert_eq!(gf2.plus().unwrap_err(), Error::CharacteristicTwo);
    }

    #[test]
    fn circle_in_commutative_algebra_doubles() {
        let a =
            crate::constructions::truncated_polynomial(1, 3, FieldSpec::Rationals, true).unwrap();
        let u = a.element(&[1, 2, 0, 1]).unwrap();
        let v = a.element(&[0, 1, 3, 0]).unwrap();
        assert_eq!(
            a.circle(&u, &v).unwrap(),
            a.mul(&u, &v)
                .unwrap()
                .scale(&FieldSpec::Rationals.from_i64(2))
        );
    }

    #[test]
    fn predicates_on_matrix_algebra() {
        let a = m2();
        assert!(a.is_associative());
        assert!(a.is_flexible());
        assert!(a.is_alternative());
        assert!(!a.is_commutative());
        assert!(!a.is_anticommutative());
        assert!(a.minus().unwrap().is_anticommutative());
    }

    #[test]
    fn format_element_uses_basis_names() {
        let a = m2();
        let u = a.element(&[1, 0, 0, -1]).unwrap();
        assert_eq!(a.format_element(&u), "e11 + -1*e22");
        assert_eq!(a.format_element(&a.zero()), "0");
    }
}
