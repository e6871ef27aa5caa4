//! Exact row reduction.
//!
//! [`Echelon`] keeps a row space in reduced row echelon form with rows
//! sorted by pivot column, so two equal row spaces always have identical
//! representations. Rows are stored sparsely; most spaces met in practice
//! (monomial algebras, multilinear components) have very sparse echelon rows.

use crate::field::{FieldSpec, Scalar};

pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    // each row starts with its pivot entry, which is 1
    rows: Vec<SparseRow>,
}

fn entry(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(j, _)| *j)
        .ok()
        .map(|i| &row[i].1)
}

/// `row - c * other`, both sorted by column.
fn axpy(row: &SparseRow, c: &Scalar, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut a, mut b) = (row.iter().peekable(), other.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((i, x)), Some((j, y))) => {
                if i < j {
                    out.push((*i, x.clone()));
                    a.next();
                } else if j < i {
                    out.push((*j, -&(c * y)));
                    b.next();
                } else {
                    let v = x - &(c * y);
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((i, x)), None) => {
                out.push((*i, x.clone()));
                a.next();
            }
            (None, Some((j, y))) => {
                out.push((*j, -&(c * y)));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows<I>(field: FieldSpec, ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut e = Echelon::new(field, ncols);
        for r in rows {
            e.insert(&r);
        }
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn sparse_rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| self.densify(r)).collect()
    }

    fn densify(&self, r: &SparseRow) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.ncols];
        for (j, c) in r {
            v[*j] = c.clone();
        }
        v
    }

    // rows have no entries left of their pivot and none in other pivot
    // columns, so entries of `v` can be cleared left to right
    fn reduce_sparse(&self, mut v: SparseRow) -> SparseRow {
        let mut idx = 0;
        while idx < v.len() {
            let col = v[idx].0;
            match self.rows.binary_search_by_key(&col, |row| row[0].0) {
                Ok(r) => {
                    let c = v[idx].1.clone();
                    v = axpy(&v, &c, &self.rows[r]);
                }
                Err(_) => idx += 1,
            }
        }
        v
    }

    fn sparsify(&self, v: &[Scalar]) -> SparseRow {
        assert_eq!(v.len(), self.ncols, "vector length must match column count");
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, c.clone()))
            .collect()
    }

    /// Remainder of `v` modulo the row space; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce_sparse(self.sparsify(v));
        self.densify(&r)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce_sparse(self.sparsify(v)).is_empty()
    }

    pub fn contains_sparse(&self, v: SparseRow) -> bool {
        self.reduce_sparse(v).is_empty()
    }

    /// Adds `v` to the row space. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let s = self.sparsify(v);
        self.insert_sparse(s)
    }

    /// Sparse variant of [`Echelon::insert`]; `v` must be sorted by column
    /// and free of explicit zeros.
    pub fn insert_sparse(&mut self, v: SparseRow) -> bool {
        if self.is_full() {
            return false;
        }
        let r = self.reduce_sparse(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv().expect("leading entry is nonzero");
        let r: SparseRow = r.into_iter().map(|(j, c)| (j, &c * &inv)).collect();
        let q = r[0].0;
        for row in &mut self.rows {
            if let Some(c) = entry(row, q) {
                let c = c.clone();
                *row = axpy(row, &c, &r);
            }
        }
        let pos = self.rows.partition_point(|row| row[0].0 < q);
        self.rows.insert(pos, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains_sparse(r.clone()))
    }

    pub fn sum(&self, other: &Echelon) -> Echelon {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert_sparse(r.clone());
        }
        out
    }

    /// Basis of `{x : M x = 0}` where `M` has the given rows.
    pub fn nullspace(field: FieldSpec, ncols: usize, rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let e = Echelon::from_rows(field, ncols, rows.iter().cloned());
        let pivots: Vec<usize> = e.pivots().collect();
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![field.zero(); ncols];
            x[free] = field.one();
            for row in &e.rows {
                if let Some(c) = entry(row, free) {
                    x[row[0].0] = -c;
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(
        field: FieldSpec,
        ncols: usize,
        rows: &[Vec<Scalar>],
        rhs: &[Scalar],
    ) -> Option<Vec<Scalar>> {
        let augmented: Vec<Vec<Scalar>> = rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| {
                let mut v = r.clone();
                v.push(-b);
                v
            })
            .collect();
        let e = Echelon::from_rows(field, ncols + 1, augmented);
        if e.pivots().any(|p| p == ncols) {
            return None;
        }
        // set the augmented coordinate to 1 and every free variable to 0
        let mut x = vec![field.zero(); ncols];
        for row in &e.rows {
            if let Some(c) = entry(row, ncols) {
                x[row[0].0] = -c;
            }
        }
        Some(x)
    }
}
