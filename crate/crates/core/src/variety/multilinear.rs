//! Multilinear components of the free nonassociative algebra.
//!
//! The degree-`n` component has basis the planar binary trees with `n`
//! leaves labelled by a permutation of `x1..xn`. Column index is
//! `shape * n! + rank(permutation)`, with shapes ordered recursively by the
//! size of the left subtree, then left shape, then right shape, and
//! permutations in lexicographic order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::identity::{Monomial, NAPoly};
use crate::linalg::SparseRow;

/// Largest component size built without an explicit budget (degree 6 fits).
pub const DEFAULT_COLUMN_BUDGET: u64 = 40_000;

/// Bracketing of a monomial, without labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    /// All shapes with `n` leaves in column order.
    pub fn all(n: usize) -> Vec<Shape> {
        if n == 1 {
            return vec![Shape::Leaf];
        }
        let mut out = Vec::new();
        for l in 1..n {
            let rights = Shape::all(n - l);
            for a in Shape::all(l) {
                for b in &rights {
                    out.push(Shape::Node(Box::new(a.clone()), Box::new(b.clone())));
                }
            }
        }
        out
    }

    /// Labels the leaves left to right.
    pub fn fill(&self, labels: &mut impl Iterator<Item = usize>) -> Term {
        match self {
            Shape::Leaf => Term::Leaf(labels.next().expect("enough labels")),
            Shape::Node(a, b) => Term::node(a.fill(labels), b.fill(labels)),
        }
    }
}

/// A monomial with variables `x_{i+1}` written as leaf `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Leaf(usize),
    Node(Box<Term>, Box<Term>),
}

impl Term {
    pub fn node(a: Term, b: Term) -> Term {
        Term::Node(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    fn labels_into(&self, out: &mut Vec<usize>) {
        match self {
            Term::Leaf(i) => out.push(*i),
            Term::Node(a, b) => {
                a.labels_into(out);
                b.labels_into(out);
            }
        }
    }

    pub fn labels(&self) -> Vec<usize> {
        let mut v = Vec::new();
        self.labels_into(&mut v);
        v
    }

    /// Replaces leaf `i` by `subs[i]`.
    pub fn substitute(&self, subs: &[Term]) -> Term {
        match self {
            Term::Leaf(i) => subs[*i].clone(),
            Term::Node(a, b) => Term::node(a.substitute(subs), b.substitute(subs)),
        }
    }

    pub fn to_monomial(&self, names: &[String]) -> Monomial {
        match self {
            Term::Leaf(i) => Monomial::var(&names[*i]),
            Term::Node(a, b) => Monomial::mul(a.to_monomial(names), b.to_monomial(names)),
        }
    }

    fn from_monomial(m: &Monomial, index: &BTreeMap<String, usize>) -> Option<Term> {
        match m {
            Monomial::Var(v) => index.get(v).map(|&i| Term::Leaf(i)),
            Monomial::Mul(a, b) => Some(Term::node(
                Term::from_monomial(a, index)?,
                Term::from_monomial(b, index)?,
            )),
        }
    }
}

/// Number of shapes with `n` leaves, `Catalan(n - 1)`.
pub fn shape_count(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n.saturating_sub(1) as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Size of the degree-`n` multilinear component, `n! * Catalan(n - 1)`.
pub fn component_dim(n: usize) -> Option<u64> {
    factorial(n).checked_mul(shape_count(n))
}

fn perm_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn perm_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

fn shape_rank(t: &Term) -> (usize, usize) {
    match t {
        Term::Leaf(_) => (0, 1),
        Term::Node(a, b) => {
            let (ra, la) = shape_rank(a);
            let (rb, lb) = shape_rank(b);
            let n = la + lb;
            let before: u64 = (1..la).map(|l| shape_count(l) * shape_count(n - l)).sum();
            let r = before as usize + ra * shape_count(lb) as usize + rb;
            (r, n)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearSpace {
    degree: usize,
    shapes: Vec<Shape>,
    names: Vec<String>,
}

impl MultilinearSpace {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_budget(n, DEFAULT_COLUMN_BUDGET)
    }

    pub fn with_budget(n: usize, budget: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        let dim = component_dim(n).unwrap_or(u64::MAX);
        if dim > budget {
            return Err(Error::BudgetExceeded {
                what: format!("multilinear component of degree {n}"),
                needed: dim as u128,
                budget: budget as u128,
            });
        }
        Ok(MultilinearSpace {
            degree: n,
            shapes: Shape::all(n),
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.shapes.len() * factorial(self.degree) as usize
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    /// `x1, ..., xn`.
    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    /// Column of a multilinear term in `0..n`.
    pub fn column(&self, t: &Term) -> usize {
        let (s, n) = shape_rank(t);
        debug_assert_eq!(n, self.degree);
        s * factorial(n) as usize + perm_rank(&t.labels())
    }

    pub fn term(&self, col: usize) -> Term {
        let f = factorial(self.degree) as usize;
        let shape = &self.shapes[col / f];
        shape.fill(&mut perm_unrank(self.degree, col % f).into_iter())
    }

    pub fn monomial(&self, col: usize) -> Monomial {
        self.term(col).to_monomial(&self.names)
    }

    /// All terms of the component in column order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        (0..self.dim()).map(|c| self.term(c))
    }

    /// Coordinates of a linear combination of terms.
    pub fn row<'a, I>(&self, terms: I) -> SparseRow
    where
        I: IntoIterator<Item = (&'a Term, &'a Scalar)>,
    {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (t, c) in terms {
            let col = self.column(t);
            match acc.get_mut(&col) {
                Some(x) => *x += c,
                None => {
                    acc.insert(col, c.clone());
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Coordinates of a polynomial that is multilinear in exactly `vars`,
    /// where `vars[i]` plays the role of `x_{i+1}`.
    pub fn vector(&self, poly: &NAPoly, vars: &[String]) -> Result<SparseRow> {
        if vars.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: vars.len(),
            });
        }
        let index: BTreeMap<String, usize> = vars
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut terms = Vec::new();
        for (m, c) in poly.terms() {
            let t = Term::from_monomial(m, &index)
                .filter(|t| {
                    let mut l = t.labels();
                    l.sort_unstable();
                    l == (0..self.degree).collect::<Vec<_>>()
                })
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "monomial {m} is not multilinear in {}",
                        vars.join(", ")
                    ))
                })?;
            terms.push((t, c.clone()));
        }
        Ok(self.row(terms.iter().map(|(t, c)| (t, c))))
    }

    /// The polynomial with the given coordinates, in `x1..xn`.
    pub fn poly(&self, row: &SparseRow, field: FieldSpec) -> NAPoly {
        NAPoly::from_terms(
            field,
            row.iter().map(|(c, s)| (self.monomial(*c), s.clone())),
        )
    }
}

/// Terms of `Term::Leaf` labels drawn from `block`: every shape times every
/// ordering of the block.
pub fn block_terms(block: &[usize]) -> Vec<Term> {
    let n = block.len();
    let shapes = Shape::all(n);
    let f = factorial(n) as usize;
    let mut out = Vec::with_capacity(shapes.len() * f);
    for s in &shapes {
        for r in 0..f {
            let perm = perm_unrank(n, r);
            out.push(s.fill(&mut perm.iter().map(|&i| block[i])));
        }
    }
    out
}
