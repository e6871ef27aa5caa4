use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::Signed;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A planar binary tree with variable leaves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Var(String),
    Mul(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    pub fn var(name: &str) -> Self {
        Monomial::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Monomial, b: Monomial) -> Self {
        Monomial::Mul(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            Monomial::Var(_) => 1,
            Monomial::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Monomial::Var(v) => out.push(v),
            Monomial::Mul(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn multidegree(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for v in self.leaves() {
            *m.entry(v.to_string()).or_insert(0) += 1;
        }
        m
    }

    /// Same tree with the leaves replaced, in order, by `names`.
    pub fn relabel<'a, I>(&self, names: &mut I) -> Monomial
    where
        I: Iterator<Item = &'a str>,
    {
        match self {
            Monomial::Var(_) => Monomial::var(names.next().expect("enough leaf names")),
            Monomial::Mul(a, b) => {
                let a = a.relabel(names);
                let b = b.relabel(names);
                Monomial::mul(a, b)
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Var(v) => write!(f, "{v}"),
            Monomial::Mul(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

/// A nonassociative polynomial without constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NAPoly {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl NAPoly {
    pub fn zero(field: FieldSpec) -> Self {
        NAPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(name: &str, field: FieldSpec) -> Self {
        Self::monomial(Monomial::var(name), field.one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let field = c.field();
        let mut p = NAPoly::zero(field);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(field: FieldSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = NAPoly::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert!(self.field.contains(&c), "coefficient from another field");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, c: &Scalar) -> NAPoly {
        let mut out = NAPoly::zero(self.field);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn add(&self, other: &NAPoly) -> NAPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NAPoly) -> NAPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> NAPoly {
        self.scale(&-&self.field.one())
    }

    /// Bilinear extension of `(m, n) -> (m*n)`.
    pub fn mul(&self, other: &NAPoly) -> NAPoly {
        let mut out = NAPoly::zero(self.field);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(Monomial::mul(a.clone(), b.clone()), c * d);
            }
        }
        out
    }

    pub fn commutator(&self, other: &NAPoly) -> NAPoly {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn associator(&self, b: &NAPoly, c: &NAPoly) -> NAPoly {
        self.mul(b).mul(c).sub(&self.mul(&b.mul(c)))
    }

    /// `u o v = uv + vu`.
    pub fn circle(&self, other: &NAPoly) -> NAPoly {
        self.mul(other).add(&other.mul(self))
    }

    /// `(uv + vu) / 2`.
    pub fn jordan_product(&self, other: &NAPoly) -> Result<NAPoly> {
        self.field.require_two_invertible()?;
        let half = self.field.from_ratio(1, 2)?;
        Ok(self.circle(other).scale(&half))
    }

    /// Associator of the Jordan product `(uv + vu) / 2`.
    pub fn jordan_associator(&self, b: &NAPoly, c: &NAPoly) -> Result<NAPoly> {
        let left = self.jordan_product(b)?.jordan_product(c)?;
        let right = self.jordan_product(&b.jordan_product(c)?)?;
        Ok(left.sub(&right))
    }

    /// Principal right power `p^n = (p^(n-1)) p`.
    pub fn power(&self, n: usize) -> Result<NAPoly> {
        if n == 0 {
            return Err(Error::InvalidArgument("powers start at 1".into()));
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = out.mul(self);
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.leaves().into_iter().map(String::from))
            .collect()
    }

    /// Splits into multihomogeneous components keyed by multidegree.
    pub fn components(&self) -> BTreeMap<BTreeMap<String, usize>, NAPoly> {
        let mut out: BTreeMap<BTreeMap<String, usize>, NAPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree())
                .or_insert_with(|| NAPoly::zero(self.field))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.components().len() <= 1
    }

    /// Every variable occurs exactly once in every term.
    pub fn is_multilinear(&self) -> bool {
        let vars = self.variables();
        self.terms.keys().all(|m| {
            let md = m.multidegree();
            md.len() == vars.len() && md.values().all(|&d| d == 1)
        })
    }

    /// Reads the rational coefficients in another field.
    pub fn to_field(&self, field: FieldSpec) -> Result<NAPoly> {
        if field == self.field {
            return Ok(self.clone());
        }
        let mut out = NAPoly::zero(field);
        for (m, c) in &self.terms {
            let c = match c {
                Scalar::Rational(q) => field.from_rational(q)?,
                other => {
                    return Err(Error::FieldMismatch {
                        expected: field.to_string(),
                        found: other.field().to_string(),
                    })
                }
            };
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Substitutes polynomials for variables; unlisted variables stay.
    pub fn substitute(&self, subs: &BTreeMap<String, NAPoly>) -> NAPoly {
        fn sub_mono(m: &Monomial, subs: &BTreeMap<String, NAPoly>, field: FieldSpec) -> NAPoly {
            match m {
                Monomial::Var(v) => subs
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| NAPoly::var(v, field)),
                Monomial::Mul(a, b) => sub_mono(a, subs, field).mul(&sub_mono(b, subs, field)),
            }
        }
        let mut out = NAPoly::zero(self.field);
        for (m, c) in &self.terms {
            out = out.add(&sub_mono(m, subs, self.field).scale(c));
        }
        out
    }

    /// Renames variables.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> NAPoly {
        let subs = map
            .iter()
            .map(|(k, v)| (k.clone(), NAPoly::var(v, self.field)))
            .collect();
        self.substitute(&subs)
    }
}

impl fmt::Display for NAPoly {
    /// Fully parenthesized form accepted by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let minus_one = -&self.field.one();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = match c {
                Scalar::Rational(q) if q.is_negative() => (true, -c),
                _ if c == &minus_one => (true, self.field.one()),
                _ => (false, c.clone()),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if matches!(abs, Scalar::Quadratic { .. }) {
                write!(f, "({abs})*{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// An identity `poly = 0` with the text it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub poly: NAPoly,
    pub source: String,
}

impl Identity {
    pub fn new(poly: NAPoly, source: impl Into<String>) -> Self {
        Identity {
            poly,
            source: source.into(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.poly.field()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn components(&self) -> Vec<NAPoly> {
        self.poly.components().into_values().collect()
    }

    pub fn to_field(&self, field: FieldSpec) -> Result<Identity> {
        Ok(Identity {
            poly: self.poly.to_field(field)?,
            source: self.source.clone(),
        })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn v(n: &str) -> NAPoly {
        NAPoly::var(n, q())
    }

    #[test]
    fn commutator_expands() {
        let c = v("x").commutator(&v("y"));
        assert_eq!(c.len(), 2);
        assert_eq!(c.to_string(), "(x*y) - (y*x)");
        assert!(v("x").commutator(&v("x")).is_zero());
    }

    #[test]
    fn associator_and_components() {
        let a = v("x").associator(&v("y"), &v("x"));
        assert_eq!(a.degree(), 3);
        assert!(a.is_multihomogeneous());
        assert!(!a.is_multilinear());
        let mixed = a.add(&v("x"));
        assert_eq!(mixed.components().len(), 2);
    }

    #[test]
    fn powers_are_right_normed() {
        let p = v("x").power(3).unwrap();
        assert_eq!(p.to_string(), "((x*x)*x)");
        assert!(v("x").power(0).is_err());
    }

    #[test]
    fn field_conversion() {
        let p = v("x").mul(&v("y")).scale(&q().from_ratio(1, 2).unwrap());
        let g = p.to_field(FieldSpec::prime(7).unwrap()).unwrap();
        assert_eq!(g.to_string(), "4*(x*y)");
        assert!(p.to_field(FieldSpec::prime(2).unwrap()).is_err());
    }

    #[test]
    fn substitution() {
        let p = v("x").mul(&v("y"));
        let subs = [("x".to_string(), v("a").add(&v("b")))]
            .into_iter()
            .collect();
        assert_eq!(p.substitute(&subs).to_string(), "(a*y) + (b*y)");
    }
}
