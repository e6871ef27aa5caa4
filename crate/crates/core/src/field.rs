//! Exact coefficient fields: the rationals, prime fields and quadratic
//! extensions `Q(r)` with `r^2 = d`.
//!
//! Every scalar carries enough of its field (modulus, radicand) to do
//! arithmetic on its own. Mixing scalars from different fields is an
//! internal invariant violation and panics; public entry points validate
//! fields before any arithmetic happens.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The field all coefficients of an algebra, polynomial or subspace live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", try_from = "RawField")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "GFp")]
    PrimeField { p: u64 },
    /// `Q(r)` with `r^2 = d`, `d` not a rational square.
    #[serde(rename = "Q-sqrt")]
    QuadraticExtension { d: i64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind")]
enum RawField {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "GFp")]
    PrimeField { p: u64 },
    #[serde(rename = "Q-sqrt")]
    QuadraticExtension { d: i64 },
}

impl TryFrom<RawField> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawField) -> Result<Self> {
        match raw {
            RawField::Rationals => Ok(FieldSpec::Rationals),
            RawField::PrimeField { p } => FieldSpec::prime(p),
            RawField::QuadraticExtension { d } => FieldSpec::quadratic(d),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|c| c >= 0 && c.checked_mul(c) == Some(n))
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    pub const MAX_PRIME: u64 = 1 << 31;

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= Self::MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "prime {p} exceeds supported bound {}",
                Self::MAX_PRIME
            )));
        }
        Ok(FieldSpec::PrimeField { p })
    }

    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || is_square(d) {
            return Err(Error::InvalidField(format!(
                "Q(sqrt({d})) is not a field extension"
            )));
        }
        Ok(FieldSpec::QuadraticExtension { d })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::PrimeField { p } => *p,
            _ => 0,
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::PrimeField { p } => Some(*p),
            _ => None,
        }
    }

    /// Polarization and identity work refuse `0 < char <= degree`.
    pub fn check_degree(&self, degree: usize) -> Result<()> {
        let c = self.characteristic();
        if c != 0 && c <= degree as u64 {
            return Err(Error::CharacteristicTooSmall {
                characteristic: c,
                degree,
            });
        }
        Ok(())
    }

    pub fn require_two_invertible(&self) -> Result<()> {
        if self.characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        Ok(())
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldSpec::PrimeField { p } => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
            FieldSpec::QuadraticExtension { d } => Scalar::Quadratic {
                re: BigRational::from_integer(n.into()),
                im: BigRational::zero(),
                d,
            },
        }
    }

    /// Image of a rational number; fails in `GF(p)` when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldSpec::QuadraticExtension { d } => Ok(Scalar::Quadratic {
                re: q.clone(),
                im: BigRational::zero(),
                d,
            }),
            FieldSpec::PrimeField { p } => {
                let pb = BigInt::from(p);
                let num = (q.numer() % &pb + &pb) % &pb;
                let den = (q.denom() % &pb + &pb) % &pb;
                if den.is_zero() {
                    return Err(Error::InvalidScalar(format!(
                        "{q} has denominator divisible by {p}"
                    )));
                }
                let n = num.to_u64().expect("reduced residue fits");
                let dn = den.to_u64().expect("reduced residue fits");
                let inv = pow_mod(dn, p - 2, p);
                Ok(Scalar::Modular {
                    value: ((n as u128 * inv as u128) % p as u128) as u64,
                    modulus: p,
                })
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::InvalidScalar("zero denominator".into()));
        }
        self.from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// `r` with `r^2 = d` in a quadratic extension.
    pub fn adjoined_root(&self) -> Option<Scalar> {
        match *self {
            FieldSpec::QuadraticExtension { d } => Some(Scalar::Quadratic {
                re: BigRational::zero(),
                im: BigRational::one(),
                d,
            }),
            _ => None,
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::PrimeField { p }, Scalar::Modular { modulus, value }) => {
                p == modulus && value < p
            }
            (FieldSpec::QuadraticExtension { d }, Scalar::Quadratic { d: e, .. }) => d == e,
            _ => false,
        }
    }

    /// All elements of a prime field in the order 0, 1, ..., p-1.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            FieldSpec::PrimeField { p } => Some(
                (0..p)
                    .map(|value| Scalar::Modular { value, modulus: p })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Square roots of `s` that can be found exactly in this field.
    ///
    /// Prime fields are searched exhaustively; in `Q(r)` only roots of the
    /// form `a` or `b*r` with rational `a`, `b` are tried.
    pub fn square_roots(&self, s: &Scalar) -> Vec<Scalar> {
        match *self {
            FieldSpec::PrimeField { p } => (0..p)
                .map(|value| Scalar::Modular { value, modulus: p })
                .filter(|x| &(x * x) == s)
                .collect(),
            FieldSpec::Rationals => rational_sqrt(s.as_rational().unwrap())
                .map(|r| {
                    let a = Scalar::Rational(r);
                    let b = -&a;
                    if a == b {
                        vec![a]
                    } else {
                        vec![a, b]
                    }
                })
                .unwrap_or_default(),
            FieldSpec::QuadraticExtension { d } => {
                let Scalar::Quadratic { re, im, .. } = s else {
                    return vec![];
                };
                if !im.is_zero() {
                    return vec![];
                }
                if let Some(r) = rational_sqrt(re) {
                    let a = self.from_rational(&r).unwrap();
                    return if r.is_zero() {
                        vec![a]
                    } else {
                        vec![a.clone(), -&a]
                    };
                }
                // (b r)^2 = b^2 d = re
                let q = re / BigRational::from_integer(d.into());
                if let Some(b) = rational_sqrt(&q) {
                    let x = Scalar::Quadratic {
                        re: BigRational::zero(),
                        im: b,
                        d,
                    };
                    return vec![x.clone(), -&x];
                }
                vec![]
            }
        }
    }

    /// Parses a coefficient string: `"3/2"`, `"-1"`, and in `Q(r)` also
    /// `"1/2+3*r"`, `"-r"`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::InvalidScalar("empty coefficient".into()));
        }
        if s.ends_with('r') {
            let FieldSpec::QuadraticExtension { d } = *self else {
                return Err(Error::InvalidScalar(format!(
                    "'{text}' uses the adjoined root outside Q(r)"
                )));
            };
            let split = s
                .char_indices()
                .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
                .map(|(i, _)| i)
                .next_back();
            let (re_s, im_s) = match split {
                Some(i) => (&s[..i], &s[i..]),
                None => ("", s.as_str()),
            };
            let re = if re_s.is_empty() {
                BigRational::zero()
            } else {
                parse_rational(re_s)?
            };
            let im_s = im_s.trim_end_matches('r').trim_end_matches('*');
            let im = match im_s {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_rational(other)?,
            };
            return Ok(Scalar::Quadratic { re, im, d });
        }
        self.from_rational(&parse_rational(&s)?)
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidScalar(format!("'{s}' is not a decimal rational"));
    let s = s.strip_prefix('+').unwrap_or(s);
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField { p } => write!(f, "gf:{p}"),
            FieldSpec::QuadraticExtension { d } => write!(f, "q-sqrt:{d}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Command-line syntax: `q`, `gf:<p>`, `q-sqrt:<d>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("gf:") {
            let p = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad prime '{p}'")))?;
            return FieldSpec::prime(p);
        }
        if let Some(d) = s.strip_prefix("q-sqrt:") {
            let d = d
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad radicand '{d}'")))?;
            return FieldSpec::quadratic(d);
        }
        Err(Error::InvalidField(format!("unknown field '{s}'")))
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Modular {
        value: u64,
        modulus: u64,
    },
    /// `re + im * r` with `r^2 = d`.
    Quadratic {
        re: BigRational,
        im: BigRational,
        d: i64,
    },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::Quadratic { re, im, .. } => re.is_zero() && im.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
            Scalar::Quadratic { re, im, .. } => re.is_one() && im.is_zero(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::PrimeField { p: *modulus },
            Scalar::Quadratic { d, .. } => FieldSpec::QuadraticExtension { d: *d },
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            Scalar::Quadratic { re, im, d } => {
                // (a + b r)^-1 = (a - b r) / (a^2 - d b^2)
                let dd = BigRational::from_integer((*d).into());
                let norm = re * re - &dd * im * im;
                Scalar::Quadratic {
                    re: re / &norm,
                    im: -(im / &norm),
                    d: *d,
                }
            }
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn scale_i64(&self, n: i64) -> Scalar {
        self * &self.field().from_i64(n)
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {:?} vs {:?}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Modular {
                value: (a + b) % p,
                modulus: *p,
            },
            (
                Scalar::Quadratic { re: a, im: b, d },
                Scalar::Quadratic {
                    re: c,
                    im: e,
                    d: d2,
                },
            ) if d == d2 => Scalar::Quadratic {
                re: a + c,
                im: b + e,
                d: *d,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Modular {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            (
                Scalar::Quadratic { re: a, im: b, d },
                Scalar::Quadratic {
                    re: c,
                    im: e,
                    d: d2,
                },
            ) if d == d2 => {
                let dd = BigRational::from_integer((*d).into());
                Scalar::Quadratic {
                    re: a * c + dd * b * e,
                    im: a * e + b * c,
                    d: *d,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::Quadratic { re, im, d } => Scalar::Quadratic {
                re: -re,
                im: -im,
                d: *d,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        // fast path for the hot modular case
        if let (
            Scalar::Modular { value, modulus },
            Scalar::Modular {
                value: b,
                modulus: q,
            },
        ) = (&mut *self, rhs)
        {
            if modulus == q {
                *value = (*value + b) % *modulus;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &(-rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::Quadratic { re, im, .. } => {
                if im.is_zero() {
                    write!(f, "{re}")
                } else if re.is_zero() {
                    write!(f, "{im}*r")
                } else if im.is_negative() {
                    write!(f, "{re}-{}*r", -im)
                } else {
                    write!(f, "{re}+{im}*r")
                }
            }
        }
    }
}
