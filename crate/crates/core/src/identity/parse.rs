//! The identity language.
//!
//! ```text
//! identity := expr ('=' expr)?
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor (('*'|'o') factor)*     at most two non-numeric factors
//! factor   := atom ('^' INT)?
//! atom     := NUMBER ('/' NUMBER)? | IDENT | '[' expr ',' expr ']'
//!           | '(' expr ')' | '(' expr ',' expr ',' expr ')'
//!           | ('J' | 'assoc' | 'jassoc') '(' expr ',' expr ',' expr ')'
//! ```
//!
//! `[a,b] = ab - ba`, `(a,b,c) = (ab)c - a(bc)`, `a o b = ab + ba`,
//! `a^n` is the principal right power, `J(a,b,c) = [[a,b],c] + [[b,c],a] + [[c,a],b]`,
//! `assoc` is the associator and `jassoc` the associator of `(xy + yx)/2`.
//! The identifier `o` is reserved for the circle product.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use super::poly::{Identity, NAPoly};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if "+-*/^[](),=".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                line: None,
                position: pos,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Val {
    Num(BigRational),
    Poly(NAPoly),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: FieldSpec,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: None,
            position: self.here(),
            message: message.into(),
        })
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn poly(&self, v: Val, what: &str) -> Result<NAPoly> {
        match v {
            Val::Poly(p) => Ok(p),
            Val::Num(_) => self.err(format!("{what} needs a polynomial, not a number")),
        }
    }

    fn num_scalar(&self, q: &BigRational) -> Result<crate::field::Scalar> {
        self.field.from_rational(q)
    }

    fn add(&self, a: Val, b: Val, sign: bool) -> Result<Val> {
        match (a, b) {
            (Val::Num(x), Val::Num(y)) => Ok(Val::Num(if sign { x + y } else { x - y })),
            (Val::Poly(p), Val::Poly(q)) => Ok(Val::Poly(if sign { p.add(&q) } else { p.sub(&q) })),
            (Val::Poly(p), Val::Num(x)) if x.is_zero() => Ok(Val::Poly(p)),
            (Val::Num(x), Val::Poly(q)) if x.is_zero() => {
                Ok(Val::Poly(if sign { q } else { q.neg() }))
            }
            _ => self.err("constant terms are not allowed"),
        }
    }

    fn expr(&mut self) -> Result<Val> {
        let mut neg = false;
        if self.peek_sym('+') || self.peek_sym('-') {
            neg = self.peek_sym('-');
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = match acc {
                Val::Num(x) => Val::Num(-x),
                Val::Poly(p) => Val::Poly(p.neg()),
            };
        }
        while self.peek_sym('+') || self.peek_sym('-') {
            let sign = self.peek_sym('+');
            self.pos += 1;
            let t = self.term()?;
            acc = self.add(acc, t, sign)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val> {
        let start = self.here();
        let mut factors = vec![self.factor()?];
        let mut ops = Vec::new();
        loop {
            let op = match self.peek() {
                Some(Tok::Sym('*')) => '*',
                Some(Tok::Ident(s)) if s == "o" => 'o',
                _ => break,
            };
            self.pos += 1;
            ops.push(op);
            factors.push(self.factor()?);
        }
        let mut coeff = BigRational::one();
        let mut polys = Vec::new();
        for f in &factors {
            match f {
                Val::Num(q) => coeff *= q,
                Val::Poly(p) => polys.push(p.clone()),
            }
        }
        if polys.len() > 2 {
            return Err(Error::Parse {
                line: None,
                position: start,
                message: "ambiguous product of more than two factors; add parentheses".into(),
            });
        }
        let is_poly = |i: usize| matches!(factors[i], Val::Poly(_));
        let mut joining = '*';
        for (k, op) in ops.iter().enumerate() {
            if *op == 'o' {
                if !(is_poly(k) && is_poly(k + 1)) {
                    return Err(Error::Parse {
                        line: None,
                        position: start,
                        message: "'o' needs polynomial operands on both sides".into(),
                    });
                }
                joining = 'o';
            }
        }
        match polys.len() {
            0 => Ok(Val::Num(coeff)),
            1 => Ok(Val::Poly(polys[0].scale(&self.num_scalar(&coeff)?))),
            _ => {
                let p = if joining == 'o' {
                    polys[0].circle(&polys[1])
                } else {
                    polys[0].mul(&polys[1])
                };
                Ok(Val::Poly(p.scale(&self.num_scalar(&coeff)?)))
            }
        }
    }

    fn factor(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if !self.peek_sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        let n = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return self.err("expected a positive integer exponent"),
        };
        self.pos += 1;
        let n: usize = match usize::try_from(&n) {
            Ok(n) if (1..=64).contains(&n) => n,
            _ => return self.err("exponent must be between 1 and 64"),
        };
        match base {
            Val::Num(q) => Ok(Val::Num(num::traits::pow(q, n))),
            Val::Poly(p) => Ok(Val::Poly(p.power(n)?)),
        }
    }

    fn three_args(&mut self) -> Result<(NAPoly, NAPoly, NAPoly)> {
        let a = self.expr()?;
        let a = self.poly(a, "an associator")?;
        self.expect_sym(',')?;
        let b = self.expr()?;
        let b = self.poly(b, "an associator")?;
        self.expect_sym(',')?;
        let c = self.expr()?;
        let c = self.poly(c, "an associator")?;
        self.expect_sym(')')?;
        Ok((a, b, c))
    }

    fn atom(&mut self) -> Result<Val> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let mut q = BigRational::from_integer(n);
                if self.peek_sym('/') {
                    self.pos += 1;
                    match self.peek() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            q /= BigRational::from_integer(d.clone());
                            self.pos += 1;
                        }
                        _ => return self.err("expected a nonzero denominator"),
                    }
                }
                Ok(Val::Num(q))
            }
            Tok::Ident(name) => {
                if name == "o" {
                    self.pos -= 1;
                    return self.err("'o' is the circle operator, not a variable");
                }
                if self.peek_sym('(') {
                    self.pos += 1;
                    let (a, b, c) = self.three_args()?;
                    return match name.as_str() {
                        "J" => {
                            let j = a
                                .commutator(&b)
                                .commutator(&c)
                                .add(&b.commutator(&c).commutator(&a))
                                .add(&c.commutator(&a).commutator(&b));
                            Ok(Val::Poly(j))
                        }
                        "assoc" => Ok(Val::Poly(a.associator(&b, &c))),
                        "jassoc" => Ok(Val::Poly(a.jordan_associator(&b, &c)?)),
                        other => Err(Error::Parse {
                            line: None,
                            position: self.here(),
                            message: format!("unknown function '{other}'"),
                        }),
                    };
                }
                Ok(Val::Poly(NAPoly::var(&name, self.field)))
            }
            Tok::Sym('[') => {
                let a = self.expr()?;
                let a = self.poly(a, "a commutator")?;
                self.expect_sym(',')?;
                let b = self.expr()?;
                let b = self.poly(b, "a commutator")?;
                self.expect_sym(']')?;
                Ok(Val::Poly(a.commutator(&b)))
            }
            Tok::Sym('(') => {
                let a = self.expr()?;
                if self.peek_sym(')') {
                    self.pos += 1;
                    return Ok(a);
                }
                let a = self.poly(a, "an associator")?;
                self.expect_sym(',')?;
                let b = self.expr()?;
                let b = self.poly(b, "an associator")?;
                self.expect_sym(',')?;
                let c = self.expr()?;
                let c = self.poly(c, "an associator")?;
                self.expect_sym(')')?;
                Ok(Val::Poly(a.associator(&b, &c)))
            }
            Tok::Sym(c) => {
                self.pos -= 1;
                self.err(format!("unexpected '{c}'"))
            }
        }
    }
}

/// Parses an identity over the rationals.
pub fn parse(src: &str) -> Result<Identity> {
    parse_in(src, FieldSpec::Rationals)
}

/// Parses an identity with coefficients read in `field`.
pub fn parse_in(src: &str, field: FieldSpec) -> Result<Identity> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        field,
    };
    if p.toks.is_empty() {
        return p.err("empty identity");
    }
    let lhs = p.expr()?;
    let rhs = if p.peek_sym('=') {
        p.pos += 1;
        Some(p.expr()?)
    } else {
        None
    };
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    let zero = || Val::Poly(NAPoly::zero(field));
    let poly = p.add(lhs, rhs.unwrap_or_else(zero), false);
    let poly = match poly {
        Ok(Val::Poly(q)) => q,
        Ok(Val::Num(q)) if q.is_zero() => NAPoly::zero(field),
        _ => {
            return Err(Error::Parse {
                line: None,
                position: 0,
                message: "constant terms are not allowed".into(),
            })
        }
    };
    Ok(Identity::new(poly, src.trim()))
}

/// One identity per line; blank lines and `#` comments are skipped.
/// Errors report the line number.
pub fn parse_identity_lines(text: &str, field: FieldSpec) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let raw = line.split('#').next().unwrap_or("");
        let body = raw.trim();
        if body.is_empty() {
            continue;
        }
        let lead = raw.len() - raw.trim_start().len();
        match parse_in(body, field) {
            Ok(id) => out.push(id),
            Err(Error::Parse {
                position, message, ..
            }) => {
                return Err(Error::Parse {
                    line: Some(n + 1),
                    position: position + lead,
                    message,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NAPoly {
        parse(s).unwrap().poly
    }

    #[test]
    fn basic_operators() {
        assert_eq!(p("[x,y]"), p("x*y - y*x"));
        assert_eq!(p("(x,y,z)"), p("(x*y)*z - x*(y*z)"));
        assert_eq!(p("x o y"), p("x*y + y*x"));
        assert_eq!(p("x^3"), p("(x*x)*x"));
        assert_eq!(p("x = y"), p("x - y"));
        assert_eq!(p("assoc(x,y,z)"), p("(x,y,z)"));
    }

    #[test]
    fn scalars_scale() {
        assert_eq!(p("2*x*y"), p("x*y + x*y"));
        assert_eq!(p("3/2*x - 1/2*x"), p("x"));
        assert_eq!(p("-[x,y]"), p("[y,x]"));
        assert_eq!(p("2^2*x"), p("4*x"));
    }

    #[test]
    fn jacobian_macro() {
        let j = p("J(a,b,c)");
        assert_eq!(j, p("[[a,b],c] + [[b,c],a] + [[c,a],b]"));
        assert_eq!(j.len(), 12);
    }

    #[test]
    fn jordan_associator_macro() {
        let j = p("jassoc(a,b,c)");
        assert_eq!(j, p("1/4*(((a o b) o c) - (a o (b o c)))"));
    }

    #[test]
    fn ambiguous_chains_are_rejected() {
        let err = parse("x*y*z").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 0, .. }));
        assert!(parse("x o y o z").is_err());
        assert!(parse("x o 2").is_err());
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("[x, y").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 5),
            e => panic!("{e:?}"),
        }
        assert!(parse("x + 1").is_err());
        assert!(parse("x $ y").is_err());
        assert!(parse("").is_err());
        assert!(parse("x^0").is_err());
        assert!(parse("f(x,y,z)").is_err());
        assert!(parse("o*x").is_err());
        assert!(parse("x y").is_err());
    }

    #[test]
    fn print_round_trips() {
        for s in [
            "[x,y]^2",
            "J(a,b,c) - 4*(a,b,c) + [[a,c],b]",
            "-1/3*x o y",
            "(x^2,y,x)",
        ] {
            let id = parse(s).unwrap();
            assert_eq!(parse(&id.poly.to_string()).unwrap().poly, id.poly, "{s}");
        }
    }

    #[test]
    fn identity_lines() {
        let ids = parse_identity_lines(
            "# comment\n[x,y]\n\n(x,y,x) # flexible\n",
            FieldSpec::Rationals,
        )
        .unwrap();
        assert_eq!(ids.len(), 2);
        assert_eq!(ids[1].source, "(x,y,x)");
        match parse_identity_lines("x\nx*y*z\n", FieldSpec::Rationals).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, Some(2)),
            e => panic!("{e:?}"),
        }
    }
}
