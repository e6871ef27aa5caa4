//! Nonassociative polynomials, the identity language, polarization and
//! identity checking in structure-constant algebras.
//!
//! Identity syntax: variables are identifiers, `*` is the product, ` o ` the
//! circle product `ab + ba`, `^n` the right power `x^n = x^(n-1) x`, `[a,b]` the
//! commutator, `(a,b,c)` the associator, `J(x,y,z)`, `assoc(x,y,z)`,
//! `jassoc(x,y,z)`. An optional `=` separates two sides.

mod eval;
mod parse;
mod polarize;
mod poly;

pub use eval::{
    evaluate, holds_in, holds_in_with, is_jordan_admissible, is_noncommutative_jordan,
    satisfies_all, Counterexample, HoldsVerdict, JORDAN_IDENTITY,
};
pub use parse::{parse, parse_identity_lines, parse_in};
pub use polarize::{polarize, polarize_identity, Polarized};
pub use poly::{Identity, Monomial, NAPoly};
