//! Exact-arithmetic workbench for finite-dimensional nonassociative
//! algebras given by structure constants.
//!
//! - [`field`]: rationals, prime fields and quadratic extensions of the rationals.
//! - [`algebra`]: structure-constant algebras, elements, derived algebras.
//! - [`subspace`]: subspaces, powers, generated subalgebras and ideals, nil radicals.
//! - [`constructions`]: matrix, Jordan, Cayley–Dickson, quadratic and Kokoris algebras.
//! - [`identity`]: nonassociative polynomials, the identity language, polarization
//!   and identity checking.
//! - [`variety`]: multilinear components of the free algebra, consequence spans,
//!   admissibility probes, nonmatrix gates and finite-dimensional checks.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod field;
pub mod identity;
pub mod io;
pub mod linalg;
pub mod par;
pub mod subspace;
pub mod variety;

pub use algebra::{Derived, Element, StructureAlgebra};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use identity::{Identity, Monomial, NAPoly};
pub use linalg::Echelon;
pub use par::Exec;
pub use subspace::Subspace;
