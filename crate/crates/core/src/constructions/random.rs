//! Seeded random algebras for corpora and property tests.

use rand::Rng;

use crate::algebra::{Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Echelon;

/// Uniform over a prime field; small integers in `Q`, small `a + b r` in `Q(r)`.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::PrimeField { p } => field.from_i64(rng.gen_range(0..p) as i64),
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        FieldSpec::QuadraticExtension { .. } => {
            let r = field.adjoined_root().expect("quadratic field has a root");
            let a = field.from_i64(rng.gen_range(-2..=2));
            &a + &r.scale_i64(rng.gen_range(-2..=2))
        }
    }
}

pub fn random_element<R: Rng + ?Sized>(alg: &StructureAlgebra, rng: &mut R) -> Element {
    Element::new(
        (0..alg.dim())
            .map(|_| random_scalar(alg.field(), rng))
            .collect(),
    )
}

fn names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

fn sparse_scalar<R: Rng + ?Sized>(field: FieldSpec, density: f64, rng: &mut R) -> Scalar {
    if rng.gen_bool(density.clamp(0.0, 1.0)) {
        random_scalar(field, rng)
    } else {
        field.zero()
    }
}

/// Each structure constant is nonzero with probability about `density`.
pub fn random_algebra<R: Rng + ?Sized>(
    field: FieldSpec,
    dim: usize,
    density: f64,
    rng: &mut R,
) -> Result<StructureAlgebra> {
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                entries.push((i, j, k, sparse_scalar(field, density, rng)));
            }
        }
    }
    StructureAlgebra::new(field, names(dim), entries)
}

/// `e_j e_i = sign * e_i e_j`.
fn random_symmetric<R: Rng + ?Sized>(
    field: FieldSpec,
    dim: usize,
    density: f64,
    sign: i64,
    rng: &mut R,
) -> Result<StructureAlgebra> {
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            if sign < 0 && i == j {
                continue;
            }
            for k in 0..dim {
                let c = sparse_scalar(field, density, rng);
                if i != j {
                    entries.push((j, i, k, c.scale_i64(sign)));
                }
                entries.push((i, j, k, c));
            }
        }
    }
    StructureAlgebra::new(field, names(dim), entries)
}

pub fn random_commutative<R: Rng + ?Sized>(
    field: FieldSpec,
    dim: usize,
    density: f64,
    rng: &mut R,
) -> Result<StructureAlgebra> {
    random_symmetric(field, dim, density, 1, rng)
}

pub fn random_anticommutative<R: Rng + ?Sized>(
    field: FieldSpec,
    dim: usize,
    density: f64,
    rng: &mut R,
) -> Result<StructureAlgebra> {
    random_symmetric(field, dim, density, -1, rng)
}

/// The same algebra written in the basis `new_basis`.
pub fn change_of_basis(alg: &StructureAlgebra, new_basis: &[Element]) -> Result<StructureAlgebra> {
    let n = alg.dim();
    let f = alg.field();
    if new_basis.len() != n {
        return Err(Error::InvalidArgument(format!(
            "need {n} basis vectors, got {}",
            new_basis.len()
        )));
    }
    for b in new_basis {
        alg.check(b)?;
    }
    // columns are the new basis vectors
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|r| new_basis.iter().map(|b| b.coords()[r].clone()).collect())
        .collect();
    if Echelon::from_rows(f, n, cols.iter().cloned()).rank() != n {
        return Err(Error::InvalidArgument(
            "vectors are linearly dependent".into(),
        ));
    }
    let mut entries = Vec::new();
    for (i, a) in new_basis.iter().enumerate() {
        for (j, b) in new_basis.iter().enumerate() {
            let p = alg.mul(a, b)?;
            let x = Echelon::solve(f, n, &cols, p.coords()).expect("a basis spans the algebra");
            entries.extend(x.into_iter().enumerate().map(|(k, c)| (i, j, k, c)));
        }
    }
    StructureAlgebra::new(f, names(n), entries)
}

/// A random invertible change of basis.
pub fn random_isomorph<R: Rng + ?Sized>(
    alg: &StructureAlgebra,
    rng: &mut R,
) -> Result<StructureAlgebra> {
    loop {
        let b: Vec<Element> = (0..alg.dim()).map(|_| random_element(alg, rng)).collect();
        match change_of_basis(alg, &b) {
            Err(Error::InvalidArgument(_)) => continue,
            other => return other,
        }
    }
}
