#![allow(dead_code, clippy::needless_range_loop)]

pub mod oracle;

use nvalg::constructions::random::{
    random_anticommutative, random_commutative, random_element, random_isomorph, random_scalar,
};
use nvalg::constructions::{
    kokoris_example, kokoris_from_poisson, kokoris_nilpotent_example, matrix_algebra,
    poisson_polynomial_truncated, truncated_polynomial,
};
use nvalg::{Element, FieldSpec, StructureAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::PrimeField { p }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Upper triangular 2x2 matrices.
pub fn upper_triangular(field: FieldSpec) -> StructureAlgebra {
    let o = field.one();
    StructureAlgebra::new(
        field,
        vec!["e11".into(), "e12".into(), "e22".into()],
        [
            (0, 0, 0, o.clone()),
            (0, 1, 1, o.clone()),
            (1, 2, 1, o.clone()),
            (2, 2, 2, o),
        ],
    )
    .unwrap()
}

fn lambda<R: Rng>(field: FieldSpec, rng: &mut R) -> nvalg::Scalar {
    let half = field.from_ratio(1, 2).unwrap();
    loop {
        let l = random_scalar(field, rng);
        if l != half {
            return l;
        }
    }
}

/// Random Kokoris algebra from a bracket on `F[x_1..x_vars] / (deg > 1)`
/// with `{x_i, x_j}` in the span of the variables.
pub fn random_kokoris<R: Rng>(field: FieldSpec, vars: usize, rng: &mut R) -> StructureAlgebra {
    let dim = vars + 1;
    let mut c = vec![vec![Element::zero(field, dim); vars]; vars];
    for i in 0..vars {
        for j in i + 1..vars {
            let mut coords = vec![field.zero(); dim];
            for x in coords.iter_mut().skip(1) {
                *x = random_scalar(field, rng);
            }
            c[i][j] = Element::new(coords);
            c[j][i] = -&c[i][j];
        }
    }
    let p = poisson_polynomial_truncated(field, vars, 1, &c).unwrap();
    kokoris_from_poisson(&p).unwrap()
}

/// Flexible algebras of dimension at most 4, with and without an
/// associative plus algebra.
pub fn flexible_corpus(
    field: FieldSpec,
    count: usize,
    seed: u64,
) -> Vec<(String, StructureAlgebra)> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let (name, alg) = match i % 8 {
            0 => (
                "commutative",
                random_commutative(field, rng.gen_range(2..=4), 0.6, &mut rng).unwrap(),
            ),
            1 => (
                "anticommutative",
                random_anticommutative(field, rng.gen_range(2..=4), 0.6, &mut rng).unwrap(),
            ),
            2 => {
                let l = lambda(field, &mut rng);
                (
                    "M2 mutation",
                    matrix_algebra(2, field).unwrap().mutation(&l).unwrap(),
                )
            }
            3 => {
                let l = lambda(field, &mut rng);
                ("T2 mutation", upper_triangular(field).mutation(&l).unwrap())
            }
            4 => ("kokoris 2 vars", random_kokoris(field, 2, &mut rng)),
            5 => ("kokoris 3 vars", random_kokoris(field, 3, &mut rng)),
            6 => {
                let l = lambda(field, &mut rng);
                let t = truncated_polynomial(1, rng.gen_range(2..=4), field, false).unwrap();
                ("truncated mutation", t.mutation(&l).unwrap())
            }
            _ => {
                let l = lambda(field, &mut rng);
                (
                    "kokoris mutation",
                    kokoris_example(field).unwrap().mutation(&l).unwrap(),
                )
            }
        };
        let alg = random_isomorph(&alg, &mut rng).unwrap();
        out.push((format!("{name} #{i}"), alg));
    }
    out
}

/// Kokoris examples of the constructions module.
pub fn kokoris_examples(field: FieldSpec) -> Vec<(String, StructureAlgebra)> {
    vec![
        ("kokoris example".into(), kokoris_example(field).unwrap()),
        (
            "kokoris nilpotent".into(),
            kokoris_nilpotent_example(field).unwrap(),
        ),
    ]
}

pub fn random_elements<R: Rng>(alg: &StructureAlgebra, n: usize, rng: &mut R) -> Vec<Element> {
    (0..n).map(|_| random_element(alg, rng)).collect()
}
