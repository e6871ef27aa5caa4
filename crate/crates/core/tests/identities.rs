mod common;

use common::oracle::ModTable;
use common::{flexible_corpus, gf, kokoris_examples, rng};
use nvalg::constructions::random::{
    random_algebra, random_anticommutative, random_commutative, random_isomorph,
};
use nvalg::constructions::{jordan_sym, matrix_algebra, quaternions};
use nvalg::identity::{holds_in, parse, parse_in, polarize_identity, HoldsVerdict};
use nvalg::{FieldSpec, StructureAlgebra};
use proptest::prelude::*;
use rand::Rng;

const FIXTURES: [&str; 30] = [
    "x",
    "x*y",
    "x*y - y*x",
    "[x,y]",
    "[[x,y],z]",
    "(x,y,z)",
    "(x,x,y)",
    "(x,y,x) = 0",
    "x o y",
    "(x o y) o z - x o (y o z)",
    "x^2",
    "x^3 - x*x^2",
    "(x^2,y,x)",
    "[x,y]^2",
    "(x,y,z)^2",
    "J(x,y,z)",
    "assoc(x,y,z) + [x,y]*z",
    "jassoc(x,y,z)",
    "2*x*y + 3*y*x",
    "1/2*(x*y + y*x)",
    "-x*(y*z)",
    "x*(y*z) = (x*y)*z",
    "((x*y)*z)*w - x*(y*(z*w))",
    "[x,y]*[z,w]",
    "J(x,y,z) = 4*(x,y,z) - [[x,z],y]",
    "x^4 - (x*x)*(x*x)",
    "(x,y,y)",
    "[x o y, z]",
    "3/4*[x,[y,z]] - 5*x",
    "(x*y)^2 - x^2*y^2",
];

#[test]
fn printed_identities_parse_back() {
    for src in FIXTURES {
        let id = parse(src).unwrap();
        let back = parse(&id.poly.to_string()).unwrap_or_else(|e| panic!("{src}: {e}"));
        assert_eq!(back.poly, id.poly, "{src}");
    }
}

#[test]
fn printed_identities_parse_back_over_prime_field() {
    for src in FIXTURES {
        let id = parse_in(src, gf(101)).unwrap();
        let back = parse_in(&id.poly.to_string(), gf(101)).unwrap();
        assert_eq!(back.poly, id.poly, "{src}");
    }
}

#[test]
fn plus_associator_expansion() {
    let lhs = parse("4*jassoc(a,b,c)").unwrap();
    let rhs = parse(
        "(a, b, c) - (c, b, a) + (b, a, c) + (a, c, b) - (c, a, b) - (b, c, a) + [b, [a, c ] ]",
    )
    .unwrap();
    assert_eq!(lhs.poly, rhs.poly);
    assert_eq!(lhs.poly.len(), rhs.poly.len());
    for (m, c) in lhs.poly.terms() {
        assert_eq!(&rhs.poly.coefficient(m), c);
    }
}

const CHECKED: [&str; 12] = [
    "[x,y]",
    "(x,y,z)",
    "(x,x,y)",
    "(x,y,x)",
    "x^2*x - x*x^2",
    "(x^2,y,x)",
    "[x,y]^2",
    "[[x,y],z] + [[y,z],x] + [[z,x],y]",
    "(x o y) o z - x o (y o z)",
    "(x*x)*(x*x) - x^4",
    "(x,y,y)",
    "J(x,y,z) - 4*(x,y,z) + [[x,z],y]",
];

fn small_algebra<R: Rng>(k: usize, rng: &mut R) -> StructureAlgebra {
    let f = gf(101);
    let dim = 2 + k % 3;
    match k % 6 {
        0 => random_algebra(f, dim, 0.4, rng).unwrap(),
        1 => random_commutative(f, dim, 0.5, rng).unwrap(),
        2 => random_anticommutative(f, dim, 0.5, rng).unwrap(),
        3 => random_isomorph(&matrix_algebra(2, f).unwrap(), rng).unwrap(),
        4 => random_isomorph(&jordan_sym(2, f).unwrap(), rng).unwrap(),
        _ => random_isomorph(&quaternions(f).unwrap().into_algebra(), rng).unwrap(),
    }
}

/// Compares the verdict with the grid oracle; the grid is skipped when it
/// has more than `3^12` points.
fn agrees(alg: &StructureAlgebra, src: &str) -> Option<bool> {
    let id = parse_in(src, alg.field()).unwrap();
    let t = ModTable::new(alg);
    let vars = id.poly.variables().len();
    if alg.dim() * vars > 12 {
        return None;
    }
    let verdict = holds_in(alg, &id, 1 << 20).unwrap();
    let grid = t.grid_counterexample(&id.poly, &[0, 1, 2]);
    if let HoldsVerdict::Counterexample(c) = &verdict {
        // the witness itself must be a nonzero value under the oracle
        let env = c
            .assignment
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    v.coords().iter().map(common::oracle::residue).collect(),
                )
            })
            .collect();
        let value = t.eval(&c.identity.poly, &env);
        assert!(
            value.iter().any(|&x| x != 0),
            "{src}: witness evaluates to zero"
        );
    }
    Some(verdict.holds() == grid.is_none())
}

#[test]
fn polarized_checks_agree_with_grid_oracle() {
    let mut r = rng(20);
    let mut pairs = 0;
    for k in 0..20 {
        let alg = small_algebra(k, &mut r);
        for src in CHECKED.iter().take(10) {
            if let Some(ok) = agrees(&alg, src) {
                assert!(ok, "algebra #{k}, {src}");
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 150, "only {pairs} pairs checked");
}

#[test]
fn kokoris_identity_matches_plus_associativity() {
    let f = gf(101);
    let kok = parse_in(CHECKED[11], f).unwrap();
    let mut corpus = flexible_corpus(f, 48, 3);
    corpus.extend(kokoris_examples(f));
    let mut both = [0usize; 2];
    for (name, a) in &corpus {
        assert!(a.is_flexible(), "{name}");
        let eq = holds_in(a, &kok, 1 << 20).unwrap().holds();
        assert_eq!(eq, a.plus().unwrap().is_associative(), "{name}");
        both[eq as usize] += 1;
    }
    assert!(both[0] > 0 && both[1] > 0, "{both:?}");
}

#[test]
fn polarization_refused_in_small_characteristic() {
    let id = parse_in("[x,y]^2", gf(3)).unwrap();
    assert!(polarize_identity(&id).is_err());
    let a = matrix_algebra(2, gf(3)).unwrap();
    assert!(holds_in(&a, &id, 1 << 20).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_is_basis_independent(seed in any::<u64>(), which in 0usize..CHECKED.len()) {
        let mut r = rng(seed);
        let a = small_algebra(seed as usize, &mut r);
        let b = random_isomorph(&a, &mut r).unwrap();
        let id = parse_in(CHECKED[which], a.field()).unwrap();
        let va = holds_in(&a, &id, 1 << 20).unwrap().holds();
        let vb = holds_in(&b, &id, 1 << 20).unwrap().holds();
        prop_assert_eq!(va, vb);
    }

    #[test]
    fn components_hold_when_identity_holds(seed in any::<u64>(), which in 0usize..CHECKED.len()) {
        let mut r = rng(seed);
        let a = small_algebra(seed as usize, &mut r);
        let id = parse_in(CHECKED[which], a.field()).unwrap();
        let whole = holds_in(&a, &id, 1 << 20).unwrap().holds();
        let parts = polarize_identity(&id).unwrap();
        let each = parts.iter().all(|p| holds_in(&a, p, 1 << 20).unwrap().holds());
        prop_assert_eq!(whole, each);
    }
}

#[test]
fn rational_witnesses_are_exact() {
    let a = matrix_algebra(2, FieldSpec::Rationals).unwrap();
    let id = parse("[x,y]^2").unwrap();
    let c = holds_in(&a, &id, 1 << 20).unwrap();
    let c = c.counterexample().expect("M2 violates [x,y]^2");
    assert_eq!(a.format_element(&c.value), "e11 + e22");
}
