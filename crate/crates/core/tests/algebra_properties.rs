mod common;

use common::{gf, random_elements, rng};
use nvalg::constructions::random::{
    random_algebra, random_element, random_isomorph, random_scalar,
};
use nvalg::constructions::*;
use nvalg::identity::{is_jordan_admissible, is_noncommutative_jordan, JORDAN_IDENTITY};
use nvalg::io::{read_algebra, write_algebra};
use nvalg::subspace::{element_left_power, element_power, plus_power_space};
use nvalg::{Echelon, Element, FieldSpec, Scalar, StructureAlgebra, Subspace};
use proptest::prelude::*;

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

/// Every algebra the constructions module builds from its presets, over `field`.
fn constructed(field: FieldSpec) -> Vec<(String, StructureAlgebra)> {
    let mut out: Vec<(String, StructureAlgebra)> = [
        "quaternions",
        "octonions",
        "split-octonions",
        "kokoris-example",
        "kokoris-nilpotent",
        "h2",
        "m2",
    ]
    .iter()
    .map(|n| (n.to_string(), recipe::preset(n, field).unwrap()))
    .collect();
    out.push(("M3".into(), matrix_algebra(3, field).unwrap()));
    out.push(("H3".into(), jordan_sym(3, field).unwrap()));
    out.push(("M2+".into(), jordan_plus(2, field).unwrap()));
    out.push((
        "truncated".into(),
        truncated_polynomial(2, 2, field, true).unwrap(),
    ));
    out.push((
        "free nilpotent".into(),
        free_nilpotent(2, 3, field).unwrap(),
    ));
    out.push((
        "M2(2)".into(),
        matrix_mutation(&field.from_i64(2), field).unwrap(),
    ));
    out
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(q()),
        Just(gf(101)),
        Just(gf(7)),
        Just(FieldSpec::QuadraticExtension { d: -1 })
    ]
}

fn rows_of(v: &[Element]) -> Vec<Vec<Scalar>> {
    v.iter().map(|e| e.coords().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn echelon_is_canonical(seed in any::<u64>(), dim in 1usize..7, k in 0usize..7) {
        let f = gf(101);
        let mut r = rng(seed);
        let alg = StructureAlgebra::zero_algebra(f, dim).unwrap();
        let gens = random_elements(&alg, k, &mut r);
        let s = Subspace::span(&alg, &gens).unwrap();
        let again = Subspace::span(&alg, &s.basis()).unwrap();
        prop_assert_eq!(s.echelon(), again.echelon());
        // the same space from different generators
        let mixed: Vec<Element> = (0..k)
            .map(|_| {
                gens.iter().fold(alg.zero(), |acc, g| &acc + &g.scale(&random_scalar(f, &mut r)))
            })
            .chain(gens.iter().cloned())
            .collect();
        let t = Subspace::span(&alg, &mixed).unwrap();
        prop_assert!(s.is_subspace_of(&t) && t.is_subspace_of(&s));
        prop_assert_eq!(s.echelon().dense_rows(), t.echelon().dense_rows());
        let e = Echelon::from_rows(f, dim, rows_of(&gens));
        prop_assert_eq!(e.rank(), s.dim());
    }

    #[test]
    fn product_is_bilinear(seed in any::<u64>(), field in field_strategy(), dim in 1usize..5) {
        let mut r = rng(seed);
        let alg = random_algebra(field, dim, 0.5, &mut r).unwrap();
        let (u, v, w) = (random_element(&alg, &mut r), random_element(&alg, &mut r), random_element(&alg, &mut r));
        let a = random_scalar(field, &mut r);
        let left = alg.mul(&(&u.scale(&a) + &v), &w).unwrap();
        prop_assert_eq!(left, &alg.mul(&u, &w).unwrap().scale(&a) + &alg.mul(&v, &w).unwrap());
        let right = alg.mul(&w, &(&u.scale(&a) + &v)).unwrap();
        prop_assert_eq!(right, &alg.mul(&w, &u).unwrap().scale(&a) + &alg.mul(&w, &v).unwrap());
    }

    #[test]
    fn half_mutation_is_plus(seed in any::<u64>(), field in field_strategy(), dim in 1usize..5) {
        let mut r = rng(seed);
        let alg = random_algebra(field, dim, 0.5, &mut r).unwrap();
        let half = field.from_ratio(1, 2).unwrap();
        let plus = alg.plus().unwrap();
        prop_assert!(alg.mutation(&half).unwrap().same_table(&plus));
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    prop_assert_eq!(plus.structure_constant(i, j, k), plus.structure_constant(j, i, k));
                }
            }
        }
    }

    #[test]
    fn mutation_duality(seed in any::<u64>(), num in -9i64..10, den in 1i64..10) {
        let f = q();
        let lambda = f.from_ratio(num, den).unwrap();
        prop_assume!(lambda != f.from_ratio(1, 2).unwrap());
        let mut r = rng(seed);
        let alg = random_algebra(f, 3, 0.5, &mut r).unwrap();
        let two = f.from_i64(2);
        let mu = &lambda * &(&(&two * &lambda) - &f.one()).inv().unwrap();
        let back = alg.mutation(&lambda).unwrap().mutation(&mu).unwrap();
        prop_assert!(back.same_table(&alg));
    }

    #[test]
    fn files_round_trip(seed in any::<u64>(), field in field_strategy(), dim in 1usize..5) {
        let mut r = rng(seed);
        let alg = random_algebra(field, dim, 0.4, &mut r).unwrap();
        let text = write_algebra(&alg);
        let back = read_algebra(&text).unwrap();
        prop_assert_eq!(&back, &alg);
        prop_assert_eq!(write_algebra(&back), text);
    }

    #[test]
    fn isomorphic_copies_share_predicates(seed in any::<u64>(), which in 0usize..13) {
        let f = gf(101);
        let (name, a) = constructed(f).swap_remove(which);
        let mut r = rng(seed);
        let b = random_isomorph(&a, &mut r).unwrap();
        prop_assert_eq!(a.is_associative(), b.is_associative(), "{}", name);
        prop_assert_eq!(a.is_commutative(), b.is_commutative(), "{}", name);
        prop_assert_eq!(a.is_alternative(), b.is_alternative(), "{}", name);
        prop_assert_eq!(a.is_flexible(), b.is_flexible(), "{}", name);
        prop_assert_eq!(a.is_unital(), b.is_unital(), "{}", name);
    }
}

#[test]
fn mutation_duality_for_ten_lambdas() {
    let f = q();
    let base = matrix_algebra(2, f).unwrap();
    let mut r = rng(11);
    let mut done = 0;
    while done < 10 {
        let lambda = random_scalar(f, &mut r);
        let lambda = &lambda * &f.from_ratio(1, 1 + done as i64).unwrap();
        if lambda == f.from_ratio(1, 2).unwrap() {
            continue;
        }
        let mu = &lambda * &(&lambda.scale_i64(2) - &f.one()).inv().unwrap();
        assert!(base
            .mutation(&lambda)
            .unwrap()
            .mutation(&mu)
            .unwrap()
            .same_table(&base));
        done += 1;
    }
}

#[test]
fn second_plus_power_is_an_ideal_with_anticommutative_quotient() {
    for field in [q(), gf(101)] {
        let mut all = constructed(field);
        let mut r = rng(5);
        for k in 0..6 {
            all.push((
                format!("random {k}"),
                random_algebra(field, 3, 0.5, &mut r).unwrap(),
            ));
        }
        let mut ncj = 0;
        for (name, a) in &all {
            let i2 = plus_power_space(a, 2).unwrap();
            assert!(i2.quotient_is_anticommutative(a).unwrap(), "{name}");
            if is_noncommutative_jordan(a).unwrap() {
                assert!(i2.is_ideal(a).unwrap(), "{name}");
                ncj += 1;
            }
        }
        assert!(ncj >= 10);
    }
    // outside noncommutative Jordan algebras the ideal property can fail
    let free = free_nilpotent(2, 3, q()).unwrap();
    assert!(!plus_power_space(&free, 2).unwrap().is_ideal(&free).unwrap());
}

#[test]
fn unital_algebras_have_full_plus_powers() {
    for (name, a) in constructed(q()) {
        if !a.is_unital() {
            continue;
        }
        for n in 1..=4 {
            assert_eq!(
                plus_power_space(&a, n).unwrap().dim(),
                a.dim(),
                "{name}, n = {n}"
            );
        }
    }
}

#[test]
fn left_and_right_powers_agree_in_admissible_flexible_algebras() {
    let f = gf(101);
    let mut r = rng(9);
    let candidates = [
        quaternions(f).unwrap().into_algebra(),
        octonions(f).unwrap().into_algebra(),
        kokoris_example(f).unwrap(),
        matrix_mutation(&f.from_i64(3), f).unwrap(),
        jordan_sym(2, f).unwrap(),
    ];
    for a in &candidates {
        assert!(a.is_flexible());
        assert!(is_jordan_admissible(a).unwrap(), "{}", JORDAN_IDENTITY);
        for u in random_elements(a, 200, &mut r) {
            for n in 1..=5 {
                assert_eq!(
                    element_power(a, &u, n).unwrap(),
                    element_left_power(a, &u, n).unwrap()
                );
            }
        }
    }
}
