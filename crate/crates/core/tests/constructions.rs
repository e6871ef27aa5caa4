mod common;

use common::{flexible_corpus, gf, kokoris_examples, random_elements, random_kokoris, rng};
use nvalg::constructions::random::random_scalar;
use nvalg::constructions::*;
use nvalg::identity::{holds_in, parse_in, JORDAN_IDENTITY};
use nvalg::{Element, FieldSpec, Scalar, StructureAlgebra};

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

#[test]
fn matrix_algebras_are_associative() {
    for n in 1..=3 {
        for f in [q(), gf(7)] {
            let m = matrix_algebra(n, f).unwrap();
            assert_eq!(m.dim(), n * n);
            assert!(m.is_associative());
            assert_eq!(m.is_commutative(), n == 1);
        }
    }
}

#[test]
fn symmetric_matrices_form_jordan_algebras() {
    for n in 1..=3 {
        let h = jordan_sym(n, q()).unwrap();
        assert!(h.is_commutative());
        let id = parse_in(JORDAN_IDENTITY, q()).unwrap();
        assert!(holds_in(&h, &id, 1 << 22).unwrap().holds(), "H{n}");
    }
}

fn assert_quadratic(ia: &InvolutiveAlgebra, samples: usize, seed: u64) {
    let a = ia.algebra();
    let one = a.basis(0);
    let mut r = rng(seed);
    for x in random_elements(a, samples, &mut r) {
        let x2 = a.mul(&x, &x).unwrap();
        let rhs = &x.scale(&ia.trace(&x)) - &one.scale(&ia.norm(&x));
        assert_eq!(x2, rhs);
    }
}

#[test]
fn cayley_dickson_algebras_are_quadratic_and_flexible() {
    for f in [q(), gf(101)] {
        let algs = [
            quaternions(f).unwrap(),
            octonions(f).unwrap(),
            split_octonions(f).unwrap(),
            cayley_dickson_tower(f, &[f.from_i64(-1), f.from_i64(2), f.from_i64(-3)]).unwrap(),
        ];
        for (k, ia) in algs.iter().enumerate() {
            assert_quadratic(ia, 100, k as u64);
            assert!(ia.algebra().is_flexible());
        }
    }
}

#[test]
fn sedenions_stay_quadratic_and_flexible_but_not_alternative() {
    let f = q();
    let mus = vec![f.from_i64(-1); 4];
    let s = cayley_dickson_tower(f, &mus).unwrap();
    assert_eq!(s.algebra().dim(), 16);
    assert_quadratic(&s, 100, 4);
    assert!(s.algebra().is_flexible());
    assert!(!s.algebra().is_alternative());
}

#[test]
fn doubling_levels() {
    let f = q();
    let h = quaternions(f).unwrap();
    let o = octonions(f).unwrap();
    assert!(h.algebra().is_associative());
    assert!(!o.algebra().is_associative());
    assert!(o.algebra().is_alternative());
}

#[test]
fn kokoris_algebras_satisfy_their_identity_and_have_associative_plus() {
    let f = gf(101);
    let kok = parse_in("J(x,y,z) = 4*(x,y,z) - [[x,z],y]", f).unwrap();
    let flex = parse_in("(x,y,x)", f).unwrap();
    let mut r = rng(2);
    let mut algs = kokoris_examples(f);
    for k in 0..10 {
        algs.push((format!("random {k}"), random_kokoris(f, 2 + k % 2, &mut r)));
    }
    for (name, a) in &algs {
        assert!(holds_in(a, &kok, 1 << 20).unwrap().holds(), "{name}");
        assert!(a.satisfies_kokoris(), "{name}");
        assert!(holds_in(a, &flex, 1 << 20).unwrap().holds(), "{name}");
        assert!(a.plus().unwrap().is_associative(), "{name}");
    }
}

#[test]
fn plus_associativity_equivalence_on_flexible_corpus() {
    let f = gf(101);
    let kok = parse_in("J(x,y,z) = 4*(x,y,z) - [[x,z],y]", f).unwrap();
    let corpus = flexible_corpus(f, 100, 17);
    let mut counts = [0; 2];
    for (name, a) in &corpus {
        assert!(a.is_flexible(), "{name}");
        let holds = holds_in(a, &kok, 1 << 20).unwrap().holds();
        assert_eq!(holds, a.plus().unwrap().is_associative(), "{name}");
        counts[holds as usize] += 1;
    }
    assert!(counts[0] >= 10 && counts[1] >= 10, "{counts:?}");
}

#[test]
fn split_octonions_contain_matrix_units() {
    for f in [q(), gf(101)] {
        let o = split_octonions(f).unwrap().into_algebra();
        let e = split_octonion_matrix_units(f).unwrap();
        // e[2 * i + j] plays e_{ij}
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let p = o.mul(&e[2 * i + j], &e[2 * k + l]).unwrap();
                        let expected = if j == k {
                            e[2 * i + l].clone()
                        } else {
                            o.zero()
                        };
                        assert_eq!(p, expected);
                    }
                }
            }
        }
        assert_eq!(&e[0] + &e[3], o.basis(0));
    }
}

#[test]
fn mutations_of_associative_algebras_are_quasi_associative() {
    let f = q();
    for (n, d) in [(2, 1), (-1, 1), (1, 3), (5, 7)] {
        let l = f.from_ratio(n, d).unwrap();
        let m = matrix_mutation(&l, f).unwrap();
        assert!(m.is_flexible());
        let alpha = m.quasi_associative_alpha().expect("quasi-associative");
        assert_ne!(alpha, f.from_ratio(1, 4).unwrap());
    }
}

fn vector(q: &QuadraticData, v: &[Scalar]) -> Element {
    let mut c = vec![q.field.zero()];
    c.extend(v.iter().cloned());
    Element::new(c)
}

#[test]
fn quadratic_associator_expansion() {
    // (u,v,v) = (u,v) v + (u x v, v) + (u x v) x v - (v,v) u on V
    for f in [q(), gf(13)] {
        let data = QuadraticData::quaternion(f).unwrap();
        let a = quadratic_algebra(&data).unwrap();
        let mut r = rng(8);
        for _ in 0..50 {
            let u: Vec<Scalar> = (0..3).map(|_| random_scalar(f, &mut r)).collect();
            let v: Vec<Scalar> = (0..3).map(|_| random_scalar(f, &mut r)).collect();
            let (eu, ev) = (vector(&data, &u), vector(&data, &v));
            let lhs = a.associator(&eu, &ev, &ev).unwrap();
            let uxv = data.cross_product(&u, &v);
            let rhs = &(&(&ev.scale(&data.pair(&u, &v)) + &a.basis(0).scale(&data.pair(&uxv, &v)))
                + &vector(&data, &data.cross_product(&uxv, &v)))
                - &eu.scale(&data.pair(&v, &v));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn quaternion_data_matches_preset() {
    let f = q();
    let from_data = quadratic_algebra(&QuadraticData::quaternion(f).unwrap()).unwrap();
    let preset = quaternions(f).unwrap().into_algebra();
    assert!(from_data.same_table(&preset));
    let back = QuadraticData::from_algebra(&preset).unwrap();
    assert_eq!(back, QuadraticData::quaternion(f).unwrap());
    assert!(back.cross_cross_witness().is_some());
}

#[test]
fn recipes_are_idempotent() {
    let recipes = [
        r#"{"construct":"cayley-dickson","mu":["-1","-1","-1"]}"#,
        r#"{"construct":"matrix","n":2}"#,
        r#"{"construct":"kokoris","base":{"construct":"truncated-poly","vars":2,"cap":2}}"#,
        r#"{"construct":"mutation","base":{"construct":"matrix","n":2},"lambda":"2/3"}"#,
        r#"{"construct":"preset","name":"kokoris-nilpotent","field":{"kind":"GFp","p":101}}"#,
    ];
    for text in recipes {
        let r = Recipe::from_json(text).unwrap();
        let a = nvalg::io::write_algebra(&r.build().unwrap());
        let b = nvalg::io::write_algebra(&Recipe::from_json(text).unwrap().build().unwrap());
        assert_eq!(a, b);
    }
    let cd = Recipe::from_json(recipes[0]).unwrap().build().unwrap();
    assert_eq!(cd.dim(), 8);
    let zero_bracket = Recipe::from_json(recipes[2]).unwrap().build().unwrap();
    assert!(zero_bracket.same_table(&truncated_polynomial(2, 2, q(), true).unwrap()));
}

#[test]
fn scalar_extension_keeps_the_table() {
    let f = FieldSpec::QuadraticExtension { d: -1 };
    let m: StructureAlgebra = matrix_algebra(2, q()).unwrap();
    let e = scalar_extension(&m, f).unwrap();
    assert_eq!(e.field(), f);
    assert!(e.is_associative());
    assert!(scalar_extension(&e, q()).is_err());
}
