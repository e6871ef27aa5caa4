use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::subspace::{
    default_cutoff, enumeration_size, nil_index_unchecked, nilpotency_index, nth_vector,
    plus_power_space, power_chain, NilpotencyIndex, Subspace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessTier {
    /// Two basis vectors.
    BasisPair,
    /// `u + e v` and `u - e v` for basis vectors `u, v` and `e^2 = -1`.
    EpsilonPair,
    /// Found while scanning the enumerated (or sampled) nilpotent elements.
    Search,
}

/// Nilpotent `u` and `v` with `u + v` not nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumWitness {
    pub u: Element,
    pub v: Element,
    pub tier: WitnessTier,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentSetReport {
    pub coverage: Coverage,
    pub cutoff: usize,
    pub elements_examined: u64,
    pub nilpotent_count: u64,
    pub closed_under_sum: bool,
    pub is_subspace: bool,
    pub is_ideal: bool,
    pub sum_witness: Option<SumWitness>,
    /// Nilpotent `u` and basis vector `b` with `ub` or `bu` not nilpotent.
    pub ideal_witness: Option<(Element, Element)>,
}

fn is_nil(alg: &StructureAlgebra, u: &Element, cutoff: usize) -> bool {
    nil_index_unchecked(alg, u, cutoff).is_some()
}

fn sum_fails(alg: &StructureAlgebra, u: &Element, v: &Element, cutoff: usize) -> bool {
    is_nil(alg, u, cutoff) && is_nil(alg, v, cutoff) && !is_nil(alg, &(u + v), cutoff)
}

/// Structured witness search: basis pairs, then `u +- e v` with `e^2 = -1`.
fn structured_witness(alg: &StructureAlgebra, cutoff: usize) -> Option<SumWitness> {
    let n = alg.dim();
    let basis = alg.basis_elements();
    for i in 0..n {
        for j in i + 1..n {
            if sum_fails(alg, &basis[i], &basis[j], cutoff) {
                return Some(SumWitness {
                    u: basis[i].clone(),
                    v: basis[j].clone(),
                    tier: WitnessTier::BasisPair,
                });
            }
        }
    }
    let f = alg.field();
    for e in f.square_roots(&f.from_i64(-1)) {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let ev = basis[j].scale(&e);
                let (u, v) = (&basis[i] + &ev, &basis[i] - &ev);
                if sum_fails(alg, &u, &v, cutoff) {
                    return Some(SumWitness {
                        u,
                        v,
                        tier: WitnessTier::EpsilonPair,
                    });
                }
            }
        }
    }
    None
}

fn random_element(alg: &StructureAlgebra, rng: &mut ChaCha8Rng) -> Element {
    let f = alg.field();
    let coords = (0..alg.dim())
        .map(|_| match f.order() {
            Some(p) => f.from_i64(rng.gen_range(0..p) as i64),
            None => f.from_i64(rng.gen_range(-2..=2)),
        })
        .collect();
    Element::new(coords)
}

fn elements(
    alg: &StructureAlgebra,
    budget: u64,
    sampling: Option<(u64, u64)>,
) -> Result<(Coverage, Vec<Element>)> {
    let f = alg.field();
    let size = enumeration_size(f, alg.dim());
    match (size, sampling) {
        (Some(s), _) if s <= budget as u128 => {
            let exec = Exec::default();
            Ok((
                Coverage::Exhaustive,
                exec.map_range(s as usize, |i| nth_vector(f, alg.dim(), i as u64)),
            ))
        }
        (_, Some((samples, seed))) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((
                Coverage::Sampled { samples, seed },
                (0..samples)
                    .map(|_| random_element(alg, &mut rng))
                    .collect(),
            ))
        }
        (Some(s), None) => Err(Error::BudgetExceeded {
            what: "element enumeration".into(),
            needed: s,
            budget: budget as u128,
        }),
        (None, None) => Err(Error::MethodInapplicable(
            "enumeration needs a finite field; pass a sampling size".into(),
        )),
    }
}

/// Tests whether the nilpotent elements (cutoff `dim + 1`) are closed
/// under sums, form a subspace and form an ideal.
///
/// Enumerates `F^dim` when it has at most `budget` elements; otherwise
/// `sampling = Some((samples, seed))` draws random elements instead.
pub fn nilpotent_set_analysis(
    alg: &StructureAlgebra,
    budget: u64,
    sampling: Option<(u64, u64)>,
) -> Result<NilpotentSetReport> {
    let cutoff = default_cutoff(alg);
    let (coverage, all) = elements(alg, budget, sampling)?;
    let exec = Exec::default();
    let flags = exec.map(&all, |u| is_nil(alg, u, cutoff));
    let nil: Vec<&Element> = all
        .iter()
        .zip(&flags)
        .filter(|(_, f)| **f)
        .map(|(u, _)| u)
        .collect();
    let nil_set: HashSet<&Element> = nil.iter().copied().collect();
    let in_nil = |u: &Element| match coverage {
        Coverage::Exhaustive => nil_set.contains(u),
        Coverage::Sampled { .. } => is_nil(alg, u, cutoff),
    };

    let f = alg.field();
    let span = Subspace::span(alg, &nil.iter().map(|u| (*u).clone()).collect::<Vec<_>>())?;
    // an enumerated nil set filling its span is a subspace
    let fills_span = coverage == Coverage::Exhaustive
        && f.order()
            .and_then(|q| (q as u128).checked_pow(span.dim() as u32))
            .is_some_and(|size| size == nil.len() as u128);
    let mut sum_witness = structured_witness(alg, cutoff);
    if sum_witness.is_none() && !fills_span {
        'outer: for (a, u) in nil.iter().enumerate() {
            for v in &nil[a + 1..] {
                if !in_nil(&(*u + *v)) {
                    sum_witness = Some(SumWitness {
                        u: (*u).clone(),
                        v: (*v).clone(),
                        tier: WitnessTier::Search,
                    });
                    break 'outer;
                }
            }
        }
    }
    let closed_under_sum = sum_witness.is_none();
    let scalars_ok = fills_span
        || match f.elements() {
            Some(scalars) => nil
                .iter()
                .all(|u| scalars.iter().all(|c| in_nil(&u.scale(c)))),
            None => true,
        };
    let is_subspace = closed_under_sum && scalars_ok;
    let mut ideal_witness = None;
    if is_subspace {
        'ideal: for u in span.basis() {
            for b in alg.basis_elements() {
                for p in [alg.mul(&u, &b)?, alg.mul(&b, &u)?] {
                    if !is_nil(alg, &p, cutoff) {
                        ideal_witness = Some((u.clone(), b.clone()));
                        break 'ideal;
                    }
                }
            }
        }
    }
    Ok(NilpotentSetReport {
        coverage,
        cutoff,
        elements_examined: all.len() as u64,
        nilpotent_count: nil.len() as u64,
        closed_under_sum,
        is_subspace,
        is_ideal: is_subspace && ideal_witness.is_none(),
        sum_witness,
        ideal_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorChainReport {
    pub n: usize,
    /// `dim A^(2^n)`.
    pub power_dim: usize,
    /// Dimension of the span of `a1 T_a2 ... T_an`, each `T` a left or right multiplication.
    pub chain_dim: usize,
    pub included: bool,
    pub witness: Option<Element>,
}

/// Largest `n` accepted by [`operator_chain_span_check`] (`A^64`).
pub const MAX_CHAIN_LENGTH: usize = 6;

/// Checks `A^(2^n)` against the span of operator chains of length `n`.
pub fn operator_chain_span_check(alg: &StructureAlgebra, n: usize) -> Result<OperatorChainReport> {
    if n == 0 || n > MAX_CHAIN_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "chain length must be in 1..={MAX_CHAIN_LENGTH}"
        )));
    }
    let whole = Subspace::whole(alg);
    let power = power_chain(alg, 1 << n)?.pop().expect("nonempty chain");
    let mut chain = whole.clone();
    for _ in 1..n {
        let right = Subspace::product(alg, &chain, &whole)?;
        let left = Subspace::product(alg, &whole, &chain)?;
        chain = right.sum(&left)?;
    }
    let witness = power.basis().into_iter().find(|v| !chain.contains(v));
    Ok(OperatorChainReport {
        n,
        power_dim: power.dim(),
        chain_dim: chain.dim(),
        included: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerInclusionReport {
    pub k: usize,
    pub n: usize,
    pub power_dim: usize,
    pub plus_power_dim: usize,
    pub included: bool,
    pub witness: Option<Element>,
}

/// Checks `A^k` inside `(A^(+))^n`.
pub fn power_inclusion_check(
    alg: &StructureAlgebra,
    k: usize,
    n: usize,
) -> Result<PowerInclusionReport> {
    let power = power_chain(alg, k)?.pop().expect("nonempty chain");
    let plus = plus_power_space(alg, n)?;
    let witness = power.basis().into_iter().find(|v| !plus.contains(v));
    Ok(PowerInclusionReport {
        k,
        n,
        power_dim: power.dim(),
        plus_power_dim: plus.dim(),
        included: witness.is_none(),
        witness,
    })
}

/// Least `k <= cutoff` with `A^k` inside `(A^(+))^n`.
pub fn minimal_k(alg: &StructureAlgebra, n: usize, cutoff: usize) -> Result<Option<usize>> {
    let plus = plus_power_space(alg, n)?;
    let chain = power_chain(alg, cutoff.max(1))?;
    Ok(chain
        .iter()
        .position(|p| p.is_subspace_of(&plus))
        .map(|i| i + 1))
}

/// The bound `f(1) = 1`, `f(2) = second`, `f(n) = 2^(f(n-1) + m)`;
/// `None` once it no longer fits in `u128`.
pub fn tower_bound(n: usize, second: u128, m: u128) -> Option<u128> {
    match n {
        0 => None,
        1 => Some(1),
        2 => Some(second),
        _ => {
            let e = tower_bound(n - 1, second, m)?.checked_add(m)?;
            if e >= 128 {
                None
            } else {
                Some(1u128 << e)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilCheckMode {
    /// Every element of `F^dim` (finite fields only).
    Enumerate,
    Sample {
        samples: u64,
        seed: u64,
    },
    /// Nil-ness from the power chain: a nilpotent algebra is nil; a basis
    /// vector that is not nilpotent shows the algebra is not nil.
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilCheckReport {
    pub mode: NilCheckMode,
    pub elements_examined: u64,
    /// `None` when the mode could not decide.
    pub nil: Option<bool>,
    pub non_nilpotent: Option<Element>,
    pub nilpotency: NilpotencyIndex,
    /// Nil but not nilpotent within the cutoff.
    pub alarm: bool,
}

/// Whether a nil algebra is nilpotent (cutoff `dim + 1` for both).
pub fn finite_nil_implies_nilpotent_check(
    alg: &StructureAlgebra,
    mode: NilCheckMode,
    budget: u64,
) -> Result<NilCheckReport> {
    let cutoff = default_cutoff(alg);
    let nilpotency = nilpotency_index(alg, cutoff)?;
    let (examined, nil, non_nilpotent) = match mode {
        NilCheckMode::Enumerate | NilCheckMode::Sample { .. } => {
            let sampling = match mode {
                NilCheckMode::Sample { samples, seed } => Some((samples, seed)),
                _ => None,
            };
            let budget = if sampling.is_some() { 0 } else { budget };
            let (coverage, all) = elements(alg, budget, sampling)?;
            let bad = Exec::default().find_first(all.len() as u64, |i| {
                let u = &all[i as usize];
                (!is_nil(alg, u, cutoff)).then(|| u.clone())
            });
            let nil = match (&bad, coverage) {
                (Some(_), _) => Some(false),
                (None, Coverage::Exhaustive) => Some(true),
                (None, Coverage::Sampled { .. }) => {
                    matches!(nilpotency, NilpotencyIndex::Index(_)).then_some(true)
                }
            };
            (all.len() as u64, nil, bad)
        }
        NilCheckMode::Certificate => {
            let bad = alg
                .basis_elements()
                .into_iter()
                .find(|u| !is_nil(alg, u, cutoff));
            let nil = match (&bad, nilpotency) {
                (Some(_), _) => Some(false),
                (None, NilpotencyIndex::Index(_)) => Some(true),
                _ => None,
            };
            (alg.dim() as u64, nil, bad)
        }
    };
    Ok(NilCheckReport {
        mode,
        elements_examined: examined,
        nil,
        non_nilpotent,
        nilpotency,
        alarm: nil == Some(true) && matches!(nilpotency, NilpotencyIndex::ExceedsCutoff(_)),
    })
}
