use super::{ClassTag, VarietyPresentation};
use crate::algebra::StructureAlgebra;
use crate::constructions::{
    jordan_sym, matrix_algebra, matrix_mutation, octonions, quaternions, split_octonions,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::identity::{holds_in, Counterexample, HoldsVerdict};

/// Mutation parameters `(num, den)` used for `M2` mutations in the
/// noncommutative Jordan bank.
pub const DEFAULT_LAMBDAS: [(i64, i64); 3] = [(2, 1), (-1, 1), (1, 3)];

#[derive(Clone, Debug, PartialEq)]
pub struct BankEntry {
    pub name: String,
    pub algebra: StructureAlgebra,
    /// Designated algebras decide the verdict; the others are diagnostics.
    pub designated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    InVariety,
    Excluded {
        /// Source text of the failing identity.
        identity: String,
        witness: Box<Counterexample>,
    },
    Undetermined {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateEntry {
    pub name: String,
    pub designated: bool,
    pub membership: Membership,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateReport {
    pub class_tag: ClassTag,
    pub entries: Vec<GateEntry>,
    /// `Some(true)` when every designated algebra is excluded,
    /// `Some(false)` when one lies in the variety.
    pub nonmatrix: Option<bool>,
    /// The verdict only covers the bank, not every simple quadratic algebra.
    pub bank_relative: bool,
}

fn entry(name: &str, algebra: StructureAlgebra, designated: bool) -> BankEntry {
    BankEntry {
        name: name.into(),
        algebra,
        designated,
    }
}

/// Test algebras for a class. Algebras that cannot be built over `field`
/// (for instance `H2` in characteristic 2) are left out.
pub fn default_bank(class: ClassTag, field: FieldSpec) -> Result<Vec<BankEntry>> {
    let mut bank = Vec::new();
    match class {
        ClassTag::Associative | ClassTag::Alternative => {
            bank.push(entry("M2", matrix_algebra(2, field)?, true));
            bank.push(entry(
                "split-octonions",
                split_octonions(field)?.into_algebra(),
                false,
            ));
        }
        ClassTag::Jordan => {
            if let Ok(h) = jordan_sym(2, field) {
                bank.push(entry("H2", h, true));
            }
        }
        ClassTag::Ncjordan | ClassTag::Anticommutative | ClassTag::Custom => {
            for (n, d) in DEFAULT_LAMBDAS {
                let Ok(l) = field.from_ratio(n, d) else {
                    continue;
                };
                if field.from_ratio(1, 2).is_ok_and(|h| h == l) {
                    continue;
                }
                bank.push(entry(
                    &format!("M2({n}/{d})"),
                    matrix_mutation(&l, field)?,
                    true,
                ));
            }
            bank.push(entry(
                "quaternions",
                quaternions(field)?.into_algebra(),
                true,
            ));
            bank.push(entry("octonions", octonions(field)?.into_algebra(), true));
            if let Ok(h) = jordan_sym(2, field) {
                bank.push(entry("H2", h, true));
            }
        }
    }
    Ok(bank)
}

/// Evaluates the identities of `v` on the default bank for its class.
pub fn nonmatrix_gate(v: &VarietyPresentation, budget: u64) -> Result<GateReport> {
    let bank = default_bank(v.class_tag, v.field)?;
    nonmatrix_gate_with_bank(v, &bank, budget)
}

pub fn nonmatrix_gate_with_bank(
    v: &VarietyPresentation,
    bank: &[BankEntry],
    budget: u64,
) -> Result<GateReport> {
    let ids = v.all_identities()?;
    let mut entries = Vec::new();
    for b in bank {
        let mut membership = Membership::InVariety;
        for id in &ids {
            match holds_in(&b.algebra, id, budget) {
                Ok(HoldsVerdict::Holds) => {}
                Ok(HoldsVerdict::Counterexample(c)) => {
                    membership = Membership::Excluded {
                        identity: id.source.clone(),
                        witness: c,
                    };
                    break;
                }
                Err(e @ Error::BudgetExceeded { .. }) => {
                    membership = Membership::Undetermined {
                        reason: e.to_string(),
                    };
                }
                Err(e) => return Err(e),
            }
        }
        entries.push(GateEntry {
            name: b.name.clone(),
            designated: b.designated,
            membership,
        });
    }
    let designated: Vec<&GateEntry> = entries.iter().filter(|e| e.designated).collect();
    let nonmatrix = if designated
        .iter()
        .any(|e| e.membership == Membership::InVariety)
    {
        Some(false)
    } else if !designated.is_empty()
        && designated
            .iter()
            .all(|e| matches!(e.membership, Membership::Excluded { .. }))
    {
        Some(true)
    } else {
        None
    };
    Ok(GateReport {
        class_tag: v.class_tag,
        entries,
        nonmatrix,
        bank_relative: !matches!(
            v.class_tag,
            ClassTag::Associative | ClassTag::Alternative | ClassTag::Jordan
        ),
    })
}
