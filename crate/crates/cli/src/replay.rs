use std::collections::BTreeMap;
use std::path::Path;

use nvalg::identity::{evaluate, parse_in, polarize_identity};
use nvalg::subspace::is_nilpotent_element;
use nvalg::variety::{default_bank, operator_chain_span_check, power_inclusion_check, ClassTag};
use nvalg::{Element, FieldSpec, StructureAlgebra};

use crate::commands::{load_algebra, read};
use crate::report::*;
use crate::{CliError, CliResult};

fn element(alg: &StructureAlgebra, e: &ElementOut) -> Result<Element, String> {
    let coords = e
        .coords
        .iter()
        .map(|c| alg.field().parse_scalar(c))
        .collect::<nvalg::Result<Vec<_>>>()
        .map_err(|err| err.to_string())?;
    alg.element_from(coords).map_err(|err| err.to_string())
}

/// Evaluates the witness again and compares with the recorded value.
pub fn check_identity_witness(alg: &StructureAlgebra, w: &IdentityWitness) -> Result<(), String> {
    let id = parse_in(&w.identity, alg.field()).map_err(|e| e.to_string())?;
    let poly = match w.component {
        None => id.poly,
        Some(c) => {
            let parts = polarize_identity(&id).map_err(|e| e.to_string())?;
            parts
                .into_iter()
                .nth(c)
                .ok_or_else(|| format!("'{}' has no component {c}", w.identity))?
                .poly
        }
    };
    if poly.to_string() != w.evaluated {
        return Err(format!(
            "'{}' does not expand to '{}'",
            w.identity, w.evaluated
        ));
    }
    let assignment = w
        .assignment
        .iter()
        .map(|(k, v)| Ok((k.clone(), element(alg, v)?)))
        .collect::<Result<BTreeMap<_, _>, String>>()?;
    let value = evaluate(alg, &poly, &assignment).map_err(|e| e.to_string())?;
    if value.is_zero() {
        return Err(format!(
            "'{}' vanishes on the recorded assignment",
            w.identity
        ));
    }
    if value != element(alg, &w.value)? {
        return Err(format!(
            "'{}' evaluates to {}",
            w.identity,
            alg.format_element(&value)
        ));
    }
    Ok(())
}

fn nilpotent(alg: &StructureAlgebra, u: &Element, cutoff: usize) -> Result<bool, String> {
    is_nilpotent_element(alg, u, cutoff).map_err(|e| e.to_string())
}

fn check_analysis(
    alg: &StructureAlgebra,
    a: &AnalysisOut,
    tally: &mut Tally,
) -> Result<(), String> {
    match a {
        AnalysisOut::NilpotentSet {
            cutoff,
            sum_witness,
            ideal_witness,
            ..
        } => {
            if let Some(w) = sum_witness {
                tally.record("sum witness", || {
                    let (u, v) = (element(alg, &w.u)?, element(alg, &w.v)?);
                    let s = &u + &v;
                    if s != element(alg, &w.sum)? {
                        return Err("recorded sum differs".into());
                    }
                    if !nilpotent(alg, &u, *cutoff)? || !nilpotent(alg, &v, *cutoff)? {
                        return Err("a summand is not nilpotent".into());
                    }
                    if nilpotent(alg, &s, *cutoff)? {
                        return Err("the sum is nilpotent".into());
                    }
                    Ok(())
                });
            }
            if let Some(w) = ideal_witness {
                tally.record("ideal witness", || {
                    let (u, b) = (element(alg, &w.u)?, element(alg, &w.basis)?);
                    if !nilpotent(alg, &u, *cutoff)? {
                        return Err("u is not nilpotent".into());
                    }
                    let ub = alg.mul(&u, &b).map_err(|e| e.to_string())?;
                    let bu = alg.mul(&b, &u).map_err(|e| e.to_string())?;
                    if nilpotent(alg, &ub, *cutoff)? && nilpotent(alg, &bu, *cutoff)? {
                        return Err("both products are nilpotent".into());
                    }
                    Ok(())
                });
            }
        }
        AnalysisOut::OperatorChain { n, witness, .. } => {
            if let Some(w) = witness {
                tally.record("chain witness", || {
                    let r = operator_chain_span_check(alg, *n).map_err(|e| e.to_string())?;
                    match r.witness {
                        Some(x) if x == element(alg, w)? => Ok(()),
                        _ => Err("chain witness not reproduced".into()),
                    }
                });
            }
        }
        AnalysisOut::PowerInclusion { k, n, witness, .. } => {
            if let Some(w) = witness {
                tally.record("inclusion witness", || {
                    let r = power_inclusion_check(alg, *k, *n).map_err(|e| e.to_string())?;
                    match r.witness {
                        Some(x) if x == element(alg, w)? => Ok(()),
                        _ => Err("inclusion witness not reproduced".into()),
                    }
                });
            }
        }
        AnalysisOut::NilNilpotent { non_nilpotent, .. } => {
            if let Some(w) = non_nilpotent {
                tally.record("non-nilpotent element", || {
                    let u = element(alg, w)?;
                    if nilpotent(alg, &u, alg.dim() + 1)? {
                        Err("element is nilpotent".into())
                    } else {
                        Ok(())
                    }
                });
            }
        }
        AnalysisOut::NilRadical { .. } => {}
    }
    Ok(())
}

#[derive(Default)]
struct Tally {
    witnesses: usize,
    confirmed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, what: &str, f: impl FnOnce() -> Result<(), String>) {
        self.witnesses += 1;
        match f() {
            Ok(()) => self.confirmed += 1,
            Err(e) => self.failures.push(format!("{what}: {e}")),
        }
    }

    fn summary(self) -> ReplaySummary {
        ReplaySummary {
            witnesses: self.witnesses,
            confirmed: self.confirmed,
            failures: self.failures,
        }
    }
}

fn report_algebra(
    report: &Report,
    field: FieldSpec,
    over: Option<&Path>,
    tally: &mut Tally,
) -> CliResult<StructureAlgebra> {
    let recorded = report
        .inputs
        .iter()
        .find(|i| i.role == "algebra")
        .ok_or_else(|| CliError::Input("report names no algebra".into()))?;
    let path = over.unwrap_or(Path::new(&recorded.path));
    if over.is_none() && sha256_hex(&read(path)?) != recorded.sha256 {
        tally.failures.push(format!(
            "{} changed since the report was written",
            recorded.path
        ));
    }
    Ok(load_algebra(path, Some(field))?.0)
}

/// Re-evaluates every witness of `report`.
pub fn replay_report(report: &Report, algebra: Option<&Path>) -> CliResult<ReplaySummary> {
    let field: FieldSpec = report
        .field
        .parse()
        .map_err(CliError::core("report field"))?;
    let mut tally = Tally::default();
    match &report.outcome {
        Outcome::Check { identities, .. } => {
            let alg = report_algebra(report, field, algebra, &mut tally)?;
            for e in identities {
                if let Some(w) = &e.witness {
                    tally.record(&e.identity, || check_identity_witness(&alg, w));
                }
            }
        }
        Outcome::Gate { class, entries, .. } => {
            let tag: ClassTag = class.parse().map_err(CliError::core("report class"))?;
            let bank = default_bank(tag, field).map_err(CliError::core("test bank"))?;
            for e in entries {
                if let Some(w) = &e.witness {
                    tally.record(&e.name, || {
                        let b = bank
                            .iter()
                            .find(|b| b.name == e.name)
                            .ok_or_else(|| format!("no bank algebra named {}", e.name))?;
                        check_identity_witness(&b.algebra, w)
                    });
                }
            }
        }
        Outcome::Analyze(a) => {
            let alg = report_algebra(report, field, algebra, &mut tally)?;
            check_analysis(&alg, a, &mut tally).map_err(CliError::Input)?;
        }
        // probe witnesses are monomials, not evaluations
        Outcome::Probe { .. } => {}
        Outcome::Replay { .. } => {
            return Err(CliError::Input("cannot replay a replay report".into()));
        }
    }
    Ok(tally.summary())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nvalg::constructions::jordan_sym;
    use nvalg::identity::holds_in;

    #[test]
    fn witnesses_are_rechecked() {
        let a = jordan_sym(2, FieldSpec::Rationals).unwrap();
        let id = parse_in("(x,y,z)^2", a.field()).unwrap();
        let c = holds_in(&a, &id, 1 << 20).unwrap();
        let mut w = IdentityWitness::new(&a, "(x,y,z)^2", None, c.counterexample().unwrap());
        assert_eq!(check_identity_witness(&a, &w), Ok(()));
        w.value = ElementOut::new(&a, &a.basis(0));
        assert!(check_identity_witness(&a, &w).is_err());
        w.evaluated = "x*y".into();
        assert!(check_identity_witness(&a, &w).is_err());
    }
}
