use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use nvalg::constructions::{scalar_extension, Recipe};
use nvalg::identity::{
    holds_in, parse_identity_lines, polarize_identity, Counterexample, HoldsVerdict,
};
use nvalg::io::{read_algebra, write_algebra};
use nvalg::subspace::{nil_radical_finite, NilRadicalMethod, NilpotencyIndex};
use nvalg::variety::{
    admissibility_probe, finite_nil_implies_nilpotent_check, minimal_k, nilpotent_set_analysis,
    nonmatrix_gate, operator_chain_span_check, power_inclusion_check, tower_bound, Coverage,
    Membership, NilCheckMode, SpanOptions, VarietyPresentation, WitnessTier,
};
use nvalg::{FieldSpec, Identity, StructureAlgebra};

use crate::replay::replay_report;
use crate::report::*;
use crate::{Analysis, CliError, CliResult, Command, GlobalOpts};

pub(crate) fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn read_text(path: &Path) -> CliResult<(String, InputDigest)> {
    let bytes = read(path)?;
    let digest = InputDigest {
        role: String::new(),
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    };
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))?;
    Ok((text, digest))
}

fn input(role: &str, path: &Path) -> CliResult<(String, InputDigest)> {
    let (text, mut d) = read_text(path)?;
    d.role = role.into();
    Ok((text, d))
}

/// The algebra read over `field`: unchanged, extended from `Q` to
/// `Q(r)`, or reduced from `Q` modulo `p`.
pub fn retarget(alg: StructureAlgebra, field: Option<FieldSpec>) -> CliResult<StructureAlgebra> {
    let Some(to) = field else { return Ok(alg) };
    let from = alg.field();
    if from == to {
        return Ok(alg);
    }
    match (from, to) {
        (FieldSpec::Rationals, FieldSpec::QuadraticExtension { .. }) => {
            scalar_extension(&alg, to).map_err(CliError::core("scalar extension"))
        }
        (FieldSpec::Rationals, FieldSpec::PrimeField { .. }) => {
            let entries = alg
                .entries()
                .map(|(i, j, k, c)| {
                    let q = c.as_rational().expect("rational coefficient");
                    Ok((i, j, k, to.from_rational(q)?))
                })
                .collect::<nvalg::Result<Vec<_>>>()
                .map_err(CliError::core(format!("reduction to {to}")))?;
            StructureAlgebra::new(to, alg.basis_names().to_vec(), entries)
                .map_err(CliError::core(format!("reduction to {to}")))
        }
        _ => Err(CliError::Input(format!(
            "cannot move an algebra over {from} to {to}"
        ))),
    }
}

pub(crate) fn load_algebra(
    path: &Path,
    field: Option<FieldSpec>,
) -> CliResult<(StructureAlgebra, InputDigest)> {
    let (text, d) = input("algebra", path)?;
    let alg = read_algebra(&text).map_err(CliError::core(path.display().to_string()))?;
    Ok((retarget(alg, field)?, d))
}

/// Builds the algebra of a recipe file and returns its canonical file text.
pub fn construct(recipe: &Path) -> CliResult<String> {
    let (text, _) = read_text(recipe)?;
    let r = Recipe::from_json(&text).map_err(CliError::core(recipe.display().to_string()))?;
    let alg = r.build().map_err(CliError::core("construction"))?;
    Ok(write_algebra(&alg))
}

struct Timer {
    start: Instant,
    phases: BTreeMap<String, f64>,
}

impl Timer {
    fn new() -> Self {
        Timer {
            start: Instant::now(),
            phases: BTreeMap::new(),
        }
    }

    fn phase<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.phases
            .insert(name.into(), t.elapsed().as_secs_f64() * 1e3);
        out
    }

    fn finish(self) -> Timings {
        Timings {
            total_ms: self.start.elapsed().as_secs_f64() * 1e3,
            phases: self.phases,
        }
    }
}

fn base_parameters(opts: &GlobalOpts) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    if let Some(f) = opts.field {
        p.insert("field".into(), f.to_string());
    }
    p
}

fn witness_component(id: &Identity, c: &Counterexample) -> CliResult<Option<usize>> {
    if !c.polarized {
        return Ok(None);
    }
    let parts = polarize_identity(id).map_err(CliError::core("polarization"))?;
    Ok(parts.iter().position(|p| p.poly == c.identity.poly))
}

/// Runs a report-producing command.
pub fn execute(command: &Command, opts: &GlobalOpts) -> CliResult<Envelope> {
    let mut timer = Timer::new();
    let mut params = base_parameters(opts);
    let mut inputs = Vec::new();
    let (name, field, outcome) = match command {
        Command::Construct { .. } => {
            return Err(CliError::Input(
                "construct writes an algebra file, not a report".into(),
            ))
        }
        Command::Replay { report, algebra } => {
            let (text, d) = input("report", report)?;
            let source = Envelope::from_json(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", report.display())))?;
            let summary = timer.phase("replay", || {
                replay_report(&source.report, algebra.as_deref())
            })?;
            if let Some(a) = algebra {
                inputs.push(input("algebra", a)?.1);
            }
            let outcome = Outcome::Replay {
                source_command: source.report.command.clone(),
                source_digest: d.sha256.clone(),
                witnesses: summary.witnesses,
                confirmed: summary.confirmed,
                failures: summary.failures,
            };
            inputs.insert(0, d);
            ("replay", source.report.field.clone(), outcome)
        }
        Command::Check {
            algebra,
            identities,
        } => {
            params.insert("budget-tuples".into(), opts.budget_tuples.to_string());
            let (alg, d) = load_algebra(algebra, opts.field)?;
            inputs.push(d);
            let (text, d) = input("identities", identities)?;
            inputs.push(d);
            let ids = parse_identity_lines(&text, alg.field())
                .map_err(CliError::core(identities.display().to_string()))?;
            let mut entries = Vec::new();
            for id in &ids {
                let verdict = timer.phase(&format!("check {}", id.source), || {
                    holds_in(&alg, id, opts.budget_tuples)
                });
                let verdict =
                    verdict.map_err(CliError::core(format!("checking '{}'", id.source)))?;
                let witness = match &verdict {
                    HoldsVerdict::Holds => None,
                    HoldsVerdict::Counterexample(c) => {
                        let comp = witness_component(id, c)?;
                        Some(IdentityWitness::new(&alg, &id.source, comp, c))
                    }
                };
                entries.push(CheckEntry {
                    identity: id.source.clone(),
                    degree: id.degree(),
                    holds: verdict.holds(),
                    witness,
                });
            }
            let outcome = Outcome::Check {
                all_hold: entries.iter().all(|e| e.holds),
                identities: entries,
            };
            ("check", alg.field().to_string(), outcome)
        }
        Command::ProbeAdmissibility { presentation } => {
            let working = opts.field.unwrap_or(FieldSpec::PrimeField { p: 101 });
            params.insert("max-degree".into(), opts.max_degree.to_string());
            params.insert("field".into(), working.to_string());
            let (text, d) = input("presentation", presentation)?;
            inputs.push(d);
            let v = VarietyPresentation::parse(&text, FieldSpec::Rationals)
                .map_err(CliError::core(presentation.display().to_string()))?;
            let span = SpanOptions::default().with_field(working);
            let r = timer
                .phase("probe", || {
                    admissibility_probe(&v, opts.max_degree as usize, &span)
                })
                .map_err(CliError::core("admissibility probe"))?;
            let outcome = Outcome::Probe {
                class: v.class_tag.to_string(),
                working_field: working.to_string(),
                max_degree: r.max_degree,
                index: r.index,
                degrees: r
                    .degrees
                    .into_iter()
                    .map(|d| ProbeDegreeOut {
                        degree: d.degree,
                        component_dim: d.component_dim,
                        consequence_rank: d.consequence_rank,
                        combined_rank: d.combined_rank,
                        holds: d.holds,
                        witness: d.witness,
                    })
                    .collect(),
            };
            ("probe-admissibility", working.to_string(), outcome)
        }
        Command::Gate { presentation } => {
            let field = opts.field.unwrap_or(FieldSpec::Rationals);
            params.insert("budget-tuples".into(), opts.budget_tuples.to_string());
            let (text, d) = input("presentation", presentation)?;
            inputs.push(d);
            let v = VarietyPresentation::parse(&text, field)
                .map_err(CliError::core(presentation.display().to_string()))?;
            let bank = nvalg::variety::default_bank(v.class_tag, field)
                .map_err(CliError::core("test bank"))?;
            let r = timer
                .phase("gate", || nonmatrix_gate(&v, opts.budget_tuples))
                .map_err(CliError::core("nonmatrix gate"))?;
            let ids = v.all_identities().map_err(CliError::core("presentation"))?;
            let mut entries = Vec::new();
            for (e, b) in r.entries.iter().zip(&bank) {
                let (membership, witness, reason) = match &e.membership {
                    Membership::InVariety => ("in-variety", None, None),
                    Membership::Excluded { identity, witness } => {
                        let id = ids
                            .iter()
                            .find(|i| &i.source == identity)
                            .expect("failing identity comes from the presentation");
                        let comp = witness_component(id, witness)?;
                        let w = IdentityWitness::new(&b.algebra, identity, comp, witness);
                        ("excluded", Some(w), None)
                    }
                    Membership::Undetermined { reason } => {
                        ("undetermined", None, Some(reason.clone()))
                    }
                };
                entries.push(GateEntryOut {
                    name: e.name.clone(),
                    designated: e.designated,
                    membership: membership.into(),
                    witness,
                    reason,
                });
            }
            let scope = if r.bank_relative {
                "exclusion of the listed test algebras only; not a decision over all simple algebras of the class"
            } else {
                "exclusion of the designated algebras decides the class"
            };
            let outcome = Outcome::Gate {
                class: r.class_tag.to_string(),
                nonmatrix: r.nonmatrix,
                bank_relative: r.bank_relative,
                scope: scope.into(),
                entries,
            };
            ("gate", field.to_string(), outcome)
        }
        Command::Analyze {
            algebra,
            analysis,
            n,
            k,
            cutoff,
            samples,
            certificate,
        } => {
            let (alg, d) = load_algebra(algebra, opts.field)?;
            inputs.push(d);
            let a = timer.phase("analysis", || {
                analyze(
                    &alg,
                    *analysis,
                    *n,
                    *k,
                    *cutoff,
                    *samples,
                    *certificate,
                    opts,
                    &mut params,
                )
            })?;
            ("analyze", alg.field().to_string(), Outcome::Analyze(a))
        }
    };
    let mut report = Report {
        format: REPORT_FORMAT.into(),
        tool: "nva".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: name.into(),
        parameters: params,
        inputs,
        field,
        outcome,
        replay: None,
    };
    if opts.replay && !matches!(command, Command::Replay { .. }) {
        let summary = timer.phase("replay", || replay_report(&report, None))?;
        report.replay = Some(summary);
    }
    Ok(Envelope {
        report,
        timings: timer.finish(),
    })
}

fn tier_name(t: WitnessTier) -> &'static str {
    match t {
        WitnessTier::BasisPair => "basis-pair",
        WitnessTier::EpsilonPair => "epsilon-pair",
        WitnessTier::Search => "search",
    }
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    alg: &StructureAlgebra,
    analysis: Analysis,
    n: usize,
    k: Option<usize>,
    cutoff: usize,
    samples: Option<u64>,
    certificate: bool,
    opts: &GlobalOpts,
    params: &mut BTreeMap<String, String>,
) -> CliResult<AnalysisOut> {
    let sampling = samples.map(|s| (s, opts.seed));
    if let Some(s) = samples {
        params.insert("samples".into(), s.to_string());
        params.insert("seed".into(), opts.seed.to_string());
    }
    let el = |u: &nvalg::Element| ElementOut::new(alg, u);
    let out = match analysis {
        Analysis::NilpotentSet => {
            params.insert("budget-enum".into(), opts.budget_enum.to_string());
            let r = nilpotent_set_analysis(alg, opts.budget_enum, sampling)
                .map_err(CliError::core("nilpotent-set analysis"))?;
            let (coverage, seed) = match r.coverage {
                Coverage::Exhaustive => ("exhaustive".to_string(), None),
                Coverage::Sampled { samples, seed } => (format!("sampled {samples}"), Some(seed)),
            };
            AnalysisOut::NilpotentSet {
                coverage,
                seed,
                cutoff: r.cutoff,
                elements_examined: r.elements_examined,
                nilpotent_count: r.nilpotent_count,
                closed_under_sum: r.closed_under_sum,
                is_subspace: r.is_subspace,
                is_ideal: r.is_ideal,
                sum_witness: r.sum_witness.as_ref().map(|w| SumWitnessOut {
                    tier: tier_name(w.tier).into(),
                    u: el(&w.u),
                    v: el(&w.v),
                    sum: el(&(&w.u + &w.v)),
                }),
                ideal_witness: r.ideal_witness.as_ref().map(|(u, b)| IdealWitnessOut {
                    u: el(u),
                    basis: el(b),
                }),
            }
        }
        Analysis::OperatorChain => {
            params.insert("n".into(), n.to_string());
            let r = operator_chain_span_check(alg, n).map_err(CliError::core("operator chain"))?;
            AnalysisOut::OperatorChain {
                n: r.n,
                power_dim: r.power_dim,
                chain_dim: r.chain_dim,
                included: r.included,
                witness: r.witness.as_ref().map(el),
            }
        }
        Analysis::PowerInclusion => {
            let k = k.unwrap_or(1 << n);
            params.insert("n".into(), n.to_string());
            params.insert("k".into(), k.to_string());
            params.insert("cutoff".into(), cutoff.to_string());
            let r = power_inclusion_check(alg, k, n).map_err(CliError::core("power inclusion"))?;
            let m = minimal_k(alg, n, cutoff).map_err(CliError::core("minimal k"))?;
            let tower = m.and_then(|second| tower_bound(n, second as u128, 1));
            AnalysisOut::PowerInclusion {
                k: r.k,
                n: r.n,
                power_dim: r.power_dim,
                plus_power_dim: r.plus_power_dim,
                included: r.included,
                witness: r.witness.as_ref().map(el),
                cutoff,
                minimal_k: m,
                tower_bound: tower.map(|t| t.to_string()),
            }
        }
        Analysis::NilNilpotent => {
            params.insert("budget-enum".into(), opts.budget_enum.to_string());
            let mode = match (certificate, samples) {
                (true, _) => NilCheckMode::Certificate,
                (false, Some(s)) => NilCheckMode::Sample {
                    samples: s,
                    seed: opts.seed,
                },
                (false, None) => NilCheckMode::Enumerate,
            };
            let r = finite_nil_implies_nilpotent_check(alg, mode, opts.budget_enum)
                .map_err(CliError::core("nil check"))?;
            let (mode, seed) = match r.mode {
                NilCheckMode::Enumerate => ("enumerate".to_string(), None),
                NilCheckMode::Sample { samples, seed } => (format!("sample {samples}"), Some(seed)),
                NilCheckMode::Certificate => ("certificate".to_string(), None),
            };
            let (index, cut) = match r.nilpotency {
                NilpotencyIndex::Index(i) => (Some(i), None),
                NilpotencyIndex::ExceedsCutoff(c) => (None, Some(c)),
            };
            AnalysisOut::NilNilpotent {
                mode,
                seed,
                elements_examined: r.elements_examined,
                nil: r.nil,
                non_nilpotent: r.non_nilpotent.as_ref().map(el),
                nilpotency_index: index,
                cutoff: cut,
                alarm: r.alarm,
            }
        }
        Analysis::NilRadical => {
            let method = match alg.field() {
                FieldSpec::PrimeField { .. } => NilRadicalMethod::EnumerateGfp,
                _ => NilRadicalMethod::TraceFormChar0,
            };
            params.insert("budget-enum".into(), opts.budget_enum.to_string());
            let r = nil_radical_finite(alg, method, opts.budget_enum as u128)
                .map_err(CliError::core("nil radical"))?;
            AnalysisOut::NilRadical {
                method: match r.method {
                    NilRadicalMethod::EnumerateGfp => "enumerate".into(),
                    NilRadicalMethod::TraceFormChar0 => "trace-form".into(),
                },
                dim: r.radical.dim(),
                basis: r.radical.basis().iter().map(el).collect(),
                is_ideal: r.is_ideal,
                is_nil: r.is_nil,
                verified: r.verified,
                diagnostics: r.diagnostics,
            }
        }
    };
    Ok(out)
}
