use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use nvalg::identity::Counterexample;
use nvalg::{Element, StructureAlgebra};

pub const REPORT_FORMAT: &str = "nva-report/1";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementOut {
    pub coords: Vec<String>,
    pub text: String,
}

impl ElementOut {
    pub fn new(alg: &StructureAlgebra, u: &Element) -> Self {
        ElementOut {
            coords: u.coords().iter().map(|c| c.to_string()).collect(),
            text: alg.format_element(u),
        }
    }
}

/// A failing evaluation: enough to redo it from the identity source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityWitness {
    pub identity: String,
    /// The polynomial that was evaluated.
    pub evaluated: String,
    /// Index among the polarized components, when the witness is for one.
    pub component: Option<usize>,
    pub assignment: BTreeMap<String, ElementOut>,
    pub value: ElementOut,
}

impl IdentityWitness {
    pub fn new(
        alg: &StructureAlgebra,
        source: &str,
        component: Option<usize>,
        c: &Counterexample,
    ) -> Self {
        IdentityWitness {
            identity: source.to_string(),
            evaluated: c.identity.poly.to_string(),
            component,
            assignment: c
                .assignment
                .iter()
                .map(|(k, v)| (k.clone(), ElementOut::new(alg, v)))
                .collect(),
            value: ElementOut::new(alg, &c.value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub identity: String,
    pub degree: usize,
    pub holds: bool,
    pub witness: Option<IdentityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeDegreeOut {
    pub degree: usize,
    pub component_dim: usize,
    pub consequence_rank: usize,
    pub combined_rank: usize,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateEntryOut {
    pub name: String,
    pub designated: bool,
    /// `in-variety`, `excluded` or `undetermined`.
    pub membership: String,
    pub witness: Option<IdentityWitness>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumWitnessOut {
    pub tier: String,
    pub u: ElementOut,
    pub v: ElementOut,
    pub sum: ElementOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealWitnessOut {
    pub u: ElementOut,
    pub basis: ElementOut,
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "analysis", rename_all = "kebab-case")]
pub enum AnalysisOut {
    NilpotentSet {
        coverage: String,
        seed: Option<u64>,
        cutoff: usize,
        elements_examined: u64,
        nilpotent_count: u64,
        closed_under_sum: bool,
        is_subspace: bool,
        is_ideal: bool,
        sum_witness: Option<SumWitnessOut>,
        ideal_witness: Option<IdealWitnessOut>,
    },
    OperatorChain {
        n: usize,
        power_dim: usize,
        chain_dim: usize,
        included: bool,
        witness: Option<ElementOut>,
    },
    PowerInclusion {
        k: usize,
        n: usize,
        power_dim: usize,
        plus_power_dim: usize,
        included: bool,
        witness: Option<ElementOut>,
        cutoff: usize,
        minimal_k: Option<usize>,
        /// The iterated exponential bound, when it fits in 128 bits.
        tower_bound: Option<String>,
    },
    NilNilpotent {
        mode: String,
        seed: Option<u64>,
        elements_examined: u64,
        nil: Option<bool>,
        non_nilpotent: Option<ElementOut>,
        nilpotency_index: Option<usize>,
        cutoff: Option<usize>,
        alarm: bool,
    },
    NilRadical {
        method: String,
        dim: usize,
        basis: Vec<ElementOut>,
        is_ideal: bool,
        is_nil: bool,
        verified: bool,
        diagnostics: Vec<String>,
    },
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Check {
        all_hold: bool,
        identities: Vec<CheckEntry>,
    },
    Probe {
        class: String,
        working_field: String,
        max_degree: usize,
        index: Option<usize>,
        degrees: Vec<ProbeDegreeOut>,
    },
    Gate {
        class: String,
        nonmatrix: Option<bool>,
        bank_relative: bool,
        scope: String,
        entries: Vec<GateEntryOut>,
    },
    Analyze(AnalysisOut),
    Replay {
        source_command: String,
        source_digest: String,
        witnesses: usize,
        confirmed: usize,
        failures: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplaySummary {
    pub witnesses: usize,
    pub confirmed: usize,
    pub failures: Vec<String>,
}

impl ReplaySummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.confirmed == self.witnesses
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Resolved options of the run.
    pub parameters: BTreeMap<String, String>,
    pub inputs: Vec<InputDigest>,
    pub field: String,
    pub outcome: Outcome,
    pub replay: Option<ReplaySummary>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub phases: BTreeMap<String, f64>,
}

/// Everything the tool writes: the reproducible report and the timings,
/// which are left out of any comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub report: Report,
    pub timings: Timings,
}

impl Envelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

impl Report {
    /// Canonical bytes of the report without timings.
    pub fn canonical(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} ({})", self.tool, self.command, self.version);
        for i in &self.inputs {
            let _ = writeln!(s, "  {}: {} sha256={}", i.role, i.path, &i.sha256[..16]);
        }
        let _ = writeln!(s, "  field: {}", self.field);
        match &self.outcome {
            Outcome::Check {
                all_hold,
                identities,
            } => {
                for e in identities {
                    let verdict = if e.holds { "holds" } else { "FAILS" };
                    let _ = writeln!(s, "{verdict:>6}  {}", e.identity);
                    if let Some(w) = &e.witness {
                        write_witness(&mut s, w);
                    }
                }
                let _ = writeln!(s, "all hold: {all_hold}");
            }
            Outcome::Probe {
                class,
                working_field,
                max_degree,
                index,
                degrees,
            } => {
                let _ = writeln!(
                    s,
                    "class {class}, working field {working_field}, max degree {max_degree}"
                );
                for d in degrees {
                    let _ = writeln!(
                        s,
                        "  degree {}: dim {}, consequences {}, with circle products {}, {}",
                        d.degree,
                        d.component_dim,
                        d.consequence_rank,
                        d.combined_rank,
                        match &d.witness {
                            None => "all Lie products reduce".to_string(),
                            Some(w) => format!("{w} does not reduce"),
                        }
                    );
                }
                match index {
                    Some(i) => {
                        let _ = writeln!(s, "admissibility index: {i}");
                    }
                    None => {
                        let _ = writeln!(s, "admissibility index: none up to degree {max_degree}");
                    }
                }
            }
            Outcome::Gate {
                class,
                nonmatrix,
                bank_relative,
                scope,
                entries,
            } => {
                let _ = writeln!(s, "class {class}");
                for e in entries {
                    let tag = if e.designated { "" } else { " (diagnostic)" };
                    let _ = writeln!(s, "  {}{tag}: {}", e.name, e.membership);
                    if let Some(w) = &e.witness {
                        write_witness(&mut s, w);
                    }
                    if let Some(r) = &e.reason {
                        let _ = writeln!(s, "    {r}");
                    }
                }
                let verdict = match nonmatrix {
                    Some(true) => "nonmatrix",
                    Some(false) => "not nonmatrix",
                    None => "undetermined",
                };
                let rel = if *bank_relative {
                    " (relative to the bank)"
                } else {
                    ""
                };
                let _ = writeln!(s, "verdict: {verdict}{rel}");
                let _ = writeln!(s, "scope: {scope}");
            }
            Outcome::Analyze(a) => write_analysis(&mut s, a),
            Outcome::Replay {
                source_command,
                witnesses,
                confirmed,
                failures,
                ..
            } => {
                let _ = writeln!(
                    s,
                    "replayed {source_command} report: {confirmed}/{witnesses} witnesses confirmed"
                );
                for f in failures {
                    let _ = writeln!(s, "  mismatch: {f}");
                }
            }
        }
        if let Some(r) = &self.replay {
            let _ = writeln!(
                s,
                "replay: {}/{} witnesses confirmed",
                r.confirmed, r.witnesses
            );
        }
        s
    }
}

fn write_witness(s: &mut String, w: &IdentityWitness) {
    if w.component.is_some() {
        let _ = writeln!(s, "    polarized: {}", w.evaluated);
    }
    for (k, v) in &w.assignment {
        let _ = writeln!(s, "    {k} = {}", v.text);
    }
    let _ = writeln!(s, "    value = {}", w.value.text);
}

fn write_analysis(s: &mut String, a: &AnalysisOut) {
    match a {
        AnalysisOut::NilpotentSet {
            coverage,
            cutoff,
            elements_examined,
            nilpotent_count,
            closed_under_sum,
            is_subspace,
            is_ideal,
            sum_witness,
            ideal_witness,
            ..
        } => {
            let _ = writeln!(s, "nilpotent set ({coverage}, cutoff {cutoff})");
            let _ = writeln!(
                s,
                "  examined {elements_examined}, nilpotent {nilpotent_count}"
            );
            let _ = writeln!(s, "  closed under sum: {closed_under_sum}");
            let _ = writeln!(s, "  subspace: {is_subspace}, ideal: {is_ideal}");
            if let Some(w) = sum_witness {
                let _ = writeln!(s, "  u = {}, v = {} ({})", w.u.text, w.v.text, w.tier);
                let _ = writeln!(s, "  u + v = {} is not nilpotent", w.sum.text);
            }
            if let Some(w) = ideal_witness {
                let _ = writeln!(s, "  ideal witness: u = {}, b = {}", w.u.text, w.basis.text);
            }
        }
        AnalysisOut::OperatorChain {
            n,
            power_dim,
            chain_dim,
            included,
            witness,
        } => {
            let _ = writeln!(s, "operator chain n={n}: power dim {power_dim}, chain dim {chain_dim}, included {included}");
            if let Some(w) = witness {
                let _ = writeln!(s, "  outside: {}", w.text);
            }
        }
        AnalysisOut::PowerInclusion {
            k,
            n,
            power_dim,
            plus_power_dim,
            included,
            witness,
            cutoff,
            minimal_k,
            tower_bound,
        } => {
            let _ = writeln!(
                s,
                "power inclusion k={k}, n={n}: power dim {power_dim}, plus power dim {plus_power_dim}, included {included}"
            );
            if let Some(w) = witness {
                let _ = writeln!(s, "  outside: {}", w.text);
            }
            match minimal_k {
                Some(m) => {
                    let _ = writeln!(s, "  minimal k: {m}");
                }
                None => {
                    let _ = writeln!(s, "  minimal k: none up to {cutoff}");
                }
            }
            if let Some(t) = tower_bound {
                let _ = writeln!(s, "  tower bound: {t}");
            }
        }
        AnalysisOut::NilNilpotent {
            mode,
            elements_examined,
            nil,
            non_nilpotent,
            nilpotency_index,
            cutoff,
            alarm,
            ..
        } => {
            let _ = writeln!(
                s,
                "nil check ({mode}): examined {elements_examined}, nil {nil:?}"
            );
            if let Some(u) = non_nilpotent {
                let _ = writeln!(s, "  not nilpotent: {}", u.text);
            }
            match (nilpotency_index, cutoff) {
                (Some(i), _) => {
                    let _ = writeln!(s, "  nilpotency index: {i}");
                }
                (None, Some(c)) => {
                    let _ = writeln!(s, "  not nilpotent up to {c}");
                }
                _ => {}
            }
            if *alarm {
                let _ = writeln!(s, "  ALARM: nil but not nilpotent");
            }
        }
        AnalysisOut::NilRadical {
            method,
            dim,
            basis,
            is_ideal,
            is_nil,
            verified,
            diagnostics,
        } => {
            let _ = writeln!(s, "nil radical ({method}): dim {dim}, ideal {is_ideal}, nil {is_nil}, verified {verified}");
            for b in basis {
                let _ = writeln!(s, "  {}", b.text);
            }
            for d in diagnostics {
                let _ = writeln!(s, "  note: {d}");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nvalg::constructions::matrix_algebra;
    use nvalg::identity::{holds_in, parse};
    use nvalg::FieldSpec;

    fn check_report() -> Report {
        let a = matrix_algebra(2, FieldSpec::Rationals).unwrap();
        let id = parse("[x,y]^2").unwrap();
        let c = holds_in(&a, &id, 1 << 20).unwrap();
        let w = IdentityWitness::new(&a, "[x,y]^2", None, c.counterexample().unwrap());
        Report {
            format: REPORT_FORMAT.into(),
            tool: "nva".into(),
            version: "0".into(),
            command: "check".into(),
            parameters: BTreeMap::from([("seed".into(), "0".into())]),
            inputs: vec![],
            field: "q".into(),
            outcome: Outcome::Check {
                all_hold: false,
                identities: vec![CheckEntry {
                    identity: "[x,y]^2".into(),
                    degree: 4,
                    holds: false,
                    witness: Some(w),
                }],
            },
            replay: None,
        }
    }

    #[test]
    fn digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn envelope_round_trip() {
        let env = Envelope {
            report: check_report(),
            timings: Timings {
                total_ms: 1.5,
                phases: BTreeMap::from([("check".into(), 1.0)]),
            },
        };
        let back = Envelope::from_json(&env.to_json()).unwrap();
        assert_eq!(back, env);
        assert!(!back.report.canonical().contains("total_ms"));
    }

    #[test]
    fn text_rendering() {
        let t = check_report().to_text();
        assert!(t.contains(" FAILS  [x,y]^2"), "{t}");
        assert!(t.contains("e11 + e22"), "{t}");
        assert!(t.ends_with("all hold: false\n"), "{t}");
    }
}
