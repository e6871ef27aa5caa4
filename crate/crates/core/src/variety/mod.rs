//! Varieties given by identities: multilinear consequence spans,
//! admissibility probes, nonmatrix gates and checks on finite-dimensional
//! algebras.
//!
//! Presentation files are identity lines with an optional header:
//!
//! ```text
//! class: jordan
//! (x,y,z)^2
//! ```

mod consequence;
mod finite;
mod gate;
mod multilinear;
mod probe;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::identity::{parse_identity_lines, parse_in, Identity};

pub use consequence::{consequence_span, implies, reseed, ConsequenceSpan, SpanOptions};
pub use finite::{
    finite_nil_implies_nilpotent_check, minimal_k, nilpotent_set_analysis,
    operator_chain_span_check, power_inclusion_check, tower_bound, Coverage, NilCheckMode,
    NilCheckReport, NilpotentSetReport, OperatorChainReport, PowerInclusionReport, SumWitness,
    WitnessTier,
};
pub use gate::{
    default_bank, nonmatrix_gate, nonmatrix_gate_with_bank, BankEntry, GateEntry, GateReport,
    Membership, DEFAULT_LAMBDAS,
};
pub use multilinear::{
    block_terms, component_dim, shape_count, MultilinearSpace, Shape, Term, DEFAULT_COLUMN_BUDGET,
};
pub use probe::{admissibility_probe, admissibility_probe_with, ProbeDegree, ProbeReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassTag {
    Associative,
    Alternative,
    Jordan,
    Ncjordan,
    Anticommutative,
    Custom,
}

impl ClassTag {
    pub const ALL: [ClassTag; 6] = [
        ClassTag::Associative,
        ClassTag::Alternative,
        ClassTag::Jordan,
        ClassTag::Ncjordan,
        ClassTag::Anticommutative,
        ClassTag::Custom,
    ];

    /// Defining identities of the class.
    pub fn identity_sources(self) -> &'static [&'static str] {
        match self {
            ClassTag::Associative => &["(x,y,z)"],
            ClassTag::Alternative => &["(x,x,y)", "(y,x,x)"],
            ClassTag::Jordan => &["[x,y]", "(x^2,y,x)"],
            ClassTag::Ncjordan => &["(x,y,x)", "(x^2,y,x)"],
            ClassTag::Anticommutative => &["x^2"],
            ClassTag::Custom => &[],
        }
    }

    pub fn identities(self, field: FieldSpec) -> Result<Vec<Identity>> {
        self.identity_sources()
            .iter()
            .map(|s| parse_in(s, field))
            .collect()
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::Associative => "associative",
            ClassTag::Alternative => "alternative",
            ClassTag::Jordan => "jordan",
            ClassTag::Ncjordan => "ncjordan",
            ClassTag::Anticommutative => "anticommutative",
            ClassTag::Custom => "custom",
        })
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassTag::ALL
            .into_iter()
            .find(|c| c.to_string() == s.trim())
            .ok_or_else(|| Error::Format(format!("unknown class '{}'", s.trim())))
    }
}

/// A variety: the class identities plus extra ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyPresentation {
    pub identities: Vec<Identity>,
    pub class_tag: ClassTag,
    pub field: FieldSpec,
}

impl VarietyPresentation {
    pub fn new(class_tag: ClassTag, identities: Vec<Identity>, field: FieldSpec) -> Result<Self> {
        for id in &identities {
            if id.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: id.field().to_string(),
                });
            }
        }
        Ok(VarietyPresentation {
            identities,
            class_tag,
            field,
        })
    }

    /// Just the class identities.
    pub fn class(class_tag: ClassTag, field: FieldSpec) -> Result<Self> {
        Self::new(class_tag, Vec::new(), field)
    }

    /// Class tag plus identities given in the identity language.
    pub fn from_sources(class_tag: ClassTag, sources: &[&str], field: FieldSpec) -> Result<Self> {
        let ids = sources
            .iter()
            .map(|s| parse_in(s, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(class_tag, ids, field)
    }

    /// Parses a presentation file. The first non-comment line may be
    /// `class: <tag>`; without it the class is `custom`.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        let mut class_tag = ClassTag::Custom;
        let mut body = String::new();
        let mut header_done = false;
        for line in text.lines() {
            let content = line.split('#').next().unwrap_or("").trim();
            if !header_done && !content.is_empty() {
                header_done = true;
                if let Some(tag) = content.strip_prefix("class:") {
                    class_tag = tag.parse()?;
                    body.push('\n');
                    continue;
                }
            }
            body.push_str(line);
            body.push('\n');
        }
        let ids = parse_identity_lines(&body, field)?;
        Self::new(class_tag, ids, field)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("class: {}\n", self.class_tag);
        for id in &self.identities {
            out.push_str(&id.source);
            out.push('\n');
        }
        out
    }

    /// Class identities followed by the extra identities.
    pub fn all_identities(&self) -> Result<Vec<Identity>> {
        let mut ids = self.class_tag.identities(self.field)?;
        ids.extend(self.identities.iter().cloned());
        Ok(ids)
    }
}
