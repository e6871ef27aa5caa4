use super::consequence::{consequence_span, SpanOptions};
use super::multilinear::{block_terms, MultilinearSpace, Term};
use super::VarietyPresentation;
use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::Echelon;

/// Outcome of the probe in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeDegree {
    pub degree: usize,
    pub component_dim: usize,
    pub consequence_rank: usize,
    /// Rank of consequences together with all circle products.
    pub combined_rank: usize,
    pub holds: bool,
    /// First bracket monomial outside the span, e.g. `[[x1,x2],x3]`.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub max_degree: usize,
    /// Least degree in which every purely-Lie product is a sum of circle
    /// products modulo the identities.
    pub index: Option<usize>,
    pub degrees: Vec<ProbeDegree>,
}

fn bracket_text(t: &Term) -> String {
    match t {
        Term::Leaf(i) => format!("x{}", i + 1),
        Term::Node(a, b) => format!("[{},{}]", bracket_text(a), bracket_text(b)),
    }
}

/// Expansion of a bracket monomial with `[u,v] = scale (uv - vu)`.
fn lie_expand(t: &Term, scale: &Scalar) -> Vec<(Term, Scalar)> {
    match t {
        Term::Leaf(_) => vec![(t.clone(), scale.field().one())],
        Term::Node(a, b) => {
            let ea = lie_expand(a, scale);
            let eb = lie_expand(b, scale);
            let mut out = Vec::with_capacity(2 * ea.len() * eb.len());
            for (ta, ca) in &ea {
                for (tb, cb) in &eb {
                    let c = &(ca * cb) * scale;
                    out.push((Term::node(ta.clone(), tb.clone()), c.clone()));
                    out.push((Term::node(tb.clone(), ta.clone()), -&c));
                }
            }
            out
        }
    }
}

fn circle_span(space: &MultilinearSpace, field: crate::field::FieldSpec) -> Echelon {
    let n = space.degree();
    let mut ech = Echelon::new(field, space.dim());
    let one = field.one();
    // blocks containing x1, so each unordered pair appears once
    for mask in 1u32..(1 << n) - 1 {
        if mask & 1 == 0 {
            continue;
        }
        let b: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let c: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        let (us, vs) = (block_terms(&b), block_terms(&c));
        for u in &us {
            for v in &vs {
                let uv = Term::node(u.clone(), v.clone());
                let vu = Term::node(v.clone(), u.clone());
                ech.insert_sparse(space.row([(&uv, &one), (&vu, &one)]));
            }
        }
    }
    ech
}

fn probe_degree(
    v: &VarietyPresentation,
    m: usize,
    opts: &SpanOptions,
    half_bracket: bool,
) -> Result<ProbeDegree> {
    let f = opts.field;
    let scale = if half_bracket {
        f.from_ratio(1, 2)?
    } else {
        f.one()
    };
    let cons = consequence_span(v, m, opts)?;
    let combined = cons.echelon.sum(&circle_span(&cons.space, f));
    let mut witness = None;
    for t in cons.space.terms() {
        let exp = lie_expand(&t, &scale);
        let row = cons.space.row(exp.iter().map(|(t, c)| (t, c)));
        if !combined.contains_sparse(row) {
            witness = Some(bracket_text(&t));
            break;
        }
    }
    Ok(ProbeDegree {
        degree: m,
        component_dim: cons.space.dim(),
        consequence_rank: cons.rank(),
        combined_rank: combined.rank(),
        holds: witness.is_none(),
        witness,
    })
}

/// Probes degrees `2..=max_degree` and stops at the first degree where
/// every purely-Lie product (bracket `1/2 [u,v]`) lies in the span of the
/// consequences and the circle products.
pub fn admissibility_probe(
    v: &VarietyPresentation,
    max_degree: usize,
    opts: &SpanOptions,
) -> Result<ProbeReport> {
    admissibility_probe_with(v, max_degree, opts, true)
}

/// As [`admissibility_probe`]; `half_bracket = false` uses `[u,v] = uv - vu`.
pub fn admissibility_probe_with(
    v: &VarietyPresentation,
    max_degree: usize,
    opts: &SpanOptions,
    half_bracket: bool,
) -> Result<ProbeReport> {
    opts.field.check_degree(max_degree)?;
    let mut degrees = Vec::new();
    let mut index = None;
    for m in 2..=max_degree {
        let d = probe_degree(v, m, opts, half_bracket)?;
        let holds = d.holds;
        degrees.push(d);
        if holds {
            index = Some(m);
            break;
        }
    }
    Ok(ProbeReport {
        max_degree,
        index,
        degrees,
    })
}
