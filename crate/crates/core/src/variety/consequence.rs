use std::collections::BTreeMap;

use super::multilinear::{block_terms, MultilinearSpace, Shape, Term};
use super::VarietyPresentation;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::identity::{polarize, Identity, NAPoly};
use crate::linalg::{Echelon, SparseRow};
use crate::par::Exec;

/// Field and execution settings for span computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanOptions {
    pub field: FieldSpec,
    pub exec: Exec,
    pub column_budget: u64,
}

impl Default for SpanOptions {
    /// `GF(101)`.
    fn default() -> Self {
        SpanOptions {
            field: FieldSpec::PrimeField { p: 101 },
            exec: Exec::default(),
            column_budget: super::DEFAULT_COLUMN_BUDGET,
        }
    }
}

impl SpanOptions {
    /// Exact rational arithmetic.
    pub fn rational() -> Self {
        SpanOptions {
            field: FieldSpec::Rationals,
            ..Self::default()
        }
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        SpanOptions { exec, ..self }
    }

    pub fn with_field(self, field: FieldSpec) -> Self {
        SpanOptions { field, ..self }
    }
}

/// Multilinear part of the T-ideal in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceSpan {
    pub space: MultilinearSpace,
    pub echelon: Echelon,
}

impl ConsequenceSpan {
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Dimension of the component of the relatively free algebra.
    pub fn quotient_dim(&self) -> usize {
        self.space.dim() - self.rank()
    }

    pub fn field(&self) -> FieldSpec {
        self.echelon.field()
    }

    pub fn contains_row(&self, row: SparseRow) -> bool {
        self.echelon.contains_sparse(row)
    }

    /// Echelon rows as polynomials in `x1..xn`.
    pub fn polys(&self) -> Vec<NAPoly> {
        self.echelon
            .sparse_rows()
            .iter()
            .map(|r| self.space.poly(r, self.field()))
            .collect()
    }
}

/// A multilinear polynomial in leaves `0..d`.
pub(crate) type LinearForm = Vec<(Term, Scalar)>;

/// Multilinear components of `poly`, each with its variables renamed to
/// leaves `0..d` in sorted order.
pub(crate) fn multilinear_forms(poly: &NAPoly) -> Result<Vec<LinearForm>> {
    let mut out = Vec::new();
    for part in polarize(poly)? {
        let vars: Vec<String> = part.poly.variables().into_iter().collect();
        let space = MultilinearSpace::with_budget(vars.len(), u64::MAX)?;
        let row = space.vector(&part.poly, &vars)?;
        out.push(row.into_iter().map(|(c, s)| (space.term(c), s)).collect());
    }
    Ok(out)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Ways to split `set` into `d` nonempty labelled blocks.
fn ordered_partitions(set: &[usize], d: usize) -> Vec<Vec<Vec<usize>>> {
    let k = set.len();
    let mut out = Vec::new();
    let total = (d as u64).pow(k as u32);
    for code in 0..total {
        let mut blocks = vec![Vec::new(); d];
        let mut c = code;
        for &x in set {
            blocks[(c % d as u64) as usize].push(x);
            c /= d as u64;
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
    }
    out
}

fn graft(
    shape: &Shape,
    plug_pos: usize,
    plug: &Term,
    rest: &mut std::slice::Iter<usize>,
    pos: &mut usize,
) -> Term {
    match shape {
        Shape::Leaf => {
            let here = *pos;
            *pos += 1;
            if here == plug_pos {
                plug.clone()
            } else {
                Term::Leaf(*rest.next().expect("enough context labels"))
            }
        }
        Shape::Node(a, b) => {
            let l = graft(a, plug_pos, plug, rest, pos);
            let r = graft(b, plug_pos, plug, rest, pos);
            Term::node(l, r)
        }
    }
}

/// Context trees around one plug, as functions of the plugged term:
/// (shape, plug position, labels of the other leaves).
fn contexts(rest: &[usize]) -> Vec<(Shape, usize, Vec<usize>)> {
    let m = rest.len() + 1;
    let mut out = Vec::new();
    for shape in Shape::all(m) {
        for p in 0..m {
            for order in permutations(rest) {
                out.push((shape.clone(), p, order));
            }
        }
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All consequences of one multilinear form whose plug uses the variables `set`.
fn rows_for(
    space: &MultilinearSpace,
    form: &LinearForm,
    d: usize,
    set: &[usize],
) -> Vec<SparseRow> {
    let n = space.degree();
    let rest: Vec<usize> = (0..n).filter(|i| !set.contains(i)).collect();
    let ctxs = contexts(&rest);
    let mut rows = Vec::new();
    for blocks in ordered_partitions(set, d) {
        let choices: Vec<Vec<Term>> = blocks.iter().map(|b| block_terms(b)).collect();
        let mut idx = vec![0usize; d];
        loop {
            let subs: Vec<Term> = idx
                .iter()
                .zip(&choices)
                .map(|(&i, c)| c[i].clone())
                .collect();
            let plugged: Vec<(Term, &Scalar)> =
                form.iter().map(|(t, c)| (t.substitute(&subs), c)).collect();
            for (shape, p, order) in &ctxs {
                let terms: Vec<(Term, &Scalar)> = plugged
                    .iter()
                    .map(|(t, c)| {
                        let mut it = order.iter();
                        (graft(shape, *p, t, &mut it, &mut 0), *c)
                    })
                    .collect();
                let row = space.row(terms.iter().map(|(t, c)| (t, *c)));
                if !row.is_empty() {
                    rows.push(row);
                }
            }
            let mut i = 0;
            while i < d {
                idx[i] += 1;
                if idx[i] < choices[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    rows
}

/// Degree-`n` consequences of a list of multilinear forms.
pub(crate) fn span_of_forms(
    space: &MultilinearSpace,
    forms: &[LinearForm],
    field: FieldSpec,
    exec: Exec,
) -> Echelon {
    let n = space.degree();
    let mut jobs: Vec<(usize, Vec<usize>)> = Vec::new();
    for (fi, form) in forms.iter().enumerate() {
        let d = form.first().map_or(0, |(t, _)| t.leaves());
        if d == 0 || d > n {
            continue;
        }
        for k in d..=n {
            for set in subsets_of_size(n, k) {
                jobs.push((fi, set));
            }
        }
    }
    let batches = exec.map(&jobs, |(fi, set)| {
        let form = &forms[*fi];
        let d = form[0].0.leaves();
        rows_for(space, form, d, set)
    });
    let mut ech = Echelon::new(field, space.dim());
    for rows in batches {
        for r in rows {
            if ech.is_full() {
                return ech;
            }
            ech.insert_sparse(r);
        }
    }
    ech
}

fn forms_of(ids: &[Identity], field: FieldSpec) -> Result<Vec<LinearForm>> {
    let mut forms = Vec::new();
    for id in ids {
        forms.extend(multilinear_forms(&id.poly.to_field(field)?)?);
    }
    Ok(forms)
}

/// Multilinear degree-`n` part of the T-ideal generated by the presentation.
pub fn consequence_span(
    v: &VarietyPresentation,
    n: usize,
    opts: &SpanOptions,
) -> Result<ConsequenceSpan> {
    opts.field.check_degree(n)?;
    let space = MultilinearSpace::with_budget(n, opts.column_budget)?;
    let forms = forms_of(&v.all_identities()?, opts.field)?;
    let echelon = span_of_forms(&space, &forms, opts.field, opts.exec);
    Ok(ConsequenceSpan { space, echelon })
}

/// Degree-`n` consequences of the rows of `span`, read as identities.
pub fn reseed(span: &ConsequenceSpan, exec: Exec) -> Result<Echelon> {
    let f = span.field();
    let names = span.space.var_names().to_vec();
    let mut forms = Vec::new();
    for p in span.polys() {
        let row = span.space.vector(&p, &names)?;
        forms.push(
            row.into_iter()
                .map(|(c, s)| (span.space.term(c), s))
                .collect(),
        );
    }
    Ok(span_of_forms(&span.space, &forms, f, exec))
}

/// Whether every polarized component of `target` follows from the
/// presentation. Components must have degree at most `n`.
pub fn implies(
    v: &VarietyPresentation,
    target: &Identity,
    n: usize,
    opts: &SpanOptions,
) -> Result<bool> {
    let poly = target.poly.to_field(opts.field)?;
    let parts = polarize(&poly)?;
    let mut spans: BTreeMap<usize, ConsequenceSpan> = BTreeMap::new();
    for part in parts {
        let vars: Vec<String> = part.poly.variables().into_iter().collect();
        let d = vars.len();
        if d > n {
            return Err(Error::InvalidArgument(format!(
                "component of degree {d} exceeds degree bound {n}"
            )));
        }
        if let std::collections::btree_map::Entry::Vacant(e) = spans.entry(d) {
            e.insert(consequence_span(v, d, opts)?);
        }
        let span = &spans[&d];
        let row = span.space.vector(&part.poly, &vars)?;
        if !span.contains_row(row) {
            return Ok(false);
        }
    }
    Ok(true)
}
