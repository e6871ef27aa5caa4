//! Subspaces of an algebra, their products, powers, generated
//! subalgebras and ideals, nilpotency and the finite nil radical.

use crate::algebra::{mat_mul, trace, Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::Echelon;

/// A subspace stored in canonical reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    echelon: Echelon,
}

impl Subspace {
    pub fn zero(alg: &StructureAlgebra) -> Self {
        Subspace {
            echelon: Echelon::new(alg.field(), alg.dim()),
        }
    }

    pub fn whole(alg: &StructureAlgebra) -> Self {
        Self::span(alg, &alg.basis_elements()).expect("basis belongs to the algebra")
    }

    pub fn span(alg: &StructureAlgebra, elements: &[Element]) -> Result<Self> {
        let mut s = Self::zero(alg);
        for e in elements {
            alg.check(e)?;
            s.echelon.insert(e.coords());
        }
        Ok(s)
    }

    pub fn from_echelon(echelon: Echelon) -> Self {
        Subspace { echelon }
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ncols()
    }

    pub fn field(&self) -> FieldSpec {
        self.echelon.field()
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.echelon.is_zero()
    }

    pub fn basis(&self) -> Vec<Element> {
        self.echelon
            .dense_rows()
            .into_iter()
            .map(Element::new)
            .collect()
    }

    pub fn contains(&self, u: &Element) -> bool {
        u.dim() == self.ambient_dim() && self.echelon.contains(u.coords())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.echelon.is_subspace_of(&other.echelon)
    }

    pub fn insert(&mut self, u: &Element) -> bool {
        self.echelon.insert(u.coords())
    }

    /// Rows as coefficient strings, the serialized form of a subspace.
    pub fn to_rows(&self) -> Vec<Vec<String>> {
        self.echelon
            .dense_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn from_rows(alg: &StructureAlgebra, rows: &[Vec<String>]) -> Result<Self> {
        let f = alg.field();
        let elems = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| f.parse_scalar(c))
                    .collect::<Result<Vec<_>>>()
                    .map(Element::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::span(alg, &elems)
    }

    fn check_ambient(&self, alg: &StructureAlgebra) -> Result<()> {
        if self.ambient_dim() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: self.ambient_dim(),
            });
        }
        if self.field() != alg.field() {
            return Err(Error::FieldMismatch {
                expected: alg.field().to_string(),
                found: self.field().to_string(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim() != other.ambient_dim() || self.field() != other.field() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(Subspace {
            echelon: self.echelon.sum(&other.echelon),
        })
    }

    /// `span{ s t }` over basis vectors of both factors.
    pub fn product(alg: &StructureAlgebra, s: &Subspace, t: &Subspace) -> Result<Subspace> {
        s.check_ambient(alg)?;
        t.check_ambient(alg)?;
        let mut out = Echelon::new(alg.field(), alg.dim());
        let symmetric = s == t && alg.is_commutative();
        'outer: for (i, a) in s.echelon.sparse_rows().iter().enumerate() {
            let skip = if symmetric { i } else { 0 };
            for b in &t.echelon.sparse_rows()[skip..] {
                if out.is_full() {
                    break 'outer;
                }
                let p = alg.mul_sparse(a, b);
                if !p.is_empty() {
                    out.insert_sparse(p);
                }
            }
        }
        Ok(Subspace { echelon: out })
    }

    /// `S A + A S`.
    pub fn two_sided_with_algebra(&self, alg: &StructureAlgebra) -> Result<Subspace> {
        let whole = Subspace::whole(alg);
        Subspace::product(alg, self, &whole)?.sum(&Subspace::product(alg, &whole, self)?)
    }

    pub fn is_ideal(&self, alg: &StructureAlgebra) -> Result<bool> {
        Ok(self.two_sided_with_algebra(alg)?.is_subspace_of(self))
    }

    pub fn is_subalgebra(&self, alg: &StructureAlgebra) -> Result<bool> {
        Ok(Subspace::product(alg, self, self)?.is_subspace_of(self))
    }

    /// Whether `A / I` is anticommutative: `x y + y x` lies in `I` for all basis pairs.
    pub fn quotient_is_anticommutative(&self, alg: &StructureAlgebra) -> Result<bool> {
        self.check_ambient(alg)?;
        for i in 0..alg.dim() {
            for j in 0..=i {
                let c = alg.circle(&alg.basis(i), &alg.basis(j))?;
                if !self.contains(&c) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `A^1, ..., A^n` with `A^m = sum_{i+j=m} A^i A^j`.
pub fn power_chain(alg: &StructureAlgebra, n: usize) -> Result<Vec<Subspace>> {
    let whole = Subspace::whole(alg);
    power_chain_of(alg, &whole, n)
}

/// Powers of the subalgebra spanned by `base` (which need not be closed).
pub fn power_chain_of(alg: &StructureAlgebra, base: &Subspace, n: usize) -> Result<Vec<Subspace>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "power index must be at least 1".into(),
        ));
    }
    let mut powers = vec![base.clone()];
    for m in 2..=n {
        let prev = &powers[m - 2];
        if prev.is_zero() {
            powers.push(prev.clone());
            continue;
        }
        let mut acc = Subspace::zero(alg);
        for i in 1..m {
            let p = Subspace::product(alg, &powers[i - 1], &powers[m - i - 1])?;
            acc = acc.sum(&p)?;
        }
        powers.push(acc);
    }
    Ok(powers)
}

pub fn power_space(alg: &StructureAlgebra, n: usize) -> Result<Subspace> {
    Ok(power_chain(alg, n)?.pop().expect("chain is nonempty"))
}

/// `(A^(+))^n` realised as a subspace of `A`.
pub fn plus_power_space(alg: &StructureAlgebra, n: usize) -> Result<Subspace> {
    let plus = alg.plus()?;
    let p = power_space(&plus, n)?;
    Ok(p)
}

fn closure<F>(alg: &StructureAlgebra, gens: &[Element], step: F) -> Result<Subspace>
where
    F: Fn(&Subspace) -> Result<Subspace>,
{
    if gens.is_empty() {
        return Err(Error::InvalidArgument("generator list is empty".into()));
    }
    let mut s = Subspace::span(alg, gens)?;
    loop {
        let next = s.sum(&step(&s)?)?;
        if next.dim() == s.dim() {
            return Ok(s);
        }
        s = next;
    }
}

pub fn generated_subalgebra(alg: &StructureAlgebra, gens: &[Element]) -> Result<Subspace> {
    closure(alg, gens, |s| Subspace::product(alg, s, s))
}

pub fn generated_ideal(alg: &StructureAlgebra, gens: &[Element]) -> Result<Subspace> {
    closure(alg, gens, |s| s.two_sided_with_algebra(alg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyIndex {
    /// Least `n` with `A^n = 0`.
    Index(usize),
    ExceedsCutoff(usize),
}

pub fn nilpotency_index(alg: &StructureAlgebra, cutoff: usize) -> Result<NilpotencyIndex> {
    subspace_nilpotency_index(alg, &Subspace::whole(alg), cutoff)
}

/// Nilpotency index of the (sub)algebra spanned by `base`.
pub fn subspace_nilpotency_index(
    alg: &StructureAlgebra,
    base: &Subspace,
    cutoff: usize,
) -> Result<NilpotencyIndex> {
    if cutoff == 0 {
        return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
    }
    if base.is_zero() {
        return Ok(NilpotencyIndex::Index(1));
    }
    let mut powers = vec![base.clone()];
    for m in 2..=cutoff {
        let mut acc = Subspace::zero(alg);
        for i in 1..m {
            acc = acc.sum(&Subspace::product(alg, &powers[i - 1], &powers[m - i - 1])?)?;
        }
        if acc.is_zero() {
            return Ok(NilpotencyIndex::Index(m));
        }
        powers.push(acc);
    }
    Ok(NilpotencyIndex::ExceedsCutoff(cutoff))
}

/// Principal right power `u^n` with `u^{k+1} = u^k u`.
pub fn element_power(alg: &StructureAlgebra, u: &Element, n: usize) -> Result<Element> {
    if n == 0 {
        return Err(Error::InvalidArgument("element powers start at 1".into()));
    }
    alg.check(u)?;
    let mut p = u.clone();
    for _ in 1..n {
        p = alg.mul_unchecked(&p, u);
    }
    Ok(p)
}

/// Principal left power with `u^{k+1} = u u^k`.
pub fn element_left_power(alg: &StructureAlgebra, u: &Element, n: usize) -> Result<Element> {
    if n == 0 {
        return Err(Error::InvalidArgument("element powers start at 1".into()));
    }
    alg.check(u)?;
    let mut p = u.clone();
    for _ in 1..n {
        p = alg.mul_unchecked(u, &p);
    }
    Ok(p)
}

/// Least `k <= cutoff` with `u^k = 0`.
pub fn nilpotent_element_index(
    alg: &StructureAlgebra,
    u: &Element,
    cutoff: usize,
) -> Result<Option<usize>> {
    alg.check(u)?;
    Ok(nil_index_unchecked(alg, u, cutoff))
}

pub(crate) fn nil_index_unchecked(
    alg: &StructureAlgebra,
    u: &Element,
    cutoff: usize,
) -> Option<usize> {
    let mut p = u.clone();
    for k in 1..=cutoff {
        if p.is_zero() {
            return Some(k);
        }
        if k < cutoff {
            p = alg.mul_unchecked(&p, u);
        }
    }
    None
}

pub fn is_nilpotent_element(alg: &StructureAlgebra, u: &Element, cutoff: usize) -> Result<bool> {
    Ok(nilpotent_element_index(alg, u, cutoff)?.is_some())
}

/// Default cutoff for element nilpotency: `dim + 1`.
pub fn default_cutoff(alg: &StructureAlgebra) -> usize {
    alg.dim() + 1
}

/// All elements of a subspace over a prime field, in lexicographic order
/// of their coordinates with respect to the echelon basis.
pub(crate) fn enumerate_subspace(s: &Subspace) -> Option<Vec<Element>> {
    let f = s.field();
    let p = f.order()?;
    let basis = s.basis();
    let d = basis.len();
    let count = (p as u128).checked_pow(d as u32)?;
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count as u64 {
        let mut rem = idx;
        let mut v = Element::zero(f, s.ambient_dim());
        for b in basis.iter().rev() {
            let c = f.from_i64((rem % p) as i64);
            rem /= p;
            if !c.is_zero() {
                v = &v + &b.scale(&c);
            }
        }
        out.push(v);
    }
    Some(out)
}

/// The `idx`-th element of `F_p^dim` in lexicographic order (first coordinate most significant).
pub(crate) fn nth_vector(field: FieldSpec, dim: usize, mut idx: u64) -> Element {
    let p = field.order().expect("finite field");
    let mut coords = vec![field.zero(); dim];
    for c in coords.iter_mut().rev() {
        *c = field.from_i64((idx % p) as i64);
        idx /= p;
    }
    Element::new(coords)
}

pub(crate) fn enumeration_size(field: FieldSpec, dim: usize) -> Option<u128> {
    (field.order()? as u128).checked_pow(dim as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilRadicalMethod {
    EnumerateGfp,
    TraceFormChar0,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NilRadicalReport {
    pub method: NilRadicalMethod,
    pub radical: Subspace,
    pub is_ideal: bool,
    /// Every element of the candidate was checked (enumeration) or the
    /// candidate was shown nilpotent as an algebra (trace form).
    pub is_nil: bool,
    pub verified: bool,
    pub diagnostics: Vec<String>,
}

/// Largest nil ideal of a finite-dimensional algebra, returned together
/// with a post-hoc verification of the candidate.
pub fn nil_radical_finite(
    alg: &StructureAlgebra,
    method: NilRadicalMethod,
    enum_budget: u128,
) -> Result<NilRadicalReport> {
    match method {
        NilRadicalMethod::EnumerateGfp => nil_radical_enumerate(alg, enum_budget),
        NilRadicalMethod::TraceFormChar0 => nil_radical_trace_form(alg),
    }
}

fn all_nilpotent(alg: &StructureAlgebra, s: &Subspace, cutoff: usize) -> Option<bool> {
    // cheap rejection on the basis before full enumeration
    if s.basis()
        .iter()
        .any(|b| nil_index_unchecked(alg, b, cutoff).is_none())
    {
        return Some(false);
    }
    Some(
        enumerate_subspace(s)?
            .iter()
            .all(|u| nil_index_unchecked(alg, u, cutoff).is_some()),
    )
}

fn nil_radical_enumerate(alg: &StructureAlgebra, budget: u128) -> Result<NilRadicalReport> {
    let f = alg.field();
    if f.order().is_none() {
        return Err(Error::MethodInapplicable(
            "enumeration needs a finite field".into(),
        ));
    }
    let size = enumeration_size(f, alg.dim()).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded {
            what: "element enumeration".into(),
            needed: size,
            budget,
        });
    }
    let cutoff = default_cutoff(alg);
    let mut radical = Subspace::zero(alg);
    let mut rejected: Vec<Subspace> = Vec::new();
    for idx in 1..size as u64 {
        let u = nth_vector(f, alg.dim(), idx);
        if radical.contains(&u) || nil_index_unchecked(alg, &u, cutoff).is_none() {
            continue;
        }
        let candidate = generated_ideal(alg, &[u])?.sum(&radical)?;
        if rejected.iter().any(|r| r == &candidate) {
            continue;
        }
        if all_nilpotent(alg, &candidate, cutoff) == Some(true) {
            radical = candidate;
        } else {
            rejected.push(candidate);
        }
    }
    let is_ideal = radical.is_ideal(alg)?;
    let is_nil = all_nilpotent(alg, &radical, cutoff).unwrap_or(false);
    let mut diagnostics = Vec::new();
    if !is_ideal {
        diagnostics.push("candidate is not an ideal".into());
    }
    if !is_nil {
        diagnostics.push("candidate contains a non-nilpotent element".into());
    }
    Ok(NilRadicalReport {
        method: NilRadicalMethod::EnumerateGfp,
        radical,
        is_ideal,
        is_nil,
        verified: is_ideal && is_nil,
        diagnostics,
    })
}

fn nil_radical_trace_form(alg: &StructureAlgebra) -> Result<NilRadicalReport> {
    let f = alg.field();
    if f.characteristic() != 0 {
        return Err(Error::MethodInapplicable(
            "trace form method needs characteristic 0".into(),
        ));
    }
    if !alg.is_flexible() {
        return Err(Error::MethodInapplicable("algebra is not flexible".into()));
    }
    if !crate::identity::is_jordan_admissible(alg)? {
        return Err(Error::MethodInapplicable(
            "algebra is not Jordan-admissible".into(),
        ));
    }
    let plus = alg.plus()?;
    let n = alg.dim();
    let rights: Vec<Vec<Vec<_>>> = (0..n)
        .map(|i| plus.right_mult_matrix(&plus.basis(i)))
        .collect();
    let mut gram = vec![vec![f.zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let t = trace(&mat_mul(&rights[i], &rights[j], f), f);
            gram[i][j] = t.clone();
            gram[j][i] = t;
        }
    }
    let kernel = Echelon::nullspace(f, n, &gram);
    let radical = Subspace::span(
        alg,
        &kernel.into_iter().map(Element::new).collect::<Vec<_>>(),
    )?;
    let is_ideal = radical.is_ideal(alg)?;
    let nilpotent = matches!(
        subspace_nilpotency_index(alg, &radical, n + 1)?,
        NilpotencyIndex::Index(_)
    );
    let mut diagnostics = Vec::new();
    if !is_ideal {
        diagnostics.push("trace-form radical is not an ideal of A".into());
    }
    if !nilpotent {
        diagnostics.push("trace-form radical is not nilpotent as an algebra".into());
    }
    Ok(NilRadicalReport {
        method: NilRadicalMethod::TraceFormChar0,
        radical,
        is_ideal,
        is_nil: nilpotent,
        verified: is_ideal && nilpotent,
        diagnostics,
    })
}
