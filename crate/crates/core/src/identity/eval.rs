use std::collections::{BTreeMap, HashMap};

use super::parse::parse_in;
use super::polarize::{polarize, Polarized};
use super::poly::{Identity, Monomial, NAPoly};
use crate::algebra::{Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::SparseRow;
use crate::par::Exec;

/// An assignment under which an identity does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// The polynomial that was evaluated: the identity itself, or one of its
    /// polarized components when `polarized` is set.
    pub identity: Identity,
    pub assignment: BTreeMap<String, Element>,
    pub value: Element,
    pub polarized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HoldsVerdict {
    Holds,
    Counterexample(Box<Counterexample>),
}

impl HoldsVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, HoldsVerdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            HoldsVerdict::Holds => None,
            HoldsVerdict::Counterexample(c) => Some(c),
        }
    }
}

fn add_sparse(acc: &mut BTreeMap<usize, Scalar>, row: &SparseRow, c: &Scalar) {
    for (k, v) in row {
        let t = c * v;
        match acc.get_mut(k) {
            Some(x) => *x += &t,
            None => {
                acc.insert(*k, t);
            }
        }
    }
}

struct SparseEval<'a> {
    alg: &'a StructureAlgebra,
    values: &'a HashMap<&'a str, SparseRow>,
    memo: HashMap<&'a Monomial, SparseRow>,
}

impl<'a> SparseEval<'a> {
    fn mono(&mut self, m: &'a Monomial) -> SparseRow {
        match m {
            Monomial::Var(v) => self.values[v.as_str()].clone(),
            Monomial::Mul(a, b) => {
                if let Some(r) = self.memo.get(m) {
                    return r.clone();
                }
                let l = self.mono(a);
                let r = if l.is_empty() {
                    Vec::new()
                } else {
                    self.mono(b)
                };
                let out = if r.is_empty() {
                    Vec::new()
                } else {
                    self.alg.mul_sparse(&l, &r)
                };
                self.memo.insert(m, out.clone());
                out
            }
        }
    }

    fn poly(&mut self, p: &'a NAPoly) -> SparseRow {
        let mut acc = BTreeMap::new();
        for (m, c) in p.terms() {
            let v = self.mono(m);
            add_sparse(&mut acc, &v, c);
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn eval_sparse(alg: &StructureAlgebra, p: &NAPoly, values: &HashMap<&str, SparseRow>) -> SparseRow {
    SparseEval {
        alg,
        values,
        memo: HashMap::new(),
    }
    .poly(p)
}

fn to_element(alg: &StructureAlgebra, row: &SparseRow) -> Element {
    let mut coords = vec![alg.field().zero(); alg.dim()];
    for (k, c) in row {
        coords[*k] = c.clone();
    }
    Element::new(coords)
}

/// Value of `poly` in `alg` under `assignment`.
pub fn evaluate(
    alg: &StructureAlgebra,
    poly: &NAPoly,
    assignment: &BTreeMap<String, Element>,
) -> Result<Element> {
    if poly.field() != alg.field() {
        return Err(Error::FieldMismatch {
            expected: alg.field().to_string(),
            found: poly.field().to_string(),
        });
    }
    let mut values: HashMap<&str, SparseRow> = HashMap::new();
    for v in poly.variables() {
        let Some((name, u)) = assignment.get_key_value(&v) else {
            return Err(Error::UnassignedVariable(v));
        };
        alg.check(u)?;
        values.insert(name.as_str(), u.to_sparse());
    }
    Ok(to_element(alg, &eval_sparse(alg, poly, &values)))
}

fn checked_pow(base: usize, exp: usize) -> Option<u64> {
    (base as u64).checked_pow(exp as u32)
}

/// Decodes `idx` as `vars.len()` base-`n` digits, first variable most significant.
fn basis_tuple(n: usize, k: usize, mut idx: u64) -> Vec<usize> {
    let mut digits = vec![0; k];
    for d in digits.iter_mut().rev() {
        *d = (idx % n as u64) as usize;
        idx /= n as u64;
    }
    digits
}

fn unit_row(alg: &StructureAlgebra, i: usize) -> SparseRow {
    vec![(i, alg.field().one())]
}

/// First basis tuple (in lexicographic order) on which `p` does not vanish.
fn sweep_basis_tuples(
    alg: &StructureAlgebra,
    p: &NAPoly,
    exec: Exec,
) -> Option<(Vec<usize>, SparseRow)> {
    let vars: Vec<String> = p.variables().into_iter().collect();
    let n = alg.dim();
    let total = checked_pow(n, vars.len())?;
    exec.find_first(total, |idx| {
        let tuple = basis_tuple(n, vars.len(), idx);
        let values: HashMap<&str, SparseRow> = vars
            .iter()
            .zip(&tuple)
            .map(|(v, &i)| (v.as_str(), unit_row(alg, i)))
            .collect();
        let r = eval_sparse(alg, p, &values);
        (!r.is_empty()).then_some((tuple, r))
    })
}

fn basis_assignment(
    alg: &StructureAlgebra,
    p: &NAPoly,
    tuple: &[usize],
) -> BTreeMap<String, Element> {
    p.variables()
        .into_iter()
        .zip(tuple)
        .map(|(v, &i)| (v, alg.basis(i)))
        .collect()
}

/// Tries `x = sum_j t_j x_j` with small integer `t_j` to turn a failing
/// polarized tuple into a witness for the original identity.
fn lift_witness(
    alg: &StructureAlgebra,
    poly: &NAPoly,
    part: &Polarized,
    polarized_assignment: &BTreeMap<String, Element>,
    budget: u64,
) -> Option<(BTreeMap<String, Element>, Element)> {
    let f = alg.field();
    let slots: Vec<(&String, &Element)> = part
        .copies
        .iter()
        .flat_map(|(v, cs)| cs.iter().map(move |c| (v, &polarized_assignment[c])))
        .collect();
    let span = poly.degree() as u64 + 1;
    let total = span.checked_pow(slots.len() as u32)?;
    if total > budget {
        return None;
    }
    let vars = poly.variables();
    for idx in 1..total {
        let ts = basis_tuple(span as usize, slots.len(), idx);
        let mut assignment: BTreeMap<String, Element> =
            vars.iter().map(|v| (v.clone(), alg.zero())).collect();
        for ((v, u), t) in slots.iter().zip(&ts) {
            if *t == 0 {
                continue;
            }
            let acc = assignment.get_mut(*v).unwrap();
            *acc = &*acc + &u.scale(&f.from_i64(*t as i64));
        }
        let value = evaluate(alg, poly, &assignment).ok()?;
        if !value.is_zero() {
            return Some((assignment, value));
        }
    }
    None
}

/// Decides whether `id` holds in `alg`.
///
/// Over a field of characteristic 0 or larger than the degree, an identity
/// holds iff each polarized component vanishes on all basis tuples. The
/// original identity is first tried on basis tuples so that simple witnesses
/// come out in the original variables. `budget` caps the number of tuples.
pub fn holds_in(alg: &StructureAlgebra, id: &Identity, budget: u64) -> Result<HoldsVerdict> {
    holds_in_with(alg, id, budget, Exec::default())
}

pub fn holds_in_with(
    alg: &StructureAlgebra,
    id: &Identity,
    budget: u64,
    exec: Exec,
) -> Result<HoldsVerdict> {
    let poly = id.poly.to_field(alg.field())?;
    alg.field().check_degree(poly.degree())?;
    if poly.is_zero() {
        return Ok(HoldsVerdict::Holds);
    }
    let n = alg.dim();
    let k = poly.variables().len();
    let direct = checked_pow(n, k).filter(|&t| t <= budget);
    if direct.is_some() {
        if let Some((tuple, value)) = sweep_basis_tuples(alg, &poly, exec) {
            return Ok(HoldsVerdict::Counterexample(Box::new(Counterexample {
                identity: Identity::new(poly.clone(), id.source.clone()),
                assignment: basis_assignment(alg, &poly, &tuple),
                value: to_element(alg, &value),
                polarized: false,
            })));
        }
        if poly.is_multilinear() {
            return Ok(HoldsVerdict::Holds);
        }
    }
    let parts = polarize(&poly)?;
    let needed: u128 = parts
        .iter()
        .map(|p| (n as u128).pow(p.degree() as u32))
        .sum();
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "basis tuples".into(),
            needed,
            budget: budget as u128,
        });
    }
    for part in &parts {
        if let Some((tuple, value)) = sweep_basis_tuples(alg, &part.poly, exec) {
            let pa = basis_assignment(alg, &part.poly, &tuple);
            if let Some((assignment, value)) = lift_witness(alg, &poly, part, &pa, budget) {
                return Ok(HoldsVerdict::Counterexample(Box::new(Counterexample {
                    identity: Identity::new(poly.clone(), id.source.clone()),
                    assignment,
                    value,
                    polarized: false,
                })));
            }
            return Ok(HoldsVerdict::Counterexample(Box::new(Counterexample {
                identity: part.identity(),
                assignment: pa,
                value: to_element(alg, &value),
                polarized: true,
            })));
        }
    }
    Ok(HoldsVerdict::Holds)
}

/// All identities in `ids` hold in `alg`.
pub fn satisfies_all(alg: &StructureAlgebra, ids: &[Identity], budget: u64) -> Result<bool> {
    for id in ids {
        if !holds_in(alg, id, budget)?.holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(x^2 y) x = x^2 (y x)`.
pub const JORDAN_IDENTITY: &str = "((x*x)*y)*x - (x*x)*(y*x)";

/// Whether `A^+` is a Jordan algebra. Needs `char != 2, 3`.
pub fn is_jordan_admissible(alg: &StructureAlgebra) -> Result<bool> {
    if let Some(&b) = alg.jordan_admissible_slot().get() {
        return Ok(b);
    }
    let plus = alg.plus()?;
    let id = parse_in(JORDAN_IDENTITY, alg.field())?;
    let n = plus.dim() as u64;
    let b = holds_in(&plus, &id, n.saturating_pow(4).max(1))?.holds();
    let _ = alg.jordan_admissible_slot().set(b);
    Ok(b)
}

/// Flexible and Jordan-admissible.
pub fn is_noncommutative_jordan(alg: &StructureAlgebra) -> Result<bool> {
    Ok(alg.is_flexible() && is_jordan_admissible(alg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{jordan_sym, matrix_algebra, octonions, quaternions};
    use crate::field::FieldSpec;
    use crate::identity::parse::parse;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn evaluate_commutator_in_matrices() {
        let m = matrix_algebra(2, q()).unwrap();
        let p = parse("[x,y]").unwrap().poly;
        let a: BTreeMap<_, _> = [("x".to_string(), m.basis(1)), ("y".to_string(), m.basis(2))]
            .into_iter()
            .collect();
        assert_eq!(
            evaluate(&m, &p, &a).unwrap(),
            m.element(&[1, 0, 0, -1]).unwrap()
        );
    }

    #[test]
    fn evaluate_reports_missing_variables() {
        let m = matrix_algebra(2, q()).unwrap();
        let p = parse("x*y").unwrap().poly;
        let a: BTreeMap<_, _> = [("x".to_string(), m.basis(1))].into_iter().collect();
        assert_eq!(
            evaluate(&m, &p, &a),
            Err(Error::UnassignedVariable("y".into()))
        );
    }

    #[test]
    fn square_of_commutator_fails_on_matrix_units() {
        let m = matrix_algebra(2, q()).unwrap();
        let v = holds_in(&m, &parse("[x,y]^2").unwrap(), 1 << 16).unwrap();
        let c = v.counterexample().unwrap();
        assert!(!c.polarized);
        assert_eq!(c.assignment["x"], m.basis(1));
        assert_eq!(c.assignment["y"], m.basis(2));
    }

    #[test]
    fn associativity_holds_in_matrices_only() {
        let assoc = parse("(x,y,z)").unwrap();
        assert!(holds_in(&matrix_algebra(2, q()).unwrap(), &assoc, 1 << 16)
            .unwrap()
            .holds());
        let o = octonions(q()).unwrap();
        assert!(!holds_in(o.algebra(), &assoc, 1 << 16).unwrap().holds());
        assert!(holds_in(o.algebra(), &parse("(x,x,y)").unwrap(), 1 << 16)
            .unwrap()
            .holds());
    }

    #[test]
    fn polarized_witness_is_lifted() {
        // x^2 = 0 fails on 1 in the quaternions; the lift must find an original witness
        let h = quaternions(q()).unwrap().into_algebra();
        let v = holds_in(&h, &parse("x^2 + 1/2*(x o x) - 2*x*x").unwrap(), 1 << 16).unwrap();
        assert!(v.holds());
        let v = holds_in(&h, &parse("(x*x)*y - y*(x*x)").unwrap(), 1 << 16).unwrap();
        let c = v.counterexample().unwrap();
        assert!(!c.polarized);
        assert_eq!(
            evaluate(&h, &c.identity.poly, &c.assignment).unwrap(),
            c.value
        );
    }

    #[test]
    fn budget_is_enforced() {
        let o = octonions(q()).unwrap();
        let id = parse("(x^2,y,x)").unwrap();
        assert!(matches!(
            holds_in(o.algebra(), &id, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn small_characteristic_is_refused() {
        let m = matrix_algebra(2, FieldSpec::prime(3).unwrap()).unwrap();
        assert!(matches!(
            holds_in(&m, &parse("[x,y]^2").unwrap(), 1 << 16),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn jordan_admissibility() {
        assert!(is_jordan_admissible(&matrix_algebra(2, q()).unwrap()).unwrap());
        assert!(is_jordan_admissible(&jordan_sym(2, q()).unwrap()).unwrap());
        assert!(is_noncommutative_jordan(octonions(q()).unwrap().algebra()).unwrap());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let o = octonions(FieldSpec::prime(101).unwrap()).unwrap();
        let id = parse("(x,y,z) + (y,x,z)").unwrap();
        let a = holds_in_with(o.algebra(), &id, 1 << 16, Exec::Sequential).unwrap();
        let b = holds_in_with(o.algebra(), &id, 1 << 16, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
