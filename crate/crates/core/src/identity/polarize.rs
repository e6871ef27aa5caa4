use std::collections::{BTreeMap, BTreeSet};

use super::poly::{Identity, Monomial, NAPoly};
use crate::error::Result;

/// One fully polarized multihomogeneous component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarized {
    /// Multilinear polynomial in the fresh variables.
    pub poly: NAPoly,
    /// Multidegree of the component it came from.
    pub multidegree: BTreeMap<String, usize>,
    /// Fresh copies of each original variable (a variable of degree 1 keeps its name).
    pub copies: BTreeMap<String, Vec<String>>,
}

impl Polarized {
    pub fn identity(&self) -> Identity {
        Identity::new(self.poly.clone(), self.poly.to_string())
    }

    pub fn degree(&self) -> usize {
        self.multidegree.values().sum()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn fresh_names(var: &str, d: usize, taken: &BTreeSet<String>) -> Vec<String> {
    if d == 1 {
        return vec![var.to_string()];
    }
    let mut sep = "_".to_string();
    loop {
        let names: Vec<String> = (1..=d).map(|i| format!("{var}{sep}{i}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        sep.push('_');
    }
}

/// Full polarization of one multihomogeneous polynomial.
fn polarize_component(comp: &NAPoly, taken: &BTreeSet<String>) -> Result<Polarized> {
    let multidegree = comp
        .terms()
        .keys()
        .next()
        .map(Monomial::multidegree)
        .unwrap_or_default();
    comp.field().check_degree(multidegree.values().sum())?;
    let copies: BTreeMap<String, Vec<String>> = multidegree
        .iter()
        .map(|(v, &d)| (v.clone(), fresh_names(v, d, taken)))
        .collect();
    // every way of handing out the copies of each variable to its occurrences
    let per_var: Vec<(&String, Vec<Vec<usize>>)> = multidegree
        .iter()
        .map(|(v, &d)| (v, permutations(d)))
        .collect();
    let mut out = NAPoly::zero(comp.field());
    for (m, c) in comp.terms() {
        let leaves = m.leaves();
        let mut choice = vec![0usize; per_var.len()];
        loop {
            let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
            let labels: Vec<&str> = leaves
                .iter()
                .map(|leaf| {
                    let vi = per_var
                        .iter()
                        .position(|(v, _)| v.as_str() == *leaf)
                        .unwrap();
                    let k = seen.entry(leaf).or_insert(0);
                    let copy = per_var[vi].1[choice[vi]][*k];
                    *k += 1;
                    copies[*leaf][copy].as_str()
                })
                .collect();
            out.add_term(m.relabel(&mut labels.into_iter()), c.clone());
            // odometer over the permutation choices
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < per_var[i].1.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    Ok(Polarized {
        poly: out,
        multidegree,
        copies,
    })
}

/// Splits `poly` into multihomogeneous components and fully polarizes
/// each one. Refuses fields with `0 < char <= degree` of a component.
pub fn polarize(poly: &NAPoly) -> Result<Vec<Polarized>> {
    let taken = poly.variables();
    poly.components()
        .values()
        .map(|comp| polarize_component(comp, &taken))
        .filter(|r| r.as_ref().map_or(true, |p| !p.poly.is_zero()))
        .collect()
}

pub fn polarize_identity(id: &Identity) -> Result<Vec<Identity>> {
    Ok(polarize(&id.poly)?
        .iter()
        .map(Polarized::identity)
        .collect())
}
