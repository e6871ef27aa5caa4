//! Plain `u64` arithmetic modulo `p`, independent of the library's
//! evaluator, for cross-checking identity verdicts.

use std::collections::BTreeMap;

use nvalg::{Monomial, NAPoly, Scalar, StructureAlgebra};

pub fn residue(s: &Scalar) -> u64 {
    s.to_string().parse().expect("prime field residue")
}

pub struct ModTable {
    pub p: u64,
    pub n: usize,
    c: Vec<u64>,
}

impl ModTable {
    pub fn new(alg: &StructureAlgebra) -> Self {
        let p = alg.field().characteristic();
        assert!(p > 0 && p < 1 << 16, "oracle works over small prime fields");
        let n = alg.dim();
        let mut c = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[(i * n + j) * n + k] = residue(&alg.structure_constant(i, j, k));
                }
            }
        }
        ModTable { p, n, c }
    }

    pub fn mul(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n];
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                if v[j] == 0 {
                    continue;
                }
                let a = u[i] * v[j] % self.p;
                for k in 0..n {
                    out[k] = (out[k] + a * self.c[(i * n + j) * n + k]) % self.p;
                }
            }
        }
        out
    }

    fn eval_mono(&self, m: &Monomial, env: &BTreeMap<String, Vec<u64>>) -> Vec<u64> {
        match m {
            Monomial::Var(x) => env[x].clone(),
            Monomial::Mul(a, b) => self.mul(&self.eval_mono(a, env), &self.eval_mono(b, env)),
        }
    }

    pub fn eval(&self, poly: &NAPoly, env: &BTreeMap<String, Vec<u64>>) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for (m, c) in poly.terms() {
            let c = residue(c);
            for (o, x) in out.iter_mut().zip(self.eval_mono(m, env)) {
                *o = (*o + c * x) % self.p;
            }
        }
        out
    }

    pub fn grid_size(&self, vars: usize, coords: &[u64]) -> u64 {
        (coords.len() as u64).pow((self.n * vars) as u32)
    }

    /// First assignment on the grid `coords^(n * vars)` where `poly` does
    /// not vanish.
    pub fn grid_counterexample(
        &self,
        poly: &NAPoly,
        coords: &[u64],
    ) -> Option<BTreeMap<String, Vec<u64>>> {
        assert!(self.n <= MAX_DIM);
        let prog = Program::new(poly);
        let nv = prog.vars.len();
        let total = self.grid_size(nv, coords);
        let base = coords.len() as u64;
        let mut vals = vec![[0u64; MAX_DIM]; prog.nodes.len()];
        for mut index in 0..total {
            for v in 0..nv {
                for k in 0..self.n {
                    vals[v][k] = coords[(index % base) as usize];
                    index /= base;
                }
            }
            if !prog.run(self, &mut vals) {
                let env = prog
                    .vars
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (x.clone(), vals[i][..self.n].to_vec()))
                    .collect();
                return Some(env);
            }
        }
        None
    }

    fn mul_into(&self, u: &[u64; MAX_DIM], v: &[u64; MAX_DIM]) -> [u64; MAX_DIM] {
        let n = self.n;
        let mut out = [0u64; MAX_DIM];
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                if v[j] == 0 {
                    continue;
                }
                let a = u[i] * v[j] % self.p;
                let row = &self.c[(i * n + j) * n..(i * n + j + 1) * n];
                for k in 0..n {
                    out[k] += a * row[k];
                }
            }
            for o in out.iter_mut().take(n) {
                *o %= self.p;
            }
        }
        out
    }
}

pub const MAX_DIM: usize = 8;

/// Straight-line program: variables first, then each distinct product once.
struct Program {
    vars: Vec<String>,
    nodes: Vec<(usize, usize)>,
    terms: Vec<(usize, u64)>,
}

impl Program {
    fn new(poly: &NAPoly) -> Self {
        let vars: Vec<String> = poly.variables().into_iter().collect();
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        let mut nodes = vec![(usize::MAX, usize::MAX); vars.len()];
        for (i, v) in vars.iter().enumerate() {
            index.insert(Monomial::var(v), i);
        }
        fn walk(
            m: &Monomial,
            index: &mut BTreeMap<Monomial, usize>,
            nodes: &mut Vec<(usize, usize)>,
        ) -> usize {
            if let Some(&i) = index.get(m) {
                return i;
            }
            let Monomial::Mul(a, b) = m else {
                unreachable!("variables are indexed")
            };
            let (ia, ib) = (walk(a, index, nodes), walk(b, index, nodes));
            nodes.push((ia, ib));
            index.insert(m.clone(), nodes.len() - 1);
            nodes.len() - 1
        }
        let terms = poly
            .terms()
            .iter()
            .map(|(m, c)| (walk(m, &mut index, &mut nodes), residue(c)))
            .collect();
        Program { vars, nodes, terms }
    }

    /// Whether the polynomial vanishes on the variables loaded in `vals`.
    fn run(&self, t: &ModTable, vals: &mut [[u64; MAX_DIM]]) -> bool {
        for i in self.vars.len()..self.nodes.len() {
            let (a, b) = self.nodes[i];
            vals[i] = t.mul_into(&vals[a], &vals[b]);
        }
        let mut acc = [0u64; MAX_DIM];
        for &(i, c) in &self.terms {
            for k in 0..t.n {
                acc[k] = (acc[k] + c * vals[i][k]) % t.p;
            }
        }
        acc.iter().all(|&x| x == 0)
    }
}
