use crate::monoid::Monoid;
use crate::order_pair::OrderPair;
use crate::universe::Alt;

use super::cnf::{Cnf, Lit};

/// [x ≽ y] is variable x·n + y; [x ≻ y] is n² + x·n + y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarTable {
    n: usize,
}

impl VarTable {
    pub fn new(n: usize) -> Self {
        VarTable { n }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn weak(&self, x: Alt, y: Alt) -> usize {
        x * self.n + y
    }

    pub fn strict(&self, x: Alt, y: Alt) -> usize {
        self.n * self.n + x * self.n + y
    }

    /// (is_strict, x, y) for a variable.
    pub fn atom(&self, var: usize) -> (bool, Alt, Alt) {
        let nn = self.n * self.n;
        let (strict, r) = if var >= nn { (true, var - nn) } else { (false, var) };
        (strict, r / self.n, r % self.n)
    }
}

/// Raw clause counts per family, before deduplication and tautology pruning.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EncodingStats {
    pub completeness: usize,
    pub coherency: usize,
    pub transitivity: usize,
    pub observations: usize,
    pub invariance: usize,
    /// Clauses actually kept.
    pub emitted: usize,
}

#[derive(Debug, Clone)]
pub struct Encoding {
    pub vars: VarTable,
    pub cnf: Cnf,
    pub stats: EncodingStats,
    /// False if the monoid was truncated, so only enumerated transforms are encoded.
    pub monoid_closed: bool,
}

pub fn encode_phi(data: &OrderPair, monoid: &Monoid) -> Encoding {
    let n = monoid.universe_len();
    let v = VarTable::new(n);
    let mut cnf = Cnf::new(v.num_vars());
    let mut stats = EncodingStats::default();
    let (w, s) = (|x, y| v.weak(x, y), |x, y| v.strict(x, y));

    for x in 0..n {
        for y in 0..n {
            stats.completeness += 1;
            cnf.add([Lit::pos(w(x, y)), Lit::pos(w(y, x))]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            stats.coherency += 2;
            cnf.add([Lit::neg(w(x, y)), Lit::neg(s(y, x))]);
            cnf.add([Lit::pos(w(x, y)), Lit::pos(s(y, x))]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                stats.transitivity += 1;
                cnf.add([Lit::neg(w(x, y)), Lit::neg(w(y, z)), Lit::pos(w(x, z))]);
            }
        }
    }
    for &(x, y) in &data.weak {
        stats.observations += 1;
        cnf.add([Lit::pos(w(x, y))]);
    }
    for &(x, y) in &data.strict {
        stats.observations += 1;
        cnf.add([Lit::pos(s(x, y))]);
    }
    for (_, t) in monoid.active() {
        let dom: Vec<(Alt, Alt)> = t.pairs().collect();
        for &(x, tx) in &dom {
            for &(y, ty) in &dom {
                stats.invariance += 2;
                cnf.add([Lit::neg(w(x, y)), Lit::pos(w(tx, ty))]);
                cnf.add([Lit::pos(w(x, y)), Lit::neg(w(tx, ty))]);
            }
        }
    }
    stats.emitted = cnf.len();
    Encoding { vars: v, cnf, stats, monoid_closed: monoid.is_closed() }
}
