//! Chronological-backtracking DPLL with two watched literals.
//! Branching: lowest unassigned variable, true first.

use super::cnf::{Cnf, Lit};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Vec<bool>),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

struct Solver<'a> {
    clauses: &'a [Vec<Lit>],
    assign: Vec<Option<bool>>,
    watches: Vec<Vec<usize>>,
    /// watched positions per clause (indices into the clause)
    watched: Vec<[usize; 2]>,
    trail: Vec<Lit>,
    head: usize,
    /// (trail length before the decision, decision literal, flipped already)
    decisions: Vec<(usize, Lit, bool)>,
}

impl Solver<'_> {
    fn value(&self, l: Lit) -> Option<bool> {
        self.assign[l.var()].map(|v| v != l.is_neg())
    }

    fn enqueue(&mut self, l: Lit) -> bool {
        match self.value(l) {
            Some(v) => v,
            None => {
                self.assign[l.var()] = Some(!l.is_neg());
                self.trail.push(l);
                true
            }
        }
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = self.trail[self.head].negate();
            self.head += 1;
            let mut ws = std::mem::take(&mut self.watches[falsified.index()]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let clause = &self.clauses[ci];
                let [a, b] = self.watched[ci];
                let (me, other) = if clause[a] == falsified { (0, b) } else { (1, a) };
                if self.value(clause[other]) == Some(true) {
                    i += 1;
                    continue;
                }
                let replacement = (0..clause.len())
                    .find(|&k| k != a && k != b && self.value(clause[k]) != Some(false));
                if let Some(k) = replacement {
                    self.watched[ci][me] = k;
                    self.watches[clause[k].index()].push(ci);
                    ws.swap_remove(i);
                    continue;
                }
                i += 1;
                if !self.enqueue(clause[other]) {
                    ok = false;
                    break;
                }
            }
            let rest = std::mem::take(&mut self.watches[falsified.index()]);
            ws.extend(rest);
            self.watches[falsified.index()] = ws;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.assign[l.var()] = None;
        }
        self.head = len;
    }

    /// Backtracks to the latest unflipped decision and flips it.
    fn backtrack(&mut self) -> bool {
        while let Some((len, lit, flipped)) = self.decisions.pop() {
            self.undo_to(len);
            if !flipped {
                self.decisions.push((len, lit.negate(), true));
                self.enqueue(lit.negate());
                return true;
            }
        }
        false
    }
}

pub fn solve(cnf: &Cnf) -> SatResult {
    solve_with(cnf, &[])
}

/// Solves `cnf` with extra unit assumptions.
pub fn solve_with(cnf: &Cnf, assumptions: &[Lit]) -> SatResult {
    let nv = cnf.num_vars();
    let clauses = cnf.clauses();
    let mut s = Solver {
        clauses,
        assign: vec![None; nv],
        watches: vec![Vec::new(); 2 * nv],
        watched: vec![[0, 0]; clauses.len()],
        trail: Vec::new(),
        head: 0,
        decisions: Vec::new(),
    };
    for (ci, c) in clauses.iter().enumerate() {
        match c.len() {
            0 => return SatResult::Unsat,
            1 => {
                if !s.enqueue(c[0]) {
                    return SatResult::Unsat;
                }
            }
            _ => {
                s.watched[ci] = [0, 1];
                s.watches[c[0].index()].push(ci);
                s.watches[c[1].index()].push(ci);
            }
        }
    }
    for &a in assumptions {
        if !s.enqueue(a) {
            return SatResult::Unsat;
        }
    }
    let mut next_var = 0;
    loop {
        if !s.propagate() {
            if !s.backtrack() {
                return SatResult::Unsat;
            }
            next_var = 0;
            continue;
        }
        while next_var < nv && s.assign[next_var].is_some() {
            next_var += 1;
        }
        if next_var == nv {
            let model = s.assign.iter().map(|v| v.unwrap()).collect();
            return SatResult::Sat(model);
        }
        let lit = Lit::pos(next_var);
        s.decisions.push((s.trail.len(), lit, false));
        s.enqueue(lit);
    }
}

#[derive(Debug, Clone)]
pub struct Models {
    pub models: Vec<Vec<bool>>,
    /// True if the cap stopped enumeration.
    pub cap_exceeded: bool,
}

/// All models up to `cap`, via blocking clauses.
pub fn enumerate_models(cnf: &Cnf, cap: usize) -> Models {
    let mut work = cnf.clone();
    let mut models = Vec::new();
    loop {
        match solve(&work) {
            SatResult::Unsat => return Models { models, cap_exceeded: false },
            SatResult::Sat(m) => {
                if models.len() == cap {
                    return Models { models, cap_exceeded: true };
                }
                let block: Vec<Lit> =
                    m.iter().enumerate().map(|(v, &b)| if b { Lit::neg(v) } else { Lit::pos(v) }).collect();
                models.push(m);
                if block.is_empty() {
                    return Models { models, cap_exceeded: false };
                }
                work.add(block);
            }
        }
    }
}
