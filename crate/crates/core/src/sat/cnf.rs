use std::collections::HashSet;
use std::fmt::Write;

/// Variable `v` (0-based) positive is `2v`, negative `2v+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit((var as u32) << 1)
    }

    pub fn neg(var: usize) -> Lit {
        Lit((var as u32) << 1 | 1)
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// DIMACS form: 1-based, sign for polarity.
    pub fn dimacs(self) -> i64 {
        let v = self.var() as i64 + 1;
        if self.is_neg() {
            -v
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    seen: HashSet<Vec<Lit>>,
}

impl Cnf {
    pub fn new(num_vars: usize) -> Self {
        Cnf { num_vars, ..Default::default() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Sorts and dedups literals; drops tautologies and repeated clauses.
    /// Returns true if the clause was kept.
    pub fn add(&mut self, lits: impl IntoIterator<Item = Lit>) -> bool {
        let mut c: Vec<Lit> = lits.into_iter().collect();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return false;
        }
        for l in &c {
            assert!(l.var() < self.num_vars, "literal out of range");
        }
        if !self.seen.insert(c.clone()) {
            return false;
        }
        self.clauses.push(c);
        true
    }

    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| model[l.var()] != l.is_neg()))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                write!(s, "{} ", l.dimacs()).unwrap();
            }
            s.push_str("0\n");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation() {
        let mut f = Cnf::new(3);
        assert!(f.add([Lit::pos(1), Lit::neg(0), Lit::pos(1)]));
        assert!(!f.add([Lit::neg(0), Lit::pos(1)]));
        assert!(!f.add([Lit::pos(2), Lit::neg(2)]));
        assert_eq!(f.len(), 1);
        assert_eq!(f.clauses()[0], vec![Lit::neg(0), Lit::pos(1)]);
        assert_eq!(f.to_dimacs(), "p cnf 3 1\n-1 2 0\n");
    }
}
