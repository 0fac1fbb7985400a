//! Depth-first search for an explicit invariant rationalization, with
//! propagation of transitivity and invariance at every node.

use crate::monoid::Monoid;
use crate::order_pair::OrderPair;
use crate::preference::Preference;
use crate::relation::BitMatrix;
use crate::universe::Alt;

#[derive(Debug, Clone)]
pub enum Extension {
    Found(Preference),
    /// The search space was exhausted: no rationalization exists.
    Impossible,
    /// Node budget spent.
    Budget,
}

#[derive(Clone)]
struct State {
    weak: BitMatrix,
    strict: BitMatrix,
}

struct Search<'a> {
    n: usize,
    maps: Vec<Vec<(Alt, Alt)>>,
    monoid: &'a Monoid,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    /// Returns false on contradiction.
    fn propagate(&self, st: &mut State) -> bool {
        let n = self.n;
        loop {
            let mut changed = st.weak.union_with(&st.strict);
            st.weak.transitive_closure();
            // strict ∘ weak and weak ∘ strict
            for x in 0..n {
                let ws: Vec<Alt> = st.weak.row_iter(x).collect();
                for a in ws {
                    if a != x && st.strict.or_row(x, a) {
                        changed = true;
                    }
                }
                let ss: Vec<Alt> = st.strict.row_iter(x).collect();
                for a in ss {
                    for b in st.weak.row_iter(a).collect::<Vec<_>>() {
                        changed |= st.strict.set(x, b);
                    }
                }
            }
            for dom in &self.maps {
                for &(x, wx) in dom {
                    for &(y, wy) in dom {
                        let (w1, w2) = (st.weak.get(x, y), st.weak.get(wx, wy));
                        if w1 != w2 {
                            st.weak.set(x, y);
                            st.weak.set(wx, wy);
                            changed = true;
                        }
                        let (s1, s2) = (st.strict.get(x, y), st.strict.get(wx, wy));
                        if s1 != s2 {
                            st.strict.set(x, y);
                            st.strict.set(wx, wy);
                            changed = true;
                        }
                    }
                }
            }
            for x in 0..n {
                for y in st.strict.row_iter(x) {
                    if st.weak.get(y, x) {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn undecided(&self, st: &State) -> Option<(Alt, Alt)> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                let decided = (st.weak.get(x, y) && st.weak.get(y, x)) || st.strict.get(x, y) || st.strict.get(y, x);
                if !decided {
                    return Some((x, y));
                }
            }
        }
        None
    }

    fn dfs(&mut self, mut st: State) -> Extension {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Extension::Budget;
        }
        if !self.propagate(&mut st) {
            return Extension::Impossible;
        }
        let Some((x, y)) = self.undecided(&st) else {
            return Extension::Found(Preference::from_weak(st.weak));
        };
        let mut options: Vec<State> = Vec::new();
        let with = |f: &dyn Fn(&mut State)| {
            let mut s = st.clone();
            f(&mut s);
            s
        };
        if !st.weak.get(y, x) {
            options.push(with(&|s| {
                s.strict.set(x, y);
            }));
        }
        if !st.weak.get(x, y) {
            options.push(with(&|s| {
                s.strict.set(y, x);
            }));
        }
        options.push(with(&|s| {
            s.weak.set(x, y);
            s.weak.set(y, x);
        }));
        let mut budget_hit = false;
        for o in options {
            match self.dfs(o) {
                Extension::Found(p) => return Extension::Found(p),
                Extension::Budget => {
                    budget_hit = true;
                    break;
                }
                Extension::Impossible => {}
            }
        }
        if budget_hit {
            Extension::Budget
        } else {
            Extension::Impossible
        }
    }
}

/// Looks for a complete, transitive, invariant preference extending the data.
/// A returned preference has passed `Preference::check`.
pub fn extend_to_preference(data: &OrderPair, monoid: &Monoid, budget: usize) -> Extension {
    let n = monoid.universe_len();
    let maps = monoid
        .active()
        .filter(|(_, w)| !w.is_identity())
        .map(|(_, w)| w.pairs().collect())
        .collect();
    let mut search = Search { n, maps, monoid, nodes: 0, budget };
    let mut weak = BitMatrix::from_pairs(n, data.weak.iter().chain(&data.strict).copied());
    for x in 0..n {
        weak.set(x, x);
    }
    let strict = BitMatrix::from_pairs(n, data.strict.iter().copied());
    match search.dfs(State { weak, strict }) {
        Extension::Found(p) => {
            let monoid = search.monoid;
            match p.check(data, monoid) {
                Ok(()) => Extension::Found(p),
                Err(_) => Extension::Budget,
            }
        }
        other => other,
    }
}
