use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use crate::monoid::Monoid;
use crate::order_pair::OrderPair;
use crate::universe::Pair;

use super::axioms::AxiomGenerator;
use super::collapse::{Preimage, PreimageIndex};
use super::cycles::BrokenCycle;
use super::derivation::{Derivation, Step};
use super::forbidden::{collapse_result, ForbiddenPair};
use super::Limits;

/// Exhaustive check of axioms wider than `max_width` is only attempted when
/// there are at most this many candidate gap pairs.
const WIDE_AXIOM_CHECK: usize = 16;

#[derive(Debug, Clone)]
pub enum SaturationResult {
    Refuted(Derivation),
    /// Fixpoint over the full axiom set: the retained clauses represent every derivable one.
    Saturated(Vec<ForbiddenPair>),
    /// Some limit cut the search; the clauses are a sound subset of the derivable ones.
    Exhausted(Vec<ForbiddenPair>, String),
}

impl SaturationResult {
    pub fn clauses(&self) -> &[ForbiddenPair] {
        match self {
            SaturationResult::Refuted(_) => &[],
            SaturationResult::Saturated(c) | SaturationResult::Exhausted(c, _) => c,
        }
    }
}

#[derive(Debug, Clone)]
enum Origin {
    Axiom(BrokenCycle),
    Collapse { left: usize, right: usize, preimage: Preimage },
}

struct Clause {
    pair: ForbiddenPair,
    origin: Origin,
    alive: bool,
}

type Lit = (Pair, bool);

struct Store {
    clauses: Vec<Clause>,
    known: HashSet<ForbiddenPair>,
    active: Vec<usize>,
    by_lit: HashMap<Lit, Vec<usize>>,
    passive: BinaryHeap<Reverse<(usize, ForbiddenPair, usize)>>,
    subsumption: bool,
}

impl Store {
    fn subsumed(&self, c: &ForbiddenPair) -> bool {
        self.subsumption
            && c.literals().any(|lit| {
                self.by_lit.get(&lit).is_some_and(|ids| {
                    ids.iter().any(|&id| self.clauses[id].alive && self.clauses[id].pair.subsumes(c))
                })
            })
    }

    fn push(&mut self, pair: ForbiddenPair, origin: Origin) -> Option<usize> {
        if !self.known.insert(pair.clone()) {
            return None;
        }
        let id = self.clauses.len();
        self.passive.push(Reverse((pair.width(), pair.clone(), id)));
        self.clauses.push(Clause { pair, origin, alive: true });
        Some(id)
    }

    fn activate(&mut self, id: usize) {
        if self.subsumption {
            let g = self.clauses[id].pair.clone();
            let first = g.literals().next();
            if let Some(first) = first {
                let victims: Vec<usize> = self.by_lit.get(&first).cloned().unwrap_or_default();
                for v in victims {
                    if v != id && self.clauses[v].alive && g.subsumes(&self.clauses[v].pair) {
                        self.clauses[v].alive = false;
                    }
                }
            }
        }
        for lit in self.clauses[id].pair.literals() {
            self.by_lit.entry(lit).or_default().push(id);
        }
        self.active.push(id);
    }

    fn retained(&self) -> Vec<ForbiddenPair> {
        let set: BTreeSet<&ForbiddenPair> =
            self.active.iter().filter(|&&i| self.clauses[i].alive).map(|&i| &self.clauses[i].pair).collect();
        set.into_iter().cloned().collect()
    }

    /// The sub-derivation of clause `goal`, renumbered.
    fn derivation(&self, goal: usize) -> Derivation {
        let mut needed = BTreeSet::new();
        let mut stack = vec![goal];
        while let Some(i) = stack.pop() {
            if needed.insert(i) {
                if let Origin::Collapse { left, right, .. } = self.clauses[i].origin {
                    stack.push(left);
                    stack.push(right);
                }
            }
        }
        let renumber: HashMap<usize, usize> = needed.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let steps = needed
            .iter()
            .map(|&i| {
                let c = &self.clauses[i];
                match &c.origin {
                    Origin::Axiom(cycle) => Step::Axiom { cycle: cycle.clone(), result: c.pair.clone() },
                    Origin::Collapse { left, right, preimage } => Step::Collapse {
                        left: renumber[left],
                        right: renumber[right],
                        preimage: *preimage,
                        result: c.pair.clone(),
                    },
                }
            })
            .collect();
        Derivation { steps }
    }
}

pub fn saturate(data: &OrderPair, monoid: &Monoid, limits: &Limits) -> SaturationResult {
    saturate_with(data, monoid, limits, true)
}

/// Given-clause collapse saturation. `subsumption = false` keeps every clause.
pub fn saturate_with(data: &OrderPair, monoid: &Monoid, limits: &Limits, subsumption: bool) -> SaturationResult {
    let Some(mut axioms) = AxiomGenerator::new(data, monoid) else {
        return SaturationResult::Exhausted(Vec::new(), "universe too large for saturation".into());
    };
    let index = PreimageIndex::new(monoid);
    let mut store = Store {
        clauses: Vec::new(),
        known: HashSet::new(),
        active: Vec::new(),
        by_lit: HashMap::new(),
        passive: BinaryHeap::new(),
        subsumption,
    };
    let mut truncated: Vec<&str> = Vec::new();
    if !monoid.is_closed() {
        truncated.push("monoid truncated");
    }
    let mut width_cut = false;

    loop {
        while axioms.next_level() <= limits.max_width
            && store.passive.peek().is_none_or(|Reverse((w, _, _))| *w >= axioms.next_level())
        {
            for (pair, cycle) in axioms.next_width() {
                if !store.subsumed(&pair) {
                    store.push(pair, Origin::Axiom(cycle));
                }
            }
        }
        let Some(Reverse((_, _, given))) = store.passive.pop() else { break };
        if !store.clauses[given].alive {
            continue;
        }
        if store.subsumed(&store.clauses[given].pair) {
            store.clauses[given].alive = false;
            continue;
        }
        store.activate(given);
        let g = store.clauses[given].pair.clone();

        // candidates: (left id, (u,v), right id, (v',u'), preimage)
        let mut found: Vec<(usize, Pair, usize, Pair, Preimage)> = Vec::new();
        for uv in g.weak_only() {
            for &(vu, pre) in index.partners(uv) {
                for strict in [false, true] {
                    for &r in store.by_lit.get(&(vu, strict)).map_or(&[][..], Vec::as_slice) {
                        if store.clauses[r].alive {
                            found.push((given, uv, r, vu, pre));
                        }
                    }
                }
            }
        }
        for t in g.w().iter().copied() {
            for &(uv, pre) in index.partners(t) {
                for &l in store.by_lit.get(&(uv, false)).map_or(&[][..], Vec::as_slice) {
                    if store.clauses[l].alive && l != given {
                        // flip the pre-image so that ω maps onto the left parent's pair
                        let flipped = Preimage { x: pre.y, y: pre.x, omega: pre.omega_prime, omega_prime: pre.omega };
                        found.push((l, uv, given, t, flipped));
                    }
                }
            }
        }
        for (l, uv, r, vu, pre) in found {
            let result = collapse_result(&store.clauses[l].pair, uv, &store.clauses[r].pair, vu);
            let origin = Origin::Collapse { left: l, right: r, preimage: pre };
            if result.is_empty() {
                let id = store.clauses.len();
                store.clauses.push(Clause { pair: result, origin, alive: true });
                return SaturationResult::Refuted(store.derivation(id));
            }
            if store.known.contains(&result) || store.subsumed(&result) {
                continue;
            }
            if result.width() > limits.max_width {
                width_cut = true;
                continue;
            }
            store.push(result, origin);
            if store.clauses.len() >= limits.max_clauses {
                truncated.push("clause limit reached");
                return SaturationResult::Exhausted(store.retained(), truncated.join(", "));
            }
        }
    }

    if width_cut {
        truncated.push("collapse results wider than max_width discarded");
    }
    let pairs = axioms.pair_count();
    if pairs > limits.max_width {
        if pairs <= WIDE_AXIOM_CHECK {
            let mut open = false;
            while axioms.next_level() <= pairs && !open {
                open = axioms.next_width().iter().any(|(p, _)| !store.subsumed(p));
            }
            if open {
                truncated.push("axioms wider than max_width exist");
            }
        } else {
            truncated.push("axioms wider than max_width not enumerated");
        }
    }
    if truncated.is_empty() {
        SaturationResult::Saturated(store.retained())
    } else {
        SaturationResult::Exhausted(store.retained(), truncated.join(", "))
    }
}
