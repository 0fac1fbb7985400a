use std::collections::BTreeSet;

use crate::closure::DenseClosure;
use crate::monoid::{Monoid, TransformId};
use crate::order_pair::OrderPair;
use crate::universe::{Alt, Pair, Universe};

use super::forbidden::{s_variants, ForbiddenPair};

/// One gap (x_i, y_i) pushed through ω_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapLink {
    pub transform: TransformId,
    pub x: Alt,
    pub y: Alt,
}

/// Links with ω_i(x_i) ≿_⊺ ω_{i+1}(y_{i+1}), indices mod N.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrokenCycle {
    pub links: Vec<GapLink>,
    pub strict: bool,
}

/// Which gap pairs a broken cycle may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapPolicy {
    /// Neither (x,y) nor (y,x) observed.
    Unrelated,
    /// Any pair, observed or not, including x = y.
    Any,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("broken cycle has no links")]
    Empty,
    #[error("link {0} refers to an unknown transform")]
    UnknownTransform(usize),
    #[error("link {0} has a gap outside the transform's domain")]
    OutsideDomain(usize),
    #[error("link {0} gap is related in the data")]
    RelatedGap(usize),
    #[error("chain relation after link {0} is not in the transitive closure")]
    BrokenChain(usize),
    #[error("strict flag does not match the chain relations")]
    StrictMismatch,
}

impl BrokenCycle {
    /// (ω_i(x_i), ω_{i+1}(y_{i+1})) for each i; `None` if some image is undefined.
    pub fn chain_relations(&self, monoid: &Monoid) -> Option<Vec<Pair>> {
        let n = self.links.len();
        (0..n)
            .map(|i| {
                let (a, b) = (&self.links[i], &self.links[(i + 1) % n]);
                Some((monoid.get(a.transform).apply(a.x)?, monoid.get(b.transform).apply(b.y)?))
            })
            .collect()
    }

    pub fn validate(
        &self,
        closure: &DenseClosure,
        data: &OrderPair,
        monoid: &Monoid,
        policy: GapPolicy,
    ) -> Result<(), CycleError> {
        if self.links.is_empty() {
            return Err(CycleError::Empty);
        }
        for (i, l) in self.links.iter().enumerate() {
            if l.transform >= monoid.len() {
                return Err(CycleError::UnknownTransform(i));
            }
            let w = monoid.get(l.transform);
            if l.x >= w.universe_len() || l.y >= w.universe_len() || !w.contains(l.x) || !w.contains(l.y) {
                return Err(CycleError::OutsideDomain(i));
            }
            if policy == GapPolicy::Unrelated
                && (data.weak.contains(&(l.x, l.y)) || data.weak.contains(&(l.y, l.x)))
            {
                return Err(CycleError::RelatedGap(i));
            }
        }
        let chain = self.chain_relations(monoid).expect("domains checked");
        let mut strict = false;
        for (i, &(a, b)) in chain.iter().enumerate() {
            if !closure.weak.get(a, b) {
                return Err(CycleError::BrokenChain(i));
            }
            strict |= closure.strict.get(a, b);
        }
        if strict != self.strict {
            return Err(CycleError::StrictMismatch);
        }
        Ok(())
    }

    /// Distinct (y_i, x_i).
    pub fn gap_set(&self) -> Vec<Pair> {
        let set: BTreeSet<Pair> = self.links.iter().map(|l| (l.y, l.x)).collect();
        set.into_iter().collect()
    }

    pub fn display(&self, monoid: &Monoid, u: &Universe) -> String {
        let chain = self.chain_relations(monoid).unwrap_or_default();
        let mut parts = Vec::new();
        for (i, l) in self.links.iter().enumerate() {
            let name = monoid.get(l.transform).name();
            parts.push(format!("[{}: {} ? {}]", name, u.label(l.x), u.label(l.y)));
            if let Some(&(a, b)) = chain.get(i) {
                parts.push(format!("{} ≿ {}", u.label(a), u.label(b)));
            }
        }
        format!("{}{}", parts.join(" "), if self.strict { " (strict)" } else { "" })
    }
}

/// A forbidden subrelation together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSubrelation {
    pub pair: ForbiddenPair,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Cycle(BrokenCycle),
    /// Index of the collapse step in some derivation.
    Collapse(usize),
}

/// All ⟨W, S⟩ the cycle defines.
pub fn forbidden_subrelations(cycle: &BrokenCycle) -> Vec<ForbiddenSubrelation> {
    s_variants(&cycle.gap_set(), cycle.strict)
        .into_iter()
        .map(|pair| ForbiddenSubrelation { pair, provenance: Provenance::Cycle(cycle.clone()) })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BrokenCycleSet {
    pub cycles: Vec<BrokenCycle>,
    /// False when the budget stopped the enumeration.
    pub complete: bool,
}

/// Simple cycles of length ≤ `max_links` in the gap graph, each reported
/// once, starting from its least node.
pub fn enumerate_broken_cycles(
    data: &OrderPair,
    monoid: &Monoid,
    max_links: usize,
    policy: GapPolicy,
    budget: usize,
) -> BrokenCycleSet {
    let n = monoid.universe_len();
    let closure = DenseClosure::new(data, n);
    let mut nodes: Vec<GapLink> = Vec::new();
    for (t, w) in monoid.active() {
        for x in w.domain() {
            for y in w.domain() {
                let related = data.weak.contains(&(x, y)) || data.weak.contains(&(y, x));
                if policy == GapPolicy::Any || !related {
                    nodes.push(GapLink { transform: t, x, y });
                }
            }
        }
    }
    let head = |l: &GapLink| monoid.get(l.transform).apply(l.x).unwrap();
    let tail = |l: &GapLink| monoid.get(l.transform).apply(l.y).unwrap();
    let succ: Vec<Vec<usize>> = nodes
        .iter()
        .map(|a| (0..nodes.len()).filter(|&j| closure.weak.get(head(a), tail(&nodes[j]))).collect())
        .collect();

    let mut out = Vec::new();
    let mut complete = true;
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; nodes.len()];
    'starts: for s in 0..nodes.len() {
        // iterative DFS over nodes > s
        path.clear();
        path.push(s);
        on_path[s] = true;
        let mut cursor: Vec<usize> = vec![0];
        while let Some(&v) = path.last() {
            let k = cursor.last_mut().unwrap();
            if *k < succ[v].len() {
                let u = succ[v][*k];
                *k += 1;
                if u == s {
                    if out.len() >= budget {
                        complete = false;
                        on_path.iter_mut().for_each(|b| *b = false);
                        break 'starts;
                    }
                    let links: Vec<GapLink> = path.iter().map(|&i| nodes[i]).collect();
                    let mut c = BrokenCycle { links, strict: false };
                    let chain = c.chain_relations(monoid).unwrap();
                    c.strict = chain.iter().any(|&(a, b)| closure.strict.get(a, b));
                    out.push(c);
                } else if u > s && !on_path[u] && path.len() < max_links {
                    path.push(u);
                    on_path[u] = true;
                    cursor.push(0);
                }
            } else {
                on_path[v] = false;
                path.pop();
                cursor.pop();
            }
        }
    }
    BrokenCycleSet { cycles: out, complete }
}
