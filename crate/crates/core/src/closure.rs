//! Transitive and M-closures, cycle detection, and the decision procedure for
//! commutative families.

use std::collections::{BTreeSet, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::monoid::{Monoid, TransformId};
use crate::order_pair::OrderPair;
use crate::relation::BitMatrix;
use crate::transform::compose;
use crate::universe::{Alt, Pair};
use crate::verdict::{Certificate, Refutation, Verdict};

/// Dense transitive closure of an order pair over `n` alternatives.
#[derive(Debug, Clone)]
pub struct DenseClosure {
    pub weak: BitMatrix,
    pub strict: BitMatrix,
}

impl DenseClosure {
    pub fn new(pair: &OrderPair, n: usize) -> Self {
        let mut weak = BitMatrix::from_pairs(n, pair.weak.iter().chain(&pair.strict).copied());
        weak.transitive_closure();
        let mut reach = weak.clone();
        for x in 0..n {
            reach.set(x, x);
        }
        let mut strict = BitMatrix::new(n);
        for &(a, b) in &pair.strict {
            for x in 0..n {
                if reach.get(x, a) {
                    or_row_from(&mut strict, x, &reach, b);
                }
            }
        }
        DenseClosure { weak, strict }
    }

    pub fn size(&self) -> usize {
        self.weak.size()
    }

    pub fn to_order_pair(&self) -> OrderPair {
        OrderPair::new(self.weak.pairs(), self.strict.pairs())
    }
}

fn or_row_from(dst: &mut BitMatrix, row: Alt, src: &BitMatrix, src_row: Alt) {
    for y in src.row_iter(src_row) {
        dst.set(row, y);
    }
}

fn universe_bound(pair: &OrderPair) -> usize {
    pair.max_id().map_or(0, |m| m + 1)
}

/// ⟨≿_⊺, ≻_⊺⟩: reachability over weak edges; strict iff some path uses a strict edge.
pub fn transitive_closure(pair: &OrderPair) -> OrderPair {
    DenseClosure::new(pair, universe_bound(pair)).to_order_pair()
}

/// All ω-images of related pairs, for ω in the monoid.
pub fn m_closure(pair: &OrderPair, monoid: &Monoid) -> OrderPair {
    let mut out = OrderPair::empty();
    for (_, w) in monoid.active() {
        let image = |s: &BTreeSet<Pair>, out: &mut BTreeSet<Pair>| {
            for &(x, y) in s {
                if let (Some(a), Some(b)) = (w.apply(x), w.apply(y)) {
                    out.insert((a, b));
                }
            }
        };
        image(&pair.weak, &mut out.weak);
        image(&pair.strict, &mut out.strict);
    }
    out
}

/// `chain[0] ≿ chain[1] ≿ … ≿ chain[k] ≻ chain[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub chain: Vec<Alt>,
}

impl CycleWitness {
    /// Re-checks every link against the pair.
    pub fn verify(&self, pair: &OrderPair) -> bool {
        let k = self.chain.len();
        if k == 0 {
            return false;
        }
        let weak_ok = self.chain.windows(2).all(|w| {
            pair.weak.contains(&(w[0], w[1])) || pair.strict.contains(&(w[0], w[1]))
        });
        weak_ok && pair.strict.contains(&(self.chain[k - 1], self.chain[0]))
    }

    /// Links as (from, to, strict) triples, closing the loop.
    pub fn links(&self, pair: &OrderPair) -> Vec<(Alt, Alt, bool)> {
        let k = self.chain.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.chain[i], self.chain[(i + 1) % k]);
                (a, b, pair.strict.contains(&(a, b)))
            })
            .collect()
    }

    pub fn display(&self, pair: &OrderPair, u: &crate::universe::Universe) -> String {
        let mut s = String::new();
        for (a, b, strict) in self.links(pair) {
            if s.is_empty() {
                s.push_str(u.label(a));
            }
            s.push_str(if strict { " ≻ " } else { " ≽ " });
            s.push_str(u.label(b));
        }
        s
    }
}

/// A cycle through the lexicographically least strict edge lying inside a
/// strongly connected component of the weak graph, shortest and then
/// lexicographically least among the paths closing it.
pub fn find_cycle(pair: &OrderPair) -> Option<CycleWitness> {
    let n = universe_bound(pair);
    let mut adj: Vec<Vec<Alt>> = vec![Vec::new(); n];
    let mut radj: Vec<Vec<Alt>> = vec![Vec::new(); n];
    for &(x, y) in pair.weak.union(&pair.strict) {
        adj[x].push(y);
        radj[y].push(x);
    }
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (x, ys) in adj.iter().enumerate() {
        for &y in ys {
            g.add_edge(NodeIndex::new(x), NodeIndex::new(y), ());
        }
    }
    let mut comp = vec![0usize; n];
    for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
        for v in scc {
            comp[v.index()] = c;
        }
    }
    let &(a, b) = pair.strict.iter().find(|&&(a, b)| comp[a] == comp[b])?;
    // distance to `a` over weak edges, by reverse BFS
    let mut dist = vec![usize::MAX; n];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for &u in &radj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let mut chain = vec![b];
    let mut cur = b;
    while cur != a {
        cur = adj[cur]
            .iter()
            .copied()
            .filter(|&v| dist[v] != usize::MAX && dist[v] + 1 == dist[cur])
            .min()
            .expect("same component implies a path");
        chain.push(cur);
    }
    Some(CycleWitness { chain })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Commutativity {
    Commutative,
    /// `left∘right` and `right∘left` differ at `at` (in value or definedness).
    Violation { left: TransformId, right: TransformId, at: Alt },
}

/// Pairwise check over generators, requiring equal composition domains.
pub fn is_commutative(monoid: &Monoid) -> Commutativity {
    let gens = monoid.generator_ids();
    for (i, &g) in gens.iter().enumerate() {
        for &h in &gens[i + 1..] {
            let gh = compose(monoid.get(g), monoid.get(h));
            let hg = compose(monoid.get(h), monoid.get(g));
            if let Some(at) = (0..monoid.universe_len()).find(|&x| gh.apply(x) != hg.apply(x)) {
                return Commutativity::Violation { left: g, right: h, at };
            }
        }
    }
    Commutativity::Commutative
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotApplicable {
    #[error("transforms do not commute")]
    NonCommutative,
    #[error("monoid generation was truncated")]
    Truncated,
    #[error("acyclic M-closure with partial transforms is not a certificate")]
    PartialFamily,
}

/// Decision by acyclicity of the M-closure.
///
/// A cycle refutes for any family. Acyclicity certifies only when every
/// transform is total.
pub fn decide_commutative(data: &OrderPair, monoid: &Monoid) -> Result<Verdict, NotApplicable> {
    if !monoid.is_closed() {
        return Err(NotApplicable::Truncated);
    }
    if is_commutative(monoid) != Commutativity::Commutative {
        return Err(NotApplicable::NonCommutative);
    }
    let closure = m_closure(data, monoid);
    match find_cycle(&closure) {
        Some(c) => Ok(Verdict::NotRationalizable(Refutation::Cycle(c))),
        None if monoid.all_total() => Ok(Verdict::Rationalizable(Certificate::AcyclicClosure)),
        None => Err(NotApplicable::PartialFamily),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::PartialTransform;

    #[test]
    fn closure_adds_composite() {
        let p = OrderPair::new([(0, 1), (1, 2)], []);
        let t = transitive_closure(&p);
        assert!(t.weak.contains(&(0, 2)));
        assert!(t.strict.is_empty());
    }

    #[test]
    fn diagonal_unchanged() {
        let p = OrderPair::new([(0, 0), (1, 1)], []);
        assert_eq!(transitive_closure(&p), p);
    }

    #[test]
    fn strict_propagates_along_path() {
        let p = OrderPair::new([(0, 1), (1, 2), (2, 3)], [(1, 2)]);
        let t = transitive_closure(&p);
        assert!(t.strict.contains(&(0, 3)));
        assert!(t.strict.contains(&(1, 2)));
        assert!(!t.strict.contains(&(0, 1)));
    }

    #[test]
    fn trivial_monoid_closure() {
        let p = OrderPair::new([(0, 0), (0, 1)], [(0, 1)]);
        assert_eq!(m_closure(&p, &Monoid::trivial(2)), p);
    }

    #[test]
    fn no_strict_no_cycle() {
        assert_eq!(find_cycle(&OrderPair::new([(0, 1), (1, 0)], [])), None);
    }

    #[test]
    fn single_generator_commutes() {
        let s = PartialTransform::from_pairs("s", 3, [(0, 1), (1, 2)]).unwrap();
        let m = Monoid::generate(&[s], 3, 10);
        assert_eq!(is_commutative(&m), Commutativity::Commutative);
    }

    #[test]
    fn partial_shift_counterexample_is_not_certified() {
        // 1 ≻ 2 ≻ 0 with s: 0↦1, 1↦2. M-closure acyclic, yet 1 ≻ 0 forces 2 ≻ 1.
        let s = PartialTransform::from_pairs("s", 3, [(0, 1), (1, 2)]).unwrap();
        let m = Monoid::generate(&[s], 3, 10);
        let data = OrderPair::new([(0, 0), (1, 1), (2, 2), (1, 2), (2, 0)], [(1, 2), (2, 0)]);
        assert!(find_cycle(&m_closure(&data, &m)).is_none());
        assert_eq!(decide_commutative(&data, &m).unwrap_err(), NotApplicable::PartialFamily);
    }
}
