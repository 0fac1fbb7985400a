//! Width-levelled generation of the forbidden subrelations defined by broken
//! cycles.
//!
//! A gap set W is realised by some broken cycle iff, in the graph of ≿_⊺
//! edges plus the hypothesised edges ω(y) → ω(x) for (y, x) ∈ W, a single
//! strongly connected component carries at least one hypothesised edge of
//! every pair in W. The cycle can be made strict iff that component also
//! carries a ≻_⊺ edge.

use std::collections::{HashMap, VecDeque};

use crate::closure::DenseClosure;
use crate::monoid::{Monoid, TransformId};
use crate::order_pair::OrderPair;
use crate::universe::{Alt, Pair};

use super::cycles::{BrokenCycle, GapLink};
use super::forbidden::ForbiddenPair;

pub const MAX_AXIOM_UNIVERSE: usize = 64;

const VALID: u8 = 1;
const STRICT: u8 = 2;
/// Some subset (possibly W itself) is valid and strict-capable.
const DOMINATED: u8 = 4;

#[derive(Debug, Clone, Copy)]
struct Component {
    mask: u64,
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Edge {
    Data(Alt, Alt),
    Hyp { from: Alt, to: Alt, pair: usize, transform: TransformId },
}

pub struct AxiomGenerator<'a> {
    n: usize,
    monoid: &'a Monoid,
    wt: Vec<u64>,
    st: Vec<u64>,
    /// hyp[a*n+b]: edges ω(a) → ω(b) for the gap pair (a, b).
    hyp: Vec<Vec<(Alt, Alt, TransformId)>>,
    offdiag: Vec<Pair>,
    flags: HashMap<u64, u8>,
    next_level: usize,
}

fn key(ids: &[usize]) -> u64 {
    ids.iter().fold(0u64, |k, &i| k << 16 | (i as u64 + 1))
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

impl<'a> AxiomGenerator<'a> {
    /// `None` when the universe is too large for the bit-row representation.
    pub fn new(data: &OrderPair, monoid: &'a Monoid) -> Option<Self> {
        let n = monoid.universe_len();
        if n > MAX_AXIOM_UNIVERSE {
            return None;
        }
        let closure = DenseClosure::new(data, n);
        let row = |m: &crate::relation::BitMatrix, x: Alt| m.row(x)[0];
        let wt: Vec<u64> = (0..n).map(|x| row(&closure.weak, x) | 1 << x).collect();
        let st: Vec<u64> = (0..n).map(|x| row(&closure.strict, x)).collect();
        let mut hyp = vec![Vec::new(); n * n];
        for (t, w) in monoid.active() {
            let dom: Vec<(Alt, Alt)> = w.pairs().collect();
            for &(a, wa) in &dom {
                for &(b, wb) in &dom {
                    let list: &mut Vec<(Alt, Alt, TransformId)> = &mut hyp[a * n + b];
                    if !list.iter().any(|&(c, d, _)| (c, d) == (wa, wb)) {
                        list.push((wa, wb, t));
                    }
                }
            }
        }
        let offdiag = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && !hyp[a * n + b].is_empty())
            .collect();
        Some(AxiomGenerator { n, monoid, wt, st, hyp, offdiag, flags: HashMap::new(), next_level: 1 })
    }

    /// Number of candidate off-diagonal gap pairs.
    pub fn pair_count(&self) -> usize {
        self.offdiag.len()
    }

    pub fn next_level(&self) -> usize {
        self.next_level
    }

    fn pid(&self, (a, b): Pair) -> usize {
        a * self.n + b
    }

    /// Components of the augmented graph that close every pair of `w`.
    fn component(&self, w: &[Pair]) -> Option<Component> {
        let n = self.n;
        let mut reach = self.wt.clone();
        for &p in w {
            for &(c, d, _) in &self.hyp[self.pid(p)] {
                reach[c] |= 1 << d;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i] >> k & 1 == 1 {
                    reach[i] |= reach[k];
                }
            }
        }
        let scc = |c: Alt| -> u64 { (0..n).filter(|&b| reach[c] >> b & 1 == 1 && reach[b] >> c & 1 == 1).fold(0, |m, b| m | 1 << b) };
        // candidate components: those of the endpoints of the first pair's edges
        let mut best: Option<Component> = None;
        let first = &self.hyp[self.pid(w[0])];
        let mut tried: u64 = 0;
        for &(c, d, _) in first {
            if reach[d] >> c & 1 == 0 || tried >> c & 1 == 1 {
                continue;
            }
            let mask = scc(c);
            tried |= mask;
            let closes = w[1..].iter().all(|&p| {
                self.hyp[self.pid(p)].iter().any(|&(c2, d2, _)| mask >> c2 & 1 == 1 && mask >> d2 & 1 == 1)
            });
            if !closes {
                continue;
            }
            let strict = bits(mask).any(|a| self.st[a] & mask != 0);
            if strict {
                return Some(Component { mask, strict });
            }
            best.get_or_insert(Component { mask, strict });
        }
        best
    }

    fn flag_of(&self, ids: &[usize]) -> u8 {
        *self.flags.get(&key(ids)).expect("subsets are visited before supersets")
    }

    /// Axioms whose gap set has exactly `self.next_level()` pairs; advances the level.
    pub fn next_width(&mut self) -> Vec<(ForbiddenPair, BrokenCycle)> {
        let k = self.next_level;
        self.next_level += 1;
        let mut out = Vec::new();
        if k == 1 {
            for x in 0..self.n {
                if self.hyp[x * self.n + x].is_empty() {
                    continue;
                }
                let w = [(x, x)];
                let c = self.component(&w).expect("self loops always close");
                out.push((ForbiddenPair::new(w, w), self.witness(&w, c)));
                if c.strict {
                    out.push((ForbiddenPair::new(w, []), self.witness(&w, c)));
                }
            }
        }
        let m = self.offdiag.len();
        if k > m {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            self.visit(&idx, &mut out);
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] < m - k + i {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    fn visit(&mut self, idx: &[usize], out: &mut Vec<(ForbiddenPair, BrokenCycle)>) {
        let k = idx.len();
        let mut dominated = false;
        let mut nonstrict_subsets: Vec<u32> = Vec::new();
        if k > 1 {
            for mask in 1u32..(1 << k) - 1 {
                let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| idx[i]).collect();
                let f = self.flag_of(&sub);
                if f & DOMINATED != 0 {
                    dominated = true;
                    break;
                }
                if f & VALID != 0 {
                    nonstrict_subsets.push(mask);
                }
            }
        }
        let w: Vec<Pair> = idx.iter().map(|&i| self.offdiag[i]).collect();
        let comp = if dominated { None } else { self.component(&w) };
        let mut flag = if dominated { DOMINATED } else { 0 };
        if let Some(c) = comp {
            flag |= VALID;
            if c.strict {
                flag |= STRICT | DOMINATED;
            }
            let cycle = self.witness(&w, c);
            for s in 0u32..1 << k {
                if (!c.strict && s == 0) || nonstrict_subsets.iter().any(|&m| m & s != 0) {
                    continue;
                }
                let sp = (0..k).filter(|i| s >> i & 1 == 1).map(|i| w[i]);
                out.push((ForbiddenPair::new(w.iter().copied(), sp), cycle.clone()));
            }
        }
        self.flags.insert(key(idx), flag);
    }

    /// A closed walk through one hypothesised edge per pair (and a strict
    /// edge when the component has one), read off as a broken cycle.
    fn witness(&self, w: &[Pair], c: Component) -> BrokenCycle {
        let inside = |a: Alt| c.mask >> a & 1 == 1;
        let mut required: Vec<Edge> = Vec::new();
        for &p in w {
            let pair = self.pid(p);
            let &(from, to, transform) = self.hyp[pair]
                .iter()
                .find(|&&(a, b, _)| inside(a) && inside(b))
                .expect("component closes every pair");
            required.push(Edge::Hyp { from, to, pair, transform });
        }
        if c.strict {
            let a = bits(c.mask).find(|&a| self.st[a] & c.mask != 0).unwrap();
            let b = (self.st[a] & c.mask).trailing_zeros() as usize;
            required.push(Edge::Data(a, b));
        }
        let ends = |e: Edge| match e {
            Edge::Data(a, b) => (a, b),
            Edge::Hyp { from, to, .. } => (from, to),
        };
        let mut walk: Vec<Edge> = Vec::new();
        for i in 0..required.len() {
            walk.push(required[i]);
            let head = ends(required[i]).1;
            let tail = ends(required[(i + 1) % required.len()]).0;
            walk.extend(self.path(w, c.mask, head, tail));
        }
        let start = walk.iter().position(|e| matches!(e, Edge::Hyp { .. })).unwrap();
        walk.rotate_left(start);
        let links = walk
            .iter()
            .filter_map(|e| match *e {
                Edge::Hyp { pair, transform, .. } => {
                    let (y, x) = (pair / self.n, pair % self.n);
                    Some(GapLink { transform, x, y })
                }
                Edge::Data(..) => None,
            })
            .collect::<Vec<_>>();
        let mut cycle = BrokenCycle { links, strict: false };
        let chain = cycle.chain_relations(self.monoid).expect("links lie in their domains");
        cycle.strict = chain.iter().any(|&(a, b)| self.st[a] >> b & 1 == 1);
        cycle
    }

    /// Shortest edge path from `s` to `t` inside the component.
    fn path(&self, w: &[Pair], mask: u64, s: Alt, t: Alt) -> Vec<Edge> {
        if s == t {
            return Vec::new();
        }
        let mut prev: Vec<Option<Edge>> = vec![None; self.n];
        let mut seen = 1u64 << s;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            let mut out: Vec<Edge> = bits(self.wt[a] & mask).map(|b| Edge::Data(a, b)).collect();
            for &p in w {
                let pair = self.pid(p);
                for &(from, to, transform) in &self.hyp[pair] {
                    if from == a && mask >> to & 1 == 1 {
                        out.push(Edge::Hyp { from, to, pair, transform });
                    }
                }
            }
            for e in out {
                let b = match e {
                    Edge::Data(_, b) => b,
                    Edge::Hyp { to, .. } => to,
                };
                if seen >> b & 1 == 1 {
                    continue;
                }
                seen |= 1 << b;
                prev[b] = Some(e);
                if b == t {
                    let mut path = Vec::new();
                    let mut cur = t;
                    while cur != s {
                        let e = prev[cur].unwrap();
                        path.push(e);
                        cur = match e {
                            Edge::Data(a, _) => a,
                            Edge::Hyp { from, .. } => from,
                        };
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(b);
            }
        }
        unreachable!("component is strongly connected")
    }
}
