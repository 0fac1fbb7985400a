use std::collections::HashMap;

use crate::monoid::{Monoid, TransformId};
use crate::universe::{Alt, Pair};

use super::forbidden::{collapse_result, ForbiddenPair};

/// Common pre-image (x, y) with ω(x)=u, ω(y)=v and ω′(y)=v′, ω′(x)=u′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Preimage {
    pub x: Alt,
    pub y: Alt,
    pub omega: TransformId,
    pub omega_prime: TransformId,
}

impl Preimage {
    /// The cancelled pairs (u,v) and (v′,u′), if both images are defined.
    pub fn images(&self, monoid: &Monoid) -> Option<(Pair, Pair)> {
        if self.omega >= monoid.len() || self.omega_prime >= monoid.len() {
            return None;
        }
        let (w, w2) = (monoid.get(self.omega), monoid.get(self.omega_prime));
        if self.x >= w.universe_len() || self.y >= w.universe_len() {
            return None;
        }
        Some(((w.apply(self.x)?, w.apply(self.y)?), (w2.apply(self.y)?, w2.apply(self.x)?)))
    }
}

/// For each ordered pair (u,v), every (v′,u′) it can cancel against.
#[derive(Debug, Clone)]
pub struct PreimageIndex {
    partners: HashMap<Pair, Vec<(Pair, Preimage)>>,
}

impl PreimageIndex {
    pub fn new(monoid: &Monoid) -> Self {
        // images[(x,y)] = distinct (ω(x), ω(y)) with the first ω producing them
        let mut images: HashMap<Pair, Vec<(Pair, TransformId)>> = HashMap::new();
        for (t, w) in monoid.active() {
            let dom: Vec<(Alt, Alt)> = w.pairs().collect();
            for &(x, wx) in &dom {
                for &(y, wy) in &dom {
                    let list = images.entry((x, y)).or_default();
                    if !list.iter().any(|&(p, _)| p == (wx, wy)) {
                        list.push(((wx, wy), t));
                    }
                }
            }
        }
        let mut keys: Vec<Pair> = images.keys().copied().collect();
        keys.sort_unstable();
        let mut partners: HashMap<Pair, Vec<(Pair, Preimage)>> = HashMap::new();
        for (x, y) in keys {
            let Some(back) = images.get(&(y, x)) else { continue };
            for &(uv, omega) in &images[&(x, y)] {
                let list = partners.entry(uv).or_default();
                for &(vu, omega_prime) in back {
                    if !list.iter().any(|&(p, _)| p == vu) {
                        list.push((vu, Preimage { x, y, omega, omega_prime }));
                    }
                }
            }
        }
        for list in partners.values_mut() {
            list.sort_by_key(|&(p, _)| p);
        }
        PreimageIndex { partners }
    }

    pub fn partners(&self, uv: Pair) -> &[(Pair, Preimage)] {
        self.partners.get(&uv).map_or(&[], Vec::as_slice)
    }
}

/// One way of collapsing: `left` loses (u,v) from W∖S, `right` loses (v′,u′) from W.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseOutcome {
    /// True if `left` is the first argument of `collapse`.
    pub first_is_left: bool,
    pub preimage: Preimage,
    pub result: ForbiddenPair,
}

/// Every distinct collapse of the two pairs.
pub fn collapse(p1: &ForbiddenPair, p2: &ForbiddenPair, monoid: &Monoid) -> Vec<CollapseOutcome> {
    collapse_with(&PreimageIndex::new(monoid), p1, p2)
}

pub fn collapse_with(index: &PreimageIndex, p1: &ForbiddenPair, p2: &ForbiddenPair) -> Vec<CollapseOutcome> {
    let mut out: Vec<CollapseOutcome> = Vec::new();
    for (first_is_left, left, right) in [(true, p1, p2), (false, p2, p1)] {
        for uv in left.weak_only() {
            for &(vu, preimage) in index.partners(uv) {
                if right.contains(vu) {
                    let result = collapse_result(left, uv, right, vu);
                    if !out.iter().any(|o| o.result == result) {
                        out.push(CollapseOutcome { first_is_left, preimage, result });
                    }
                }
            }
        }
    }
    out
}
