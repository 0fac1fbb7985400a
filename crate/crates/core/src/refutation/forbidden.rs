use crate::order_pair::OrderPair;
use crate::universe::{Pair, Universe};

/// ⟨W, S⟩ read as the clause ⋁ ¬[x≽y] over W∖S  ∨  ⋁ ¬[x≻y] over S.
///
/// Both lists are sorted and duplicate-free, and S ⊆ W.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbiddenPair {
    w: Vec<Pair>,
    s: Vec<Pair>,
}

impl ForbiddenPair {
    /// Pairs listed in `s` are added to `w` if missing.
    pub fn new(w: impl IntoIterator<Item = Pair>, s: impl IntoIterator<Item = Pair>) -> Self {
        let mut s: Vec<Pair> = s.into_iter().collect();
        s.sort_unstable();
        s.dedup();
        let mut w: Vec<Pair> = w.into_iter().chain(s.iter().copied()).collect();
        w.sort_unstable();
        w.dedup();
        ForbiddenPair { w, s }
    }

    pub fn empty() -> Self {
        ForbiddenPair { w: Vec::new(), s: Vec::new() }
    }

    pub fn w(&self) -> &[Pair] {
        &self.w
    }

    pub fn s(&self) -> &[Pair] {
        &self.s
    }

    pub fn width(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn is_strict(&self, p: Pair) -> bool {
        self.s.binary_search(&p).is_ok()
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.w.binary_search(&p).is_ok()
    }

    /// W ∖ S.
    pub fn weak_only(&self) -> impl Iterator<Item = Pair> + '_ {
        self.w.iter().copied().filter(move |&p| !self.is_strict(p))
    }

    /// Literals as (pair, strict).
    pub fn literals(&self) -> impl Iterator<Item = (Pair, bool)> + '_ {
        self.w.iter().map(move |&p| (p, self.is_strict(p)))
    }

    /// W′∖S′ ⊆ W∖S and S′ ⊆ S.
    pub fn subsumes(&self, other: &ForbiddenPair) -> bool {
        self.width() <= other.width()
            && self.literals().all(|(p, strict)| other.contains(p) && other.is_strict(p) == strict)
    }

    pub fn to_order_pair(&self) -> OrderPair {
        OrderPair::new(self.w.iter().copied(), self.s.iter().copied())
    }

    /// Selection order: width first, then lexicographic.
    pub fn priority(&self) -> (usize, &[Pair], &[Pair]) {
        (self.w.len(), &self.w, &self.s)
    }

    pub fn display(&self, u: &Universe) -> String {
        let fmt = |v: &[Pair]| v.iter().map(|&p| u.fmt_pair(p)).collect::<Vec<_>>().join(", ");
        format!("⟨{{{}}}, {{{}}}⟩", fmt(&self.w), fmt(&self.s))
    }
}

/// W̃ = (W_i − a) ∪ (W_j − b),  S̃ = S_i ∪ (S_j − b).
pub fn collapse_result(left: &ForbiddenPair, a: Pair, right: &ForbiddenPair, b: Pair) -> ForbiddenPair {
    let w = left
        .w
        .iter()
        .copied()
        .filter(|&p| p != a)
        .chain(right.w.iter().copied().filter(|&p| p != b));
    let s = left.s.iter().copied().chain(right.s.iter().copied().filter(|&p| p != b));
    ForbiddenPair::new(w, s)
}

/// Every S allowed for a cycle with gap set `w`: all subsets if strict,
/// non-empty ones otherwise.
pub fn s_variants(w: &[Pair], strict: bool) -> Vec<ForbiddenPair> {
    let k = w.len();
    assert!(k < 32, "gap set too wide to enumerate");
    (0u32..1 << k)
        .filter(|&mask| strict || mask != 0)
        .map(|mask| {
            let s = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| w[i]);
            ForbiddenPair::new(w.iter().copied(), s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsumption_rule() {
        let c = ForbiddenPair::new([(0, 1), (1, 2)], [(1, 2)]);
        assert!(ForbiddenPair::new([(0, 1)], []).subsumes(&c));
        assert!(ForbiddenPair::new([(1, 2)], [(1, 2)]).subsumes(&c));
        assert!(!ForbiddenPair::new([(1, 2)], []).subsumes(&c));
        assert!(!ForbiddenPair::new([(0, 1)], [(0, 1)]).subsumes(&c));
        assert!(ForbiddenPair::empty().subsumes(&c));
        assert!(c.subsumes(&c));
    }

    #[test]
    fn mutually_exhaustive_pair_removed() {
        // x=0 y=1 x'=2 y'=3 x''=4 y''=5
        let p1 = ForbiddenPair::new([(0, 1), (2, 3)], [(2, 3)]);
        let p2 = ForbiddenPair::new([(1, 0), (4, 5)], [(1, 0)]);
        let r = collapse_result(&p1, (0, 1), &p2, (1, 0));
        assert_eq!(r, ForbiddenPair::new([(2, 3), (4, 5)], [(2, 3)]));
    }

    #[test]
    fn variant_counts() {
        assert_eq!(s_variants(&[(0, 1), (1, 2)], true).len(), 4);
        assert_eq!(s_variants(&[(0, 1), (1, 2)], false).len(), 3);
        assert_eq!(s_variants(&[(2, 0)], false), vec![ForbiddenPair::new([(2, 0)], [(2, 0)])]);
    }
}
