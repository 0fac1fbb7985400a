use crate::monoid::{Monoid, TransformId};
use crate::order_pair::OrderPair;
use crate::relation::BitMatrix;
use crate::universe::{Alt, Pair, Universe};

/// A complete preorder together with its strict part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preference {
    pub weak: BitMatrix,
    pub strict: BitMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PreferenceViolation {
    #[error("incomplete at {0:?}")]
    Incomplete(Pair),
    #[error("intransitive at {0}, {1}, {2}")]
    Intransitive(Alt, Alt, Alt),
    #[error("strict part is not the complement-converse at {0:?}")]
    Incoherent(Pair),
    #[error("does not extend observation {pair:?} (strict: {strict})")]
    MissesData { pair: Pair, strict: bool },
    #[error("not invariant under transform {transform} at {pair:?}")]
    NotInvariant { transform: TransformId, pair: Pair },
}

impl Preference {
    /// Strict part derived as x ≻ y iff x ≽ y and not y ≽ x.
    pub fn from_weak(weak: BitMatrix) -> Self {
        let n = weak.size();
        let mut strict = BitMatrix::new(n);
        for (x, y) in weak.pairs() {
            if !weak.get(y, x) {
                strict.set(x, y);
            }
        }
        Preference { weak, strict }
    }

    pub fn size(&self) -> usize {
        self.weak.size()
    }

    pub fn weakly_prefers(&self, x: Alt, y: Alt) -> bool {
        self.weak.get(x, y)
    }

    pub fn strictly_prefers(&self, x: Alt, y: Alt) -> bool {
        self.strict.get(x, y)
    }

    pub fn to_order_pair(&self) -> OrderPair {
        OrderPair::new(self.weak.pairs(), self.strict.pairs())
    }

    /// Completeness, transitivity, coherency, extension of the data, invariance.
    pub fn check(&self, data: &OrderPair, monoid: &Monoid) -> Result<(), PreferenceViolation> {
        let n = self.size();
        for x in 0..n {
            for y in x..n {
                if !self.weak.get(x, y) && !self.weak.get(y, x) {
                    return Err(PreferenceViolation::Incomplete((x, y)));
                }
            }
        }
        for x in 0..n {
            for y in self.weak.row_iter(x) {
                for z in self.weak.row_iter(y) {
                    if !self.weak.get(x, z) {
                        return Err(PreferenceViolation::Intransitive(x, y, z));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.strict.get(x, y) == self.weak.get(y, x) {
                    return Err(PreferenceViolation::Incoherent((x, y)));
                }
            }
        }
        for &(x, y) in &data.weak {
            if !self.weak.get(x, y) {
                return Err(PreferenceViolation::MissesData { pair: (x, y), strict: false });
            }
        }
        for &(x, y) in &data.strict {
            if !self.strict.get(x, y) {
                return Err(PreferenceViolation::MissesData { pair: (x, y), strict: true });
            }
        }
        for (id, w) in monoid.active() {
            let dom: Vec<(Alt, Alt)> = w.pairs().collect();
            for &(x, wx) in &dom {
                for &(y, wy) in &dom {
                    if self.weak.get(x, y) != self.weak.get(wx, wy)
                        || self.strict.get(x, y) != self.strict.get(wx, wy)
                    {
                        return Err(PreferenceViolation::NotInvariant { transform: id, pair: (x, y) });
                    }
                }
            }
        }
        Ok(())
    }

    /// Alternatives grouped into indifference classes, best first.
    pub fn ranking(&self) -> Vec<Vec<Alt>> {
        let n = self.size();
        let mut order: Vec<Alt> = (0..n).collect();
        let better = |x: Alt| (0..n).filter(|&y| self.strict.get(y, x)).count();
        order.sort_by_key(|&x| (better(x), x));
        let mut classes: Vec<Vec<Alt>> = Vec::new();
        for x in order {
            match classes.last_mut() {
                Some(c) if self.weak.get(c[0], x) && self.weak.get(x, c[0]) => c.push(x),
                _ => classes.push(vec![x]),
            }
        }
        classes
    }

    pub fn display(&self, u: &Universe) -> String {
        self.ranking()
            .iter()
            .map(|c| c.iter().map(|&x| u.label(x)).collect::<Vec<_>>().join(" ~ "))
            .collect::<Vec<_>>()
            .join(" ≻ ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_order_checks() {
        let weak = BitMatrix::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]);
        let p = Preference::from_weak(weak);
        let data = OrderPair::new([(0, 2)], [(0, 2)]);
        assert_eq!(p.check(&data, &Monoid::trivial(3)), Ok(()));
        assert_eq!(p.ranking(), vec![vec![0], vec![1], vec![2]]);
        let bad = OrderPair::new([(2, 0)], []);
        assert!(matches!(
            p.check(&bad, &Monoid::trivial(3)),
            Err(PreferenceViolation::MissesData { .. })
        ));
    }

    #[test]
    fn detects_incompleteness_and_intransitivity() {
        let p = Preference::from_weak(BitMatrix::from_pairs(2, [(0, 0), (1, 1)]));
        assert!(matches!(p.check(&OrderPair::empty(), &Monoid::trivial(2)), Err(PreferenceViolation::Incomplete(_))));
        let cyc = BitMatrix::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)]);
        let p = Preference::from_weak(cyc);
        assert!(matches!(p.check(&OrderPair::empty(), &Monoid::trivial(3)), Err(PreferenceViolation::Intransitive(..))));
    }
}
