use std::collections::BTreeSet;

use crate::error::CoreError;
use crate::universe::{Pair, Universe};

/// ⟨W, S⟩: a weak and a strict relation, normally with S ⊆ W.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderPair {
    pub weak: BTreeSet<Pair>,
    pub strict: BTreeSet<Pair>,
}

/// What `normalize_data` had to add.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepairReport {
    pub added_reflexive: usize,
    pub added_strict_to_weak: Vec<Pair>,
}

impl OrderPair {
    pub fn new(
        weak: impl IntoIterator<Item = Pair>,
        strict: impl IntoIterator<Item = Pair>,
    ) -> Self {
        OrderPair { weak: weak.into_iter().collect(), strict: strict.into_iter().collect() }
    }

    pub fn empty() -> Self {
        OrderPair::default()
    }

    pub fn is_empty(&self) -> bool {
        self.weak.is_empty() && self.strict.is_empty()
    }

    pub fn is_order_pair(&self) -> bool {
        self.strict.is_subset(&self.weak)
    }

    pub fn is_reflexive(&self, n: usize) -> bool {
        (0..n).all(|x| self.weak.contains(&(x, x)))
    }

    pub fn is_subpair(&self, other: &OrderPair) -> bool {
        self.weak.is_subset(&other.weak) && self.strict.is_subset(&other.strict)
    }

    pub fn max_id(&self) -> Option<usize> {
        self.weak.iter().chain(&self.strict).map(|&(x, y)| x.max(y)).max()
    }

    pub fn display(&self, u: &Universe) -> String {
        let fmt = |s: &BTreeSet<Pair>| {
            s.iter().map(|&p| u.fmt_pair(p)).collect::<Vec<_>>().join(", ")
        };
        format!("⟨{{{}}}, {{{}}}⟩", fmt(&self.weak), fmt(&self.strict))
    }
}

/// Adds the diagonal to `weak` and copies `strict` into `weak`.
pub fn normalize_data(raw: &OrderPair, universe: &Universe) -> Result<(OrderPair, RepairReport), CoreError> {
    for &(x, y) in raw.weak.iter().chain(&raw.strict) {
        universe.check(x)?;
        universe.check(y)?;
    }
    let mut out = raw.clone();
    let mut report = RepairReport::default();
    for x in 0..universe.len() {
        if out.weak.insert((x, x)) {
            report.added_reflexive += 1;
        }
    }
    for &p in &raw.strict {
        if out.weak.insert(p) {
            report.added_strict_to_weak.push(p);
        }
    }
    Ok((out, report))
}
