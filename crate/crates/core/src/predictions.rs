//! Comparisons shared by every invariant rationalization.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::monoid::Monoid;
use crate::order_pair::OrderPair;
use crate::refutation::{decide_general, saturate, Limits, SaturationResult};
use crate::sat::{self, SatResult};
use crate::universe::Pair;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// A singleton forbidden subrelation found by saturation.
    Collapse,
    /// An unsatisfiable SAT query.
    Sat,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Forced {
    pub weak: BTreeMap<Pair, Source>,
    pub strict: BTreeMap<Pair, Source>,
}

impl Forced {
    pub fn to_order_pair(&self) -> OrderPair {
        OrderPair::new(self.weak.keys().copied(), self.strict.keys().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PredictError {
    #[error("instance is not rationalizable")]
    NotRationalizable,
    #[error(transparent)]
    Oracle(#[from] sat::OracleError),
}

/// Forced comparisons over distinct alternatives.
pub fn forced_comparisons(data: &OrderPair, monoid: &Monoid, limits: &Limits) -> Result<Forced, PredictError> {
    match decide_general(data, monoid, limits) {
        Verdict::NotRationalizable(_) => return Err(PredictError::NotRationalizable),
        Verdict::Unknown(_) => {
            if sat::decide(data, monoid)?.as_bool() == Some(false) {
                return Err(PredictError::NotRationalizable);
            }
        }
        Verdict::Rationalizable(_) => {}
    }
    let mut out = Forced::default();
    let (clauses, complete) = match saturate(data, monoid, limits) {
        SaturationResult::Refuted(_) => return Err(PredictError::NotRationalizable),
        SaturationResult::Saturated(c) => (c, monoid.is_closed()),
        SaturationResult::Exhausted(c, _) => (c, false),
    };
    for c in &clauses {
        if let [(y, x)] = *c.w() {
            if x == y {
                continue;
            }
            out.weak.insert((x, y), Source::Collapse);
            if c.s().is_empty() {
                out.strict.insert((x, y), Source::Collapse);
            }
        }
    }
    if complete {
        return Ok(out);
    }
    let enc = sat::encode_phi(data, monoid);
    let SatResult::Sat(model) = sat::solve(&enc.cnf) else {
        return Err(PredictError::NotRationalizable);
    };
    let n = monoid.universe_len();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            // a pair can only be forced if this model already has it
            if !out.weak.contains_key(&(x, y)) && model[enc.vars.weak(x, y)] && sat::forced_in(&enc, (x, y), false) {
                out.weak.insert((x, y), Source::Sat);
            }
            if !out.strict.contains_key(&(x, y)) && model[enc.vars.strict(x, y)] && sat::forced_in(&enc, (x, y), true)
            {
                out.strict.insert((x, y), Source::Sat);
                out.weak.entry((x, y)).or_insert(Source::Sat);
            }
        }
    }
    Ok(out)
}
