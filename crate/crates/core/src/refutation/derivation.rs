use crate::closure::DenseClosure;
use crate::monoid::Monoid;
use crate::order_pair::OrderPair;
use crate::universe::Universe;

use super::collapse::Preimage;
use super::cycles::{BrokenCycle, GapPolicy};
use super::forbidden::{collapse_result, ForbiddenPair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Axiom {
        cycle: BrokenCycle,
        result: ForbiddenPair,
    },
    /// `left` loses ω(x),ω(y) from W∖S; `right` loses ω′(y),ω′(x) from W.
    Collapse {
        left: usize,
        right: usize,
        preimage: Preimage,
        result: ForbiddenPair,
    },
}

impl Step {
    pub fn result(&self) -> &ForbiddenPair {
        match self {
            Step::Axiom { result, .. } | Step::Collapse { result, .. } => result,
        }
    }

    pub fn result_mut(&mut self) -> &mut ForbiddenPair {
        match self {
            Step::Axiom { result, .. } | Step::Collapse { result, .. } => result,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {index}: {reason}")]
pub struct InvalidStep {
    pub index: usize,
    pub reason: String,
}

impl Derivation {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn axioms(&self) -> impl Iterator<Item = &ForbiddenPair> {
        self.steps.iter().filter_map(|s| match s {
            Step::Axiom { result, .. } => Some(result),
            Step::Collapse { .. } => None,
        })
    }

    /// One line per step: id, kind, parents, cancelled pair, resulting ⟨W,S⟩.
    pub fn trace(&self, monoid: &Monoid, u: &Universe) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let line = match step {
                Step::Axiom { cycle, result } => format!(
                    "{i} axiom parents=- cancel=- result={} cycle={}",
                    result.display(u),
                    cycle.display(monoid, u)
                ),
                Step::Collapse { left, right, preimage, result } => {
                    let cancel = match preimage.images(monoid) {
                        Some((uv, vu)) => format!("{} / {}", u.fmt_pair(uv), u.fmt_pair(vu)),
                        None => "?".into(),
                    };
                    format!(
                        "{i} collapse parents={left},{right} cancel={cancel} preimage={} via {},{} result={}",
                        u.fmt_pair((preimage.x, preimage.y)),
                        monoid.get(preimage.omega).name(),
                        monoid.get(preimage.omega_prime).name(),
                        result.display(u)
                    )
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Re-validates every step from scratch; a refutation must end in ⟨∅,∅⟩.
pub fn check_derivation(d: &Derivation, data: &OrderPair, monoid: &Monoid) -> Result<(), InvalidStep> {
    let fail = |index: usize, reason: String| Err(InvalidStep { index, reason });
    if d.steps.is_empty() {
        return fail(0, "empty derivation".into());
    }
    let closure = DenseClosure::new(data, monoid.universe_len());
    for (i, step) in d.steps.iter().enumerate() {
        match step {
            Step::Axiom { cycle, result } => {
                if let Err(e) = cycle.validate(&closure, data, monoid, GapPolicy::Any) {
                    return fail(i, format!("invalid broken cycle: {e}"));
                }
                if result.w() != cycle.gap_set().as_slice() {
                    return fail(i, "W is not the gap set of the cycle".into());
                }
                if !cycle.strict && result.s().is_empty() {
                    return fail(i, "non-strict cycle with empty S".into());
                }
            }
            Step::Collapse { left, right, preimage, result } => {
                if *left >= i || *right >= i {
                    return fail(i, "parent does not precede the step".into());
                }
                let Some((uv, vu)) = preimage.images(monoid) else {
                    return fail(i, "pre-image outside a transform domain".into());
                };
                let (l, r) = (d.steps[*left].result(), d.steps[*right].result());
                if !l.contains(uv) || l.is_strict(uv) {
                    return fail(i, "cancelled pair is not in W∖S of the left parent".into());
                }
                if !r.contains(vu) {
                    return fail(i, "cancelled pair is not in W of the right parent".into());
                }
                if collapse_result(l, uv, r, vu) != *result {
                    return fail(i, "result differs from the collapse of its parents".into());
                }
            }
        }
    }
    let last = d.steps.len() - 1;
    if !d.steps[last].result().is_empty() {
        return fail(last, "derivation does not end in ⟨∅,∅⟩".into());
    }
    Ok(())
}
