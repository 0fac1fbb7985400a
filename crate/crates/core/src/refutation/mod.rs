//! Broken cycles, forbidden subrelations, collapse, and saturation.

mod axioms;
mod collapse;
mod cycles;
mod derivation;
mod extend;
mod forbidden;
mod saturate;

pub use axioms::{AxiomGenerator, MAX_AXIOM_UNIVERSE};
pub use collapse::{collapse, collapse_with, CollapseOutcome, Preimage, PreimageIndex};
pub use cycles::{
    enumerate_broken_cycles, forbidden_subrelations, BrokenCycle, BrokenCycleSet, CycleError, ForbiddenSubrelation,
    GapLink, GapPolicy, Provenance,
};
pub use derivation::{check_derivation, Derivation, InvalidStep, Step};
pub use extend::{extend_to_preference, Extension};
pub use forbidden::{collapse_result, s_variants, ForbiddenPair};
pub use saturate::{saturate, saturate_with, SaturationResult};

use crate::monoid::Monoid;
use crate::order_pair::OrderPair;
use crate::verdict::{Certificate, Refutation, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest broken cycle enumerated explicitly; `None` means |X|².
    pub max_links: Option<usize>,
    pub max_clauses: usize,
    pub max_width: usize,
    /// Node budget of the rationalization search.
    pub search_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_links: None, max_clauses: 50_000, max_width: 4, search_nodes: 200_000 }
    }
}

impl Limits {
    pub fn links_for(&self, n: usize) -> usize {
        self.max_links.unwrap_or(n * n)
    }
}

/// Decision for arbitrary (partial, non-commuting) families.
///
/// Rationalizable is reported only with a verified preference or a complete
/// saturation; NotRationalizable only with a checked collapse derivation.
pub fn decide_general(data: &OrderPair, monoid: &Monoid, limits: &Limits) -> Verdict {
    let search = extend_to_preference(data, monoid, limits.search_nodes);
    if let Extension::Found(p) = search {
        return if monoid.is_closed() {
            Verdict::Rationalizable(Certificate::Witness(p))
        } else {
            Verdict::Unknown("monoid truncated; rationalization checked against enumerated transforms only".into())
        };
    }
    match saturate(data, monoid, limits) {
        SaturationResult::Refuted(d) => Verdict::NotRationalizable(Refutation::Derivation(d)),
        SaturationResult::Saturated(_) if matches!(search, Extension::Budget) => {
            Verdict::Rationalizable(Certificate::Saturated)
        }
        SaturationResult::Saturated(_) => {
            Verdict::Unknown("saturation completed but the exhaustive search found no rationalization".into())
        }
        SaturationResult::Exhausted(_, why) => {
            let extra = match search {
                Extension::Impossible => "; exhaustive search found no rationalization",
                _ => "",
            };
            Verdict::Unknown(format!("{why}{extra}; consult the SAT oracle"))
        }
    }
}
