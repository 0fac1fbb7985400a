use crate::closure::CycleWitness;
use crate::preference::Preference;
use crate::refutation::Derivation;

#[derive(Debug, Clone)]
pub enum Verdict {
    Rationalizable(Certificate),
    NotRationalizable(Refutation),
    Unknown(String),
}

/// Why an instance was judged rationalizable.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// Commutative total family with an acyclic M-closure.
    AcyclicClosure,
    /// Collapse saturation reached a fixpoint without deriving ⟨∅,∅⟩.
    Saturated,
    /// An explicit invariant rationalization, verified property by property.
    Witness(Preference),
}

#[derive(Debug, Clone)]
pub enum Refutation {
    Cycle(CycleWitness),
    Derivation(Derivation),
    /// The clause system has no model.
    Unsatisfiable,
}

impl Verdict {
    /// `Some(true)` for rationalizable, `Some(false)` for not, `None` for unknown.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Rationalizable(_) => Some(true),
            Verdict::NotRationalizable(_) => Some(false),
            Verdict::Unknown(_) => None,
        }
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Rationalizable(_) => "rationalizable",
            Verdict::NotRationalizable(_) => "not rationalizable",
            Verdict::Unknown(_) => "unknown",
        }
    }
}
