//! Rationalizability of observed choice data by preferences invariant under a
//! family of partial transformations.

pub mod catalog;
pub mod closure;
pub mod error;
pub mod instance;
pub mod monoid;
pub mod order_pair;
pub mod predictions;
pub mod preference;
pub mod price;
pub mod random;
pub mod refutation;
pub mod relation;
pub mod sat;
pub mod transform;
pub mod universe;
pub mod verdict;

pub use closure::{decide_commutative, find_cycle, m_closure, transitive_closure, CycleWitness, NotApplicable};
pub use error::CoreError;
pub use instance::{Instance, InstanceError};
pub use monoid::{Monoid, DEFAULT_MONOID_CAP};
pub use order_pair::{normalize_data, OrderPair, RepairReport};
pub use predictions::{forced_comparisons, Forced, PredictError, Source};
pub use preference::Preference;
pub use refutation::{check_derivation, decide_general, saturate, Derivation, ForbiddenPair, Limits};
pub use transform::PartialTransform;
pub use universe::{Alt, Pair, Universe};
pub use verdict::{Certificate, Refutation, Verdict};
