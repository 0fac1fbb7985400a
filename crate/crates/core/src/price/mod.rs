//! Revealed-preference tests on price and quantity data.

mod checks;
mod dataset;

pub use checks::{
    garp_check, homothetic_check, homothetic_problem, quasilinear_check, quasilinear_problem, translation_check,
    translation_problem, CycleProblem, PriceVerdict,
};
pub use dataset::{dot, parse_rational, q, revealed_pair, Observation, PriceDataset, PriceError, Q};
