//! Propositional encoding of invariant rationalizability and a small
//! deterministic DPLL solver used as the reference decision procedure.

mod cnf;
mod dpll;
mod encode;

pub use cnf::{Cnf, Lit};
pub use dpll::{enumerate_models, solve, solve_with, Models, SatResult};
pub use encode::{encode_phi, Encoding, EncodingStats, VarTable};

use crate::monoid::Monoid;
use crate::order_pair::OrderPair;
use crate::preference::{Preference, PreferenceViolation};
use crate::relation::BitMatrix;
use crate::universe::Pair;
use crate::verdict::{Certificate, Refutation, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("extracted preference fails verification: {0}")]
    VerificationFailure(PreferenceViolation),
    #[error("instance is not rationalizable")]
    NotRationalizable,
}

/// Preference read off a model: weak part from the [x ≽ y] atoms, strict
/// part from the [x ≻ y] atoms.
pub fn extract_preference(vars: &VarTable, model: &[bool]) -> Preference {
    let n = vars.size();
    let mut weak = BitMatrix::new(n);
    let mut strict = BitMatrix::new(n);
    for x in 0..n {
        for y in 0..n {
            if model[vars.weak(x, y)] {
                weak.set(x, y);
            }
            if model[vars.strict(x, y)] {
                strict.set(x, y);
            }
        }
    }
    Preference { weak, strict }
}

pub fn decide(data: &OrderPair, monoid: &Monoid) -> Result<Verdict, OracleError> {
    let enc = encode_phi(data, monoid);
    match solve(&enc.cnf) {
        SatResult::Unsat => Ok(Verdict::NotRationalizable(Refutation::Unsatisfiable)),
        SatResult::Sat(model) => {
            let p = extract_preference(&enc.vars, &model);
            p.check(data, monoid).map_err(OracleError::VerificationFailure)?;
            Ok(Verdict::Rationalizable(Certificate::Witness(p)))
        }
    }
}

/// Whether every rationalization ranks x ≽ y (or x ≻ y when `strict`).
pub fn forced(data: &OrderPair, monoid: &Monoid, (x, y): Pair, strict: bool) -> Result<bool, OracleError> {
    let enc = encode_phi(data, monoid);
    if !solve(&enc.cnf).is_sat() {
        return Err(OracleError::NotRationalizable);
    }
    Ok(forced_in(&enc, (x, y), strict))
}

/// `forced` against a prepared encoding of a satisfiable instance.
pub fn forced_in(enc: &Encoding, (x, y): Pair, strict: bool) -> bool {
    let probe = if strict { Lit::pos(enc.vars.weak(y, x)) } else { Lit::pos(enc.vars.strict(y, x)) };
    !solve_with(&enc.cnf, &[probe]).is_sat()
}
