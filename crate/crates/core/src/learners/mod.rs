//! Concrete learning algorithms and a brute-force consistent-hypothesis oracle.

mod bruteforce;
mod monomial;
mod superstring;

pub use bruteforce::{
    consistent_bruteforce, consistent_circuit, consistent_monomial, AnyRep, CircuitBruteForce, MonomialBruteForce,
    CIRCUIT_WORK_BUDGET,
};
pub use monomial::{haussler_monomial_learn, standard_monomial_learn, Haussler, StandardMonomial};
pub use superstring::{greedy_superstring, greedy_superstring_bytes};

use crate::error::Result;
use crate::example::{Alphabet, LabeledSample};
use crate::repr::{Representation, SystemId};

/// A deterministic PAC learner packaged with its declared sample complexity.
pub trait PacLearner: Send + Sync {
    type Rep: Representation + PartialEq;

    fn name(&self) -> &'static str;

    fn system(&self) -> SystemId;

    fn alphabet(&self) -> Alphabet {
        Alphabet::Binary
    }

    /// The real-valued `m(n, s, ε, δ)`; callers take the ceiling.
    fn sample_size(&self, n: usize, s: u64, epsilon: f64, delta: f64) -> f64;

    fn learn(&self, sample: &LabeledSample, n: usize) -> Result<Self::Rep>;

    /// True when the output depends only on the set of distinct labeled
    /// examples, not on their order or multiplicity.
    fn set_determined(&self) -> bool {
        false
    }
}

/// `(1/ε)·ln(|H|/δ)` with `|H| = 3ⁿ + 1`, evaluated in log space.
pub(crate) fn monomial_class_sample_size(n: usize, epsilon: f64, delta: f64) -> f64 {
    let ln_h = n as f64 * 3f64.ln() + (-(n as f64) * 3f64.ln()).exp().ln_1p();
    (ln_h - delta.ln()) / epsilon
}
