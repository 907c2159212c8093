//! Sample-complexity bounds for Occam-style learning, with the machinery to
//! check them empirically.
//!
//! Kolmogorov complexity is uncomputable, so every conditional description
//! length here is the measured length of an explicit, decodable witness code
//! (see [`coding`]). Those lengths feed the sample-complexity calculators in
//! [`bounds`]; [`learners`] and [`reductions`] produce the hypotheses being
//! described, and [`harness`] runs the PAC experiments.

pub mod bits;
pub mod bounds;
pub mod coding;
pub mod distribution;
pub mod error;
pub mod example;
pub mod harness;
pub mod learners;
pub mod reductions;
pub mod repr;

pub use distribution::{stream_rng, FiniteDistribution, Oracle};
pub use error::{Error, ErrorCategory, Result};
pub use example::{Alphabet, Example, LabeledSample};
pub use repr::{
    is_consistent, symmetric_difference_error, DnfFormula, Gate, Literal, Monomial, Representation,
    SuperstringRep, SystemId, ThresholdCircuit,
};
