//! Representation systems: representations that map to concepts (sets of examples).

mod circuit;
mod dnf;
mod monomial;
mod superstring;

pub use circuit::{Gate, ThresholdCircuit};
pub use dnf::DnfFormula;
pub use monomial::{Literal, Monomial};
pub use superstring::SuperstringRep;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distribution::FiniteDistribution;
use crate::error::{Error, Result};
use crate::example::{Alphabet, Example};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemId {
    Monomial,
    Dnf,
    #[serde(rename = "threshold", alias = "threshold-circuit")]
    ThresholdCircuit,
    Superstring,
}

impl SystemId {
    pub fn name(self) -> &'static str {
        match self {
            SystemId::Monomial => "monomial",
            SystemId::Dnf => "dnf",
            SystemId::ThresholdCircuit => "threshold",
            SystemId::Superstring => "superstring",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A representation `r ∈ R` of some system, evaluatable as its concept `c(r)`.
pub trait Representation: Clone + fmt::Debug + Send + Sync {
    fn system(&self) -> SystemId;

    fn alphabet(&self) -> Alphabet;

    /// The example length `n` the representation is defined over.
    fn example_len(&self) -> usize;

    /// Membership test. Callers must have validated `x` (see [`Representation::evaluate`]).
    fn contains(&self, x: &Example) -> bool;

    /// Bit length of the system's canonical binary encoding.
    fn length_bits(&self) -> u64;

    /// Lengths of examples the system accepts. Boolean systems need exactly `n`.
    fn accepts_len(&self, len: usize) -> bool {
        len == self.example_len()
    }

    fn validate(&self, x: &Example) -> Result<()> {
        self.alphabet().check(x.symbols())?;
        if !self.accepts_len(x.len()) {
            return Err(Error::ExampleLength { len: x.len(), n: self.example_len() });
        }
        Ok(())
    }

    /// Checked membership: `true` iff `x ∈ c(self)`.
    fn evaluate(&self, x: &Example) -> Result<bool> {
        self.validate(x)?;
        Ok(self.contains(x))
    }
}

/// `D(c(r1) Δ c(r2))`, summed exactly over the support of `d`.
pub fn symmetric_difference_error<A, B>(r1: &A, r2: &B, d: &FiniteDistribution) -> Result<f64>
where
    A: Representation,
    B: Representation,
{
    if r1.system() != r2.system() {
        return Err(Error::MixedSystems(r1.system().name(), r2.system().name()));
    }
    if r1.example_len() != r2.example_len() {
        return Err(Error::Representation(format!(
            "example lengths differ ({} vs {})",
            r1.example_len(),
            r2.example_len()
        )));
    }
    let mut err = 0.0;
    for (x, p) in d.iter() {
        if r1.evaluate(x)? != r2.evaluate(x)? {
            err += p;
        }
    }
    Ok(err)
}

/// Errors unless `rep` agrees with every labeled item.
pub fn is_consistent<R: Representation>(rep: &R, sample: &crate::example::LabeledSample) -> Result<bool> {
    for (x, l) in sample.items() {
        if rep.evaluate(x)? != *l {
            return Ok(false);
        }
    }
    Ok(true)
}
