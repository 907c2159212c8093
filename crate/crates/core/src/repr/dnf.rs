use std::fmt;

use super::{Monomial, Representation, SystemId};
use crate::bits::prefix_code_len;
use crate::error::{Error, Result};
use crate::example::{Alphabet, Example};

/// A disjunction of monomials; the empty disjunction is always false.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DnfFormula {
    n: usize,
    terms: Vec<Monomial>,
}

impl DnfFormula {
    pub fn new(n: usize, terms: Vec<Monomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Representation("DNF over zero variables".into()));
        }
        for t in &terms {
            if t.n() != n {
                return Err(Error::Representation(format!("term over {} variables in a DNF over {n}", t.n())));
            }
            if t.is_contradiction() {
                return Err(Error::Representation("contradictory DNF term".into()));
            }
        }
        Ok(Self { n, terms })
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest number of literals in a term (0 for the empty formula).
    pub fn width(&self) -> usize {
        self.terms.iter().map(Monomial::size).max().unwrap_or(0)
    }
}

impl Representation for DnfFormula {
    fn system(&self) -> SystemId {
        SystemId::Dnf
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Binary
    }

    fn example_len(&self) -> usize {
        self.n
    }

    fn contains(&self, x: &Example) -> bool {
        self.terms.iter().any(|t| t.contains(x))
    }

    /// Term count as a prefix-free integer, then two bits per variable per term.
    fn length_bits(&self) -> u64 {
        prefix_code_len(self.terms.len() as u64) + self.terms.len() as u64 * 2 * self.n as u64
    }
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("⊥");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| format!("({})", t.pretty())).collect();
        f.write_str(&parts.join(" ∨ "))
    }
}

impl fmt::Debug for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dnf[{self}]")
    }
}
