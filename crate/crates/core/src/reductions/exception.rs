use std::collections::BTreeSet;
use std::fmt;

use crate::bits::prefix_code_len;
use crate::error::Result;
use crate::example::{Alphabet, Example};
use crate::repr::{Representation, SystemId};

/// A base representation with a set of flipped examples:
/// `c = c(base) Δ exceptions`.
///
/// Its code is the base's code followed, per exception, by a `1` bit, the
/// prefix-free example length and the symbols, and a final `0` bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExceptionWrapped<R> {
    base: R,
    exceptions: BTreeSet<Example>,
}

/// Bits added per exception of length `n`.
pub fn exception_increment(alphabet: Alphabet, n: usize) -> u64 {
    1 + prefix_code_len(n as u64) + n as u64 * alphabet.bits_per_symbol() as u64
}

impl<R: Representation> ExceptionWrapped<R> {
    pub fn new(base: R) -> Self {
        Self { base, exceptions: BTreeSet::new() }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn exceptions(&self) -> &BTreeSet<Example> {
        &self.exceptions
    }

    pub fn into_parts(self) -> (R, BTreeSet<Example>) {
        (self.base, self.exceptions)
    }
}

/// `base ^ {x, y, …}`, or just `base` without exceptions.
impl<R: fmt::Display> fmt::Display for ExceptionWrapped<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if !self.exceptions.is_empty() {
            let list: Vec<&str> = self.exceptions.iter().map(|x| x.as_str()).collect();
            write!(f, " ^ {{{}}}", list.join(", "))?;
        }
        Ok(())
    }
}

/// Flips the membership of `x`.
pub fn exception_handle<R: Representation>(mut rep: ExceptionWrapped<R>, x: &Example) -> Result<ExceptionWrapped<R>> {
    rep.base.validate(x)?;
    if !rep.exceptions.remove(x) {
        rep.exceptions.insert(x.clone());
    }
    Ok(rep)
}

impl<R: Representation> Representation for ExceptionWrapped<R> {
    fn system(&self) -> SystemId {
        self.base.system()
    }

    fn alphabet(&self) -> Alphabet {
        self.base.alphabet()
    }

    fn example_len(&self) -> usize {
        self.base.example_len()
    }

    fn accepts_len(&self, len: usize) -> bool {
        self.base.accepts_len(len)
    }

    fn contains(&self, x: &Example) -> bool {
        self.base.contains(x) != self.exceptions.contains(x)
    }

    fn length_bits(&self) -> u64 {
        let a = self.alphabet();
        self.base.length_bits()
            + self.exceptions.iter().map(|x| exception_increment(a, x.len())).sum::<u64>()
            + 1
    }
}
