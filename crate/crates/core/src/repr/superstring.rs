use std::collections::HashSet;
use std::fmt;

use super::{Representation, SystemId};
use crate::error::{Error, Result};
use crate::example::{Alphabet, Example};

/// A superstring standing for the set of its length-`n` substrings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperstringRep {
    text: Vec<u8>,
    window: usize,
    alphabet: Alphabet,
}

impl SuperstringRep {
    pub fn new(alphabet: Alphabet, text: impl Into<Vec<u8>>, window: usize) -> Result<Self> {
        let text = text.into();
        alphabet.check(&text)?;
        if window == 0 {
            return Err(Error::Representation("superstring window must be at least 1".into()));
        }
        Ok(Self { text, window, alphabet })
    }

    pub fn dna(text: impl Into<Vec<u8>>, window: usize) -> Result<Self> {
        Self::new(Alphabet::Dna, text, window)
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.text).expect("alphabets are ASCII")
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// The represented concept, materialized.
    pub fn windows(&self) -> HashSet<&[u8]> {
        self.text.windows(self.window).collect()
    }
}

impl Representation for SuperstringRep {
    fn system(&self) -> SystemId {
        SystemId::Superstring
    }

    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn example_len(&self) -> usize {
        self.window
    }

    /// Examples up to length `n` are in the domain; only length-`n` substrings are members.
    fn accepts_len(&self, len: usize) -> bool {
        (1..=self.window).contains(&len)
    }

    fn contains(&self, x: &Example) -> bool {
        x.len() == self.window && self.text.windows(self.window).any(|w| w == x.symbols())
    }

    fn length_bits(&self) -> u64 {
        self.text.len() as u64 * self.alphabet.bits_per_symbol() as u64
    }
}

impl fmt::Display for SuperstringRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for SuperstringRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Superstring(n={}, {:?})", self.window, self.as_str())
    }
}
