//! Witness codecs: decodable bit strings whose lengths stand in for
//! conditional Kolmogorov complexity.
//!
//! Every codec's constant overhead is explicit header bits counted in the
//! code length.

mod monomial;
mod superstring;
mod transcript;

pub use monomial::{decode_monomial, encode_monomial_given_target, monomial_code_bits};
pub use superstring::{
    decode_superstring, encode_superstring_given_target, superstring_group_bits, SuperstringCodeStats,
};
pub use transcript::{
    decode_transcript, encode_examples_transcript, encode_transcript, transcript_bits, TranscriptForm,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{to_bit_string, Bits};
use crate::error::{Error, Result};
use crate::example::{Alphabet, Example};
use crate::repr::{Monomial, SuperstringRep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodecId {
    Monomial,
    Superstring,
    Transcript,
}

impl CodecId {
    pub fn name(self) -> &'static str {
        match self {
            CodecId::Monomial => "monomial",
            CodecId::Superstring => "superstring",
            CodecId::Transcript => "transcript",
        }
    }
}

impl fmt::Display for CodecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Side information handed to the decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conditioning {
    /// The target monomial `M` (fixes `n`).
    Monomial { target: Monomial },
    /// The target superstring `t`; its window is `n` and its length is `s`.
    Superstring { target: SuperstringRep },
    /// Alphabet, example length and the number of encoded lists.
    Transcript { alphabet: Alphabet, n: usize, lists: usize },
}

impl Conditioning {
    fn codec(&self) -> CodecId {
        match self {
            Conditioning::Monomial { .. } => CodecId::Monomial,
            Conditioning::Superstring { .. } => CodecId::Superstring,
            Conditioning::Transcript { .. } => CodecId::Transcript,
        }
    }
}

/// An encoded object together with what its decoder is conditioned on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCode {
    pub codec: CodecId,
    pub bits: Bits,
    pub conditioning: Conditioning,
}

impl WitnessCode {
    pub fn len(&self) -> u64 {
        self.bits.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit_string(&self) -> String {
        to_bit_string(&self.bits)
    }
}

/// What a witness code decodes to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Monomial(Monomial),
    Superstring(SuperstringRep),
    Transcript(Vec<Vec<Example>>),
}

/// Decodes `code` given `conditioning`, which must match what the encoder declared.
pub fn decode(code: &WitnessCode, conditioning: &Conditioning) -> Result<Decoded> {
    if code.conditioning.codec() != code.codec {
        return Err(Error::ConditioningMismatch(code.codec.name()));
    }
    if conditioning != &code.conditioning {
        return Err(Error::ConditioningMismatch(code.codec.name()));
    }
    match conditioning {
        Conditioning::Monomial { target } => decode_monomial(&code.bits, target).map(Decoded::Monomial),
        Conditioning::Superstring { target } => decode_superstring(&code.bits, target).map(Decoded::Superstring),
        Conditioning::Transcript { alphabet, n, lists } => {
            decode_transcript(&code.bits, *alphabet, *n, *lists).map(Decoded::Transcript)
        }
    }
}
