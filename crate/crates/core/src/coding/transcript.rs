use serde::{Deserialize, Serialize};

use super::{CodecId, Conditioning, WitnessCode};
use crate::bits::{prefix_code_len, BitReader, BitWriter, BitsSlice};
use crate::error::{Error, Result};
use crate::example::{Alphabet, Example};

/// Largest characteristic bitmap the set form will consider.
const MAX_BITMAP_BITS: u64 = 1 << 20;

/// How the lists are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TranscriptForm {
    /// Every list in order, with repetitions.
    Sequence,
    /// Each list as its set of distinct strings: sorted list or bitmap over Σⁿ,
    /// whichever is shorter. Only valid for set-determined learners.
    Set,
}

fn bitmap_bits(alphabet: Alphabet, n: usize) -> Option<u64> {
    alphabet.size().checked_pow(n as u32).filter(|&b| b <= MAX_BITMAP_BITS)
}

fn check_lists(lists: &[&[Example]], alphabet: Alphabet, n: usize) -> Result<bool> {
    let mut uniform = true;
    for x in lists.iter().flat_map(|l| l.iter()) {
        alphabet.check(x.symbols())?;
        if x.len() > n {
            return Err(Error::ExampleLength { len: x.len(), n });
        }
        uniform &= x.len() == n;
    }
    Ok(uniform)
}

fn string_bits(x: &Example, alphabet: Alphabet, uniform: bool) -> u64 {
    let len_code = if uniform { 0 } else { prefix_code_len(x.len() as u64) };
    len_code + x.len() as u64 * alphabet.bits_per_symbol() as u64
}

fn sorted_distinct(list: &[Example]) -> Vec<Example> {
    let mut v = list.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Exact code length of [`encode_transcript`], from the format definition.
pub fn transcript_bits(lists: &[&[Example]], alphabet: Alphabet, n: usize, form: TranscriptForm) -> Result<u64> {
    let uniform = check_lists(lists, alphabet, n)?;
    let seq_cost =
        |l: &[Example]| prefix_code_len(l.len() as u64) + l.iter().map(|x| string_bits(x, alphabet, uniform)).sum::<u64>();
    let mut total = 2;
    for l in lists {
        total += match form {
            TranscriptForm::Sequence => seq_cost(l),
            TranscriptForm::Set => {
                let listed = seq_cost(&sorted_distinct(l));
                1 + match bitmap_bits(alphabet, n).filter(|_| uniform) {
                    Some(b) => listed.min(b),
                    None => listed,
                }
            }
        };
    }
    Ok(total)
}

/// Encodes a sequence of example lists.
///
/// Two header bits give the form and whether every string has length exactly
/// `n`. In sequence form each list is a prefix-free count followed by its
/// strings (each preceded by a prefix-free length when lengths vary). In set
/// form each list is one flag bit and then either that layout for the sorted
/// distinct strings or a characteristic bitmap over Σⁿ.
pub fn encode_transcript(lists: &[&[Example]], alphabet: Alphabet, n: usize, form: TranscriptForm) -> Result<WitnessCode> {
    let uniform = check_lists(lists, alphabet, n)?;
    let mut w = BitWriter::new();
    w.bit(form == TranscriptForm::Set);
    w.bit(uniform);
    let write_seq = |w: &mut BitWriter, l: &[Example]| {
        w.prefix_free(l.len() as u64);
        for x in l {
            if !uniform {
                w.prefix_free(x.len() as u64);
            }
            for &c in x.symbols() {
                w.uint(alphabet.symbol_code(c), alphabet.bits_per_symbol());
            }
        }
    };
    for l in lists {
        match form {
            TranscriptForm::Sequence => write_seq(&mut w, l),
            TranscriptForm::Set => {
                let set = sorted_distinct(l);
                let listed = prefix_code_len(set.len() as u64)
                    + set.iter().map(|x| string_bits(x, alphabet, uniform)).sum::<u64>();
                match bitmap_bits(alphabet, n).filter(|&b| uniform && b < listed) {
                    Some(b) => {
                        w.bit(true);
                        let mut present = vec![false; b as usize];
                        for x in &set {
                            present[bitmap_index(x, alphabet) as usize] = true;
                        }
                        for p in present {
                            w.bit(p);
                        }
                    }
                    None => {
                        w.bit(false);
                        write_seq(&mut w, &set);
                    }
                }
            }
        }
    }
    Ok(WitnessCode {
        codec: CodecId::Transcript,
        bits: w.finish(),
        conditioning: Conditioning::Transcript { alphabet, n, lists: lists.len() },
    })
}

/// Sequence-form transcript of the examples fed to a learner and the exceptions found.
pub fn encode_examples_transcript(fed: &[Example], exceptions: &[Example], alphabet: Alphabet, n: usize) -> Result<WitnessCode> {
    encode_transcript(&[fed, exceptions], alphabet, n, TranscriptForm::Sequence)
}

fn bitmap_index(x: &Example, alphabet: Alphabet) -> u64 {
    x.symbols().iter().fold(0, |acc, &c| acc * alphabet.size() + alphabet.symbol_code(c))
}

fn bitmap_example(mut idx: u64, alphabet: Alphabet, n: usize) -> Result<Example> {
    let mut symbols = vec![0u8; n];
    for slot in symbols.iter_mut().rev() {
        *slot = alphabet.symbol_from_code(idx % alphabet.size())?;
        idx /= alphabet.size();
    }
    Example::new(symbols)
}

pub fn decode_transcript(bits: &BitsSlice, alphabet: Alphabet, n: usize, lists: usize) -> Result<Vec<Vec<Example>>> {
    let mut r = BitReader::new(bits);
    let set_form = r.bit()?;
    let uniform = r.bit()?;
    let read_seq = |r: &mut BitReader<'_>| -> Result<Vec<Example>> {
        let count = r.prefix_free()?;
        if count > r.remaining() as u64 {
            return Err(Error::Malformed(format!("list count {count} exceeds the remaining bits")));
        }
        let mut out = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let len = if uniform { n as u64 } else { r.prefix_free()? };
            if len == 0 || len > n as u64 {
                return Err(Error::Malformed(format!("string length {len} outside 1..={n}")));
            }
            let mut symbols = Vec::with_capacity(len as usize);
            for _ in 0..len {
                symbols.push(alphabet.symbol_from_code(r.uint(alphabet.bits_per_symbol())?)?);
            }
            out.push(Example::new(symbols)?);
        }
        Ok(out)
    };
    let mut out = Vec::with_capacity(lists);
    for _ in 0..lists {
        if !set_form {
            out.push(read_seq(&mut r)?);
            continue;
        }
        if r.bit()? {
            let b = bitmap_bits(alphabet, n)
                .filter(|_| uniform)
                .ok_or_else(|| Error::Malformed("bitmap list where none is allowed".into()))?;
            let mut list = Vec::new();
            for idx in 0..b {
                if r.bit()? {
                    list.push(bitmap_example(idx, alphabet, n)?);
                }
            }
            out.push(list);
        } else {
            out.push(read_seq(&mut r)?);
        }
    }
    r.expect_end()?;
    Ok(out)
}
