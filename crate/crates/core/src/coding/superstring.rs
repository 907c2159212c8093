use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{CodecId, Conditioning, WitnessCode};
use crate::bits::{ceil_log2, BitReader, BitWriter, BitsSlice};
use crate::error::{Error, Result};
use crate::repr::{Representation, SuperstringRep};

/// Bits per group: two positions in `t` and one merge offset.
pub fn superstring_group_bits(s: u64, n: u64) -> u64 {
    2 * ceil_log2(s) as u64 + ceil_log2(n) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuperstringCodeStats {
    /// Group count; 0 when the literal fallback was used.
    pub groups: u64,
    pub literal: bool,
    pub per_group_bits: u64,
    /// `g·(2⌈log₂s⌉ + ⌈log₂n⌉) + 1` for the measured `g`.
    pub formula_bits: u64,
    /// `⌈2|t′|/n⌉`.
    pub group_limit: u64,
}

/// Encodes `t_prime` given the target `t` and the length-`n` examples both contain.
///
/// Occurrences of examples in `t_prime` are scanned left to right. A group
/// starts at the leftmost unassigned occurrence and takes every occurrence that
/// overlaps it; it is sent as the positions in `t` of its first and last
/// strings plus their offset. The decoder rebuilds each group and joins
/// neighbours by maximum overlap. When that does not reproduce `t_prime`, the
/// code falls back to a flag bit followed by `t_prime` spelled out literally.
pub fn encode_superstring_given_target<S: AsRef<[u8]>>(
    t_prime: &SuperstringRep,
    t: &SuperstringRep,
    examples: &[S],
) -> Result<(WitnessCode, SuperstringCodeStats)> {
    let n = t.window();
    if t_prime.window() != n || t_prime.alphabet() != t.alphabet() {
        return Err(Error::Precondition("hypothesis and target disagree on window or alphabet".into()));
    }
    let mut set: HashSet<&[u8]> = HashSet::with_capacity(examples.len());
    for e in examples {
        let e = e.as_ref();
        if e.len() != n {
            return Err(Error::Precondition(format!("example of length {} with window {n}", e.len())));
        }
        set.insert(e);
    }
    let mut in_t: HashMap<&[u8], usize> = HashMap::with_capacity(set.len());
    for (p, w) in t.text().windows(n).enumerate() {
        if set.contains(w) {
            in_t.entry(w).or_insert(p);
        }
    }
    if let Some(missing) = set.iter().find(|e| !in_t.contains_key(*e)) {
        return Err(Error::Precondition(format!(
            "example {:?} is not a substring of the target",
            String::from_utf8_lossy(missing)
        )));
    }
    let tp = t_prime.text();
    let occurrences: Vec<usize> =
        tp.windows(n).enumerate().filter(|(_, w)| set.contains(w)).map(|(p, _)| p).collect();
    if occurrences.is_empty() || tp.windows(n).filter(|w| set.contains(w)).collect::<HashSet<_>>().len() != set.len() {
        return Err(Error::Precondition("an example is not a substring of the hypothesis".into()));
    }

    let s = t.len() as u64;
    let per = superstring_group_bits(s, n as u64);
    let pos_width = ceil_log2(s);
    let off_width = ceil_log2(n as u64);
    let mut w = BitWriter::new();
    w.bit(false);
    let mut groups = 0u64;
    let mut i = 0;
    while i < occurrences.len() {
        let lead = occurrences[i];
        let mut j = i;
        while j + 1 < occurrences.len() && occurrences[j + 1] < lead + n {
            j += 1;
        }
        let last = occurrences[j];
        w.uint(in_t[&tp[lead..lead + n]] as u64, pos_width);
        w.uint(in_t[&tp[last..last + n]] as u64, pos_width);
        w.uint((last - lead) as u64, off_width);
        groups += 1;
        i = j + 1;
    }
    let group_limit = (2 * tp.len() as u64).div_ceil(n as u64);
    let conditioning = Conditioning::Superstring { target: t.clone() };
    let bits = w.finish();
    if decode_superstring(&bits, t).ok().as_ref() == Some(t_prime) {
        let stats = SuperstringCodeStats { groups, literal: false, per_group_bits: per, formula_bits: groups * per + 1, group_limit };
        return Ok((WitnessCode { codec: CodecId::Superstring, bits, conditioning }, stats));
    }

    let alphabet = t.alphabet();
    let mut w = BitWriter::new();
    w.bit(true);
    for &c in tp {
        w.uint(alphabet.symbol_code(c), alphabet.bits_per_symbol());
    }
    let stats = SuperstringCodeStats { groups: 0, literal: true, per_group_bits: per, formula_bits: 1 + alphabet.bits_per_symbol() as u64 * tp.len() as u64, group_limit };
    Ok((WitnessCode { codec: CodecId::Superstring, bits: w.finish(), conditioning }, stats))
}

pub fn decode_superstring(bits: &BitsSlice, t: &SuperstringRep) -> Result<SuperstringRep> {
    let n = t.window();
    let alphabet = t.alphabet();
    let mut r = BitReader::new(bits);
    if r.bit()? {
        let bps = alphabet.bits_per_symbol() as usize;
        if !r.remaining().is_multiple_of(bps) {
            return Err(Error::Malformed("literal payload is not a whole number of symbols".into()));
        }
        let mut text = Vec::with_capacity(r.remaining() / bps);
        while !r.is_exhausted() {
            text.push(alphabet.symbol_from_code(r.uint(bps as u32)?)?);
        }
        return SuperstringRep::new(alphabet, text, n).map_err(|e| Error::Malformed(e.to_string()));
    }
    if t.len() < n {
        return Err(Error::Malformed("target shorter than its window".into()));
    }
    let s = t.len() as u64;
    let per = superstring_group_bits(s, n as u64) as usize;
    let groups = if per == 0 {
        1
    } else {
        if r.remaining() == 0 || !r.remaining().is_multiple_of(per) {
            return Err(Error::Malformed(format!("{} group bits is not a multiple of {per}", r.remaining())));
        }
        r.remaining() / per
    };
    let pos_width = ceil_log2(s);
    let off_width = ceil_log2(n as u64);
    let tt = t.text();
    let mut text: Vec<u8> = Vec::new();
    for _ in 0..groups {
        let a = r.uint(pos_width)? as usize;
        let b = r.uint(pos_width)? as usize;
        let d = r.uint(off_width)? as usize;
        if a + n > tt.len() || b + n > tt.len() || d >= n {
            return Err(Error::Malformed("group field out of range".into()));
        }
        let mut g = tt[a..a + n].to_vec();
        g.extend_from_slice(&tt[b + n - d..b + n]);
        let k = (1..n.min(text.len() + 1).min(g.len()))
            .rev()
            .find(|&k| text.ends_with(&g[..k]))
            .unwrap_or(0);
        text.extend_from_slice(&g[k..]);
    }
    r.expect_end()?;
    SuperstringRep::new(alphabet, text, n).map_err(|e| Error::Malformed(e.to_string()))
}
