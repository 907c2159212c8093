//! Bit strings and the prefix-free integer code used by every codec.
//!
//! The integer code writes `i` as `1^{|bin(i)|} 0 bin(i)`: the length of the
//! binary expansion in unary, a separator, then the expansion itself. `bin(0)`
//! is the empty string, so `0` encodes as the single bit `0`.

use bitvec::prelude::*;

use crate::error::{Error, Result};

pub type Bits = BitVec<u8, Msb0>;
pub type BitsSlice = BitSlice<u8, Msb0>;

/// Number of significant bits in `i` (0 for 0).
pub fn bit_len(i: u64) -> u32 {
    64 - i.leading_zeros()
}

/// Length of the prefix-free code for `i`.
pub fn prefix_code_len(i: u64) -> u64 {
    2 * bit_len(i) as u64 + 1
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1, "ceil_log2 of zero");
    if x == 1 {
        0
    } else {
        bit_len(x - 1)
    }
}

pub fn zigzag(v: i64) -> u64 {
    ((v << 1) ^ (v >> 63)) as u64
}

pub fn unzigzag(u: u64) -> i64 {
    ((u >> 1) as i64) ^ -((u & 1) as i64)
}

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    bits: Bits,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&mut self, b: bool) {
        self.bits.push(b);
    }

    /// Writes the low `width` bits of `value`, most significant first.
    pub fn uint(&mut self, value: u64, width: u32) {
        debug_assert!(width == 64 || value >> width == 0, "{value} does not fit in {width} bits");
        for k in (0..width).rev() {
            self.bits.push((value >> k) & 1 == 1);
        }
    }

    pub fn prefix_free(&mut self, i: u64) {
        let len = bit_len(i);
        for _ in 0..len {
            self.bits.push(true);
        }
        self.bits.push(false);
        self.uint(i, len);
    }

    pub fn signed(&mut self, v: i64) {
        self.prefix_free(zigzag(v));
    }

    pub fn extend(&mut self, other: &BitsSlice) {
        self.bits.extend_from_bitslice(other);
    }

    pub fn finish(self) -> Bits {
        self.bits
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a BitsSlice,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a BitsSlice) -> Self {
        Self { bits, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn is_exhausted(&self) -> bool {
        self.pos == self.bits.len()
    }

    pub fn bit(&mut self) -> Result<bool> {
        let b = *self
            .bits
            .get(self.pos)
            .ok_or_else(|| Error::Malformed("unexpected end of bit string".into()))?;
        self.pos += 1;
        Ok(b)
    }

    pub fn uint(&mut self, width: u32) -> Result<u64> {
        if width > 64 {
            return Err(Error::Malformed(format!("integer field of {width} bits")));
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.bit()? as u64;
        }
        Ok(v)
    }

    pub fn prefix_free(&mut self) -> Result<u64> {
        let mut len = 0u32;
        while self.bit()? {
            len += 1;
            if len > 64 {
                return Err(Error::Malformed("prefix-free length exceeds 64 bits".into()));
            }
        }
        let v = self.uint(len)?;
        if len > 0 && v >> (len - 1) == 0 {
            return Err(Error::Malformed("non-canonical prefix-free integer".into()));
        }
        Ok(v)
    }

    pub fn signed(&mut self) -> Result<i64> {
        self.prefix_free().map(unzigzag)
    }

    pub fn slice(&mut self, len: usize) -> Result<&'a BitsSlice> {
        if self.remaining() < len {
            return Err(Error::Malformed("unexpected end of bit string".into()));
        }
        let s = &self.bits[self.pos..self.pos + len];
        self.pos += len;
        Ok(s)
    }

    /// Errors unless every bit was consumed.
    pub fn expect_end(&self) -> Result<()> {
        if self.is_exhausted() {
            Ok(())
        } else {
            Err(Error::Malformed(format!("{} trailing bits", self.remaining())))
        }
    }
}

/// Renders bits as a `0`/`1` string.
pub fn to_bit_string(bits: &BitsSlice) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

pub fn from_bit_string(s: &str) -> Result<Bits> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!("{other:?} is not a bit"))),
        })
        .collect()
}

/// Packs bits for storage: an 8-byte little-endian bit count, then the bits
/// most-significant-bit first with the final byte zero-padded.
pub fn pack(bits: &BitsSlice) -> Vec<u8> {
    let mut out = (bits.len() as u64).to_le_bytes().to_vec();
    let mut body = bits.to_bitvec();
    body.set_uninitialized(false);
    out.extend_from_slice(body.as_raw_slice());
    out
}

pub fn unpack(bytes: &[u8]) -> Result<Bits> {
    if bytes.len() < 8 {
        return Err(Error::Malformed("packed bit string shorter than its header".into()));
    }
    let len = u64::from_le_bytes(bytes[..8].try_into().unwrap()) as usize;
    let body = &bytes[8..];
    if body.len() != len.div_ceil(8) {
        return Err(Error::Malformed(format!(
            "header declares {len} bits but body holds {} bytes",
            body.len()
        )));
    }
    let mut bits = Bits::from_slice(body);
    bits.truncate(len);
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn code(i: u64) -> String {
        let mut w = BitWriter::new();
        w.prefix_free(i);
        to_bit_string(&w.finish())
    }

    #[test]
    fn prefix_code_matches_definition() {
        assert_eq!(code(5), "1110101");
        assert_eq!(code(0), "0");
        assert_eq!(code(1), "101");
        assert_eq!(code(2), "11010");
        assert_eq!(prefix_code_len(5), 7);
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(500), 9);
        assert_eq!(ceil_log2(2000), 11);
        assert_eq!(ceil_log2(3_000_000_000), 32);
        assert_eq!(ceil_log2(1 << 20), 20);
    }

    #[test]
    fn zigzag_small_values() {
        let mapped: Vec<u64> = [0, -1, 1, -2, 2].iter().map(|&v| zigzag(v)).collect();
        assert_eq!(mapped, vec![0, 1, 2, 3, 4]);
        for v in -100..100 {
            assert_eq!(unzigzag(zigzag(v)), v);
        }
    }

    #[test]
    fn pack_layout() {
        let bits = from_bit_string("1011").unwrap();
        let bytes = pack(&bits);
        assert_eq!(&bytes[..8], &4u64.to_le_bytes());
        assert_eq!(bytes[8], 0b1011_0000);
        assert_eq!(unpack(&bytes).unwrap(), bits);
        assert!(unpack(&bytes[..7]).is_err());
    }

    #[test]
    fn truncated_code_is_malformed() {
        let bits = from_bit_string("1110").unwrap();
        assert!(BitReader::new(&bits).prefix_free().is_err());
    }

    proptest! {
        #[test]
        fn concatenated_codes_decode_unambiguously(values in proptest::collection::vec(any::<u64>(), 0..40)) {
            let mut w = BitWriter::new();
            for &v in &values {
                w.prefix_free(v);
            }
            let expected: u64 = values.iter().map(|&v| prefix_code_len(v)).sum();
            let bits = w.finish();
            prop_assert_eq!(bits.len() as u64, expected);
            let mut r = BitReader::new(&bits);
            for &v in &values {
                prop_assert_eq!(r.prefix_free().unwrap(), v);
            }
            prop_assert!(r.is_exhausted());
        }

        #[test]
        fn pack_round_trip(raw in proptest::collection::vec(any::<bool>(), 0..200)) {
            let bits: Bits = raw.iter().copied().collect();
            prop_assert_eq!(unpack(&pack(&bits)).unwrap(), bits);
        }
    }
}
