use num_bigint::BigUint;

use super::{CodecId, Conditioning, WitnessCode};
use crate::bits::{BitReader, BitWriter, BitsSlice};
use crate::error::{Error, Result};
use crate::repr::{Literal, Monomial};

/// `⌈t·log₂3⌉`, computed exactly as the bit length of `3ᵗ − 1`.
pub fn monomial_code_bits(t: usize) -> u64 {
    (BigUint::from(3u32).pow(t as u32) - 1u32).bits()
}

fn absent_vars(m: &Monomial) -> Vec<usize> {
    if m.is_contradiction() {
        return Vec::new();
    }
    (0..m.n()).filter(|&i| m.literal(i) == Literal::Absent).collect()
}

/// Encodes `m_prime` relative to `target`, one trit per variable absent from
/// `target` (absent, positive, negative), packed as a base-3 number of
/// `⌈t·log₂3⌉` bits. The otherwise unused value `3ᵗ` stands for the
/// contradictory all-literals monomial.
pub fn encode_monomial_given_target(m_prime: &Monomial, target: &Monomial) -> Result<WitnessCode> {
    if m_prime.n() != target.n() {
        return Err(Error::Precondition(format!(
            "monomials over different n ({} vs {})",
            m_prime.n(),
            target.n()
        )));
    }
    if !m_prime.contains_literals_of(target) {
        return Err(Error::Precondition("hypothesis does not contain every target literal".into()));
    }
    let free = absent_vars(target);
    let t = free.len();
    let width = monomial_code_bits(t);
    let value = if m_prime.is_contradiction() && !target.is_contradiction() {
        if t == 0 {
            return Err(Error::Precondition("no spare code value for the contradiction when t = 0".into()));
        }
        BigUint::from(3u32).pow(t as u32)
    } else {
        free.iter().fold(BigUint::from(0u32), |acc, &v| {
            let trit = match m_prime.literal(v) {
                Literal::Absent => 0u32,
                Literal::Positive => 1,
                Literal::Negative => 2,
                Literal::Both => unreachable!("contradiction handled above"),
            };
            acc * 3u32 + trit
        })
    };
    let mut w = BitWriter::new();
    write_biguint(&mut w, &value, width);
    Ok(WitnessCode {
        codec: CodecId::Monomial,
        bits: w.finish(),
        conditioning: Conditioning::Monomial { target: target.clone() },
    })
}

fn write_biguint(w: &mut BitWriter, value: &BigUint, width: u64) {
    for i in (0..width).rev() {
        w.bit(value.bit(i));
    }
}

pub fn decode_monomial(bits: &BitsSlice, target: &Monomial) -> Result<Monomial> {
    let free = absent_vars(target);
    let t = free.len();
    let width = monomial_code_bits(t);
    if bits.len() as u64 != width {
        return Err(Error::Malformed(format!("expected {width} bits, got {}", bits.len())));
    }
    let mut r = BitReader::new(bits);
    let mut value = BigUint::from(0u32);
    for _ in 0..width {
        value = (value << 1u32) + u32::from(r.bit()?);
    }
    let limit = BigUint::from(3u32).pow(t as u32);
    if value == limit {
        return Ok(Monomial::all_literals(target.n()));
    }
    if value > limit {
        return Err(Error::Malformed("trit code out of range".into()));
    }
    let mut lits = target.literals().to_vec();
    for &v in free.iter().rev() {
        let trit = (&value % 3u32).to_u32_digits().first().copied().unwrap_or(0);
        value /= 3u32;
        lits[v] = match trit {
            0 => Literal::Absent,
            1 => Literal::Positive,
            _ => Literal::Negative,
        };
    }
    Monomial::new(lits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn bit_widths() {
        assert_eq!(monomial_code_bits(0), 0);
        assert_eq!(monomial_code_bits(1), 2);
        assert_eq!(monomial_code_bits(2), 4);
        assert_eq!(monomial_code_bits(4), 7);
        assert_eq!(monomial_code_bits(8), 13);
    }

    #[test]
    fn examples() {
        let code = encode_monomial_given_target(&m("10-"), &m("1--")).unwrap();
        assert_eq!(code.len(), 4);
        assert_eq!(decode_monomial(&code.bits, &m("1--")).unwrap(), m("10-"));

        let same = encode_monomial_given_target(&m("1--"), &m("1--")).unwrap();
        assert_eq!(same.bit_string(), "0000");
    }

    #[test]
    fn contradiction_uses_spare_value() {
        let code = encode_monomial_given_target(&Monomial::all_literals(3), &m("1--")).unwrap();
        assert_eq!(code.bit_string(), "1001");
        assert_eq!(decode_monomial(&code.bits, &m("1--")).unwrap(), Monomial::all_literals(3));
        assert!(encode_monomial_given_target(&Monomial::all_literals(2), &m("10")).is_err());
    }

    #[test]
    fn containment_is_required() {
        assert!(matches!(encode_monomial_given_target(&m("0--"), &m("1--")), Err(Error::Precondition(_))));
        assert!(matches!(encode_monomial_given_target(&m("---"), &m("1--")), Err(Error::Precondition(_))));
    }

    #[test]
    fn out_of_range_value_is_malformed() {
        let bits = crate::bits::from_bit_string("1111").unwrap();
        assert!(matches!(decode_monomial(&bits, &m("1--")), Err(Error::Malformed(_))));
    }
}
