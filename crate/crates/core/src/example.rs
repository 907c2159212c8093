//! Examples, labeled samples, and their text formats.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The symbol set Σ of a representation system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    /// `{0,1}`; symbol `i` of an example is the truth value of variable `i+1`.
    Binary,
    /// `{A,C,G,T}`.
    Dna,
    /// Any printable, non-whitespace byte.
    Text,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Binary => "binary",
            Alphabet::Dna => "DNA",
            Alphabet::Text => "text",
        }
    }

    pub fn bits_per_symbol(self) -> u32 {
        match self {
            Alphabet::Binary => 1,
            Alphabet::Dna => 2,
            Alphabet::Text => 8,
        }
    }

    /// Number of symbols; `Text` counts all byte values.
    pub fn size(self) -> u64 {
        1 << self.bits_per_symbol()
    }

    pub fn contains(self, symbol: u8) -> bool {
        match self {
            Alphabet::Binary => matches!(symbol, b'0' | b'1'),
            Alphabet::Dna => matches!(symbol, b'A' | b'C' | b'G' | b'T'),
            Alphabet::Text => symbol.is_ascii_graphic(),
        }
    }

    pub fn check(self, symbols: &[u8]) -> Result<()> {
        match symbols.iter().find(|&&c| !self.contains(c)) {
            Some(&c) => Err(Error::Alphabet { symbol: c as char, alphabet: self.name() }),
            None => Ok(()),
        }
    }

    /// Dense code of a symbol, in `0..size()`.
    pub fn symbol_code(self, symbol: u8) -> u64 {
        match self {
            Alphabet::Binary => (symbol - b'0') as u64,
            Alphabet::Dna => match symbol {
                b'A' => 0,
                b'C' => 1,
                b'G' => 2,
                _ => 3,
            },
            Alphabet::Text => symbol as u64,
        }
    }

    pub fn symbol_from_code(self, code: u64) -> Result<u8> {
        let symbol = match self {
            Alphabet::Binary => b'0' + code as u8,
            Alphabet::Dna => b"ACGT"[code as usize & 3],
            Alphabet::Text => code as u8,
        };
        if code < self.size() && self.contains(symbol) {
            Ok(symbol)
        } else {
            Err(Error::Malformed(format!("symbol code {code} outside the {} alphabet", self.name())))
        }
    }
}

/// A nonempty string over some alphabet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Example(Box<[u8]>);

impl Example {
    pub fn new(symbols: impl Into<Vec<u8>>) -> Result<Self> {
        let symbols = symbols.into();
        if symbols.is_empty() {
            return Err(Error::EmptyExample);
        }
        if let Some(&c) = symbols.iter().find(|c| !c.is_ascii_graphic()) {
            return Err(Error::Alphabet { symbol: c as char, alphabet: Alphabet::Text.name() });
        }
        Ok(Example(symbols.into_boxed_slice()))
    }

    /// Builds an example and checks it against `alphabet`.
    pub fn over(alphabet: Alphabet, symbols: impl Into<Vec<u8>>) -> Result<Self> {
        let e = Self::new(symbols)?;
        alphabet.check(&e.0)?;
        Ok(e)
    }

    /// Binary example from its truth assignment.
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Result<Self> {
        Self::new(bits.into_iter().map(|b| if b { b'1' } else { b'0' }).collect::<Vec<_>>())
    }

    /// The `n`-bit binary example whose variable `i+1` is bit `i` of `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        debug_assert!((1..=64).contains(&n));
        Example((0..n).map(|i| if mask >> i & 1 == 1 { b'1' } else { b'0' }).collect())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Truth value of variable `i` (0-based) of a binary example.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        self.0[i] == b'1'
    }

    /// Inverse of [`Example::from_mask`].
    pub fn mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| acc | ((c == b'1') as u64) << i)
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("examples are ASCII")
    }
}

impl fmt::Debug for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl TryFrom<String> for Example {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Example::new(s.into_bytes())
    }
}

impl TryFrom<&str> for Example {
    type Error = Error;
    fn try_from(s: &str) -> Result<Self> {
        Example::new(s.as_bytes())
    }
}

impl From<Example> for String {
    fn from(e: Example) -> String {
        e.as_str().to_owned()
    }
}

/// All `2^n` binary examples in mask order.
pub fn binary_cube(n: usize) -> impl Iterator<Item = Example> {
    assert!((1..31).contains(&n), "cube enumeration needs 1 ≤ n < 31");
    (0..1u64 << n).map(move |m| Example::from_mask(m, n))
}

/// A finite sequence of labeled examples with no conflicting labels.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Example, bool)>", into = "Vec<(Example, bool)>")]
pub struct LabeledSample {
    items: Vec<(Example, bool)>,
    distinct: usize,
}

impl LabeledSample {
    pub fn new(items: Vec<(Example, bool)>) -> Result<Self> {
        let mut seen: HashMap<&Example, bool> = HashMap::with_capacity(items.len());
        for (x, label) in &items {
            if let Some(prev) = seen.insert(x, *label) {
                if prev != *label {
                    return Err(Error::ConflictingLabels(x.to_string()));
                }
            }
        }
        let distinct = seen.len();
        Ok(Self { items, distinct })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn items(&self) -> &[(Example, bool)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn distinct_count(&self) -> usize {
        self.distinct
    }

    pub fn positives(&self) -> impl Iterator<Item = &Example> {
        self.items.iter().filter(|(_, l)| *l).map(|(x, _)| x)
    }

    pub fn negatives(&self) -> impl Iterator<Item = &Example> {
        self.items.iter().filter(|(_, l)| !*l).map(|(x, _)| x)
    }

    /// Distinct examples with their labels and multiplicities, in first-occurrence order.
    pub fn distinct_items(&self) -> Vec<(Example, bool, usize)> {
        let mut index: HashMap<&Example, usize> = HashMap::new();
        let mut out: Vec<(Example, bool, usize)> = Vec::new();
        for (x, l) in &self.items {
            match index.get(x) {
                Some(&i) => out[i].2 += 1,
                None => {
                    index.insert(x, out.len());
                    out.push((x.clone(), *l, 1));
                }
            }
        }
        out
    }

    /// Label lookup for examples that occur in the sample.
    pub fn label_map(&self) -> HashMap<Example, bool> {
        self.items.iter().cloned().collect()
    }

    /// Checks every example against an alphabet and an exact length.
    pub fn check(&self, alphabet: Alphabet, n: usize) -> Result<()> {
        for (x, _) in &self.items {
            alphabet.check(x.symbols())?;
            if x.len() != n {
                return Err(Error::ExampleLength { len: x.len(), n });
            }
        }
        Ok(())
    }

    /// Length shared by every example, if any.
    pub fn uniform_len(&self) -> Option<usize> {
        let first = self.items.first()?.0.len();
        self.items.iter().all(|(x, _)| x.len() == first).then_some(first)
    }

    /// Parses the `<label 0|1><TAB><example>` line format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut items = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() {
                continue;
            }
            let (label, example) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("line {}: expected <label><TAB><example>", lineno + 1)))?;
            let label = match label {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::Parse(format!("line {}: label {other:?} is not 0 or 1", lineno + 1)))
                }
            };
            let example = Example::new(example.as_bytes())
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            items.push((example, label));
        }
        Self::new(items)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, l) in &self.items {
            out.push(if *l { '1' } else { '0' });
            out.push('\t');
            out.push_str(x.as_str());
            out.push('\n');
        }
        out
    }
}

impl TryFrom<Vec<(Example, bool)>> for LabeledSample {
    type Error = Error;
    fn try_from(items: Vec<(Example, bool)>) -> Result<Self> {
        LabeledSample::new(items)
    }
}

impl From<LabeledSample> for Vec<(Example, bool)> {
    fn from(s: LabeledSample) -> Self {
        s.items
    }
}

/// Reads a FASTA file (or bare sequence text): header lines starting with `>`
/// are skipped, the remaining lines are concatenated and uppercased.
pub fn parse_fasta(text: &str) -> Vec<u8> {
    text.lines()
        .filter(|l| !l.starts_with('>'))
        .flat_map(|l| l.trim().bytes())
        .map(|b| b.to_ascii_uppercase())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_format_round_trip() {
        let text = "1\t100\n0\t011\n1\t100\n";
        let s = LabeledSample::parse(text).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.distinct_count(), 2);
        assert_eq!(s.to_text(), text);
    }

    #[test]
    fn conflicting_labels_rejected() {
        let err = LabeledSample::parse("1\t10\n0\t10\n").unwrap_err();
        assert!(matches!(err, Error::ConflictingLabels(_)));
    }

    #[test]
    fn malformed_lines_rejected() {
        assert!(LabeledSample::parse("2\t10\n").is_err());
        assert!(LabeledSample::parse("1 10\n").is_err());
        assert!(LabeledSample::parse("1\t\n").is_err());
    }

    #[test]
    fn fasta_headers_skipped_and_uppercased() {
        let seq = parse_fasta(">chr1 test\nacgt\nTTGA\n>second\ncc\n");
        assert_eq!(seq, b"ACGTTTGACC");
    }

    #[test]
    fn alphabet_checks() {
        assert!(Example::over(Alphabet::Binary, "0110").is_ok());
        assert!(Example::over(Alphabet::Binary, "012").is_err());
        assert!(Example::over(Alphabet::Dna, "ACGT").is_ok());
        assert!(Example::over(Alphabet::Dna, "ACGU").is_err());
        assert!(matches!(Example::new(""), Err(Error::EmptyExample)));
    }

    #[test]
    fn masks_round_trip() {
        let x = Example::from_mask(0b101, 3);
        assert_eq!(x.as_str(), "101");
        assert_eq!(x.mask(), 0b101);
        assert!(x.bit(0) && !x.bit(1) && x.bit(2));
    }
}
