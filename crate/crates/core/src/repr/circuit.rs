use std::fmt;

use super::{Representation, SystemId};
use crate::bits::{prefix_code_len, zigzag, BitReader, BitWriter, Bits, BitsSlice};
use crate::error::{Error, Result};
use crate::example::{Alphabet, Example};

/// One threshold node: true iff `Σ weightᵢ · value(inputᵢ) ≥ threshold`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    /// Node ids, strictly increasing; ids `1..=n` are the input variables.
    pub inputs: Vec<usize>,
    pub weights: Vec<i64>,
    pub threshold: i64,
}

impl Gate {
    pub fn new(inputs: Vec<usize>, weights: Vec<i64>, threshold: i64) -> Self {
        Self { inputs, weights, threshold }
    }

    pub(crate) fn encoded_len(&self, id: usize) -> u64 {
        prefix_code_len(id as u64)
            + prefix_code_len(self.inputs.len() as u64)
            + self.weights.iter().map(|&w| prefix_code_len(zigzag(w))).sum::<u64>()
            + prefix_code_len(zigzag(self.threshold))
            + self.inputs.iter().map(|&i| prefix_code_len(i as u64)).sum::<u64>()
    }
}

/// An acyclic circuit of threshold gates over `n` boolean inputs.
///
/// Inputs have ids `1..=n`, gate `k` (0-based) has id `n + 1 + k` and may only
/// read lower ids. The last gate is the output.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThresholdCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl ThresholdCircuit {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Representation("circuit over zero inputs".into()));
        }
        if gates.is_empty() {
            return Err(Error::Representation("circuit without an output gate".into()));
        }
        for (k, g) in gates.iter().enumerate() {
            let id = n + 1 + k;
            if g.inputs.len() != g.weights.len() {
                return Err(Error::Representation(format!(
                    "gate {id} has {} inputs but {} weights",
                    g.inputs.len(),
                    g.weights.len()
                )));
            }
            if g.inputs.iter().any(|&i| i == 0 || i >= id) {
                return Err(Error::Representation(format!("gate {id} reads a node that does not precede it")));
            }
            if g.inputs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Representation(format!("gate {id} inputs are not strictly increasing")));
            }
        }
        Ok(Self { n, gates })
    }

    /// A one-gate circuit reading input variables (1-based ids).
    pub fn single_gate(n: usize, inputs: Vec<usize>, weights: Vec<i64>, threshold: i64) -> Result<Self> {
        Self::new(n, vec![Gate::new(inputs, weights, threshold)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output_id(&self) -> usize {
        self.n + self.gates.len()
    }

    /// Evaluates on the assignment packed into `mask` (bit `i` = input `i+1`).
    pub fn eval_mask(&self, mask: u64) -> bool {
        let mut values = Vec::with_capacity(self.n + self.gates.len() + 1);
        values.push(false);
        values.extend((0..self.n).map(|i| mask >> i & 1 == 1));
        for g in &self.gates {
            let sum: i64 = g
                .inputs
                .iter()
                .zip(&g.weights)
                .map(|(&i, &w)| if values[i] { w } else { 0 })
                .sum();
            values.push(sum >= g.threshold);
        }
        values[self.output_id()]
    }

    /// Node count, then per gate: index, degree, weights, threshold, input indices.
    /// Integers use the prefix-free code; signed values are zigzag-mapped first.
    pub fn encode(&self) -> Bits {
        let mut w = BitWriter::new();
        w.prefix_free(self.gates.len() as u64);
        for (k, g) in self.gates.iter().enumerate() {
            w.prefix_free((self.n + 1 + k) as u64);
            w.prefix_free(g.inputs.len() as u64);
            for &wt in &g.weights {
                w.signed(wt);
            }
            w.signed(g.threshold);
            for &i in &g.inputs {
                w.prefix_free(i as u64);
            }
        }
        w.finish()
    }

    pub fn decode(bits: &BitsSlice, n: usize) -> Result<Self> {
        let mut r = BitReader::new(bits);
        let c = Self::read(&mut r, n)?;
        r.expect_end()?;
        Ok(c)
    }

    pub fn read(r: &mut BitReader<'_>, n: usize) -> Result<Self> {
        let count = r.prefix_free()? as usize;
        if count > r.remaining() {
            return Err(Error::Malformed(format!("implausible gate count {count}")));
        }
        let mut gates = Vec::with_capacity(count);
        for k in 0..count {
            let id = r.prefix_free()? as usize;
            if id != n + 1 + k {
                return Err(Error::Malformed(format!("gate index {id}, expected {}", n + 1 + k)));
            }
            let degree = r.prefix_free()? as usize;
            if degree > r.remaining() {
                return Err(Error::Malformed(format!("implausible degree {degree}")));
            }
            let weights = (0..degree).map(|_| r.signed()).collect::<Result<Vec<_>>>()?;
            let threshold = r.signed()?;
            let inputs = (0..degree)
                .map(|_| r.prefix_free().map(|i| i as usize))
                .collect::<Result<Vec<_>>>()?;
            gates.push(Gate::new(inputs, weights, threshold));
        }
        Self::new(n, gates).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// Parses the display form, e.g. `g4 = [1*x1 + -1*x3 >= 1]; g5 = [2*g4 >= 1]`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("circuit {text:?}: {why}"));
        let mut gates = Vec::new();
        for (k, part) in text.split(';').map(str::trim).filter(|p| !p.is_empty()).enumerate() {
            let (lhs, rhs) = part.split_once('=').ok_or_else(|| bad("missing '='"))?;
            if lhs.trim() != format!("g{}", n + 1 + k) {
                return Err(bad(&format!("expected gate g{}", n + 1 + k)));
            }
            let body = rhs
                .trim()
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| bad("gate body must be bracketed"))?;
            let (sum, theta) = body.split_once(">=").ok_or_else(|| bad("missing '>='"))?;
            let threshold: i64 = theta.trim().parse().map_err(|_| bad("bad threshold"))?;
            let (mut inputs, mut weights) = (Vec::new(), Vec::new());
            if sum.trim() != "0" {
                for term in sum.split(" + ") {
                    let (w, node) = term.trim().split_once('*').ok_or_else(|| bad("term must be w*node"))?;
                    let w: i64 = w.trim().parse().map_err(|_| bad("bad weight"))?;
                    let node = node.trim();
                    let id: usize = if let Some(i) = node.strip_prefix('x') {
                        i.parse().ok().filter(|&i| i >= 1 && i <= n).ok_or_else(|| bad("bad input variable"))?
                    } else if let Some(g) = node.strip_prefix('g') {
                        g.parse().ok().filter(|&g| g > n).ok_or_else(|| bad("bad gate reference"))?
                    } else {
                        return Err(bad("node must be xI or gJ"));
                    };
                    inputs.push(id);
                    weights.push(w);
                }
            }
            gates.push(Gate::new(inputs, weights, threshold));
        }
        Self::new(n, gates).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Copies the gates with every gate id shifted by `offset` (inputs keep their ids).
    pub(crate) fn shifted_gates(&self, offset: usize) -> impl Iterator<Item = Gate> + '_ {
        let n = self.n;
        self.gates.iter().map(move |g| Gate {
            inputs: g.inputs.iter().map(|&i| if i > n { i + offset } else { i }).collect(),
            weights: g.weights.clone(),
            threshold: g.threshold,
        })
    }
}

impl Representation for ThresholdCircuit {
    fn system(&self) -> SystemId {
        SystemId::ThresholdCircuit
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Binary
    }

    fn example_len(&self) -> usize {
        self.n
    }

    fn contains(&self, x: &Example) -> bool {
        self.eval_mask(x.mask())
    }

    fn length_bits(&self) -> u64 {
        prefix_code_len(self.gates.len() as u64)
            + self
                .gates
                .iter()
                .enumerate()
                .map(|(k, g)| g.encoded_len(self.n + 1 + k))
                .sum::<u64>()
    }
}

impl fmt::Display for ThresholdCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.gates.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "g{} = [", self.n + 1 + k)?;
            if g.inputs.is_empty() {
                f.write_str("0")?;
            }
            for (j, (&i, &w)) in g.inputs.iter().zip(&g.weights).enumerate() {
                let node = if i <= self.n { format!("x{i}") } else { format!("g{i}") };
                if j > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "{w}*{node}")?;
            }
            write!(f, " >= {}]", g.threshold)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ThresholdCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circuit(n={}; {self})", self.n)
    }
}
