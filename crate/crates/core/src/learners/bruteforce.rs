use std::collections::BTreeMap;
use std::fmt;

use super::{monomial_class_sample_size, PacLearner};
use crate::bits::prefix_code_len;
use crate::error::{Error, Result};
use crate::example::{Alphabet, LabeledSample};
use crate::repr::{Gate, Literal, Monomial, SystemId, ThresholdCircuit};

pub const MAX_MONOMIAL_N: usize = 12;
pub const MAX_CIRCUIT_N: usize = 4;
pub const MAX_CIRCUIT_GATES: usize = 3;
/// Weighted-sum evaluations allowed for the three-gate level.
pub const CIRCUIT_WORK_BUDGET: u64 = 200_000_000;

const WEIGHTS: [i64; 5] = [-2, -1, 0, 1, 2];

/// Output of [`consistent_bruteforce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyRep {
    Monomial(Monomial),
    Circuit(ThresholdCircuit),
}

impl fmt::Display for AnyRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyRep::Monomial(m) => m.fmt(f),
            AnyRep::Circuit(c) => c.fmt(f),
        }
    }
}

/// Shortest representation consistent with `sample`, or `None`.
///
/// `max_size` bounds the literal count for monomials and the gate count for
/// circuits. Ties in length go to the earlier representation in enumeration order.
pub fn consistent_bruteforce(
    sample: &LabeledSample,
    system: SystemId,
    n: usize,
    max_size: usize,
) -> Result<Option<AnyRep>> {
    match system {
        SystemId::Monomial => Ok(consistent_monomial(sample, n, max_size)?.map(AnyRep::Monomial)),
        SystemId::ThresholdCircuit => Ok(consistent_circuit(sample, n, max_size)?.map(AnyRep::Circuit)),
        other => Err(Error::EnumerationBound(format!("no brute-force enumeration for {other}"))),
    }
}

fn distinct_points(sample: &LabeledSample, n: usize) -> Result<Vec<(u64, bool)>> {
    sample.check(Alphabet::Binary, n)?;
    let mut pts: Vec<(u64, bool)> = sample.items().iter().map(|(x, l)| (x.mask(), *l)).collect();
    pts.sort_unstable();
    pts.dedup();
    Ok(pts)
}

/// Monomials in order of literal count, then variable combination
/// (lexicographic), then polarity (positive before negative, first variable
/// slowest); the contradiction comes last. All share the length `2n`.
pub fn consistent_monomial(sample: &LabeledSample, n: usize, max_literals: usize) -> Result<Option<Monomial>> {
    if n == 0 || n > MAX_MONOMIAL_N {
        return Err(Error::EnumerationBound(format!("monomial enumeration needs 1 ≤ n ≤ {MAX_MONOMIAL_N}, got {n}")));
    }
    let pts = distinct_points(sample, n)?;
    let consistent = |care: u64, value: u64| pts.iter().all(|&(x, l)| (x & care == value) == l);
    for k in 0..=max_literals.min(n) {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let care = combo.iter().fold(0u64, |acc, &v| acc | 1 << v);
            for pattern in 0..1u64 << k {
                // bit (k-1-j) of pattern set means variable combo[j] is negated
                let value = combo
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| pattern >> (k - 1 - j) & 1 == 0)
                    .fold(0u64, |acc, (_, &v)| acc | 1 << v);
                if consistent(care, value) {
                    let mut lits = vec![Literal::Absent; n];
                    for &v in &combo {
                        lits[v] = if value >> v & 1 == 1 { Literal::Positive } else { Literal::Negative };
                    }
                    return Monomial::new(lits).map(Some);
                }
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    if max_literals >= n && pts.iter().all(|&(_, l)| !l) {
        return Ok(Some(Monomial::all_literals(n)));
    }
    Ok(None)
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Weight vectors over `k` inputs, first input slowest.
fn weight_vectors(k: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..5usize.pow(k as u32)).map(move |mut idx| {
        let mut w = vec![0; k];
        for slot in w.iter_mut().rev() {
            *slot = WEIGHTS[idx % 5];
            idx /= 5;
        }
        w
    })
}

/// The threshold with the shortest code in `(neg_max, pos_min]`.
fn pick_threshold(neg_max: Option<i64>, pos_min: Option<i64>) -> Option<i64> {
    let lo = neg_max.map_or(i64::MIN, |v| v + 1);
    let hi = pos_min.unwrap_or(i64::MAX);
    if lo > hi {
        None
    } else if lo <= 0 && 0 <= hi {
        Some(0)
    } else if hi < 0 {
        Some(hi)
    } else {
        Some(lo)
    }
}

/// A candidate gate over feature columns; `ids[j]` is the node id of feature `j`.
fn make_gate(ids: &[usize], weights: &[i64], threshold: i64) -> Gate {
    let (inputs, ws): (Vec<usize>, Vec<i64>) =
        ids.iter().zip(weights).filter(|(_, &w)| w != 0).map(|(&i, &w)| (i, w)).unzip();
    Gate::new(inputs, ws, threshold)
}

struct Features {
    /// `cols[j]` is bit-packed over points.
    cols: Vec<u64>,
    ids: Vec<usize>,
}

impl Features {
    fn sums(&self, w: &[i64], npts: usize) -> Vec<i64> {
        (0..npts)
            .map(|p| self.cols.iter().zip(w).map(|(c, &wi)| if c >> p & 1 == 1 { wi } else { 0 }).sum())
            .collect()
    }
}

/// Every distinct output column a gate over `feat` can produce, each with its
/// shortest gate (first in enumeration order on ties).
fn gate_columns(feat: &Features, npts: usize, id: usize) -> BTreeMap<u64, (u64, Gate)> {
    let mut out: BTreeMap<u64, (u64, Gate)> = BTreeMap::new();
    for w in weight_vectors(feat.ids.len()) {
        let sums = feat.sums(&w, npts);
        let mut levels = sums.clone();
        levels.sort_unstable();
        levels.dedup();
        // θ ≤ levels[0]: all true; θ in (levels[i-1], levels[i]]; θ > last: all false.
        let mut bounds: Vec<(Option<i64>, Option<i64>)> = Vec::with_capacity(levels.len() + 1);
        bounds.push((None, levels.first().copied()));
        for i in 1..levels.len() {
            bounds.push((Some(levels[i - 1]), Some(levels[i])));
        }
        bounds.push((levels.last().copied(), None));
        for (neg_max, pos_min) in bounds {
            let Some(theta) = pick_threshold(neg_max, pos_min) else { continue };
            let col = sums.iter().enumerate().fold(0u64, |acc, (p, &s)| acc | ((s >= theta) as u64) << p);
            let gate = make_gate(&feat.ids, &w, theta);
            let len = gate.encoded_len(id);
            match out.get(&col) {
                Some((best, _)) if *best <= len => {}
                _ => {
                    out.insert(col, (len, gate));
                }
            }
        }
    }
    out
}

/// Shortest output gate over `feat` matching `labels`, if any.
fn best_output_gate(feat: &Features, labels: &[bool], id: usize) -> Option<(u64, Gate)> {
    let mut best: Option<(u64, Gate)> = None;
    for w in weight_vectors(feat.ids.len()) {
        let sums = feat.sums(&w, labels.len());
        let neg_max = sums.iter().zip(labels).filter(|(_, &l)| !l).map(|(&s, _)| s).max();
        let pos_min = sums.iter().zip(labels).filter(|(_, &l)| l).map(|(&s, _)| s).min();
        let Some(theta) = pick_threshold(neg_max, pos_min) else { continue };
        let gate = make_gate(&feat.ids, &w, theta);
        let len = gate.encoded_len(id);
        if best.as_ref().is_none_or(|(b, _)| len < *b) {
            best = Some((len, gate));
        }
    }
    best
}

/// Shortest threshold circuit (weights in `[−2, 2]`, at most `max_gates`
/// gates) consistent with `sample`.
///
/// Gate counts are tried in increasing order and the search stops at the first
/// count with a consistent circuit; within it the shortest code wins.
pub fn consistent_circuit(sample: &LabeledSample, n: usize, max_gates: usize) -> Result<Option<ThresholdCircuit>> {
    if n == 0 || n > MAX_CIRCUIT_N {
        return Err(Error::EnumerationBound(format!("circuit enumeration needs 1 ≤ n ≤ {MAX_CIRCUIT_N}, got {n}")));
    }
    if max_gates > MAX_CIRCUIT_GATES {
        return Err(Error::EnumerationBound(format!("circuit enumeration allows at most {MAX_CIRCUIT_GATES} gates")));
    }
    let pts = distinct_points(sample, n)?;
    let npts = pts.len();
    let labels: Vec<bool> = pts.iter().map(|&(_, l)| l).collect();
    let inputs = Features {
        cols: (0..n).map(|i| pts.iter().enumerate().fold(0u64, |acc, (p, &(x, _))| acc | (x >> i & 1) << p)).collect(),
        ids: (1..=n).collect(),
    };
    let with = |base: &Features, col: u64, id: usize| {
        let mut f = Features { cols: base.cols.clone(), ids: base.ids.clone() };
        f.cols.push(col);
        f.ids.push(id);
        f
    };
    let build = |gates: Vec<Gate>| ThresholdCircuit::new(n, gates).map(Some);

    if max_gates >= 1 {
        if let Some((_, g)) = best_output_gate(&inputs, &labels, n + 1) {
            return build(vec![g]);
        }
    }
    if max_gates < 2 {
        return Ok(None);
    }
    let firsts = gate_columns(&inputs, npts, n + 1);
    let mut best: Option<(u64, Vec<Gate>)> = None;
    for (&col1, (len1, g1)) in &firsts {
        let feat = with(&inputs, col1, n + 1);
        if let Some((len2, g2)) = best_output_gate(&feat, &labels, n + 2) {
            let total = prefix_code_len(2) + len1 + len2;
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, vec![g1.clone(), g2]));
            }
        }
    }
    if let Some((_, gates)) = best {
        return build(gates);
    }
    if max_gates < 3 {
        return Ok(None);
    }

    let mut pairs: Vec<(u64, Vec<Gate>, Features)> = Vec::new();
    for (&col1, (len1, g1)) in &firsts {
        let feat = with(&inputs, col1, n + 1);
        for (&col2, (len2, g2)) in &gate_columns(&feat, npts, n + 2) {
            pairs.push((len1 + len2, vec![g1.clone(), g2.clone()], with(&feat, col2, n + 2)));
        }
    }
    let work = pairs.len() as u64 * 5u64.pow(n as u32 + 2) * npts as u64;
    if work > CIRCUIT_WORK_BUDGET {
        return Err(Error::EnumerationBound(format!(
            "three-gate search needs {work} evaluations (budget {CIRCUIT_WORK_BUDGET})"
        )));
    }
    let mut best: Option<(u64, Vec<Gate>)> = None;
    for (len12, gates, feat) in pairs {
        if let Some((len3, g3)) = best_output_gate(&feat, &labels, n + 3) {
            let total = prefix_code_len(3) + len12 + len3;
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                let mut gs = gates;
                gs.push(g3);
                best = Some((total, gs));
            }
        }
    }
    match best {
        Some((_, gates)) => build(gates),
        None => Ok(None),
    }
}

/// Exhaustive consistent monomial learner.
#[derive(Debug, Clone, Copy)]
pub struct MonomialBruteForce {
    pub max_literals: usize,
}

impl PacLearner for MonomialBruteForce {
    type Rep = Monomial;

    fn name(&self) -> &'static str {
        "bruteforce-monomial"
    }

    fn system(&self) -> SystemId {
        SystemId::Monomial
    }

    fn sample_size(&self, n: usize, _s: u64, epsilon: f64, delta: f64) -> f64 {
        monomial_class_sample_size(n, epsilon, delta)
    }

    fn learn(&self, sample: &LabeledSample, n: usize) -> Result<Monomial> {
        consistent_monomial(sample, n, self.max_literals)?
            .ok_or_else(|| Error::NotRealizable("no consistent monomial".into()))
    }

    fn set_determined(&self) -> bool {
        true
    }
}

/// Exhaustive consistent threshold-circuit learner.
///
/// Declared sample size is the finite-class bound for all `2^(2ⁿ)` boolean
/// functions: `(1/ε)(2ⁿ ln 2 + ln(1/δ))`.
#[derive(Debug, Clone, Copy)]
pub struct CircuitBruteForce {
    pub max_gates: usize,
}

impl Default for CircuitBruteForce {
    fn default() -> Self {
        Self { max_gates: 2 }
    }
}

impl PacLearner for CircuitBruteForce {
    type Rep = ThresholdCircuit;

    fn name(&self) -> &'static str {
        "bruteforce-circuit"
    }

    fn system(&self) -> SystemId {
        SystemId::ThresholdCircuit
    }

    fn sample_size(&self, n: usize, _s: u64, epsilon: f64, delta: f64) -> f64 {
        (2f64.powi(n as i32) * std::f64::consts::LN_2 - delta.ln()) / epsilon
    }

    fn learn(&self, sample: &LabeledSample, n: usize) -> Result<ThresholdCircuit> {
        consistent_circuit(sample, n, self.max_gates)?
            .ok_or_else(|| Error::NotRealizable("no consistent circuit within the gate limit".into()))
    }

    fn set_determined(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example::{binary_cube, Example};
    use crate::repr::{is_consistent, Representation};

    fn labeled(n: usize, f: impl Fn(&Example) -> bool) -> LabeledSample {
        LabeledSample::new(binary_cube(n).map(|x| {
            let l = f(&x);
            (x, l)
        }).collect())
        .unwrap()
    }

    #[test]
    fn monomial_examples() {
        let s = labeled(2, |x| x.bit(0));
        assert_eq!(consistent_monomial(&s, 2, 2).unwrap().unwrap().to_string(), "1-");
        let bad = LabeledSample::parse("1\t01\n1\t10\n0\t11\n").unwrap();
        assert_eq!(consistent_monomial(&bad, 2, 2).unwrap(), None);
        assert_eq!(consistent_monomial(&LabeledSample::empty(), 3, 3).unwrap(), Some(Monomial::empty(3)));
        assert!(consistent_monomial(&LabeledSample::empty(), 13, 3).is_err());
    }

    #[test]
    fn all_negative_cube_needs_contradiction() {
        let s = labeled(2, |_| false);
        assert_eq!(consistent_monomial(&s, 2, 2).unwrap(), Some(Monomial::all_literals(2)));
        assert_eq!(consistent_monomial(&s, 2, 1).unwrap(), None);
    }

    #[test]
    fn single_gate_suffices_for_majority() {
        let s = labeled(3, |x| (0..3).filter(|&i| x.bit(i)).count() >= 2);
        let c = consistent_circuit(&s, 3, 2).unwrap().unwrap();
        assert_eq!(c.gates().len(), 1);
        assert!(is_consistent(&c, &s).unwrap());
    }

    #[test]
    fn xor_needs_two_gates() {
        let s = labeled(2, |x| x.bit(0) != x.bit(1));
        assert_eq!(consistent_circuit(&s, 2, 1).unwrap(), None);
        let c = consistent_circuit(&s, 2, 2).unwrap().unwrap();
        assert_eq!(c.gates().len(), 2);
        assert!(is_consistent(&c, &s).unwrap());
    }

    #[test]
    fn circuit_on_empty_sample_is_short() {
        let c = consistent_circuit(&LabeledSample::empty(), 4, 1).unwrap().unwrap();
        assert_eq!(c.gates()[0].inputs.len(), 0);
        assert_eq!(c.gates()[0].threshold, 0);
        assert_eq!(c.length_bits(), prefix_code_len(1) + prefix_code_len(5) + 1 + 1);
    }

    #[test]
    fn threshold_choice() {
        assert_eq!(pick_threshold(Some(2), Some(5)), Some(3));
        assert_eq!(pick_threshold(Some(-4), Some(-2)), Some(-2));
        assert_eq!(pick_threshold(None, Some(3)), Some(0));
        assert_eq!(pick_threshold(Some(1), Some(1)), None);
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
