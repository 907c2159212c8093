use super::{monomial_class_sample_size, PacLearner};
use crate::error::{Error, Result};
use crate::example::LabeledSample;
use crate::repr::{Literal, Monomial, SystemId};

fn check_sample(sample: &LabeledSample, n: usize) -> Result<()> {
    if n == 0 || n > 64 {
        return Err(Error::Parameter(format!("monomial learners need 1 ≤ n ≤ 64, got {n}")));
    }
    sample.check(crate::example::Alphabet::Binary, n)
}

/// Starts from the conjunction of all `2n` literals and, for every positive
/// example, deletes the literals it falsifies.
pub fn standard_monomial_learn(sample: &LabeledSample, n: usize) -> Result<Monomial> {
    check_sample(sample, n)?;
    let mut lits = vec![Literal::Both; n];
    for x in sample.positives() {
        for (i, l) in lits.iter_mut().enumerate() {
            let bit = x.bit(i);
            *l = match (*l, bit) {
                (Literal::Both, true) => Literal::Positive,
                (Literal::Both, false) => Literal::Negative,
                (Literal::Positive, false) | (Literal::Negative, true) => Literal::Absent,
                (keep, _) => keep,
            };
        }
    }
    Monomial::new(lits)
}

/// Greedy set cover over the negative examples.
///
/// Candidates are the literals satisfied by every positive example, indexed
/// `x1, ¬x1, x2, ¬x2, …`; each step takes the candidate falsified by the most
/// still-uncovered distinct negatives, lowest index on ties.
pub fn haussler_monomial_learn(sample: &LabeledSample, n: usize) -> Result<Monomial> {
    check_sample(sample, n)?;
    let positives: Vec<u64> = sample.positives().map(|x| x.mask()).collect();
    let mut negatives: Vec<u64> = sample.negatives().map(|x| x.mask()).collect();
    negatives.sort_unstable();
    negatives.dedup();

    // literal index 2i is xᵢ₊₁, 2i+1 is ¬xᵢ₊₁
    let satisfies = |lit: usize, mask: u64| (mask >> (lit / 2) & 1 == 1) == lit.is_multiple_of(2);
    let candidates: Vec<usize> = (0..2 * n).filter(|&lit| positives.iter().all(|&p| satisfies(lit, p))).collect();

    let mut covered = vec![false; negatives.len()];
    let mut remaining = negatives.len();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let mut best: Option<(usize, usize)> = None;
        for &lit in &candidates {
            let gain = negatives
                .iter()
                .zip(&covered)
                .filter(|(&neg, &c)| !c && !satisfies(lit, neg))
                .count();
            if gain > best.map_or(0, |(_, g)| g) {
                best = Some((lit, gain));
            }
        }
        let Some((lit, gain)) = best else {
            return Err(Error::NotRealizable(format!(
                "{remaining} negative example(s) satisfy every candidate literal"
            )));
        };
        for (neg, c) in negatives.iter().zip(covered.iter_mut()) {
            if !*c && !satisfies(lit, *neg) {
                *c = true;
            }
        }
        remaining -= gain;
        chosen.push(lit);
    }

    let mut lits = vec![Literal::Absent; n];
    for lit in chosen {
        let want = if lit % 2 == 0 { Literal::Positive } else { Literal::Negative };
        let slot = &mut lits[lit / 2];
        if *slot != Literal::Absent && *slot != want {
            return Ok(Monomial::all_literals(n));
        }
        *slot = want;
    }
    Monomial::new(lits)
}

/// [`standard_monomial_learn`] as a [`PacLearner`] over the finite class of `3ⁿ + 1` monomials.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardMonomial;

impl PacLearner for StandardMonomial {
    type Rep = Monomial;

    fn name(&self) -> &'static str {
        "standard"
    }

    fn system(&self) -> SystemId {
        SystemId::Monomial
    }

    fn sample_size(&self, n: usize, _s: u64, epsilon: f64, delta: f64) -> f64 {
        monomial_class_sample_size(n, epsilon, delta)
    }

    fn learn(&self, sample: &LabeledSample, n: usize) -> Result<Monomial> {
        standard_monomial_learn(sample, n)
    }

    fn set_determined(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Haussler;

impl PacLearner for Haussler {
    type Rep = Monomial;

    fn name(&self) -> &'static str {
        "haussler"
    }

    fn system(&self) -> SystemId {
        SystemId::Monomial
    }

    fn sample_size(&self, n: usize, _s: u64, epsilon: f64, delta: f64) -> f64 {
        monomial_class_sample_size(n, epsilon, delta)
    }

    fn learn(&self, sample: &LabeledSample, n: usize) -> Result<Monomial> {
        haussler_monomial_learn(sample, n)
    }

    fn set_determined(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example::Example;
    use crate::repr::is_consistent;

    fn sample(pos: &[&str], neg: &[&str]) -> LabeledSample {
        let items = pos
            .iter()
            .map(|s| (Example::new(*s).unwrap(), true))
            .chain(neg.iter().map(|s| (Example::new(*s).unwrap(), false)))
            .collect();
        LabeledSample::new(items).unwrap()
    }

    #[test]
    fn standard_examples() {
        let m = standard_monomial_learn(&sample(&["100", "101"], &[]), 3).unwrap();
        assert_eq!(m.to_string(), "10-");
        let m = standard_monomial_learn(&sample(&["00", "11"], &[]), 2).unwrap();
        assert_eq!(m, Monomial::empty(2));
        let m = standard_monomial_learn(&sample(&[], &["01"]), 2).unwrap();
        assert_eq!(m, Monomial::all_literals(2));
    }

    #[test]
    fn haussler_examples() {
        let m = haussler_monomial_learn(&sample(&["100", "111"], &["000", "011"]), 3).unwrap();
        assert_eq!(m.to_string(), "1--");
        let m = haussler_monomial_learn(&sample(&["10"], &[]), 2).unwrap();
        assert_eq!(m, Monomial::empty(2));
        let s = sample(&["11"], &["00", "01", "10"]);
        let m = haussler_monomial_learn(&s, 2).unwrap();
        assert_eq!(m.to_string(), "11");
        assert!(is_consistent(&m, &s).unwrap());
    }

    #[test]
    fn haussler_rejects_unrealizable() {
        let s = sample(&["01", "10"], &["11"]);
        assert!(matches!(haussler_monomial_learn(&s, 2), Err(Error::NotRealizable(_))));
    }

    #[test]
    fn haussler_both_polarities_gives_empty_concept() {
        let s = sample(&[], &["0", "1"]);
        assert_eq!(haussler_monomial_learn(&s, 1).unwrap(), Monomial::all_literals(1));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(standard_monomial_learn(&sample(&["101"], &[]), 2).is_err());
    }

    #[test]
    fn class_sample_size_matches_direct_formula() {
        let direct = ((3f64.powi(5) + 1.0) / 0.2).ln() / 0.2;
        assert!((StandardMonomial.sample_size(5, 0, 0.2, 0.2) - direct).abs() < 1e-9);
    }
}
