use std::collections::BTreeSet;

use serde::Serialize;

use super::{bits_per_symbol, relearn, witness_for};
use crate::bounds::ceil_count;
use crate::coding::{decode, Conditioning, Decoded, WitnessCode};
use crate::distribution::{stream_rng, FiniteDistribution, Oracle};
use crate::error::{Error, Result};
use crate::example::{Example, LabeledSample};
use crate::learners::PacLearner;
use crate::repr::{is_consistent, Representation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem3Config {
    pub gamma: f64,
    pub seed: u64,
    /// Extra attempts per stage after a failed one.
    pub max_retries: usize,
}

impl Theorem3Config {
    pub fn new(gamma: f64, seed: u64) -> Self {
        Self { gamma, seed, max_retries: 5 }
    }
}

#[derive(Debug, Clone)]
pub struct Theorem3Outcome<R> {
    pub hypothesis: R,
    pub stages: [R; 3],
    pub witness: WitnessCode,
    pub e1: Vec<Example>,
    pub e2: Vec<Example>,
    pub report: Theorem3Report,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem3Report {
    pub m: usize,
    pub epsilon: f64,
    pub delta: f64,
    /// Examples drawn per stage, `⌈m_L(n, s, 1/(2√m), γ/3)⌉`.
    pub stage_sample_size: usize,
    pub attempts: [usize; 3],
    pub e1: usize,
    pub e2: usize,
    pub disjoint: bool,
    pub witness_bits: u64,
    pub consistent: bool,
    pub achieved_compression: f64,
    /// `m / (3 n · bits-per-symbol · m_L)`.
    pub formula_compression: f64,
}

impl Theorem3Report {
    /// True when some stage needed more than one attempt.
    pub fn retried(&self) -> bool {
        self.attempts.iter().any(|&a| a > 1)
    }
}

/// `(weights, labels)` over the distinct sample points, weighting each item once.
fn item_weights(distinct: &[(Example, bool, usize)]) -> Vec<f64> {
    distinct.iter().map(|(_, _, c)| *c as f64).collect()
}

fn misclassified<R: Representation>(r: &R, distinct: &[(Example, bool, usize)]) -> Vec<usize> {
    (0..distinct.len()).filter(|&i| r.contains(&distinct[i].0) != distinct[i].1).collect()
}

/// Draws `draws` examples from `weights` over `distinct` and runs the learner.
fn run_stage<L: PacLearner>(
    learner: &L,
    distinct: &[(Example, bool, usize)],
    weights: &[f64],
    draws: usize,
    n: usize,
    seed: u64,
    stream: u64,
) -> Result<(L::Rep, Vec<Example>)> {
    let points: Vec<(Example, f64)> = distinct
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|((x, _, _), &w)| (x.clone(), w))
        .collect();
    if points.is_empty() {
        return Ok((learner.learn(&LabeledSample::empty(), n)?, Vec::new()));
    }
    let labels = distinct.iter().zip(weights).filter(|(_, &w)| w > 0.0).map(|((_, l, _), _)| *l).collect();
    let mut oracle = Oracle::new(FiniteDistribution::from_weights(points)?, labels, stream_rng(seed, stream))?;
    let drawn = oracle.draw_many(draws);
    let fed = drawn.iter().map(|(x, _)| x.clone()).collect();
    Ok((learner.learn(&LabeledSample::new(drawn)?, n)?, fed))
}

/// Turns a PAC learner into an Occam algorithm through a majority-of-three
/// operation, in three stages with `δ = γ/3` and `ε = 1/(2√m)`.
///
/// Stage 1 learns on the uniform distribution over the sample (exceptions
/// `E₁`); stage 2 learns on a distribution putting mass `ε` on each point of
/// `E₁` and must be right on all of it (exceptions `E₂`); stage 3 learns on the
/// uniform distribution over `E₁ ∪ E₂` and must be right on all of it. A stage
/// missing its guarantee is rerun on a fresh stream up to `max_retries` times.
pub fn theorem3_occam<L, M>(
    learner: &L,
    maj3: M,
    sample: &LabeledSample,
    n: usize,
    s: u64,
    config: Theorem3Config,
) -> Result<Theorem3Outcome<L::Rep>>
where
    L: PacLearner,
    M: Fn(&L::Rep, &L::Rep, &L::Rep) -> Result<L::Rep>,
{
    let gamma = config.gamma;
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Parameter(format!("gamma must lie in (0,1), got {gamma}")));
    }
    sample.check(learner.alphabet(), n)?;
    let m = sample.len();
    if m == 0 {
        return Err(Error::Parameter("empty sample".into()));
    }
    let delta = gamma / 3.0;
    let eps = 1.0 / (2.0 * (m as f64).sqrt());
    let draws = ceil_count(learner.sample_size(n, s, eps, delta))? as usize;
    let distinct = sample.distinct_items();
    let total = m as f64;
    let mut attempts = [0usize; 3];

    let attempt = |stage: usize, attempts: &mut [usize; 3], check: &dyn Fn(&L::Rep) -> bool, weights: &[f64]| {
        for a in 0..=config.max_retries {
            attempts[stage] = a + 1;
            let stream = (stage as u64) << 32 | a as u64;
            let (r, fed) = run_stage(learner, &distinct, weights, draws, n, config.seed, stream)?;
            if check(&r) {
                return Ok((r, fed));
            }
        }
        Err(Error::StageFailure { stage: stage + 1, attempts: config.max_retries + 1 })
    };

    // Stage 1
    let uniform = item_weights(&distinct);
    let stage1_ok = |r: &L::Rep| {
        let wrong: usize = misclassified(r, &distinct).iter().map(|&i| distinct[i].2).sum();
        wrong as f64 / total <= eps
    };
    let (r1, fed1) = attempt(0, &mut attempts, &stage1_ok, &uniform)?;
    let e1: Vec<usize> = misclassified(&r1, &distinct);
    let in_e1: BTreeSet<usize> = e1.iter().copied().collect();

    // Stage 2
    let rest: f64 = (0..distinct.len()).filter(|i| !in_e1.contains(i)).map(|i| distinct[i].2 as f64).sum();
    let spare = (1.0 - eps * e1.len() as f64).max(0.0);
    let mu2: Vec<f64> = (0..distinct.len())
        .map(|i| if in_e1.contains(&i) { eps } else if rest > 0.0 { spare * distinct[i].2 as f64 / rest } else { 0.0 })
        .collect();
    let stage2_ok = |r: &L::Rep| {
        let wrong = misclassified(r, &distinct);
        wrong.iter().all(|i| !in_e1.contains(i)) && wrong.iter().map(|&i| mu2[i]).sum::<f64>() <= eps + 1e-12
    };
    let (r2, fed2) = attempt(1, &mut attempts, &stage2_ok, &mu2)?;
    let e2: Vec<usize> = misclassified(&r2, &distinct);
    let hard: BTreeSet<usize> = e1.iter().chain(&e2).copied().collect();

    // Stage 3
    let mu3: Vec<f64> = (0..distinct.len()).map(|i| if hard.contains(&i) { 1.0 } else { 0.0 }).collect();
    let stage3_ok = |r: &L::Rep| hard.iter().all(|&i| r.contains(&distinct[i].0) == distinct[i].1);
    let (r3, fed3) = attempt(2, &mut attempts, &stage3_ok, &mu3)?;

    let hypothesis = maj3(&r1, &r2, &r3)?;
    let witness = witness_for(learner, &[&fed1, &fed2, &fed3], n)?;
    let consistent = is_consistent(&hypothesis, sample)?;
    let disjoint = e2.iter().all(|i| !in_e1.contains(i));
    let to_examples = |v: &[usize]| v.iter().map(|&i| distinct[i].0.clone()).collect::<Vec<_>>();
    let report = Theorem3Report {
        m,
        epsilon: eps,
        delta,
        stage_sample_size: draws,
        attempts,
        e1: e1.len(),
        e2: e2.len(),
        disjoint,
        witness_bits: witness.len(),
        consistent,
        achieved_compression: m as f64 / witness.len().max(1) as f64,
        formula_compression: m as f64 / (3.0 * n as f64 * bits_per_symbol(learner) * draws.max(1) as f64),
    };
    Ok(Theorem3Outcome {
        hypothesis,
        stages: [r1, r2, r3],
        witness,
        e1: to_examples(&e1),
        e2: to_examples(&e2),
        report,
    })
}

/// Rebuilds the combined hypothesis from its three-list witness.
pub fn theorem3_decode<L, M>(
    learner: &L,
    maj3: M,
    witness: &WitnessCode,
    labels: &dyn Fn(&Example) -> Option<bool>,
) -> Result<L::Rep>
where
    L: PacLearner,
    M: Fn(&L::Rep, &L::Rep, &L::Rep) -> Result<L::Rep>,
{
    let Conditioning::Transcript { n, lists: 3, .. } = witness.conditioning else {
        return Err(Error::ConditioningMismatch("transcript"));
    };
    let Decoded::Transcript(lists) = decode(witness, &witness.conditioning)? else {
        return Err(Error::ConditioningMismatch("transcript"));
    };
    let r: Vec<L::Rep> = lists.iter().map(|l| relearn(learner, l, labels, n)).collect::<Result<_>>()?;
    maj3(&r[0], &r[1], &r[2])
}
