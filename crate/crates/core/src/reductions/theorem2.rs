use serde::Serialize;

use super::{bits_per_symbol, relearn, witness_for, ExceptionWrapped};
use crate::bounds::ceil_count;
use crate::coding::{decode, Conditioning, Decoded, WitnessCode};
use crate::distribution::{stream_rng, FiniteDistribution, Oracle};
use crate::error::{Error, Result};
use crate::example::{Example, LabeledSample};
use crate::learners::PacLearner;
use crate::reductions::exception_handle;
use crate::repr::{is_consistent, Representation};

const EPS_TOLERANCE: f64 = 1e-9;

/// Result of the exception-handling construction.
#[derive(Debug, Clone)]
pub struct Theorem2Outcome<R> {
    pub hypothesis: ExceptionWrapped<R>,
    pub witness: WitnessCode,
    pub report: Theorem2Report,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub m: usize,
    pub epsilon0: f64,
    pub examples_fed: usize,
    pub exceptions: usize,
    pub witness_bits: u64,
    pub consistent: bool,
    /// `m / |witness|`.
    pub achieved_compression: f64,
    /// `1 / (2 ε₀ n · bits-per-symbol)`.
    pub formula_compression: f64,
}

/// Solves `m_L(n, s, ε, γ) = ε·m` for `ε ∈ (1/m, 1]` by bisection.
///
/// Returns the upper end of the final bracket, where `m_L(ε₀) ≤ ε₀·m`. If the
/// curves already cross below `1/m`, the result is clamped to `1/m`.
pub fn solve_epsilon0<L: PacLearner>(learner: &L, m: usize, n: usize, s: u64, gamma: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Parameter("empty sample".into()));
    }
    let g = |eps: f64| learner.sample_size(n, s, eps, gamma) - eps * m as f64;
    let (mut lo, mut hi) = (1.0 / m as f64, 1.0);
    if g(hi) > 0.0 {
        return Err(Error::Infinite(format!(
            "learner needs {:.1} examples at ε = 1, more than the {m} available",
            learner.sample_size(n, s, 1.0, gamma)
        )));
    }
    if g(lo) <= 0.0 {
        return Ok(lo);
    }
    while hi - lo > EPS_TOLERANCE * hi {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Turns a PAC learner into an Occam algorithm by exception handling.
///
/// The sample's items define a uniform distribution; the learner runs at
/// `(ε₀, δ = γ)` on examples drawn from it, and every misclassified sample
/// point becomes an exception. The witness is the transcript of the examples
/// fed plus the exceptions.
pub fn theorem2_occam<L: PacLearner>(
    learner: &L,
    sample: &LabeledSample,
    n: usize,
    s: u64,
    gamma: f64,
    seed: u64,
) -> Result<Theorem2Outcome<L::Rep>> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Parameter(format!("gamma must lie in (0,1), got {gamma}")));
    }
    sample.check(learner.alphabet(), n)?;
    let m = sample.len();
    let eps0 = solve_epsilon0(learner, m, n, s, gamma)?;
    let draws = ceil_count(learner.sample_size(n, s, eps0, gamma))? as usize;

    let distinct = sample.distinct_items();
    let dist = FiniteDistribution::from_weights(distinct.iter().map(|(x, _, c)| (x.clone(), *c as f64)))?;
    let labels = distinct.iter().map(|(_, l, _)| *l).collect();
    let mut oracle = Oracle::new(dist, labels, stream_rng(seed, 0))?;
    let drawn = oracle.draw_many(draws);
    let fed: Vec<Example> = drawn.iter().map(|(x, _)| x.clone()).collect();
    let base = learner.learn(&LabeledSample::new(drawn)?, n)?;

    let exceptions: Vec<Example> =
        distinct.iter().filter(|(x, l, _)| base.contains(x) != *l).map(|(x, _, _)| x.clone()).collect();
    let mut wrapped = ExceptionWrapped::new(base);
    for x in &exceptions {
        wrapped = exception_handle(wrapped, x)?;
    }
    let mut exceptions = exceptions;
    exceptions.sort();

    let witness = witness_for(learner, &[&fed, &exceptions], n)?;
    let consistent = is_consistent(&wrapped, sample)?;
    let report = Theorem2Report {
        m,
        epsilon0: eps0,
        examples_fed: fed.len(),
        exceptions: exceptions.len(),
        witness_bits: witness.len(),
        consistent,
        achieved_compression: m as f64 / witness.len().max(1) as f64,
        formula_compression: 1.0 / (2.0 * eps0 * n as f64 * bits_per_symbol(learner)),
    };
    Ok(Theorem2Outcome { hypothesis: wrapped, witness, report })
}

/// Rebuilds the wrapped hypothesis from its witness; `labels` stands in for
/// the target the decoder is conditioned on.
pub fn theorem2_decode<L: PacLearner>(
    learner: &L,
    witness: &WitnessCode,
    labels: &dyn Fn(&Example) -> Option<bool>,
) -> Result<ExceptionWrapped<L::Rep>> {
    let Conditioning::Transcript { n, lists: 2, .. } = witness.conditioning else {
        return Err(Error::ConditioningMismatch("transcript"));
    };
    let Decoded::Transcript(lists) = decode(witness, &witness.conditioning)? else {
        return Err(Error::ConditioningMismatch("transcript"));
    };
    let base = relearn(learner, &lists[0], labels, n)?;
    let mut wrapped = ExceptionWrapped::new(base);
    for x in &lists[1] {
        wrapped = exception_handle(wrapped, x)?;
    }
    Ok(wrapped)
}
