use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::targets::{mixture_support, random_circuit, random_monomial};
use crate::bounds::{finite_class_bound_ln, kc_bound, length_based_bound, vc_upper_bound, CompressionSpec, SampleSize};
use crate::coding::{encode_monomial_given_target, monomial_code_bits};
use crate::distribution::{stream_rng, FiniteDistribution, Oracle};
use crate::error::{Error, Result};
use crate::example::{binary_cube, Example, LabeledSample};
use crate::learners::{consistent_monomial, haussler_monomial_learn, standard_monomial_learn, CircuitBruteForce, PacLearner};
use crate::repr::{symmetric_difference_error, Literal, Monomial, Representation, SystemId, ThresholdCircuit};

const MAX_UNIFORM_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LearnerId {
    Standard,
    Haussler,
    Bruteforce,
    /// Returns the target itself.
    Oracle,
}

impl LearnerId {
    pub fn name(self) -> &'static str {
        match self {
            LearnerId::Standard => "standard",
            LearnerId::Haussler => "haussler",
            LearnerId::Bruteforce => "bruteforce",
            LearnerId::Oracle => "oracle",
        }
    }
}

/// Where each trial's sample size comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoundSource {
    /// VC upper bound with `d = n` (monomials) or `d = 2ⁿ` (circuits).
    Vc,
    /// Finite-class bound with `|H| = 3ⁿ + 1` (monomials) or `2^(2ⁿ)` (circuits).
    Finite,
    /// Length-based bound with `α = 0`, `β = 1` and `s` the target's bit length.
    Length,
    /// KC bound with the monomial codec length as `p` (standard learner only).
    Kc,
    Explicit { m: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TargetSpec {
    /// Canonical text form: `10-` style for monomials, the display form for circuits.
    Explicit { representation: String },
    /// Drawn per trial from the trial's stream.
    Random {
        /// Monomials: pin the literal count.
        #[serde(default)]
        size: Option<usize>,
        /// Circuits: gate count is uniform in `1..=max_gates`.
        #[serde(default = "default_max_gates")]
        max_gates: usize,
    },
}

fn default_max_gates() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DistributionSpec {
    /// Uniform over `{0,1}ⁿ` (n ≤ 20).
    Uniform,
    /// Explicit `(example, probability)` pairs.
    Explicit { points: Vec<(Example, f64)> },
    /// Uniform over a per-trial support of about half target positives.
    TargetMixture { support: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub system: SystemId,
    pub learner: LearnerId,
    pub bound: BoundSource,
    pub target: TargetSpec,
    pub distribution: DistributionSpec,
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    /// Worker threads for trials; `None` uses the global pool.
    #[serde(default)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Parameter("trials must be at least 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) || !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Parameter("epsilon and delta must lie in (0,1)".into()));
        }
        if self.n == 0 || self.n > 64 {
            return Err(Error::Parameter(format!("n must lie in 1..=64, got {}", self.n)));
        }
        if self.threads == Some(0) {
            return Err(Error::Parameter("threads must be at least 1".into()));
        }
        match self.system {
            SystemId::Monomial | SystemId::ThresholdCircuit => Ok(()),
            other => Err(Error::Parameter(format!("PAC experiments support monomial and threshold systems, not {other}"))),
        }
    }
}

/// A target of either experiment system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTarget {
    Monomial(Monomial),
    Circuit(ThresholdCircuit),
}

impl fmt::Display for AnyTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyTarget::Monomial(m) => m.fmt(f),
            AnyTarget::Circuit(c) => c.fmt(f),
        }
    }
}

impl AnyTarget {
    pub fn length_bits(&self) -> u64 {
        match self {
            AnyTarget::Monomial(m) => m.length_bits(),
            AnyTarget::Circuit(c) => c.length_bits(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub m: u64,
    /// Exact error over the support; `None` when the learner failed.
    pub error: Option<f64>,
    pub success: bool,
    pub witness_bits: Option<u64>,
    pub target: String,
    pub hypothesis: Option<String>,
    pub failure: Option<String>,
    /// Excluded from serialized output so reports are reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl PartialEq for TrialResult {
    /// Ignores wall time.
    fn eq(&self, other: &Self) -> bool {
        (self.trial, self.m, self.error, self.success, self.witness_bits)
            == (other.trial, other.m, other.error, other.success, other.witness_bits)
            && (&self.target, &self.hypothesis, &self.failure) == (&other.target, &other.hypothesis, &other.failure)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PacReport {
    pub trials: Vec<TrialResult>,
    pub successes: usize,
    pub success_rate: f64,
    /// `(1−δ) − 3·√(δ(1−δ)/trials)`.
    pub threshold: f64,
    pub passed: bool,
}

/// One-sided 3σ binomial floor for a `1−δ` success probability.
pub fn binomial_floor(delta: f64, trials: usize) -> f64 {
    (1.0 - delta) - 3.0 * (delta * (1.0 - delta) / trials as f64).sqrt()
}

fn make_target(config: &ExperimentConfig, trial: usize) -> Result<AnyTarget> {
    let n = config.n;
    match (&config.target, config.system) {
        (TargetSpec::Explicit { representation }, SystemId::Monomial) => {
            let m: Monomial = representation.parse()?;
            if m.n() != n {
                return Err(Error::ExampleLength { len: m.n(), n });
            }
            Ok(AnyTarget::Monomial(m))
        }
        (TargetSpec::Explicit { representation }, _) => Ok(AnyTarget::Circuit(ThresholdCircuit::parse(representation, n)?)),
        (TargetSpec::Random { size, .. }, SystemId::Monomial) => {
            let mut rng = stream_rng(config.seed, 3 * trial as u64);
            Ok(AnyTarget::Monomial(random_monomial(&mut rng, n, *size)?))
        }
        (TargetSpec::Random { max_gates, .. }, _) => {
            let mut rng = stream_rng(config.seed, 3 * trial as u64);
            Ok(AnyTarget::Circuit(random_circuit(&mut rng, n, *max_gates)?))
        }
    }
}

fn make_distribution(config: &ExperimentConfig, target: &AnyTarget, trial: usize) -> Result<FiniteDistribution> {
    let n = config.n;
    match &config.distribution {
        DistributionSpec::Uniform => {
            if n > MAX_UNIFORM_N {
                return Err(Error::Parameter(format!("uniform distribution needs n ≤ {MAX_UNIFORM_N}")));
            }
            FiniteDistribution::uniform(binary_cube(n).collect())
        }
        DistributionSpec::Explicit { points } => {
            if let Some((x, _)) = points.iter().find(|(x, _)| x.len() != n) {
                return Err(Error::ExampleLength { len: x.len(), n });
            }
            let (support, probs) = points.iter().cloned().unzip();
            FiniteDistribution::new(support, probs)
        }
        DistributionSpec::TargetMixture { support } => {
            if *support == 0 {
                return Err(Error::Parameter("mixture support must be positive".into()));
            }
            let mut rng = stream_rng(config.seed, 3 * trial as u64 + 1);
            let pts = match target {
                AnyTarget::Monomial(m) => mixture_support(m, &mut rng, n, *support)?,
                AnyTarget::Circuit(c) => mixture_support(c, &mut rng, n, *support)?,
            };
            FiniteDistribution::uniform(pts)
        }
    }
}

fn free_variables(m: &Monomial) -> usize {
    if m.is_contradiction() {
        0
    } else {
        m.literals().iter().filter(|&&l| l == Literal::Absent).count()
    }
}

/// The sample size a trial with this target uses.
pub fn resolve_sample_size(config: &ExperimentConfig, target: &AnyTarget) -> Result<u64> {
    let (n, eps, delta) = (config.n, config.epsilon, config.delta);
    let circuit_ln_h = 2f64.powi(n as i32) * std::f64::consts::LN_2;
    let monomial_ln_h = n as f64 * 3f64.ln() + (-(n as f64) * 3f64.ln()).exp().ln_1p();
    match (config.bound, target) {
        (BoundSource::Explicit { m }, _) => Ok(m),
        (BoundSource::Vc, AnyTarget::Monomial(_)) => vc_upper_bound(n as u64, eps, delta),
        (BoundSource::Vc, AnyTarget::Circuit(_)) => vc_upper_bound(1 << n.min(62), eps, delta),
        (BoundSource::Finite, AnyTarget::Monomial(_)) => finite_class_bound_ln(monomial_ln_h, eps, delta),
        (BoundSource::Finite, AnyTarget::Circuit(_)) => finite_class_bound_ln(circuit_ln_h, eps, delta),
        (BoundSource::Length, t) => length_based_bound(t.length_bits() as f64, eps, delta, 0.0, 1.0),
        (BoundSource::Kc, AnyTarget::Monomial(m)) if config.learner == LearnerId::Standard => {
            let bits = monomial_code_bits(free_variables(m)).max(1);
            let spec = CompressionSpec::constant_p(0.0, bits as f64)?;
            match kc_bound(&spec, n as u64, m.length_bits(), eps, delta, true)? {
                SampleSize::Finite(m) => Ok(m),
                SampleSize::Infinite => Err(Error::Infinite("KC bound is infinite for this codec".into())),
            }
        }
        (BoundSource::Kc, _) => {
            Err(Error::Parameter("the kc bound source needs the standard monomial learner".into()))
        }
    }
}

fn evaluate<R: Representation>(
    target: &R,
    dist: &FiniteDistribution,
    hypothesis: Result<R>,
    witness: impl Fn(&R) -> Option<u64>,
    epsilon: f64,
) -> Result<(Option<f64>, bool, Option<u64>, Option<String>, Option<String>)>
where
    R: fmt::Display,
{
    match hypothesis {
        Ok(h) => {
            let err = symmetric_difference_error(&h, target, dist)?;
            Ok((Some(err), err <= epsilon, witness(&h), Some(h.to_string()), None))
        }
        Err(e) => Ok((None, false, None, None, Some(e.to_string()))),
    }
}

fn run_trial(config: &ExperimentConfig, trial: usize) -> Result<TrialResult> {
    let start = Instant::now();
    let target = make_target(config, trial)?;
    let dist = make_distribution(config, &target, trial)?;
    let m = resolve_sample_size(config, &target)?;
    let stream = 3 * trial as u64 + 2;
    let (error, success, witness_bits, hypothesis, failure) = match &target {
        AnyTarget::Monomial(t) => {
            let mut oracle = Oracle::for_target(dist.clone(), t, config.seed, stream)?;
            let sample = LabeledSample::new(oracle.draw_many(m as usize))?;
            let n = config.n;
            let h = match config.learner {
                LearnerId::Standard => standard_monomial_learn(&sample, n),
                LearnerId::Haussler => haussler_monomial_learn(&sample, n),
                LearnerId::Bruteforce => consistent_monomial(&sample, n, n)
                    .and_then(|h| h.ok_or_else(|| Error::NotRealizable("no consistent monomial".into()))),
                LearnerId::Oracle => Ok(t.clone()),
            };
            let witness = |h: &Monomial| encode_monomial_given_target(h, t).ok().map(|c| c.len());
            evaluate(t, &dist, h, witness, config.epsilon)?
        }
        AnyTarget::Circuit(t) => {
            let mut oracle = Oracle::for_target(dist.clone(), t, config.seed, stream)?;
            let sample = LabeledSample::new(oracle.draw_many(m as usize))?;
            let h = match config.learner {
                LearnerId::Bruteforce => CircuitBruteForce::default().learn(&sample, config.n),
                LearnerId::Oracle => Ok(t.clone()),
                other => {
                    return Err(Error::Parameter(format!("learner {} does not apply to circuits", other.name())))
                }
            };
            evaluate(t, &dist, h, |_| None, config.epsilon)?
        }
    };
    Ok(TrialResult {
        trial,
        m,
        error,
        success,
        witness_bits,
        target: target.to_string(),
        hypothesis,
        failure,
        wall_time: start.elapsed(),
    })
}

/// Runs `config.trials` independent trials and reports the success rate.
///
/// Trial `t` draws its target, support and examples from streams derived from
/// `(seed, t)`, so results do not depend on scheduling.
pub fn pac_verify(config: &ExperimentConfig) -> Result<PacReport> {
    config.validate()?;
    let run = || (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect::<Result<Vec<_>>>();
    let trials = match config.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Parameter(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let successes = trials.iter().filter(|t| t.success).count();
    let success_rate = successes as f64 / trials.len() as f64;
    let threshold = binomial_floor(config.delta, config.trials);
    Ok(PacReport { trials, successes, success_rate, threshold, passed: success_rate >= threshold })
}
