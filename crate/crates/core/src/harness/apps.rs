use serde::Serialize;

use super::pac::{pac_verify, BoundSource, DistributionSpec, ExperimentConfig, LearnerId, TargetSpec, TrialResult};
use super::targets::random_dna;
use crate::bounds::{kc_bound, length_based_bound, CompressionSpec, SampleSize};
use crate::coding::{decode_superstring, encode_superstring_given_target, monomial_code_bits};
use crate::distribution::stream_rng;
use crate::error::{Error, Result};
use crate::example::Alphabet;
use crate::learners::greedy_superstring;
use crate::repr::{SuperstringRep, SystemId};

/// Largest target length materialized outside bound-only mode.
pub const MAX_DESK_S: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct App1Config {
    /// Target (genome) length in bases.
    pub s: u64,
    /// Read length.
    pub n: u64,
    pub epsilon: f64,
    pub delta: f64,
    /// Reads to sample in desk mode; default `⌈2s/n⌉ + 1`.
    pub num_samples: Option<usize>,
    pub bound_only: bool,
    pub seed: u64,
}

impl App1Config {
    pub fn new(s: u64, n: u64) -> Self {
        Self { s, n, epsilon: 0.1, delta: 0.1, num_samples: None, bound_only: false, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct App1Report {
    pub mode: &'static str,
    pub s: u64,
    pub n: u64,
    pub epsilon: f64,
    pub delta: f64,
    /// Hypothesis length fed to the length-based bound: `2·2s` bits.
    pub length_bits: f64,
    /// Description length fed to the KC bound.
    pub kc_bits: f64,
    pub length_m: u64,
    pub kc_m: u64,
    /// `length_m / kc_m`.
    pub ratio: f64,
    pub reads: Option<usize>,
    pub t_prime_len: Option<usize>,
    pub groups: Option<u64>,
    pub group_limit: Option<u64>,
    /// `g·(2⌈log₂s⌉ + ⌈log₂n⌉) + 1`.
    pub formula_bits: Option<u64>,
    pub literal: Option<bool>,
    pub round_trip: Option<bool>,
}

fn kc_m(p: f64, n: u64, s: u64, eps: f64, delta: f64) -> Result<u64> {
    let spec = CompressionSpec::constant_p(0.0, p)?;
    match kc_bound(&spec, n, s, eps, delta, true)? {
        SampleSize::Finite(m) => Ok(m),
        SampleSize::Infinite => Err(Error::Infinite("KC bound is infinite".into())),
    }
}

/// Read start positions: evenly spread with step at most `n/2`, jittered by
/// up to `n/4`, first and last window always included.
fn read_positions(rng: &mut impl rand::Rng, s: usize, n: usize, count: usize) -> Vec<usize> {
    let last = s - n;
    if count <= 1 || last == 0 {
        return vec![0];
    }
    let jitter = (n / 4) as i64;
    (0..count)
        .map(|i| {
            let base = (i as f64 * last as f64 / (count - 1) as f64).round() as i64;
            if i == 0 || i == count - 1 {
                return base as usize;
            }
            let off = if jitter > 0 { rng.gen_range(-jitter..=jitter) } else { 0 };
            (base + off).clamp(0, last as i64) as usize
        })
        .collect()
}

/// Sample complexity of learning a genome from reads, length-based vs KC-based.
///
/// Bound-only mode uses the formulas with real-valued logs: `p = 4s` bits for
/// the length side and `4s·(2 log₂s + log₂n)/n` for the KC side. Desk mode
/// materializes a random target, assembles sampled reads greedily and takes the
/// measured superstring code length as the KC side.
pub fn application1_experiment(config: &App1Config) -> Result<App1Report> {
    let App1Config { s, n, epsilon, delta, .. } = *config;
    if n < 1 || n > s {
        return Err(Error::Parameter(format!("read length must lie in 1..=s, got n = {n}, s = {s}")));
    }
    let length_bits = 4.0 * s as f64;
    let length_m = length_based_bound(length_bits, epsilon, delta, 0.0, 1.0)?;
    let mut report = App1Report {
        mode: "bound-only",
        s,
        n,
        epsilon,
        delta,
        length_bits,
        kc_bits: 0.0,
        length_m,
        kc_m: 0,
        ratio: 0.0,
        reads: None,
        t_prime_len: None,
        groups: None,
        group_limit: None,
        formula_bits: None,
        literal: None,
        round_trip: None,
    };
    if config.bound_only {
        let (sf, nf) = (s as f64, n as f64);
        report.kc_bits = length_bits * (2.0 * sf.log2() + nf.log2()) / nf;
    } else {
        if s > MAX_DESK_S {
            return Err(Error::Parameter(format!("s = {s} is too large to materialize (max {MAX_DESK_S}); use bound-only mode")));
        }
        let (su, nu) = (s as usize, n as usize);
        let mut rng = stream_rng(config.seed, 0);
        let t = SuperstringRep::dna(random_dna(&mut rng, su), nu)?;
        let count = config.num_samples.unwrap_or((2 * su).div_ceil(nu) + 1);
        let reads: Vec<&[u8]> =
            read_positions(&mut rng, su, nu, count).into_iter().map(|p| &t.text()[p..p + nu]).collect();
        let t_prime = greedy_superstring(Alphabet::Dna, &reads)?;
        let (code, stats) = encode_superstring_given_target(&t_prime, &t, &reads)?;
        report.mode = "desk";
        report.kc_bits = code.len() as f64;
        report.reads = Some(reads.len());
        report.t_prime_len = Some(t_prime.len());
        report.groups = Some(stats.groups);
        report.group_limit = Some(stats.group_limit);
        report.formula_bits = Some(stats.formula_bits);
        report.literal = Some(stats.literal);
        report.round_trip = Some(decode_superstring(&code.bits, &t).ok().as_ref() == Some(&t_prime));
    }
    report.kc_m = kc_m(report.kc_bits.max(1.0), n, s, epsilon, delta)?;
    report.ratio = report.length_m as f64 / report.kc_m as f64;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct App2Config {
    pub n: usize,
    /// Literal count of the targets; default `n − ⌈√n⌉`.
    pub target_size: Option<usize>,
    pub epsilon: f64,
    pub delta: f64,
    pub trials: usize,
    pub seed: u64,
    pub threads: Option<usize>,
    /// Points in each trial's distribution support.
    pub support: usize,
}

impl App2Config {
    pub fn new(n: usize) -> Self {
        Self { n, target_size: None, epsilon: 0.1, delta: 0.1, trials: 200, seed: 0, threads: None, support: 4096 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct App2Report {
    pub n: usize,
    pub target_size: usize,
    /// Monomial codec length `⌈(n − |M|)·log₂3⌉`.
    pub codec_bits: u64,
    /// Hypothesis length for the length-based bound, `2n`.
    pub length_bits: u64,
    pub kc_m: u64,
    pub length_m: u64,
    /// `kc_m / length_m`.
    pub ratio: f64,
    pub kc_smaller: bool,
    pub success_rate: f64,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip)]
    pub trials: Vec<TrialResult>,
}

/// Standard monomial learner on targets of fixed size: KC-based vs
/// length-based sample complexity, and a PAC run at the KC-based size.
pub fn application2_experiment(config: &App2Config) -> Result<App2Report> {
    let n = config.n;
    if n == 0 || n > 64 {
        return Err(Error::Parameter(format!("n must lie in 1..=64, got {n}")));
    }
    let target_size = config.target_size.unwrap_or(n - (n as f64).sqrt().ceil() as usize);
    if target_size > n {
        return Err(Error::Parameter(format!("target size {target_size} exceeds n = {n}")));
    }
    let codec_bits = monomial_code_bits(n - target_size);
    let length_bits = 2 * n as u64;
    let (eps, delta) = (config.epsilon, config.delta);
    let kc = kc_m(codec_bits.max(1) as f64, n as u64, length_bits, eps, delta)?;
    let length_m = length_based_bound(length_bits as f64, eps, delta, 0.0, 1.0)?;
    let exp = ExperimentConfig {
        system: SystemId::Monomial,
        learner: LearnerId::Standard,
        bound: BoundSource::Kc,
        target: TargetSpec::Random { size: Some(target_size), max_gates: 1 },
        distribution: DistributionSpec::TargetMixture { support: config.support },
        n,
        epsilon: eps,
        delta,
        trials: config.trials,
        seed: config.seed,
        threads: config.threads,
    };
    let pac = pac_verify(&exp)?;
    debug_assert!(pac.trials.iter().all(|t| t.m == kc));
    Ok(App2Report {
        n,
        target_size,
        codec_bits,
        length_bits,
        kc_m: kc,
        length_m,
        ratio: kc as f64 / length_m as f64,
        kc_smaller: kc < length_m,
        success_rate: pac.success_rate,
        threshold: pac.threshold,
        passed: pac.passed,
        trials: pac.trials,
    })
}
