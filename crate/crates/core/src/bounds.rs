//! Sample-complexity calculators.
//!
//! Log-base convention: formulas stated with `ln` use the natural log;
//! formulas stated with `log` (the VC upper bound, the cardinality chain and
//! the superstring lemma) use base 2.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Upper end of the `f⁻¹` search; `f` still below target there means `f⁻¹ = ∞`.
pub const SEARCH_CEILING: u64 = 1 << 63;

const ROUNDING_TOLERANCE: f64 = 1e-9;

/// A sample size, or the explicit "no finite bound" outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SampleSize {
    Finite(u64),
    Infinite,
}

impl SampleSize {
    pub fn finite(self) -> Option<u64> {
        match self {
            SampleSize::Finite(m) => Some(m),
            SampleSize::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == SampleSize::Infinite
    }
}

impl fmt::Display for SampleSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleSize::Finite(m) => write!(f, "{m}"),
            SampleSize::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for SampleSize {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SampleSize::Finite(m) => s.serialize_u64(*m),
            SampleSize::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `⌈x⌉`, treating values within rounding noise of an integer as that integer.
pub fn ceil_count(x: f64) -> Result<u64> {
    if !x.is_finite() {
        return Err(Error::Parameter(format!("non-finite sample size {x}")));
    }
    let slack = ROUNDING_TOLERANCE * x.abs().max(1.0);
    let c = (x - slack).ceil().max(0.0);
    if c >= u64::MAX as f64 {
        return Err(Error::Parameter(format!("sample size {x} overflows")));
    }
    Ok(c as u64)
}

/// `⌊x⌋ + 1`: the least integer strictly above `x`, with the same tolerance.
pub fn strictly_above(x: f64) -> Result<u64> {
    if !x.is_finite() {
        return Err(Error::Parameter(format!("non-finite sample size {x}")));
    }
    let slack = ROUNDING_TOLERANCE * x.abs().max(1.0);
    let f = (x + slack).floor().max(-1.0);
    if f + 1.0 >= u64::MAX as f64 {
        return Err(Error::Parameter(format!("sample size {x} overflows")));
    }
    Ok((f + 1.0) as u64)
}

fn check_eps_delta(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Parameter(format!("delta must lie in (0,1), got {delta}")));
    }
    Ok(())
}

fn check_vc_dim(d: u64) -> Result<()> {
    if d < 1 {
        return Err(Error::Parameter("VC dimension must be at least 1".into()));
    }
    Ok(())
}

/// `⌈(4/ε)(d·log₂(12/ε) + log₂(2/δ))⌉`.
pub fn vc_upper_bound(d: u64, epsilon: f64, delta: f64) -> Result<u64> {
    check_vc_dim(d)?;
    check_eps_delta(epsilon, delta)?;
    ceil_count(4.0 / epsilon * (d as f64 * (12.0 / epsilon).log2() + (2.0 / delta).log2()))
}

/// Least `m` with `m > max((d−1)/(32ε), (1/ε)·ln(1/δ))`.
pub fn vc_lower_bound(d: u64, epsilon: f64, delta: f64) -> Result<u64> {
    check_vc_dim(d)?;
    check_eps_delta(epsilon, delta)?;
    let dimension_term = (d - 1) as f64 / (32.0 * epsilon);
    let confidence_term = (1.0 / delta).ln() / epsilon;
    strictly_above(dimension_term.max(confidence_term))
}

/// `⌈(1/ε)·ln(|H|/δ)⌉` for a consistent learner over a finite class.
pub fn finite_class_bound(class_size: u128, epsilon: f64, delta: f64) -> Result<u64> {
    if class_size < 1 {
        return Err(Error::Parameter("class size must be at least 1".into()));
    }
    finite_class_bound_ln((class_size as f64).ln(), epsilon, delta)
}

/// [`finite_class_bound`] for classes given by `ln |H|`.
pub fn finite_class_bound_ln(ln_class_size: f64, epsilon: f64, delta: f64) -> Result<u64> {
    check_eps_delta(epsilon, delta)?;
    if !(ln_class_size >= 0.0) {
        return Err(Error::Parameter("class size must be at least 1".into()));
    }
    ceil_count((ln_class_size - delta.ln()) / epsilon)
}

/// `⌈max((2/ε)·ln(1/δ), ((2 ln 2)·s^β/ε)^{1/(1−α)})⌉` for a length-based Occam
/// algorithm whose hypotheses have at most `m^α s^β` bits.
pub fn length_based_bound(s: f64, epsilon: f64, delta: f64, alpha: f64, beta: f64) -> Result<u64> {
    check_eps_delta(epsilon, delta)?;
    check_alpha(alpha)?;
    if !(s >= 0.0) || !(beta >= 0.0) {
        return Err(Error::Parameter("s and beta must be nonnegative".into()));
    }
    let confidence = 2.0 / epsilon * (1.0 / delta).ln();
    let length = (2.0 * std::f64::consts::LN_2 * s.powf(beta) / epsilon).powf(1.0 / (1.0 - alpha));
    ceil_count(confidence.max(length))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Parameter(format!("alpha must lie in [0,1), got {alpha}")));
    }
    Ok(())
}

type PolyFn = dyn Fn(u64, u64, f64) -> f64 + Send + Sync;
type GeneralFn = dyn Fn(u64, u64, u64, f64) -> f64 + Send + Sync;

/// The compression `f(m, n, s, γ)` achieved by an Occam algorithm.
#[derive(Clone)]
pub enum CompressionSpec {
    /// `f = m^{1−α} / p(n, s, γ)`.
    Polynomial { alpha: f64, p: Arc<PolyFn> },
    /// Any `f`, required to be nondecreasing in `m`.
    General(Arc<GeneralFn>),
}

impl CompressionSpec {
    pub fn polynomial(alpha: f64, p: impl Fn(u64, u64, f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(CompressionSpec::Polynomial { alpha, p: Arc::new(p) })
    }

    /// Polynomial form with a constant `p`.
    pub fn constant_p(alpha: f64, p: f64) -> Result<Self> {
        Self::polynomial(alpha, move |_, _, _| p)
    }

    pub fn general(f: impl Fn(u64, u64, u64, f64) -> f64 + Send + Sync + 'static) -> Self {
        CompressionSpec::General(Arc::new(f))
    }

    pub fn eval(&self, m: u64, n: u64, s: u64, gamma: f64) -> Result<f64> {
        match self {
            CompressionSpec::Polynomial { alpha, p } => {
                let p = p(n, s, gamma);
                if !(p > 0.0 && p.is_finite()) {
                    return Err(Error::Parameter(format!("p(n,s,γ) must be positive, got {p}")));
                }
                Ok((m as f64).powf(1.0 - alpha) / p)
            }
            CompressionSpec::General(f) => Ok(f(m, n, s, gamma)),
        }
    }
}

impl fmt::Debug for CompressionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompressionSpec::Polynomial { alpha, .. } => write!(f, "Polynomial {{ alpha: {alpha}, .. }}"),
            CompressionSpec::General(_) => f.write_str("General(..)"),
        }
    }
}

/// `f⁻¹(x, n, s, γ)`: the least `m ≥ 1` with `f(m) ≥ x`, or `Infinite`.
pub fn inverse_compression(spec: &CompressionSpec, x: f64, n: u64, s: u64, gamma: f64) -> Result<SampleSize> {
    inverse_compression_with_ceiling(spec, x, n, s, gamma, SEARCH_CEILING)
}

/// [`inverse_compression`] with an explicit search ceiling.
pub fn inverse_compression_with_ceiling(
    spec: &CompressionSpec,
    x: f64,
    n: u64,
    s: u64,
    gamma: f64,
    ceiling: u64,
) -> Result<SampleSize> {
    let f = |m: u64| -> Result<f64> {
        let v = spec.eval(m, n, s, gamma)?;
        if v.is_nan() {
            return Err(Error::Parameter(format!("f({m}) is NaN")));
        }
        Ok(v)
    };
    let non_monotone = |lo: u64, f_lo: f64, hi: u64, f_hi: f64| Error::NonMonotone { lo, hi, f_lo, f_hi };

    // Exponential phase, doubling as a grid spot-check of monotonicity.
    let mut lo = 0u64;
    let mut f_lo = f64::NEG_INFINITY;
    let mut hi = 1u64;
    let mut f_hi = f(hi)?;
    while f_hi < x {
        if f_hi < f_lo {
            return Err(non_monotone(lo, f_lo, hi, f_hi));
        }
        if hi >= ceiling {
            return Ok(SampleSize::Infinite);
        }
        lo = hi;
        f_lo = f_hi;
        hi = hi.saturating_mul(2).min(ceiling);
        f_hi = f(hi)?;
    }
    if f_hi < f_lo {
        return Err(non_monotone(lo, f_lo, hi, f_hi));
    }

    // Invariant: f(lo) < x ≤ f(hi).
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let f_mid = f(mid)?;
        if f_mid < f_lo || f_mid > f_hi {
            let (a, fa, b, fb) = if f_mid < f_lo { (lo, f_lo, mid, f_mid) } else { (mid, f_mid, hi, f_hi) };
            return Err(non_monotone(a, fa, b, fb));
        }
        if f_mid >= x {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Ok(SampleSize::Finite(hi))
}

/// Sample complexity of the PAC learner built from an Occam algorithm with
/// compression `spec`:
/// `max(⌈(2/ε)·ln(2/δ)⌉, f⁻¹(2 ln 2/ε, n, s, δ/2))`.
///
/// Deterministic Occam algorithms may use `1/δ` and `δ` in place of `2/δ` and `δ/2`.
pub fn kc_bound(
    spec: &CompressionSpec,
    n: u64,
    s: u64,
    epsilon: f64,
    delta: f64,
    deterministic: bool,
) -> Result<SampleSize> {
    check_eps_delta(epsilon, delta)?;
    let (confidence_ratio, gamma) = if deterministic { (1.0 / delta, delta) } else { (2.0 / delta, delta / 2.0) };
    let confidence = ceil_count(2.0 / epsilon * confidence_ratio.ln())?;
    let compression = inverse_compression(spec, 2.0 * std::f64::consts::LN_2 / epsilon, n, s, gamma)?;
    Ok(match compression {
        SampleSize::Finite(m) => SampleSize::Finite(m.max(confidence)),
        SampleSize::Infinite => SampleSize::Infinite,
    })
}

/// `d ≤ log₂|H| ≤ n·d`.
pub fn cardinality_chain_holds(d: u64, class_size: u128, n: u64) -> bool {
    let log_h = (class_size as f64).log2();
    let tol = 1e-12;
    d as f64 <= log_h + tol && log_h <= (n * d) as f64 + tol
}

/// Inputs for a full [`BoundReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundInputs {
    pub epsilon: f64,
    pub delta: f64,
    pub n: u64,
    /// Target representation length, in bits.
    pub s: u64,
    pub d: Option<u64>,
    pub class_size: Option<u128>,
    pub alpha: f64,
    pub beta: f64,
}

impl BoundInputs {
    pub fn new(epsilon: f64, delta: f64, n: u64, s: u64) -> Result<Self> {
        let inputs = Self { epsilon, delta, n, s, d: None, class_size: None, alpha: 0.0, beta: 1.0 };
        inputs.validate()?;
        Ok(inputs)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Parameter(format!("epsilon must lie in (0,1), got {}", self.epsilon)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Parameter(format!("delta must lie in (0,1), got {}", self.delta)));
        }
        check_alpha(self.alpha)?;
        if !(self.beta >= 0.0) {
            return Err(Error::Parameter(format!("beta must be nonnegative, got {}", self.beta)));
        }
        Ok(())
    }
}

/// Every applicable bound for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    pub vc_upper: Option<u64>,
    pub vc_lower: Option<u64>,
    pub finite_class: Option<u64>,
    pub length_based: Option<u64>,
    pub kc_based: Option<SampleSize>,
    pub log_base_notes: BTreeMap<&'static str, &'static str>,
}

pub fn log_base_notes() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("vc_upper", "log base 2"),
        ("vc_lower", "natural log"),
        ("finite_class", "natural log"),
        ("length_based", "natural log (2 ln 2 factor)"),
        ("kc_based", "natural log; f^-1 evaluated at 2 ln 2/epsilon"),
    ])
}

impl BoundReport {
    /// Computes the bounds whose inputs are present: VC bounds need `d`, the
    /// finite-class bound needs `class_size`, the KC bound needs `compression`.
    pub fn compute(inputs: BoundInputs, compression: Option<&CompressionSpec>, deterministic: bool) -> Result<Self> {
        inputs.validate()?;
        let (eps, delta) = (inputs.epsilon, inputs.delta);
        let vc_upper = inputs.d.filter(|&d| d >= 1).map(|d| vc_upper_bound(d, eps, delta)).transpose()?;
        let vc_lower = inputs.d.filter(|&d| d >= 1).map(|d| vc_lower_bound(d, eps, delta)).transpose()?;
        let finite_class = inputs.class_size.map(|h| finite_class_bound(h, eps, delta)).transpose()?;
        let length_based = Some(length_based_bound(inputs.s as f64, eps, delta, inputs.alpha, inputs.beta)?);
        let kc_based = compression
            .map(|spec| kc_bound(spec, inputs.n, inputs.s, eps, delta, deterministic))
            .transpose()?;
        Ok(Self { inputs, vc_upper, vc_lower, finite_class, length_based, kc_based, log_base_notes: log_base_notes() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, LN_2};

    #[test]
    fn vc_upper_examples() {
        assert_eq!(vc_upper_bound(1, 0.1, 0.1).unwrap(), 450);
        assert_eq!(vc_upper_bound(1, 0.75, 0.5).unwrap(), 32);
        assert_eq!(vc_upper_bound(2, 0.1, 0.1).unwrap(), 726);
        assert!(vc_upper_bound(0, 0.1, 0.1).is_err());
    }

    #[test]
    fn vc_lower_examples() {
        assert_eq!(vc_lower_bound(33, 0.1, 1.0 / E).unwrap(), 11);
        assert_eq!(vc_lower_bound(1, 0.5, 1.0 / E).unwrap(), 3);
        assert_eq!(vc_lower_bound(1, 1.0, 1.0 / (E * E)).unwrap(), 3);
        assert!(vc_lower_bound(0, 0.1, 0.1).is_err());
    }

    #[test]
    fn finite_class_examples() {
        assert_eq!(finite_class_bound(1, 1.0, 1.0 / E).unwrap(), 1);
        assert_eq!(finite_class_bound(9, 0.5, 0.5).unwrap(), 6);
        assert_eq!(finite_class_bound(244, 0.1, 0.05).unwrap(), 85);
        assert!(finite_class_bound(0, 0.1, 0.1).is_err());
    }

    #[test]
    fn length_based_examples() {
        assert_eq!(length_based_bound(4.0, 0.1, 0.1, 0.5, 1.0).unwrap(), 3075);
        // (2/ε)·ln(1/δ) = 1/ln 2 ≈ 1.44 dominates, so the ceiling is 2.
        assert_eq!(length_based_bound(1.0, 2.0 * LN_2, 1.0 / E, 0.0, 0.0).unwrap(), 2);
        let genome = length_based_bound(12e9, 0.1, 0.1, 0.0, 1.0).unwrap();
        assert!((genome as f64 - 1.6636e11).abs() / 1.6636e11 < 1e-3, "{genome}");
        assert!(length_based_bound(4.0, 0.1, 0.1, 1.0, 1.0).is_err());
    }

    #[test]
    fn inverse_compression_examples() {
        let sqrt = CompressionSpec::constant_p(0.5, 1.0).unwrap();
        assert_eq!(inverse_compression(&sqrt, 2.0 * LN_2 / 0.1, 1, 1, 0.1).unwrap(), SampleSize::Finite(193));
        let flat = CompressionSpec::general(|_, _, _, _| 0.5);
        assert_eq!(inverse_compression(&flat, 1.0, 1, 1, 0.1).unwrap(), SampleSize::Infinite);
        let linear = CompressionSpec::constant_p(0.0, 10.0).unwrap();
        assert_eq!(inverse_compression(&linear, 5.0, 1, 1, 0.1).unwrap(), SampleSize::Finite(50));
    }

    #[test]
    fn inverse_detects_non_monotone() {
        let wobble = CompressionSpec::general(|m, _, _, _| if m % 2 == 0 { 1.0 } else { 2.0 });
        assert!(matches!(inverse_compression(&wobble, 100.0, 1, 1, 0.1), Err(Error::NonMonotone { .. })));
    }

    #[test]
    fn kc_examples() {
        let total = CompressionSpec::constant_p(0.0, 10.0).unwrap();
        assert_eq!(kc_bound(&total, 1, 1, 0.1, 0.1, false).unwrap(), SampleSize::Finite(139));
        let flat = CompressionSpec::general(|_, _, _, _| 1.0);
        assert_eq!(kc_bound(&flat, 1, 1, 0.1, 0.1, false).unwrap(), SampleSize::Infinite);
    }

    #[test]
    fn deterministic_variant_uses_delta() {
        let spec = CompressionSpec::constant_p(0.0, 1.0).unwrap();
        let det = kc_bound(&spec, 1, 1, 0.1, 0.1, true).unwrap();
        let rnd = kc_bound(&spec, 1, 1, 0.1, 0.1, false).unwrap();
        // (2/0.1)·ln 10 = 46.05 vs (2/0.1)·ln 20 = 59.9
        assert_eq!(det, SampleSize::Finite(47));
        assert_eq!(rnd, SampleSize::Finite(60));
    }

    #[test]
    fn cardinality_chain() {
        assert!(cardinality_chain_holds(2, 10, 2));
        assert!(cardinality_chain_holds(3, 28, 3));
        assert!(cardinality_chain_holds(0, 1, 5));
        assert!(!cardinality_chain_holds(3, 4, 3));
    }

    #[test]
    fn report_fills_available_bounds() {
        let mut inputs = BoundInputs::new(0.1, 0.05, 1, 1).unwrap();
        inputs.class_size = Some(244);
        let r = BoundReport::compute(inputs, None, false).unwrap();
        assert_eq!(r.finite_class, Some(85));
        assert_eq!(r.vc_upper, None);
        assert_eq!(r.kc_based, None);
        assert!(BoundInputs::new(1.0, 0.1, 1, 1).is_err());
    }
}
