//! Finite-support distributions and the example oracle.

use std::collections::HashSet;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::example::Example;
use crate::repr::Representation;

/// Probabilities must sum to one within this tolerance.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

/// A counter-based generator keyed by `(master seed, stream id)`.
///
/// Streams with different ids are independent, so parallel trials can each
/// own one without sharing state.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    support: Vec<Example>,
    probabilities: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new(support: Vec<Example>, probabilities: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Distribution("empty support".into()));
        }
        if support.len() != probabilities.len() {
            return Err(Error::Distribution(format!(
                "{} support points but {} probabilities",
                support.len(),
                probabilities.len()
            )));
        }
        if let Some(p) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Distribution(format!("invalid probability {p}")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::Distribution(format!("probabilities sum to {total}")));
        }
        let mut seen = HashSet::with_capacity(support.len());
        if let Some(dup) = support.iter().find(|x| !seen.insert(*x)) {
            return Err(Error::Distribution(format!("duplicate support point {dup}")));
        }
        Ok(Self { support, probabilities })
    }

    pub fn uniform(support: Vec<Example>) -> Result<Self> {
        let p = 1.0 / support.len().max(1) as f64;
        let k = support.len();
        Self::new(support, vec![p; k])
    }

    /// Normalizes nonnegative weights; zero-weight points are dropped.
    pub fn from_weights(points: impl IntoIterator<Item = (Example, f64)>) -> Result<Self> {
        let (support, weights): (Vec<_>, Vec<_>) = points.into_iter().filter(|(_, w)| *w > 0.0).unzip();
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Distribution("weights sum to zero".into()));
        }
        Self::new(support, weights.iter().map(|w| w / total).collect())
    }

    pub fn support(&self) -> &[Example] {
        &self.support
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Example, f64)> {
        self.support.iter().zip(self.probabilities.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Draws `(x, x ∈ c(target))` with `x` distributed per a [`FiniteDistribution`].
///
/// Labels are computed once per support point. Identical seeds and streams give
/// identical draw sequences.
#[derive(Debug, Clone)]
pub struct Oracle {
    distribution: FiniteDistribution,
    labels: Vec<bool>,
    sampler: WeightedIndex<f64>,
    rng: ChaCha8Rng,
}

impl Oracle {
    pub fn new(distribution: FiniteDistribution, labels: Vec<bool>, rng: ChaCha8Rng) -> Result<Self> {
        if labels.len() != distribution.len() {
            return Err(Error::Distribution("one label per support point required".into()));
        }
        let sampler = WeightedIndex::new(distribution.probabilities())
            .map_err(|e| Error::Distribution(e.to_string()))?;
        Ok(Self { distribution, labels, sampler, rng })
    }

    pub fn for_target<R: Representation>(
        distribution: FiniteDistribution,
        target: &R,
        master_seed: u64,
        stream: u64,
    ) -> Result<Self> {
        let labels = distribution
            .support()
            .iter()
            .map(|x| target.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        Self::new(distribution, labels, stream_rng(master_seed, stream))
    }

    pub fn distribution(&self) -> &FiniteDistribution {
        &self.distribution
    }

    pub fn draw_index(&mut self) -> usize {
        self.sampler.sample(&mut self.rng)
    }

    pub fn draw(&mut self) -> (Example, bool) {
        let i = self.draw_index();
        (self.distribution.support[i].clone(), self.labels[i])
    }

    pub fn draw_many(&mut self, m: usize) -> Vec<(Example, bool)> {
        (0..m).map(|_| self.draw()).collect()
    }
}
