use std::collections::HashSet;

use rand::seq::index::sample as sample_indices;
use rand::Rng;

use crate::error::{Error, Result};
use crate::example::{binary_cube, Example};
use crate::repr::{Gate, Literal, Monomial, Representation, ThresholdCircuit};

/// A random monomial. With `size` pinned, that many variables are chosen
/// uniformly and given random signs; otherwise each variable is absent,
/// positive or negative with equal probability.
pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, n: usize, size: Option<usize>) -> Result<Monomial> {
    let mut lits = vec![Literal::Absent; n];
    match size {
        Some(k) => {
            if k > n {
                return Err(Error::Parameter(format!("target size {k} exceeds n = {n}")));
            }
            for v in sample_indices(rng, n, k).into_iter() {
                lits[v] = if rng.gen() { Literal::Positive } else { Literal::Negative };
            }
        }
        None => {
            for l in lits.iter_mut() {
                *l = [Literal::Absent, Literal::Positive, Literal::Negative][rng.gen_range(0..3)];
            }
        }
    }
    Monomial::new(lits)
}

/// A random circuit of 1 to `max_gates` gates with weights and thresholds in `[−2, 2]`.
/// Each gate reads every input and every earlier gate it has a nonzero weight for.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, max_gates: usize) -> Result<ThresholdCircuit> {
    let count = rng.gen_range(1..=max_gates.max(1));
    let mut gates = Vec::with_capacity(count);
    for k in 0..count {
        let (mut inputs, mut weights) = (Vec::new(), Vec::new());
        for id in 1..=n + k {
            let w: i64 = rng.gen_range(-2..=2);
            if w != 0 {
                inputs.push(id);
                weights.push(w);
            }
        }
        gates.push(Gate::new(inputs, weights, rng.gen_range(-2..=2)));
    }
    ThresholdCircuit::new(n, gates)
}

pub fn random_dna<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<u8> {
    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> u64 {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    rng.gen::<u64>() & mask
}

/// A positive point of `target`: constructed directly for monomials, by
/// rejection (bounded) otherwise.
fn positive_point<T: Representation, R: Rng + ?Sized>(target: &T, rng: &mut R, n: usize) -> Option<u64> {
    for _ in 0..256 {
        let p = random_point(rng, n);
        if target.contains(&Example::from_mask(p, n)) {
            return Some(p);
        }
    }
    None
}

/// Up to `support` distinct points, about half of them positive for `target`
/// and the rest uniform over the cube. For small cubes the whole cube is used.
///
/// Uniform distributions over `{0,1}ⁿ` make most monomial targets almost
/// always false; this support keeps both labels represented.
pub fn mixture_support<T: Representation + 'static, R: Rng + ?Sized>(
    target: &T,
    rng: &mut R,
    n: usize,
    support: usize,
) -> Result<Vec<Example>> {
    if n == 0 || n > 64 {
        return Err(Error::Parameter(format!("mixture support needs 1 ≤ n ≤ 64, got {n}")));
    }
    if n < 63 && (1u64 << n) <= support as u64 {
        return Ok(binary_cube(n).collect());
    }
    let monomial_positive = |m: &Monomial, rng: &mut R| -> Option<u64> {
        if m.is_contradiction() {
            return None;
        }
        let mut p = random_point(rng, n);
        for (i, l) in m.literals().iter().enumerate() {
            match l {
                Literal::Positive => p |= 1 << i,
                Literal::Negative => p &= !(1 << i),
                _ => {}
            }
        }
        Some(p)
    };
    let as_monomial = (target as &dyn std::any::Any).downcast_ref::<Monomial>().cloned();
    let mut seen = HashSet::with_capacity(support);
    let mut points = Vec::with_capacity(support);
    let mut misses = 0;
    while points.len() < support / 2 && misses < 4 * support {
        let p = match &as_monomial {
            Some(m) => monomial_positive(m, rng),
            None => positive_point(target, rng, n),
        };
        match p {
            Some(p) if seen.insert(p) => points.push(p),
            _ => misses += 1,
        }
    }
    while points.len() < support {
        let p = random_point(rng, n);
        if seen.insert(p) {
            points.push(p);
        }
    }
    points.sort_unstable();
    Ok(points.into_iter().map(|p| Example::from_mask(p, n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::stream_rng;

    #[test]
    fn pinned_size() {
        let mut rng = stream_rng(1, 0);
        for _ in 0..20 {
            assert_eq!(random_monomial(&mut rng, 16, Some(12)).unwrap().size(), 12);
        }
        assert!(random_monomial(&mut rng, 4, Some(5)).is_err());
    }

    #[test]
    fn mixture_has_positives() {
        let mut rng = stream_rng(2, 0);
        let m = random_monomial(&mut rng, 64, Some(56)).unwrap();
        let pts = mixture_support(&m, &mut rng, 64, 512).unwrap();
        assert_eq!(pts.len(), 512);
        let pos = pts.iter().filter(|x| m.contains(x)).count();
        assert!(pos >= 250, "{pos}");
    }

    #[test]
    fn small_cube_is_used_whole() {
        let mut rng = stream_rng(3, 0);
        let c = random_circuit(&mut rng, 3, 2).unwrap();
        assert_eq!(mixture_support(&c, &mut rng, 3, 100).unwrap().len(), 8);
    }
}
