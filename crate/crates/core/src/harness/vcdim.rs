use serde::Serialize;

use crate::bounds::cardinality_chain_holds;
use crate::error::{Error, Result};
use crate::example::{binary_cube, Alphabet, Example};
use crate::repr::{Monomial, Representation, SystemId, ThresholdCircuit};

pub const MAX_VC_DOMAIN: usize = 16;
const MAX_ENUM_N: usize = 12;

/// Distinct concepts of `system` over `n` variables, each as a bitmask over
/// `domain`.
///
/// Monomials are enumerated in full. For threshold circuits the class is the
/// single threshold gates with weights in `[−2, 2]` (deeper circuits realize
/// every boolean function).
pub fn concept_class(system: SystemId, n: usize, domain: &[Example]) -> Result<Vec<u32>> {
    if domain.len() > MAX_VC_DOMAIN {
        return Err(Error::EnumerationBound(format!("domain of {} points (max {MAX_VC_DOMAIN})", domain.len())));
    }
    for x in domain {
        Alphabet::Binary.check(x.symbols())?;
        if x.len() != n {
            return Err(Error::ExampleLength { len: x.len(), n });
        }
    }
    let column = |f: &dyn Fn(&Example) -> bool| {
        domain.iter().enumerate().fold(0u32, |acc, (i, x)| acc | (f(x) as u32) << i)
    };
    let mut concepts = Vec::new();
    match system {
        SystemId::Monomial => {
            if n == 0 || n > MAX_ENUM_N {
                return Err(Error::EnumerationBound(format!("monomial class needs 1 ≤ n ≤ {MAX_ENUM_N}")));
            }
            for code in 0..3u64.pow(n as u32) {
                let text: String = (0..n).map(|i| ['-', '1', '0'][(code / 3u64.pow(i as u32) % 3) as usize]).collect();
                let m: Monomial = text.parse()?;
                concepts.push(column(&|x| m.contains(x)));
            }
            let bottom = Monomial::all_literals(n);
            concepts.push(column(&|x| bottom.contains(x)));
        }
        SystemId::ThresholdCircuit => {
            if n == 0 || n > 6 {
                return Err(Error::EnumerationBound("threshold-gate class needs 1 ≤ n ≤ 6".into()));
            }
            let bound = 2 * n as i64 + 1;
            for idx in 0..5usize.pow(n as u32) {
                let mut i = idx;
                let weights: Vec<i64> = (0..n)
                    .map(|_| {
                        let w = i as i64 % 5 - 2;
                        i /= 5;
                        w
                    })
                    .collect();
                for theta in -bound..=bound {
                    let c = ThresholdCircuit::single_gate(n, (1..=n).collect(), weights.clone(), theta)?;
                    concepts.push(column(&|x| c.contains(x)));
                }
            }
        }
        other => return Err(Error::EnumerationBound(format!("no concept enumeration for {other}"))),
    }
    concepts.sort_unstable();
    concepts.dedup();
    Ok(concepts)
}

/// Size of the largest subset of `domain` shattered by the class, by
/// exhaustive subset and labeling checks.
pub fn vc_dim_bruteforce(system: SystemId, n: usize, domain: &[Example]) -> Result<u64> {
    let concepts = concept_class(system, n, domain)?;
    Ok(vc_dim_of(&concepts, domain.len()))
}

/// VC dimension of a class of bitmask concepts over `points` points.
pub(crate) fn vc_dim_of(concepts: &[u32], points: usize) -> u64 {
    let mut d = 0;
    // Shattering is hereditary, so stop at the first size with no shattered set.
    for k in 1..=points {
        let shattered = (0u32..1 << points).filter(|s| s.count_ones() as usize == k).any(|subset| {
            let mut seen = std::collections::HashSet::with_capacity(1 << k);
            for &c in concepts {
                seen.insert(c & subset);
            }
            seen.len() == 1 << k
        });
        if !shattered {
            break;
        }
        d = k as u64;
    }
    d
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CardinalityCheck {
    pub n: usize,
    pub d: u64,
    pub class_size: u128,
    pub log2_class_size: f64,
    /// `d ≤ log₂|Hₙ| ≤ n·d`.
    pub holds: bool,
}

/// Brute-force `d` over the full cube next to the distinct-concept count `|Hₙ|`.
pub fn vc_cardinality_check(system: SystemId, n: usize) -> Result<CardinalityCheck> {
    if n > 4 {
        return Err(Error::EnumerationBound(format!("full-cube domain of 2^{n} points exceeds {MAX_VC_DOMAIN}")));
    }
    let domain: Vec<Example> = binary_cube(n).collect();
    let concepts = concept_class(system, n, &domain)?;
    let d = vc_dim_of(&concepts, domain.len());
    let class_size = concepts.len() as u128;
    Ok(CardinalityCheck {
        n,
        d,
        class_size,
        log2_class_size: (class_size as f64).log2(),
        holds: cardinality_chain_holds(d, class_size, n as u64),
    })
}
