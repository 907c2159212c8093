use crate::error::{Error, Result};
use crate::repr::{DnfFormula, Gate, ThresholdCircuit};

/// Majority of three circuits: the three gate lists side by side, renumbered,
/// plus an output gate `o₁ + o₂ + o₃ ≥ 2`.
pub fn maj3_threshold(r1: &ThresholdCircuit, r2: &ThresholdCircuit, r3: &ThresholdCircuit) -> Result<ThresholdCircuit> {
    let n = r1.n();
    if r2.n() != n || r3.n() != n {
        return Err(Error::Representation(format!("circuits over different n ({n}, {}, {})", r2.n(), r3.n())));
    }
    let (g1, g2) = (r1.gates().len(), r2.gates().len());
    let mut gates: Vec<Gate> = r1.gates().to_vec();
    gates.extend(r2.shifted_gates(g1));
    gates.extend(r3.shifted_gates(g1 + g2));
    let outputs = vec![r1.output_id(), r2.output_id() + g1, r3.output_id() + g1 + g2];
    gates.push(Gate::new(outputs, vec![1, 1, 1], 2));
    ThresholdCircuit::new(n, gates)
}

/// `(h₁∧h₂) ∨ (h₂∧h₃) ∨ (h₃∧h₁)` distributed into terms; contradictory terms
/// are dropped and repeated terms kept once.
pub fn maj3_kdnf(h1: &DnfFormula, h2: &DnfFormula, h3: &DnfFormula) -> Result<DnfFormula> {
    let n = h1.n();
    if h2.n() != n || h3.n() != n {
        return Err(Error::Representation(format!("formulas over different n ({n}, {}, {})", h2.n(), h3.n())));
    }
    let mut terms = Vec::new();
    for (a, b) in [(h1, h2), (h2, h3), (h3, h1)] {
        for ta in a.terms() {
            for tb in b.terms() {
                if let Some(t) = ta.and(tb) {
                    if !terms.contains(&t) {
                        terms.push(t);
                    }
                }
            }
        }
    }
    DnfFormula::new(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example::binary_cube;
    use crate::repr::{Monomial, Representation};

    fn var(n: usize, i: usize) -> ThresholdCircuit {
        ThresholdCircuit::single_gate(n, vec![i], vec![1], 1).unwrap()
    }

    #[test]
    fn majority_of_variables() {
        let c = maj3_threshold(&var(3, 1), &var(3, 2), &var(3, 3)).unwrap();
        let mut on: Vec<String> = binary_cube(3).filter(|x| c.contains(x)).map(|x| x.to_string()).collect();
        on.sort();
        assert_eq!(on, vec!["011", "101", "110", "111"]);
    }

    #[test]
    fn unanimous_circuit() {
        let c = maj3_threshold(&var(2, 1), &var(2, 1), &var(2, 1)).unwrap();
        assert!(binary_cube(2).all(|x| c.contains(&x) == x.bit(0)));
        assert!(maj3_threshold(&var(2, 1), &var(3, 1), &var(2, 1)).is_err());
    }

    #[test]
    fn kdnf_of_variables() {
        let lit = |i: usize| {
            let mut s = vec![b'-'; 3];
            s[i] = b'1';
            DnfFormula::new(3, vec![String::from_utf8(s).unwrap().parse::<Monomial>().unwrap()]).unwrap()
        };
        let f = maj3_kdnf(&lit(0), &lit(1), &lit(2)).unwrap();
        let terms: Vec<String> = f.terms().iter().map(|t| t.to_string()).collect();
        assert_eq!(terms, vec!["11-", "-11", "1-1"]);
        assert_eq!(f.width(), 2);
    }
}
