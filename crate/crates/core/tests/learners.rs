use std::collections::HashSet;

use occamlab_core::learners::*;
use occamlab_core::{Alphabet, Example, LabeledSample, Literal, Monomial, Representation};
use proptest::prelude::*;

fn monomial_strategy(n: usize) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(prop_oneof![Just(Literal::Absent), Just(Literal::Positive), Just(Literal::Negative)], n)
        .prop_map(|lits| Monomial::new(lits).unwrap())
}

/// A target and a sample of random points labeled by it, plus a few forced positives.
fn instance(max_n: usize) -> impl Strategy<Value = (usize, Monomial, LabeledSample)> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let masks = proptest::collection::vec(0u64..(1u64 << n), 0..60);
            let positives = proptest::collection::vec(0u64..(1u64 << n), 0..4);
            (Just(n), monomial_strategy(n), masks, positives)
        })
        .prop_map(|(n, target, masks, positives)| {
            let mut items: Vec<(Example, bool)> = masks
                .into_iter()
                .map(|m| {
                    let x = Example::from_mask(m, n);
                    let l = target.contains(&x);
                    (x, l)
                })
                .collect();
            // Force a positive by overwriting the constrained bits of random points.
            for m in positives {
                let mut mask = m;
                for (i, l) in target.literals().iter().enumerate() {
                    match l {
                        Literal::Positive => mask |= 1 << i,
                        Literal::Negative => mask &= !(1 << i),
                        _ => {}
                    }
                }
                items.push((Example::from_mask(mask, n), true));
            }
            (n, target, LabeledSample::new(items).unwrap())
        })
}

fn consistent<R: Representation>(h: &R, sample: &LabeledSample) -> bool {
    sample.items().iter().all(|(x, l)| h.contains(x) == *l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn standard_learner_keeps_every_target_literal((n, target, sample) in instance(10)) {
        let h = standard_monomial_learn(&sample, n).unwrap();
        prop_assert!(h.contains_literals_of(&target), "{h} misses a literal of {target}");
        prop_assert!(consistent(&h, &sample));
        if sample.positives().count() == 0 {
            prop_assert!(h.is_contradiction());
        }
    }

    #[test]
    fn haussler_size_within_set_cover_bound((n, target, sample) in instance(10)) {
        prop_assume!(sample.positives().count() > 0);
        let h = haussler_monomial_learn(&sample, n).unwrap();
        prop_assert!(consistent(&h, &sample));
        let negatives: HashSet<&Example> = sample.negatives().collect();
        let k = target.size() as f64;
        let bound = if negatives.is_empty() { 0.0 } else { k * (1.0 + (negatives.len() as f64).ln()) };
        prop_assert!(h.size() as f64 <= bound + 1e-9, "{} literals > {bound}", h.size());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// The exhaustive learner finds a consistent monomial no larger than the target.
    #[test]
    fn bruteforce_is_consistent_and_minimal((n, target, sample) in instance(7)) {
        let h = consistent_monomial(&sample, n, n).unwrap().expect("the target is consistent");
        prop_assert!(consistent(&h, &sample));
        if !h.is_contradiction() {
            prop_assert!(h.size() <= target.size());
        }
        let mut smaller_exists = false;
        if h.size() > 0 && !h.is_contradiction() {
            smaller_exists = consistent_monomial(&sample, n, h.size() - 1).unwrap().is_some();
        }
        prop_assert!(!smaller_exists);
    }
}

#[test]
fn bruteforce_handles_twelve_variables() {
    let target: Monomial = "1-0---1-----".parse().unwrap();
    let items = (0..200u64)
        .map(|i| {
            let x = Example::from_mask(i.wrapping_mul(2654435761) % 4096, 12);
            let l = target.contains(&x);
            (x, l)
        })
        .collect();
    let sample = LabeledSample::new(items).unwrap();
    let h = consistent_monomial(&sample, 12, 12).unwrap().unwrap();
    assert!(consistent(&h, &sample));
    assert!(h.size() <= 3);
}

/// Shortest common superstring by trying every order of the substring-free inputs.
fn optimal_superstring_len(strings: &[Vec<u8>]) -> usize {
    let mut reduced: Vec<Vec<u8>> = strings.to_vec();
    reduced.sort();
    reduced.dedup();
    let all = reduced.clone();
    reduced.retain(|s| !all.iter().any(|t| t != s && t.windows(s.len()).any(|w| w == s.as_slice())));
    let overlap = |a: &[u8], b: &[u8]| (0..a.len().min(b.len())).rev().find(|&k| a[a.len() - k..] == b[..k]).unwrap_or(0);
    let k = reduced.len();
    let mut order: Vec<usize> = (0..k).collect();
    let mut best = usize::MAX;
    permute(&mut order, 0, &mut |p| {
        let mut len = reduced[p[0]].len();
        for w in p.windows(2) {
            len += reduced[w[1]].len() - overlap(&reduced[w[0]], &reduced[w[1]]);
        }
        best = best.min(len);
    });
    best
}

fn permute(v: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permute(v, i + 1, f);
        v.swap(i, j);
    }
}

fn strings_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    proptest::collection::vec(proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b'), Just(b'c')], 1..7), 1..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn greedy_is_a_superstring_within_four_of_optimal(strings in strings_strategy(7)) {
        let out = greedy_superstring_bytes(&strings).unwrap();
        for s in &strings {
            prop_assert!(out.windows(s.len()).any(|w| w == s.as_slice()), "{:?} missing", s);
        }
        let opt = optimal_superstring_len(&strings);
        prop_assert!(out.len() >= opt);
        prop_assert!(out.len() <= 4 * opt, "greedy {} vs optimal {opt}", out.len());
    }

    #[test]
    fn greedy_ignores_input_order(mut strings in strings_strategy(8)) {
        let a = greedy_superstring_bytes(&strings).unwrap();
        strings.reverse();
        prop_assert_eq!(a, greedy_superstring_bytes(&strings).unwrap());
    }
}

#[test]
fn greedy_rep_window_is_longest_input() {
    let rep = greedy_superstring(Alphabet::Dna, &["ACGT", "GTAC", "ACG"]).unwrap();
    assert_eq!(rep.window(), 4);
    assert!(rep.as_str().contains("ACGT") && rep.as_str().contains("GTAC"));
}
