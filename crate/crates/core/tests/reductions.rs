use occamlab_core::example::binary_cube;
use occamlab_core::harness::{random_circuit, random_monomial};
use occamlab_core::learners::{CircuitBruteForce, Haussler, PacLearner, StandardMonomial};
use occamlab_core::reductions::*;
use occamlab_core::{stream_rng, Alphabet, DnfFormula, Example, LabeledSample, Literal, Monomial, Representation};
use proptest::prelude::*;
use rand::Rng;

fn vote(a: bool, b: bool, c: bool) -> bool {
    (a as u8 + b as u8 + c as u8) >= 2
}

fn random_term(rng: &mut impl Rng, n: usize, k: usize) -> Monomial {
    let mut lits = vec![Literal::Absent; n];
    for _ in 0..rng.gen_range(1..=k) {
        lits[rng.gen_range(0..n)] = if rng.gen() { Literal::Positive } else { Literal::Negative };
    }
    Monomial::new(lits).unwrap()
}

fn random_kdnf(rng: &mut impl Rng, n: usize, k: usize) -> DnfFormula {
    let terms = (0..rng.gen_range(0..=4)).map(|_| random_term(rng, n, k)).collect();
    DnfFormula::new(n, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn maj3_threshold_is_the_pointwise_vote(seed: u64, n in 1usize..=4) {
        let mut rng = stream_rng(seed, 0);
        let r: Vec<_> = (0..3).map(|_| random_circuit(&mut rng, n, 3).unwrap()).collect();
        let m = maj3_threshold(&r[0], &r[1], &r[2]).unwrap();
        prop_assert_eq!(m.gates().len(), r.iter().map(|c| c.gates().len()).sum::<usize>() + 1);
        for x in binary_cube(n) {
            prop_assert_eq!(m.contains(&x), vote(r[0].contains(&x), r[1].contains(&x), r[2].contains(&x)));
        }
    }

    #[test]
    fn maj3_kdnf_is_the_pointwise_vote(seed: u64, n in 1usize..=5, k in 1usize..=3) {
        let mut rng = stream_rng(seed, 1);
        let h: Vec<_> = (0..3).map(|_| random_kdnf(&mut rng, n, k)).collect();
        let m = maj3_kdnf(&h[0], &h[1], &h[2]).unwrap();
        prop_assert!(m.width() <= 2 * k);
        for x in binary_cube(n) {
            prop_assert_eq!(m.contains(&x), vote(h[0].contains(&x), h[1].contains(&x), h[2].contains(&x)));
        }
    }

    /// Wrapping flips exactly the listed points, and each exception costs the same.
    #[test]
    fn exceptions_flip_points_at_a_linear_cost(seed: u64, n in 1usize..=10, k in 0usize..40) {
        let mut rng = stream_rng(seed, 2);
        let base = random_monomial(&mut rng, n, None).unwrap();
        let mut wrapped = ExceptionWrapped::new(base.clone());
        let mut flipped = std::collections::BTreeSet::new();
        for _ in 0..k {
            let x = Example::from_mask(rng.gen_range(0..1u64 << n), n);
            if flipped.contains(&x) {
                continue;
            }
            wrapped = exception_handle(wrapped, &x).unwrap();
            flipped.insert(x);
        }
        let bits_n = usize::BITS - n.leading_zeros();
        let increment = 1 + (2 * bits_n as u64 + 1) + n as u64;
        prop_assert_eq!(exception_increment(Alphabet::Binary, n), increment);
        prop_assert_eq!(wrapped.length_bits(), base.length_bits() + flipped.len() as u64 * increment + 1);
        for x in binary_cube(n) {
            prop_assert_eq!(wrapped.contains(&x), base.contains(&x) != flipped.contains(&x));
        }
    }
}

#[test]
fn handling_a_point_twice_restores_the_concept() {
    let base: Monomial = "1-0".parse().unwrap();
    let x = Example::from_mask(0b001, 3);
    let once = exception_handle(ExceptionWrapped::new(base.clone()), &x).unwrap();
    assert_ne!(once.contains(&x), base.contains(&x));
    let twice = exception_handle(once, &x).unwrap();
    assert!(twice.exceptions().is_empty());
    assert!(binary_cube(3).all(|y| twice.contains(&y) == base.contains(&y)));
    let wrong = Example::from_mask(0, 4);
    assert!(exception_handle(twice, &wrong).is_err());
}

fn monomial_sample(seed: u64, n: usize, m: usize) -> (Monomial, LabeledSample) {
    let mut rng = stream_rng(seed, 0);
    let target = random_monomial(&mut rng, n, None).unwrap();
    let items = (0..m)
        .map(|_| {
            let x = Example::from_mask(rng.gen_range(0..1u64 << n), n);
            let l = target.contains(&x);
            (x, l)
        })
        .collect();
    (target, LabeledSample::new(items).unwrap())
}

#[test]
fn exception_construction_round_trips_for_both_learners() {
    for seed in 0..10 {
        let (_, sample) = monomial_sample(seed, 6, 256);
        let labels = sample_labels(&sample);
        let out = theorem2_occam(&StandardMonomial, &sample, 6, 0, 0.1, seed).unwrap();
        assert!(out.report.consistent);
        assert!(out.hypothesis.exceptions().len() <= sample.len());
        assert_eq!(theorem2_decode(&StandardMonomial, &out.witness, &labels).unwrap(), out.hypothesis);
        let out = theorem2_occam(&Haussler, &sample, 6, 0, 0.1, seed).unwrap();
        assert!(out.report.consistent);
        assert_eq!(theorem2_decode(&Haussler, &out.witness, &labels).unwrap(), out.hypothesis);
    }
}

#[test]
fn exception_construction_is_reproducible() {
    let (_, sample) = monomial_sample(3, 8, 512);
    let a = theorem2_occam(&StandardMonomial, &sample, 8, 0, 0.2, 9).unwrap();
    let b = theorem2_occam(&StandardMonomial, &sample, 8, 0, 0.2, 9).unwrap();
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.report, b.report);
}

#[test]
fn epsilon0_balances_learner_demand_against_sample() {
    let m = 512;
    let eps = solve_epsilon0(&StandardMonomial, m, 8, 0, 0.1).unwrap();
    let demand = StandardMonomial.sample_size(8, 0, eps, 0.1);
    assert!(demand <= eps * m as f64 + 1e-6);
    assert!((demand - eps * m as f64).abs() <= 1e-6 * m as f64);
    assert!(solve_epsilon0(&StandardMonomial, 2, 8, 0, 0.1).is_err());
}

#[test]
fn majority_construction_on_small_circuits() {
    let learner = CircuitBruteForce::default();
    for seed in 0..4 {
        let mut rng = stream_rng(seed, 5);
        let target = random_circuit(&mut rng, 3, 2).unwrap();
        let items = (0..48)
            .map(|_| {
                let x = Example::from_mask(rng.gen_range(0..8), 3);
                let l = target.contains(&x);
                (x, l)
            })
            .collect();
        let sample = LabeledSample::new(items).unwrap();
        let out = theorem3_occam(&learner, maj3_threshold, &sample, 3, 0, Theorem3Config::new(0.3, seed)).unwrap();
        assert!(out.report.disjoint);
        assert!(out.e1.iter().all(|x| !out.e2.contains(x)));
        assert!(out.report.consistent);
        let labels = sample_labels(&sample);
        assert_eq!(theorem3_decode(&learner, maj3_threshold, &out.witness, &labels).unwrap(), out.hypothesis);
    }
}
