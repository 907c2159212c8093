use occamlab_core::bounds::finite_class_bound;
use occamlab_core::example::binary_cube;
use occamlab_core::harness::*;
use occamlab_core::{Example, SystemId};

fn monomial_config(learner: LearnerId, bound: BoundSource, n: usize, epsilon: f64, delta: f64) -> ExperimentConfig {
    ExperimentConfig {
        system: SystemId::Monomial,
        learner,
        bound,
        target: TargetSpec::Random { size: None, max_gates: 2 },
        distribution: DistributionSpec::Uniform,
        n,
        epsilon,
        delta,
        trials: 200,
        seed: 0,
        threads: None,
    }
}

#[test]
fn oracle_learner_never_errs() {
    let r = pac_verify(&monomial_config(LearnerId::Oracle, BoundSource::Explicit { m: 1 }, 6, 0.05, 0.1)).unwrap();
    assert_eq!(r.success_rate, 1.0);
    assert!(r.trials.iter().all(|t| t.error == Some(0.0)));
}

#[test]
fn standard_learner_meets_finite_class_bound() {
    let c = monomial_config(LearnerId::Standard, BoundSource::Finite, 5, 0.2, 0.2);
    let r = pac_verify(&c).unwrap();
    assert_eq!(r.trials[0].m, finite_class_bound(3u128.pow(5) + 1, 0.2, 0.2).unwrap());
    assert!(r.success_rate >= 0.8, "success rate {}", r.success_rate);
}

/// Every consistent learner clears the 3σ floor at the finite-class size.
#[test]
fn consistent_learners_clear_the_binomial_floor_on_a_grid() {
    for learner in [LearnerId::Standard, LearnerId::Haussler, LearnerId::Bruteforce] {
        for (n, epsilon, delta) in [(4, 0.1, 0.1), (6, 0.2, 0.05), (8, 0.05, 0.2)] {
            let mut c = monomial_config(learner, BoundSource::Finite, n, epsilon, delta);
            if learner == LearnerId::Bruteforce {
                c.trials = 60;
            }
            let r = pac_verify(&c).unwrap();
            let floor = (1.0 - delta) - 3.0 * (delta * (1.0 - delta) / c.trials as f64).sqrt();
            assert!((r.threshold - floor).abs() < 1e-12);
            assert!(r.passed, "{learner:?} n={n} ε={epsilon} δ={delta}: {} < {floor}", r.success_rate);
        }
    }
}

#[test]
fn one_example_is_not_enough() {
    let mut c = monomial_config(LearnerId::Standard, BoundSource::Explicit { m: 1 }, 5, 0.05, 0.1);
    c.target = TargetSpec::Random { size: Some(1), max_gates: 2 };
    let r = pac_verify(&c).unwrap();
    assert!(r.success_rate < 0.9 - 0.1, "success rate {}", r.success_rate);
}

#[test]
fn identical_configs_give_identical_reports() {
    let mut c = monomial_config(LearnerId::Haussler, BoundSource::Vc, 7, 0.1, 0.1);
    c.seed = 42;
    let a = serde_json::to_string(&pac_verify(&c).unwrap()).unwrap();
    c.threads = Some(3);
    let b = serde_json::to_string(&pac_verify(&c).unwrap()).unwrap();
    assert_eq!(a, b);
    c.seed = 43;
    assert_ne!(a, serde_json::to_string(&pac_verify(&c).unwrap()).unwrap());
}

#[test]
fn circuit_targets_with_the_bruteforce_learner() {
    let c = ExperimentConfig {
        system: SystemId::ThresholdCircuit,
        learner: LearnerId::Bruteforce,
        bound: BoundSource::Finite,
        target: TargetSpec::Random { size: None, max_gates: 2 },
        distribution: DistributionSpec::Uniform,
        n: 3,
        epsilon: 0.2,
        delta: 0.2,
        trials: 40,
        seed: 1,
        threads: None,
    };
    let r = pac_verify(&c).unwrap();
    assert!(r.passed, "success rate {}", r.success_rate);
}

#[test]
fn config_parses_from_json() {
    let text = r#"{
        "system": "monomial", "learner": "standard",
        "bound": {"kind": "explicit", "m": 20},
        "target": {"kind": "explicit", "representation": "1-0-"},
        "distribution": {"kind": "explicit", "points": [["1000", 0.5], ["1100", 0.5]]},
        "n": 4, "epsilon": 0.1, "delta": 0.1, "trials": 3
    }"#;
    let c: ExperimentConfig = serde_json::from_str(text).unwrap();
    let r = pac_verify(&c).unwrap();
    assert_eq!(r.trials.len(), 3);
    assert!(r.trials.iter().all(|t| t.m == 20 && t.target == "1-0-"));
    assert!(serde_json::from_str::<ExperimentConfig>(&text.replace("\"trials\"", "\"trails\"")).is_err());
}

#[test]
fn kc_bound_source_is_below_length_bound() {
    let mut c = monomial_config(LearnerId::Standard, BoundSource::Kc, 16, 0.1, 0.1);
    c.target = TargetSpec::Random { size: Some(12), max_gates: 2 };
    c.trials = 5;
    let kc = pac_verify(&c).unwrap();
    c.bound = BoundSource::Length;
    let length = pac_verify(&c).unwrap();
    assert!(kc.trials[0].m < length.trials[0].m);
}

#[test]
fn vc_dimension_regressions() {
    let dims: Vec<u64> = (1..=3)
        .map(|n| vc_dim_bruteforce(SystemId::Monomial, n, &binary_cube(n).collect::<Vec<_>>()).unwrap())
        .collect();
    assert_eq!(dims, vec![2, 2, 3]);
    let one = vec![Example::from_mask(0, 2)];
    assert_eq!(vc_dim_bruteforce(SystemId::Monomial, 2, &one).unwrap(), 1);
    assert_eq!(vc_dim_bruteforce(SystemId::Monomial, 2, &[]).unwrap(), 0);
}

#[test]
fn application_two_small_instance() {
    let mut c = App2Config::new(16);
    c.trials = 50;
    let r = application2_experiment(&c).unwrap();
    assert_eq!((r.target_size, r.codec_bits, r.length_bits), (12, 7, 32));
    assert!(r.kc_smaller);
    assert!(r.passed);
    c.target_size = Some(16);
    let full = application2_experiment(&c).unwrap();
    assert_eq!(full.codec_bits, 0);
    assert!(full.kc_m <= r.kc_m);
    c.target_size = Some(17);
    assert!(application2_experiment(&c).is_err());
}
