//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::collections::HashSet;
use std::path::Path;
use std::time::{Duration, Instant};

use occamlab_core::bounds::{cardinality_chain_holds, finite_class_bound, kc_bound, length_based_bound, vc_lower_bound, vc_upper_bound, CompressionSpec};
use occamlab_core::example::binary_cube;
use occamlab_core::harness::*;
use occamlab_core::learners::{CircuitBruteForce, StandardMonomial};
use occamlab_core::reductions::*;
use occamlab_core::{stream_rng, DnfFormula, Example, LabeledSample, Literal, Monomial, Representation, SystemId};
use rand::Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let config = App1Config { bound_only: true, ..App1Config::new(3_000_000_000, 500) };
    let r = match application1_experiment(&config) {
        Ok(r) => r,
        Err(e) => return check(false, e.to_string()),
    };
    let t = start.elapsed();
    check(
        (6.5..=7.5).contains(&r.ratio) && within(t, Duration::from_secs(1)),
        format!("ratio {:.4} (length m {}, kc m {}), {:.3}s < 1s", r.ratio, r.length_m, r.kc_m, t.as_secs_f64()),
    )
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let mut rng = stream_rng(SEED, 2);
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..50u64 {
        let s = rng.gen_range(5_000..=100_000u64);
        let n = rng.gen_range(50..=500u64);
        let config = App1Config { seed: SEED + i, ..App1Config::new(s, n) };
        match application1_experiment(&config) {
            Ok(r) => {
                let (groups, limit, formula) = (r.groups.unwrap(), r.group_limit.unwrap(), r.formula_bits.unwrap());
                let per = 2 * (s as f64).log2().ceil() as u64 + (n as f64).log2().ceil() as u64;
                let ok = r.round_trip == Some(true)
                    && r.literal == Some(false)
                    && r.kc_bits as u64 <= groups * per + 1
                    && formula == groups * per + 1
                    && groups <= (2 * r.t_prime_len.unwrap() as u64).div_ceil(n)
                    && groups <= limit;
                worst = worst.max(r.kc_bits / formula as f64);
                if !ok {
                    bad.push(format!("s={s} n={n}"));
                }
            }
            Err(e) => bad.push(format!("s={s} n={n}: {e}")),
        }
    }
    let t = start.elapsed();
    check(
        bad.is_empty() && within(t, Duration::from_secs(60)),
        format!("50 instances, {} failed {:?}, max bits/formula {worst:.3}, {:.1}s < 60s", bad.len(), bad, t.as_secs_f64()),
    )
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [16, 36, 64] {
        let config = App2Config { seed: SEED, ..App2Config::new(n) };
        match application2_experiment(&config) {
            Ok(r) => {
                let sqrt_n = (n as f64).sqrt() as usize;
                pass &= r.target_size == n - sqrt_n && r.kc_smaller && r.passed;
                parts.push(format!(
                    "n={n}: kc m {} < length m {}, success {:.3} ≥ {:.3}",
                    r.kc_m, r.length_m, r.success_rate, r.threshold
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("n={n}: {e}"));
            }
        }
    }
    let t = start.elapsed();
    pass &= within(t, Duration::from_secs(120));
    check(pass, format!("{}; {:.1}s < 120s", parts.join("; "), t.as_secs_f64()))
}

fn criterion4() -> Outcome {
    let mut rng = stream_rng(SEED, 4);
    let mut closed_form_misses = 0;
    for _ in 0..100 {
        let alpha = rng.gen_range(0.0..0.6);
        let p = rng.gen_range(0.5..300.0);
        let eps = rng.gen_range(0.01..0.99);
        let delta = rng.gen_range(0.01..0.99);
        let spec = CompressionSpec::constant_p(alpha, p).unwrap();
        let got = kc_bound(&spec, 8, 8, eps, delta, false).ok().and_then(|m| m.finite());
        let want = (2.0 / eps * (2.0 / delta).ln()).max((2.0 * std::f64::consts::LN_2 * p / eps).powf(1.0 / (1.0 - alpha)));
        if got.is_none_or(|m| (m as f64 - want.ceil()).abs() > 1.0) {
            closed_form_misses += 1;
        }
    }

    let mut chain = Vec::new();
    for n in [2usize, 3] {
        let cube: Vec<Example> = binary_cube(n).collect();
        let d = vc_dim_bruteforce(SystemId::Monomial, n, &cube).unwrap_or(0);
        let size = 3u128.pow(n as u32) + 1;
        chain.push((n, d, cardinality_chain_holds(d, size, n as u64)));
    }

    let grid = [0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.8];
    let spec = CompressionSpec::constant_p(0.3, 12.0).unwrap();
    let bounds = |e: f64, d: f64| -> Vec<u64> {
        vec![
            vc_upper_bound(4, e, d).unwrap(),
            vc_lower_bound(4, e, d).unwrap(),
            finite_class_bound(244, e, d).unwrap(),
            length_based_bound(40.0, e, d, 0.2, 1.0).unwrap(),
            kc_bound(&spec, 4, 40, e, d, false).unwrap().finite().unwrap(),
            kc_bound(&spec, 4, 40, e, d, true).unwrap().finite().unwrap(),
        ]
    };
    let mut monotone = true;
    for w in grid.windows(2) {
        for &x in &grid {
            let (lo_e, hi_e) = (bounds(w[0], x), bounds(w[1], x));
            let (lo_d, hi_d) = (bounds(x, w[0]), bounds(x, w[1]));
            monotone &= lo_e.iter().zip(&hi_e).all(|(a, b)| a >= b);
            monotone &= lo_d.iter().zip(&hi_d).all(|(a, b)| a >= b);
        }
    }
    let chain_ok = chain.iter().all(|&(_, _, ok)| ok);
    check(
        closed_form_misses == 0 && chain_ok && monotone,
        format!(
            "closed form {}/100 within ±1; chain (n, d, holds) {:?}; monotonicity grid {}",
            100 - closed_form_misses,
            chain,
            if monotone { "ok" } else { "violated" }
        ),
    )
}

fn uniform_sample<R: Representation>(rng: &mut impl Rng, target: &R, n: usize, m: usize) -> LabeledSample {
    let items = (0..m)
        .map(|_| {
            let x = Example::from_mask(rng.gen_range(0..1u64 << n), n);
            let l = target.contains(&x);
            (x, l)
        })
        .collect();
    LabeledSample::new(items).unwrap()
}

fn criterion5() -> Outcome {
    let mut rng = stream_rng(SEED, 5);
    let (mut failed_runs, mut inconsistent, mut no_round_trip, mut low_compression) = (0, 0, 0, 0);
    let mut min_512 = f64::INFINITY;
    for i in 0..20u64 {
        let n = rng.gen_range(3..=8);
        let m = if i % 2 == 0 { 128 } else { 512 };
        let target = random_monomial(&mut rng, n, None).unwrap();
        let sample = uniform_sample(&mut rng, &target, n, m);
        let out = match theorem2_occam(&StandardMonomial, &sample, n, 0, 0.1, SEED + i) {
            Ok(out) => out,
            Err(_) => {
                failed_runs += 1;
                continue;
            }
        };
        if !out.report.consistent {
            inconsistent += 1;
        }
        let labels = sample_labels(&sample);
        if theorem2_decode(&StandardMonomial, &out.witness, &labels).ok().as_ref() != Some(&out.hypothesis) {
            no_round_trip += 1;
        }
        if m == 512 {
            min_512 = min_512.min(out.report.achieved_compression);
            if out.report.achieved_compression <= 1.0 {
                low_compression += 1;
            }
        }
    }
    check(
        inconsistent == 0 && no_round_trip == 0 && low_compression == 0 && failed_runs == 0,
        format!(
            "20 runs: {failed_runs} errored, {inconsistent} inconsistent, {no_round_trip} failed round trip; \
             min compression at m=512 {min_512:.3} > 1"
        ),
    )
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let gamma = 0.3;
    let runs = 20;
    let learner = CircuitBruteForce::default();
    let mut rng = stream_rng(SEED, 6);
    let (mut stage_failures, mut overlapping, mut inconsistent) = (0, 0, 0);
    for i in 0..runs as u64 {
        let target = random_circuit(&mut rng, 4, 2).unwrap();
        let sample = uniform_sample(&mut rng, &target, 4, 64);
        match theorem3_occam(&learner, maj3_threshold, &sample, 4, 0, Theorem3Config::new(gamma, SEED + i)) {
            Ok(out) => {
                let e1: HashSet<&Example> = out.e1.iter().collect();
                if out.e2.iter().any(|x| e1.contains(x)) || !out.report.disjoint {
                    overlapping += 1;
                }
                if !occamlab_core::is_consistent(&out.hypothesis, &sample).unwrap_or(false) {
                    inconsistent += 1;
                }
                if out.report.retried() {
                    stage_failures += 1;
                }
            }
            Err(_) => stage_failures += 1,
        }
    }
    let rate = stage_failures as f64 / runs as f64;
    let limit = gamma + 3.0 * (gamma * (1.0 - gamma) / runs as f64).sqrt();
    check(
        overlapping == 0 && inconsistent == 0 && rate <= limit,
        format!(
            "{runs} runs: {overlapping} with E1∩E2≠∅, {inconsistent} inconsistent, stage-failure rate {rate:.3} ≤ {limit:.3}; {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn random_2dnf(rng: &mut impl Rng, n: usize) -> DnfFormula {
    let terms = (0..rng.gen_range(0..=4))
        .map(|_| {
            let mut lits = vec![Literal::Absent; n];
            for _ in 0..rng.gen_range(1..=2) {
                lits[rng.gen_range(0..n)] = if rng.gen() { Literal::Positive } else { Literal::Negative };
            }
            Monomial::new(lits).unwrap()
        })
        .collect();
    DnfFormula::new(n, terms).unwrap()
}

fn criterion7() -> Outcome {
    let vote = |a: bool, b: bool, c: bool| (a as u8 + b as u8 + c as u8) >= 2;
    let mut rng = stream_rng(SEED, 7);
    let mut circuit_mismatch = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let r: Vec<_> = (0..3).map(|_| random_circuit(&mut rng, n, 3).unwrap()).collect();
        let ok = maj3_threshold(&r[0], &r[1], &r[2]).is_ok_and(|m| {
            binary_cube(n).all(|x| m.contains(&x) == vote(r[0].contains(&x), r[1].contains(&x), r[2].contains(&x)))
        });
        circuit_mismatch += usize::from(!ok);
    }
    let (mut dnf_mismatch, mut max_width) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let h: Vec<_> = (0..3).map(|_| random_2dnf(&mut rng, n)).collect();
        match maj3_kdnf(&h[0], &h[1], &h[2]) {
            Ok(m) => {
                max_width = max_width.max(m.width());
                let ok = binary_cube(n).all(|x| m.contains(&x) == vote(h[0].contains(&x), h[1].contains(&x), h[2].contains(&x)));
                dnf_mismatch += usize::from(!ok);
            }
            Err(_) => dnf_mismatch += 1,
        }
    }
    check(
        circuit_mismatch == 0 && dnf_mismatch == 0 && max_width <= 4,
        format!("threshold 200 triples, {circuit_mismatch} mismatched; 2-DNF 200 triples, {dnf_mismatch} mismatched, max width {max_width} ≤ 4"),
    )
}

fn criterion8() -> Outcome {
    let readme = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md");
    let text = std::fs::read_to_string(&readme).unwrap_or_default();
    let section = text.split("## Out of scope").nth(1).unwrap_or("");
    let documented = section.contains("genome") && section.contains("Kolmogorov");
    check(documented, "README lists the genome-scale experiment and true Kolmogorov complexity as out of scope; stand-ins are criteria 1-2")
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("application 1 headline ratio", criterion1),
        ("superstring codec at desk scale", criterion2),
        ("application 2 bounds and PAC run", criterion3),
        ("bound calculators", criterion4),
        ("exception-handling construction", criterion5),
        ("majority-of-three construction", criterion6),
        ("maj3 semantics", criterion7),
        ("out-of-scope items documented", criterion8),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failures += usize::from(!o.pass);
        println!("criterion {} [{}] {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {}/8 passed", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
