//! The acceptance suite: nine criteria, one test and one printed verdict
//! line each (run with `--nocapture` to see the lines as they pass).
//!
//! Every check is exact — two scalars count as equal only when their
//! canonical forms are identical. No tolerances appear anywhere except in
//! A8's *diagnostic* comparison against a floating-point search oracle,
//! where the oracle itself is the approximate side.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use embz::morphism::{Fault, Morphism};
use embz::oracle::{build_window_vector, compare_with, TruncationWindow};
use embz::pauli::random_word;
use embz::protocol::{
    approximate_target, sequential_verify, suite_window, verify_suite, verify_suite_with,
    SuiteParams, SuiteReport,
};
use embz::registry::SchmidtVector;
use embz::scalar::{ratio, RadicalScalar, Rational};
use embz::states::{AncillaState, ProductState};

fn register(width: u32, ratios: &[i64]) -> Arc<SchmidtVector> {
    Arc::new(SchmidtVector::from_integer_ratios(width, ratios).unwrap())
}

/// The A1 suite shape: radius-3 window, exhaustive words of support <= 3,
/// 1000 random words of support <= 8.
fn a1_params() -> SuiteParams {
    SuiteParams {
        radius: 3,
        max_support: 8,
        samples: 1000,
        seed: 42,
    }
}

fn verdict(criterion: &str, detail: String, elapsed: Duration) {
    println!("{criterion} PASS — {detail} ({elapsed:.2?})");
}

fn assert_report(criterion: &str, label: &str, report: &SuiteReport) {
    if let Some(case) = report.first_failure() {
        panic!(
            "{criterion} {label}: word {} gave blank-slot {} vs target-slot {}",
            case.word, case.lhs, case.rhs
        );
    }
    assert!(report.pass, "{criterion} {label}: report not passing");
}

#[test]
fn a1_bell_embezzlement() {
    let started = Instant::now();
    let report = verify_suite(&register(1, &[1, 1]), 0, &a1_params()).unwrap();
    assert_report("A1", "bell", &report);
    // window: 7 sites x 2 parties + 2 slot qubits = 16 addresses;
    // 1 + 16*3 + C(16,2)*9 + C(16,3)*27 = 16249 exhaustive words
    assert_eq!(report.counts.exhaustive, 16249);
    assert_eq!(report.counts.random, 1000);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "A1 took {elapsed:?}");
    verdict("A1", format!("bell target, {} words", 16249 + 1000), elapsed);
}

#[test]
fn a2_dense_two_qubit_family() {
    let started = Instant::now();
    let family: &[&[i64]] = &[&[1, 1], &[2, 1], &[3, 2], &[9, 16], &[1, 99]];
    for ratios in family {
        let report = verify_suite(&register(1, ratios), 0, &a1_params()).unwrap();
        assert_report("A2", &format!("{ratios:?}"), &report);
        assert_eq!(report.counts.exhaustive, 16249);
        assert_eq!(report.counts.random, 1000);
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "A2 took {elapsed:?}");
    verdict("A2", format!("{} targets", family.len()), elapsed);
}

#[test]
fn a3_wide_register_family() {
    let started = Instant::now();
    let params = SuiteParams {
        radius: 2,
        max_support: 8,
        samples: 500,
        seed: 42,
    };
    for ratios in [&[1i64, 1, 1, 1][..], &[4, 2, 2, 1][..]] {
        let report = verify_suite(&register(2, ratios), 0, &params).unwrap();
        assert_report("A3", &format!("{ratios:?}"), &report);
        // window: 5 sites x 2 lanes x 2 parties + 4 slot qubits = 24
        assert_eq!(report.counts.exhaustive, 1 + 24 * 3 + 276 * 9 + 2024 * 27);
        assert_eq!(report.counts.random, 500);
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "A3 took {elapsed:?}");
    verdict("A3", "width-2 targets (1,1,1,1) and (4,2,2,1)".into(), elapsed);
}

#[test]
fn a4_sequential_mixed_width() {
    let started = Instant::now();
    let targets = vec![
        (register(1, &[1, 1]), 0),
        (register(1, &[2, 1]), 1),
        (register(2, &[1, 1, 1, 1]), 2),
    ];
    let params = SuiteParams {
        radius: 2,
        max_support: 8,
        samples: 500,
        seed: 42,
    };
    let report = sequential_verify(&targets, &params).unwrap();
    assert_report("A4", "joint suite", &report);

    // Catalyst invariance, stated directly: for words supported on catalyst
    // sites only, the post-protocol expectation equals the pre-protocol
    // one, and neither depends on the slot assignments at all.
    let mut morphism = Morphism::identity();
    for (target, slot) in targets.iter().rev() {
        morphism = morphism.then(Morphism::embezzle(target.clone(), *slot));
    }
    let mut lhs = ProductState::catalyst();
    let mut rhs = ProductState::catalyst();
    for (target, slot) in &targets {
        lhs.assign(*slot, AncillaState::ZeroZero);
        rhs.assign(*slot, AncillaState::Target(target.clone()));
    }
    let mut catalyst_window = Vec::new();
    for (target, slot) in &targets {
        for addr in suite_window(target, *slot, params.radius) {
            if addr.site().is_some() {
                catalyst_window.push(addr);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut checked = 0;
    for _ in 0..200 {
        let word = random_word(&mut rng, &catalyst_window, 6).unwrap();
        let before = rhs.expect_word(&word).unwrap();
        let after = lhs.expect_word(&morphism.apply_word(&word)).unwrap();
        // the same value whether the slots hold targets or blanks: the
        // word never touches them, and the protocol must not change it
        let untouched = lhs.expect_word(&word).unwrap();
        assert_eq!(after, before, "catalyst word {word} changed");
        assert_eq!(before, untouched, "catalyst word {word} saw a slot");
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "A4 took {elapsed:?}");
    verdict(
        "A4",
        format!("3 slots jointly, {checked} catalyst-only words invariant"),
        elapsed,
    );
}

#[test]
fn a5_exact_mode_target() {
    let started = Instant::now();
    // amplitudes proportional to (1 + sqrt 2, 1): squared amplitudes are
    // irrational, so no rational-weight register can represent this target
    let amps = [
        RadicalScalar::one() + embz::scalar::sqrt_of_rational(&ratio(2, 1)).unwrap(),
        RadicalScalar::one(),
    ];
    let target = Arc::new(SchmidtVector::from_amplitudes(1, &amps).unwrap());
    assert!(!target.is_dense());
    assert!(target.canonical_key().starts_with("qx["));
    let report = verify_suite(&target, 0, &a1_params()).unwrap();
    assert_report("A5", target.canonical_key(), &report);
    assert_eq!(report.counts.exhaustive, 16249);
    assert_eq!(report.counts.random, 1000);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "A5 took {elapsed:?}");
    verdict("A5", format!("target {}", target.canonical_key()), elapsed);
}

#[test]
fn a6_oracle_equivalence() {
    let started = Instant::now();
    // (register, radius) pairs; width-2 windows get a raised qubit cap —
    // the dense vector only ever holds the diagonal pair strings
    let cases: Vec<(Arc<SchmidtVector>, i64)> = vec![
        (register(1, &[1, 1]), 2),
        (register(1, &[2, 1]), 2),
        (register(1, &[3, 2]), 2),
        (register(1, &[9, 16]), 2),
        (register(1, &[1, 99]), 2),
        (register(2, &[1, 1, 1, 1]), 1),
        (register(2, &[4, 2, 2, 1]), 1),
        (
            Arc::new(
                SchmidtVector::from_amplitudes(
                    1,
                    &[
                        RadicalScalar::one()
                            + embz::scalar::sqrt_of_rational(&ratio(2, 1)).unwrap(),
                        RadicalScalar::one(),
                    ],
                )
                .unwrap(),
            ),
            2,
        ),
    ];
    let mut words_total = 0;
    for (target, radius) in &cases {
        let window = TruncationWindow::with_cap(
            target.clone(),
            -radius,
            *radius,
            &[(0, target.width())],
            63,
        )
        .unwrap();
        for state in [
            ProductState::catalyst().with_slot(0, AncillaState::Target(target.clone())),
            ProductState::catalyst().with_slot(0, AncillaState::ZeroZero),
        ] {
            let dense = build_window_vector(&state, &window).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            for _ in 0..1000 {
                let word = random_word(&mut rng, window.addresses(), 5).unwrap();
                let cmp = compare_with(&dense, &state, &word).unwrap();
                assert!(
                    cmp.equal,
                    "A6 {}: word {word} symbolic {} vs oracle {}",
                    target.canonical_key(),
                    cmp.symbolic,
                    cmp.oracle
                );
                words_total += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(120), "A6 took {elapsed:?}");
    verdict(
        "A6",
        format!("{} registers, {words_total} words", cases.len()),
        elapsed,
    );
}

#[test]
fn a7_automorphism_laws() {
    let started = Instant::now();
    let reg = register(1, &[2, 1]);
    let morphisms = vec![
        Morphism::shift(reg.clone(), embz::pauli::Party::A, 1),
        Morphism::swap(reg.clone(), embz::pauli::Party::B, 0),
        Morphism::embezzle(reg.clone(), 0),
    ];
    // a radius-5 window plus the slot
    let window = suite_window(&reg, 0, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let i = RadicalScalar::i();
    for trial in 0..500 {
        let u = random_word(&mut rng, &window, 4).unwrap();
        let v = random_word(&mut rng, &window, 4).unwrap();
        let m = &morphisms[trial % morphisms.len()];

        // homomorphism with signs, on full elements
        let eu = embz::pauli::AlgebraElement::from_word(u.clone());
        let ev = embz::pauli::AlgebraElement::from_word(v.clone());
        assert_eq!(m.apply(&(&eu * &ev)), &m.apply(&eu) * &m.apply(&ev));

        // *-preservation on a complex combination
        let a = &eu + &(&ev * &i);
        assert_eq!(m.apply(&a.adjoint()), m.apply(&a).adjoint());

        // inverse composition returns every word
        assert_eq!(m.inverse().apply_word(&m.apply_word(&u)), u);

        // f-invariance: the product sign survives the address bijection
        let uv = &u * &v;
        let mapped = &m.apply_word(&u) * &m.apply_word(&v);
        assert_eq!(uv.sign, mapped.sign);
        assert_eq!(m.apply_word(&uv.word), mapped.word);
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "A7 took {elapsed:?}");
    verdict("A7", "500 random pairs, 4 laws".into(), elapsed);
}

#[test]
fn a8_approximation_monotonicity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10 {
        let theta: f64 = rng.gen_range(0.05..std::f64::consts::FRAC_PI_2 - 0.05);
        let amps = [
            Rational::from_float(theta.cos()).unwrap(),
            Rational::from_float(theta.sin()).unwrap(),
        ];
        let probs = {
            let sq: Vec<Rational> = amps.iter().map(|a| a * a).collect();
            let total = &sq[0] + &sq[1];
            [&sq[0] / &total, &sq[1] / &total]
        };
        let pf: Vec<f64> = probs
            .iter()
            .map(|p| rational_to_f64(p))
            .collect();

        let mut previous: Option<RadicalScalar> = None;
        for max_den in 1..=100u64 {
            let approx = match approximate_target(&amps, max_den) {
                Ok(approx) => approx,
                // very skewed targets round to a single point at tiny D —
                // then there is no two-point register, and the float
                // oracle must agree that the search came up empty
                Err(embz::Error::NoCandidate(_)) => {
                    assert!(previous.is_none(), "candidate vanished at D={max_den}");
                    assert!(float_best_fidelity(&pf, max_den) == f64::NEG_INFINITY);
                    continue;
                }
                Err(other) => panic!("approximate_target failed: {other}"),
            };

            // non-decreasing in the denominator bound, compared exactly
            if let Some(prev) = &previous {
                let diff = &approx.fidelity - prev;
                assert!(
                    diff.is_zero() || diff.real_sign().unwrap().is_gt(),
                    "fidelity decreased at D={max_den}"
                );
            }
            previous = Some(approx.fidelity.clone());

            // diagnostic: an independent floating-point search over all
            // denominators <= D must find the same best fidelity
            let oracle = float_best_fidelity(&pf, max_den);
            let (exact_float, _) = approx.fidelity.to_f64_parts(15);
            assert!(
                (exact_float - oracle).abs() < 1e-9,
                "D={max_den}: exact {exact_float} vs float oracle {oracle}"
            );
        }

        // within 10^-4 of perfect at D = 100, checked exactly
        let at_100 = previous.unwrap();
        let shortfall = RadicalScalar::one() - &at_100 - RadicalScalar::from_rational(ratio(1, 10_000));
        assert!(
            !shortfall.real_sign().unwrap().is_gt(),
            "fidelity at D=100 below 1 - 10^-4"
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "A8 took {elapsed:?}");
    verdict("A8", "10 angles, D = 1..=100 against float oracle".into(), elapsed);
}

#[test]
fn a9_negative_controls() {
    let started = Instant::now();
    let bell = register(1, &[1, 1]);
    let mut details = Vec::new();
    for fault in [Fault::ReversedShift, Fault::OffsetSwap, Fault::SwappedOrder] {
        let report = verify_suite_with(
            &bell,
            0,
            Morphism::embezzle_faulty(bell.clone(), 0, fault),
            &a1_params(),
        )
        .unwrap();
        assert!(!report.pass, "A9 {fault:?}: corrupted protocol passed");
        let case = report
            .first_failure()
            .expect("failing suite reports a counterexample");
        assert!(!case.equal);
        println!(
            "A9 {fault:?} counterexample: {}  (blank slot {} vs target slot {})",
            case.word, case.lhs, case.rhs
        );
        details.push(format!("{fault:?} x{}", report.counts.failed));
    }
    let elapsed = started.elapsed();
    verdict("A9", details.join(", "), elapsed);
}

// --- helpers -----------------------------------------------------------------

fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

/// Independent A8 oracle: float search over every denominator `d <= max`,
/// rounding each probability to `k_i = floor(p_i d + 1/2)` and scoring
/// `(sum sqrt(p_i k_i))^2 / sum k`.
fn float_best_fidelity(probs: &[f64], max: u64) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for d in 1..=max {
        let k: Vec<f64> = probs.iter().map(|p| (p * d as f64 + 0.5).floor()).collect();
        if k.iter().filter(|v| **v > 0.0).count() < 2 {
            continue;
        }
        let total: f64 = k.iter().sum();
        let overlap: f64 = probs
            .iter()
            .zip(&k)
            .map(|(p, ki)| (p * ki).sqrt())
            .sum();
        best = best.max(overlap * overlap / total);
    }
    best
}
