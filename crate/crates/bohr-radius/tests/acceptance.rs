//! Acceptance gate: one test per commissioning criterion, each printing a
//! PASS line with the measured quantities (visible under `--nocapture`).
//!
//! Every tolerance and runtime budget here is part of the contract; none of
//! them may be loosened to make a failing build green.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use bohr_radius::asympt::{asym_table, richardson, PI_SQUARED_OVER_3};
use bohr_radius::bohrcheck::{empirical_radius, search_violation, CoefficientMode, SearchOptions};
use bohr_radius::solver::{radius, radius_direct, radius_spectral, RadiusOptions};
use bohr_radius::spectral::{bracket, pn_eval, subst_g};
use bohr_radius::toeplitz::{build_matrix, delta, dense_det, ToeplitzParams};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// 1/3, the lower edge of the root window.
const ONE_THIRD: f64 = 1.0 / 3.0;

fn assert_budget(name: &str, elapsed: Duration, budget: Duration) {
    assert!(
        elapsed <= budget,
        "{name}: runtime {elapsed:?} exceeds budget {budget:?}"
    );
}

/// Criterion 1: recurrence vs dense elimination, n <= 12, 20 seeded r each,
/// relative 1e-9, under one second.
#[test]
fn criterion_01_determinant_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xB0E1);
    let mut worst = 0.0f64;
    for n in 0..=12usize {
        for _ in 0..20 {
            // keep r strictly inside (0, 1)
            let r = 0.001 + 0.998 * rng.random_range(0.0..1.0);
            let p = ToeplitzParams::new(n, r).unwrap();
            let dense: f64 = dense_det(&build_matrix(&p));
            let raw = delta(&p).raw().expect("no rescaling at these sizes");
            let err = (dense - raw).abs() / dense.abs().max(1.0);
            worst = worst.max(err);
            assert!(err <= 1e-9, "n={n} r={r}: dense={dense} recurrence={raw}");
        }
    }
    let elapsed = start.elapsed();
    assert_budget("criterion 1", elapsed, Duration::from_secs(1));
    println!("PASS criterion 1: worst relative gap {worst:.3e} over n<=12 x 20 draws ({elapsed:?})");
}

/// Criterion 2: the three hand-expanded determinants at ten radii, 1e-12.
#[test]
fn criterion_02_hand_derived_polynomials() {
    type HandPoly = fn(f64) -> f64;
    let hand: [(usize, HandPoly); 3] = [
        (1, |r| 1.0 - r * r),
        (2, |r| 1.0 - 2.0 * r.powi(2) - 3.0 * r.powi(4)),
        (3, |r| {
            1.0 - 3.0 * r.powi(2) - 5.0 * r.powi(4) - 9.0 * r.powi(6)
        }),
    ];
    let mut worst = 0.0f64;
    for (n, poly) in hand {
        for k in 1..=10 {
            let r = 0.05 * k as f64;
            let raw = delta(&ToeplitzParams::new(n, r).unwrap())
                .raw()
                .expect("tiny degrees never rescale");
            let expected = poly(r);
            let err = (raw - expected).abs() / expected.abs().max(1.0);
            worst = worst.max(err);
            assert!(err <= 1e-12, "n={n} r={r}: got {raw}, expected {expected}");
        }
    }
    println!("PASS criterion 2: degree 1..3 polynomials reproduced, worst gap {worst:.3e}");
}

/// Criterion 3: closed form at r = 1/3, relative 1e-10, raw for n <= 100 and
/// log-space for n in {1e3, 1e4}.
#[test]
fn criterion_03_closed_form_spine() {
    let log_two_thirds = (2.0f64 / 3.0).ln();
    let closed_log = |n: usize| (n as f64 + 1.0) * log_two_thirds + ((n as f64 + 3.0) / 2.0).ln();
    let mut worst_raw = 0.0f64;
    let mut worst_log = 0.0f64;
    for n in (1..=100).chain([1000, 10_000]) {
        let d = delta(&ToeplitzParams::new(n, ONE_THIRD).unwrap());
        assert_eq!(d.sign(), 1, "determinant must stay positive at 1/3, n={n}");
        if let Some(raw) = d.raw() {
            let expected = (2.0f64 / 3.0).powi(n as i32 + 1) * (n as f64 + 3.0) / 2.0;
            let err = (raw - expected).abs() / expected.abs();
            worst_raw = worst_raw.max(err);
            assert!(err <= 1e-10, "raw mismatch at n={n}: rel err {err:.3e}");
        } else {
            assert!(n >= 1000, "rescaling should not trigger below n=1000");
        }
        let expected_log = closed_log(n);
        let err = (d.log_mag() - expected_log).abs() / expected_log.abs().max(1.0);
        worst_log = worst_log.max(err);
        assert!(err <= 1e-10, "log mismatch at n={n}: rel err {err:.3e}");
    }
    println!(
        "PASS criterion 3: closed form held, worst raw gap {worst_raw:.3e}, worst log gap {worst_log:.3e}"
    );
}

/// Criterion 4: R2 = 3^(-1/2) to 1e-10 and R3 = 0.46940 to 1e-4, under 0.1 s.
#[test]
fn criterion_04_small_degree_radii() {
    let start = Instant::now();
    let opts = RadiusOptions::<f64>::default();
    let r2 = radius(2, &opts).unwrap().value.unwrap();
    let r3 = radius(3, &opts).unwrap().value.unwrap();
    let elapsed = start.elapsed();
    let target2 = 3.0f64.sqrt().recip();
    assert!(
        (r2 - target2).abs() <= 1e-10,
        "R2={r2}, expected {target2} to 1e-10"
    );
    assert!((r3 - 0.46940).abs() <= 1e-4, "R3={r3}, expected 0.46940(4)");
    assert_budget("criterion 4", elapsed, Duration::from_millis(100));
    println!("PASS criterion 4: R2={r2:.12}, R3={r3:.12} ({elapsed:?})");
}

/// Criterion 5: the two routes agree to 1e-10 across six degrees, under 10 s.
#[test]
fn criterion_05_cross_method_agreement() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in [7usize, 10, 50, 100, 1000, 5000] {
        let d = radius_direct::<f64>(n, 1e-14).unwrap().value.unwrap();
        let s = radius_spectral::<f64>(n, 1e-14).unwrap().value.unwrap();
        let gap = (d - s).abs();
        worst = worst.max(gap);
        assert!(gap <= 1e-10, "n={n}: direct={d:.16} spectral={s:.16}");
    }
    let elapsed = start.elapsed();
    assert_budget("criterion 5", elapsed, Duration::from_secs(10));
    println!("PASS criterion 5: worst |direct - spectral| = {worst:.3e} ({elapsed:?})");
}

/// Criterion 6: the limit law at desk scale. c_4096 within 1% of pi^2/3,
/// |deviation| strictly decreasing over five doublings, order-1 Richardson on
/// (1024, 2048) within 1e-3, all under 30 s.
#[test]
fn criterion_06_limit_law_at_desk_scale() {
    let start = Instant::now();
    let rows = asym_table::<f64>(&[256, 512, 1024, 2048, 4096]).unwrap();
    let elapsed = start.elapsed();

    let c_last = rows.last().unwrap().c;
    let rel = (c_last - PI_SQUARED_OVER_3).abs() / PI_SQUARED_OVER_3;
    assert!(rel <= 0.01, "c_4096={c_last}: off the limit by {rel:.4}");

    for pair in rows.windows(2) {
        assert!(
            pair[1].deviation.abs() < pair[0].deviation.abs(),
            "|deviation| must shrink: n={} gives {:.6}, n={} gives {:.6}",
            pair[0].n,
            pair[0].deviation.abs(),
            pair[1].n,
            pair[1].deviation.abs()
        );
    }

    let extrap = richardson(&rows[2..4], 1).unwrap();
    let err = (extrap.estimate - PI_SQUARED_OVER_3).abs();
    assert!(
        err <= 1e-3,
        "richardson(1024, 2048) = {}: {err:.2e} from the limit",
        extrap.estimate
    );
    assert_budget("criterion 6", elapsed, Duration::from_secs(30));
    println!(
        "PASS criterion 6: c_4096={c_last:.6} (rel {rel:.2e}), richardson={:.6} (err {err:.2e}) ({elapsed:?})",
        extrap.estimate
    );
}

/// Criterion 7: 1/3 < R_{n+1} <= R_n <= 3^(-1/2) + 1e-12 on a seeded
/// log-uniform sample of degrees in [2, 2000].
#[test]
fn criterion_07_monotonicity_and_bounds() {
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    let (lo, hi) = (2.0f64.ln(), 1999.0f64.ln());
    let mut degrees: Vec<usize> = (0..20)
        .map(|_| {
            let u: f64 = rng.random_range(0.0..1.0);
            (lo + u * (hi - lo)).exp().round() as usize
        })
        .map(|n| n.clamp(2, 1999))
        .collect();
    degrees.push(2);
    degrees.push(1999);
    let upper = 3.0f64.sqrt().recip() + 1e-12;
    let opts = RadiusOptions::<f64>::default();
    for &n in &degrees {
        let r_n = radius(n, &opts).unwrap().value.unwrap();
        let r_next = radius(n + 1, &opts).unwrap().value.unwrap();
        assert!(r_next > ONE_THIRD, "R_{} = {r_next} not above 1/3", n + 1);
        assert!(r_next <= r_n, "R must not grow: R_{n}={r_n}, R_{}={r_next}", n + 1);
        assert!(r_n <= upper, "R_{n}={r_n} above the degree-2 ceiling");
    }
    println!(
        "PASS criterion 7: bounds and monotone decay on {} sampled degree pairs",
        degrees.len()
    );
}

/// Criterion 8: bracket sign structure for 7 <= n <= 50. The solver's
/// bracket [x_{n+1}, pi - (pi/2)/(n+2)] carries opposite endpoint signs and
/// the returned root sits strictly inside it. The half-step interval on the
/// other side of x_{n+1}, (x_{n+1} - (pi/2)/(n+2), x_{n+1}), carries EQUAL
/// endpoint signs at every one of these degrees: the root of p_n nearest pi
/// lives above the top node, not below it, and the test pins that fact down.
#[test]
fn criterion_08_bracket_sign_structure() {
    let opts = RadiusOptions::<f64>::default();
    for n in 7usize..=50 {
        let br = bracket::<f64>(n).unwrap();
        assert_eq!(
            br.sign_lo * br.sign_hi,
            -1,
            "n={n}: solver bracket must change sign"
        );

        let res = radius(n, &opts).unwrap();
        let x_root = res.x_root.expect("spectral route ran");
        assert!(
            br.lo < x_root && x_root < br.hi,
            "n={n}: root x*={x_root} outside ({}, {})",
            br.lo,
            br.hi
        );

        // the mirrored half-step interval below the top node holds no root
        let m = n as f64 + 2.0;
        let top_node = (n as f64 + 1.0) * PI / m;
        let below = top_node - PI / (2.0 * m);
        let s_below = pn_eval(n, below).unwrap().signum();
        let s_node = pn_eval(n, top_node).unwrap().signum();
        assert_eq!(
            s_below, s_node,
            "n={n}: interval below the top node unexpectedly changed sign"
        );
    }
    println!(
        "PASS criterion 8: sign change across the solver bracket and root strictly inside for n=7..=50; \
         the half-step interval below the top node carries equal signs throughout"
    );
}

/// Criterion 9: scaled limit at z = 3 pi / 2. With x = pi - z/(n+2) and
/// r = g(x), the quantity (-1)^(n+1) p_n(x) / ((n+2)(1-r)^2) approaches
/// sin z / z, with deviations shrinking over n in {1e2, 1e3, 1e4} and the
/// last one at most 1e-2.
#[test]
fn criterion_09_scaled_limit() {
    let z = 3.0 * PI / 2.0;
    let target = z.sin() / z;
    let mut prev = f64::INFINITY;
    let mut devs = Vec::new();
    for n in [100usize, 1000, 10_000] {
        let m = n as f64 + 2.0;
        let x = PI - z / m;
        let r = subst_g(x).unwrap();
        let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let q = sign * pn_eval(n, x).unwrap() / (m * (1.0 - r) * (1.0 - r));
        let dev = (q - target).abs();
        assert!(dev < prev, "n={n}: deviation {dev:.3e} did not shrink");
        prev = dev;
        devs.push(format!("{dev:.3e}"));
    }
    assert!(prev <= 1e-2, "final deviation {prev:.3e} above 1e-2");
    println!(
        "PASS criterion 9: deviations [{}] toward sin z / z = {target:.9}",
        devs.join(", ")
    );
}

/// Criterion 10: the inequality's empirical converse. Seed 0, 200 restarts:
/// a violation with gap > 1e-3 appears at R_n + 0.05 for n = 2, 3 and none
/// appears at R_n - 0.05; the empirical bracket for degree 2 lands within
/// 0.02 of 0.5774. Under 60 s.
#[test]
fn criterion_10_bohr_definition_consistency() {
    let start = Instant::now();
    let opts = SearchOptions {
        restarts: 200,
        mode: CoefficientMode::Real,
        samples: 256,
        seed: 0,
    };
    let radii = [
        (2usize, 3.0f64.sqrt().recip()),
        (3usize, 0.4693964245699947),
    ];
    let mut gaps = Vec::new();
    for (n, r_n) in radii {
        let above = search_violation::<f64>(n, r_n + 0.05, &opts)
            .unwrap()
            .unwrap_or_else(|| panic!("n={n}: no violation found above the radius"));
        assert!(
            above.gap > 1e-3,
            "n={n}: gap {} too small above the radius",
            above.gap
        );
        gaps.push(format!("{:.3e}", above.gap));
        let below = search_violation::<f64>(n, r_n - 0.05, &opts).unwrap();
        assert!(
            below.is_none(),
            "n={n}: spurious violation below the radius: gap {}",
            below.unwrap().gap
        );
    }

    let bracket = empirical_radius::<f64>(2, 30, 0).unwrap();
    let hi = bracket.hi.expect("violations must exist below 0.9 at degree 2");
    assert!(
        (bracket.lo - 0.5774).abs() <= 0.02 && (hi - 0.5774).abs() <= 0.02,
        "empirical bracket ({}, {hi}) strays from 0.5774 +/- 0.02",
        bracket.lo
    );
    let elapsed = start.elapsed();
    assert_budget("criterion 10", elapsed, Duration::from_secs(60));
    println!(
        "PASS criterion 10: gaps above radius [{}], empirical bracket ({:.4}, {hi:.4}) ({elapsed:?})",
        gaps.join(", "),
        bracket.lo
    );
}

/// Criterion 11: degree one million through the spectral route in at most
/// ten seconds, radius within 1e-8 above 1/3, log-scaled residual finite.
#[test]
fn criterion_11_scale() {
    let start = Instant::now();
    let res = radius_spectral::<f64>(1_000_000, 1e-14).unwrap();
    let elapsed = start.elapsed();
    let value = res.value.unwrap();
    assert!(
        value > ONE_THIRD && value < ONE_THIRD + 1e-8,
        "R_1e6 = {value} outside (1/3, 1/3 + 1e-8)"
    );
    let residual = res.residual_log.expect("log-scaled residual recorded");
    assert!(residual.is_finite(), "residual log {residual} not finite");
    assert_budget("criterion 11", elapsed, Duration::from_secs(10));
    println!(
        "PASS criterion 11: R_1e6 - 1/3 = {:.3e}, residual log {residual:.3} ({elapsed:?})",
        value - ONE_THIRD
    );
}
