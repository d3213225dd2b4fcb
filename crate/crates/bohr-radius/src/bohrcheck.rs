//! Empirical side of the radius: the coefficient-sum inequality itself.
//!
//! For a polynomial p on the closed unit disk and a radius r, the quantity
//! checked everywhere below is
//!
//! ```text
//! gap(p, r) = sum_k |a_k| r^k  -  max_{|z|=1} |p(z)|,
//! ```
//!
//! negative for every p when r is at most the radius of p's degree, and
//! positive for some p as soon as r exceeds it. [`search_violation`] hunts
//! for such witnesses with a seeded derivative-free descent, and
//! [`empirical_radius`] bisects on "was a witness found" to bracket the
//! radius without ever touching a determinant.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Polynomial on the closed unit disk; dense complex coefficients,
/// constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskPolynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> DiskPolynomial<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput {
                what: "coefficient list",
            });
        }
        Ok(Self { coeffs })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Complex::new(c, T::zero()))
                .collect(),
        )
    }

    /// Length of the coefficient vector minus one; trailing zeros are not
    /// stripped, so this is the nominal degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// `|p(e^(i theta))|` by Horner evaluation.
    pub fn modulus_on_circle(&self, theta: T) -> T {
        let z = Complex::new(theta.cos(), theta.sin());
        let mut acc = Complex::new(T::zero(), T::zero());
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc.norm()
    }

    /// Largest coefficient modulus.
    fn peak_coeff(&self) -> T {
        let mut m = T::zero();
        for a in &self.coeffs {
            m = m.max(a.norm());
        }
        m
    }
}

/// `sum_k |a_k| r^k`, the left side of the inequality.
pub fn majorant<T: Real>(p: &DiskPolynomial<T>, r: T) -> T {
    let mut acc = T::zero();
    for a in p.coeffs.iter().rev() {
        acc = acc * r + a.norm();
    }
    acc
}

/// Minimum circle samples accepted for a given degree: four per coefficient.
pub fn min_samples(degree: usize) -> usize {
    4 * (degree + 1)
}

/// Golden-section refinement runs until the enclosing arc is this narrow.
const REFINE_WIDTH: f64 = 1e-12;

/// How many of the best grid maxima get refined.
const REFINE_TOP: usize = 8;

/// Refinement iteration cap; in f32 the width target sits below machine
/// resolution and the cap ends the loop instead.
const REFINE_MAX_ITERS: usize = 200;

/// `max |p|` on the unit circle: an equispaced modulus scan followed by
/// golden-section refinement of the top local maxima.
///
/// Every reported value is an evaluated modulus, so the result is always a
/// certified lower bound on the true maximum; with the 4-per-coefficient
/// grid it is in practice the maximum to about 1e-10 relative.
pub fn supnorm<T: Real>(p: &DiskPolynomial<T>, samples: usize) -> Result<T> {
    let need = min_samples(p.degree());
    if samples < need {
        return Err(Error::GridTooSmall {
            degree: p.degree(),
            min: need,
            got: samples,
        });
    }
    let m = samples;
    let two_pi = T::PI() + T::PI();
    let step = two_pi / T::from_usize(m).expect("sample count fits in scalar");
    let vals: Vec<T> = (0..m)
        .map(|j| p.modulus_on_circle(step * T::from_usize(j).expect("index fits in scalar")))
        .collect();
    let mut best = T::zero();
    for &v in &vals {
        best = best.max(v);
    }
    // local maxima on the cyclic grid, best first (stable on ties)
    let mut peaks: Vec<usize> = (0..m)
        .filter(|&j| {
            let prev = vals[(j + m - 1) % m];
            let next = vals[(j + 1) % m];
            vals[j] >= prev && vals[j] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| {
        vals[b]
            .partial_cmp(&vals[a])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    for &j in peaks.iter().take(REFINE_TOP) {
        let center = step * T::from_usize(j).expect("index fits in scalar");
        best = best.max(golden_max(p, center - step, center + step));
    }
    Ok(best)
}

/// Golden-section maximization of the circle modulus over [a, b].
fn golden_max<T: Real>(p: &DiskPolynomial<T>, mut a: T, mut b: T) -> T {
    let inv_phi = lit::<T>(0.618_033_988_749_894_9);
    let width = lit::<T>(REFINE_WIDTH);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = p.modulus_on_circle(x1);
    let mut f2 = p.modulus_on_circle(x2);
    let mut iters = 0;
    while b - a > width && iters < REFINE_MAX_ITERS {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = p.modulus_on_circle(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = p.modulus_on_circle(x1);
        }
        iters += 1;
    }
    f1.max(f2)
}

/// A candidate polynomial with both sides of the inequality at radius r.
#[derive(Debug, Clone, PartialEq)]
pub struct BohrWitness<T> {
    pub poly: DiskPolynomial<T>,
    pub r: T,
    pub majorant: T,
    pub supnorm: T,
    /// `majorant - supnorm`; positive means the inequality fails at r.
    pub gap: T,
}

/// Evaluates both sides of the inequality for one polynomial.
pub fn bohr_gap<T: Real>(p: &DiskPolynomial<T>, r: T, samples: usize) -> Result<BohrWitness<T>> {
    if !r.is_finite() || r < T::zero() || r >= T::one() {
        return Err(Error::RadiusOutOfRange {
            r: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let maj = majorant(p, r);
    let sup = supnorm(p, samples)?;
    Ok(BohrWitness {
        poly: p.clone(),
        r,
        majorant: maj,
        supnorm: sup,
        gap: maj - sup,
    })
}

/// Coefficient field searched over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientMode {
    Real,
    Complex,
}

impl CoefficientMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoefficientMode::Real => "real",
            CoefficientMode::Complex => "complex",
        }
    }
}

/// Knobs for [`search_violation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    pub mode: CoefficientMode,
    /// Circle samples per sup-norm evaluation; raised to the per-degree
    /// minimum automatically.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 200,
            mode: CoefficientMode::Real,
            samples: 256,
            seed: 0,
        }
    }
}

/// Gaps above this threshold count as genuine violations; anything smaller
/// is indistinguishable from sup-norm grid error.
pub const GAP_THRESHOLD: f64 = 1e-6;

const DESCENT_STEP0: f64 = 0.5;
const DESCENT_STEP_MIN: f64 = 1e-4;
const DESCENT_SHRINK: f64 = 0.5;
/// Hard budget per restart, counting objective evaluations.
const MAX_EVALS_PER_RESTART: usize = 4000;

/// Free parameters per candidate. Two symmetries are quotiented out: a
/// global phase makes a_0 real and nonnegative, and a rotation
/// `a_k -> e^(ik alpha) a_k` (which changes neither side of the inequality)
/// makes a_1 real and nonnegative.
fn param_count(n: usize, mode: CoefficientMode) -> usize {
    match mode {
        CoefficientMode::Real => n + 1,
        CoefficientMode::Complex => 2 * n,
    }
}

fn coeffs_from_params<T: Real>(params: &[T], mode: CoefficientMode) -> Vec<Complex<T>> {
    let mut coeffs = vec![
        Complex::new(params[0].abs(), T::zero()),
        Complex::new(params[1].abs(), T::zero()),
    ];
    match mode {
        CoefficientMode::Real => {
            for &v in &params[2..] {
                coeffs.push(Complex::new(v, T::zero()));
            }
        }
        CoefficientMode::Complex => {
            for pair in params[2..].chunks_exact(2) {
                coeffs.push(Complex::new(pair[0], pair[1]));
            }
        }
    }
    coeffs
}

/// Candidate normalized to unit peak coefficient modulus; `None` when the
/// parameters describe (numerically) the zero polynomial.
fn normalized_candidate<T: Real>(
    params: &[T],
    mode: CoefficientMode,
) -> Option<DiskPolynomial<T>> {
    let coeffs = coeffs_from_params(params, mode);
    let p = DiskPolynomial { coeffs };
    let m = p.peak_coeff();
    if m < lit::<T>(1e-12) {
        return None;
    }
    Some(DiskPolynomial {
        coeffs: p
            .coeffs
            .into_iter()
            .map(|a| Complex::new(a.re / m, a.im / m))
            .collect(),
    })
}

fn objective<T: Real>(params: &[T], mode: CoefficientMode, r: T, samples: usize) -> T {
    match normalized_candidate(params, mode) {
        // strongly discourage collapse to zero
        None => lit::<T>(-1e9),
        Some(p) => {
            let maj = majorant(&p, r);
            let sup = supnorm(&p, samples).expect("sample count validated by caller");
            maj - sup
        }
    }
}

/// Deterministic tie-break: lexicographic over (re, im) coefficient pairs.
fn lex_less<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        for (u, v) in [(x.re, y.re), (x.im, y.im)] {
            if u < v {
                return true;
            }
            if u > v {
                return false;
            }
        }
    }
    a.len() < b.len()
}

/// Searches for a polynomial violating the inequality at radius r.
///
/// Plain coordinate descent on the parametrization above: starting from
/// uniform random parameters in [-1, 1], each coordinate is probed one step
/// up and down; the step starts at 0.5 and halves whenever no coordinate
/// improves, down to 1e-4. Candidates are normalized to unit peak
/// coefficient, which fixes the scale invariance of the gap. Restarts are
/// driven by a ChaCha12 stream seeded from `seed`, so results are fully
/// reproducible; the best restart wins, with ties broken lexicographically
/// on coefficients.
///
/// Returns `Ok(None)` when no restart produces a gap above
/// [`GAP_THRESHOLD`], which is the expected outcome for r below the radius.
pub fn search_violation<T: Real>(
    n: usize,
    r: T,
    opts: &SearchOptions,
) -> Result<Option<BohrWitness<T>>> {
    if n < 1 {
        return Err(Error::DegreeTooSmall { n, min: 1 });
    }
    if !r.is_finite() || r <= T::zero() || r >= T::one() {
        return Err(Error::RadiusOutOfRange {
            r: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    if opts.restarts == 0 {
        return Err(Error::NoRestarts);
    }
    let samples = opts.samples.max(min_samples(n));
    let dim = param_count(n, opts.mode);
    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
    let step_min = lit::<T>(DESCENT_STEP_MIN);
    let mut best: Option<(T, DiskPolynomial<T>)> = None;

    for _ in 0..opts.restarts {
        let mut params: Vec<T> = (0..dim)
            .map(|_| lit::<T>(rng.random_range(-1.0..1.0)))
            .collect();
        let mut cur = objective(&params, opts.mode, r, samples);
        let mut step = lit::<T>(DESCENT_STEP0);
        let mut evals = 1usize;
        'descent: while step >= step_min {
            let mut improved = false;
            for i in 0..dim {
                for dir in [step, -step] {
                    if evals >= MAX_EVALS_PER_RESTART {
                        break 'descent;
                    }
                    let saved = params[i];
                    params[i] = saved + dir;
                    let cand = objective(&params, opts.mode, r, samples);
                    evals += 1;
                    if cand > cur {
                        cur = cand;
                        improved = true;
                    } else {
                        params[i] = saved;
                    }
                }
            }
            if !improved {
                step = step * lit::<T>(DESCENT_SHRINK);
            }
        }
        if let Some(p) = normalized_candidate(&params, opts.mode) {
            let replace = match &best {
                None => true,
                Some((bg, bp)) => cur > *bg || (cur == *bg && lex_less(p.coeffs(), bp.coeffs())),
            };
            if replace {
                best = Some((cur, p));
            }
        }
    }

    match best {
        Some((gap, p)) if gap > lit::<T>(GAP_THRESHOLD) => Ok(Some(bohr_gap(&p, r, samples)?)),
        _ => Ok(None),
    }
}

/// Outcome of the empirical bracket: no violation was found at `lo`, and
/// `hi` (when present) is the smallest probed radius where one turned up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalRadius<T> {
    pub lo: T,
    pub hi: Option<T>,
}

/// Upper edge of the probed window.
const WINDOW_HI: f64 = 0.9;

/// Bisection stops once the bracket is this tight.
const TARGET_WIDTH: f64 = 0.02;

/// Brackets the radius of degree n empirically.
///
/// Bisects [1/3, 0.9] on the predicate "does [`search_violation`] find a
/// witness", probing each midpoint in real mode first and complex mode as
/// the fallback, `budget` restarts each. Roughly six probes reach the 0.02
/// target width. When even r = 0.9 yields no witness the result is
/// `(0.9, None)`: inconclusive, nothing found anywhere.
pub fn empirical_radius<T: Real>(n: usize, budget: usize, seed: u64) -> Result<EmpiricalRadius<T>> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { n, min: 2 });
    }
    if budget == 0 {
        return Err(Error::NoRestarts);
    }
    let mut probe_idx: u64 = 0;
    let mut probe = |r: T| -> Result<bool> {
        // decorrelate probe seeds without losing reproducibility
        let probe_seed = seed.wrapping_add(probe_idx.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        probe_idx += 1;
        let real = SearchOptions {
            restarts: budget,
            mode: CoefficientMode::Real,
            samples: 256,
            seed: probe_seed,
        };
        if search_violation(n, r, &real)?.is_some() {
            return Ok(true);
        }
        let complex = SearchOptions {
            mode: CoefficientMode::Complex,
            ..real
        };
        Ok(search_violation(n, r, &complex)?.is_some())
    };

    let mut hi = lit::<T>(WINDOW_HI);
    if !probe(hi)? {
        return Ok(EmpiricalRadius { lo: hi, hi: None });
    }
    let mut lo = lit::<T>(1.0 / 3.0);
    if probe(lo)? {
        // cannot happen for a correct search; report the degenerate bracket
        return Ok(EmpiricalRadius { lo, hi: Some(lo) });
    }
    while hi - lo > lit::<T>(TARGET_WIDTH) {
        let mid = (lo + hi) * lit::<T>(0.5);
        if probe(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(EmpiricalRadius { lo, hi: Some(hi) })
}
