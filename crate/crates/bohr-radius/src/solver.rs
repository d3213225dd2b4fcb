//! Radius solvers: the direct determinant scan, the spectral substitution,
//! and the cross-checking dispatcher on top of both.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::spectral::{solve_spectral, RootBracket, MAX_BISECT_ITERS, SPECTRAL_MIN_N};
use crate::toeplitz::{delta, ToeplitzParams};

/// Which route produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Spectral,
    Both,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Spectral => "spectral",
            Method::Both => "both",
        }
    }
}

/// Default bisection tolerance.
pub const DEFAULT_TOL: f64 = 1e-14;

/// Agreement floor for the dual-route cross-check; the allowance is
/// `max(CROSS_CHECK_FLOOR, 10 * tol)`.
pub const CROSS_CHECK_FLOOR: f64 = 1e-10;

/// Options for [`radius`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusOptions<T> {
    pub tol: T,
    pub method: Method,
}

impl<T: Real> Default for RadiusOptions<T> {
    fn default() -> Self {
        Self {
            tol: lit(DEFAULT_TOL),
            method: Method::Both,
        }
    }
}

/// Outcome of a radius computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusResult<T> {
    pub n: usize,
    /// The radius, or `None` when the determinant has no root in (0, 1);
    /// n = 1 is the only degree without one.
    pub value: Option<T>,
    /// The route that produced `value` (the dispatcher reports `Both` after
    /// a successful cross-check).
    pub method: Method,
    /// Sign-change interval the bisection ran in: in r for the direct
    /// route, in x for the spectral one.
    pub bracket: Option<RootBracket<T>>,
    pub iterations: usize,
    /// `log |D_n|` at the returned radius.
    pub residual_log: Option<T>,
    /// Root abscissa on the substitution curve when the spectral route ran.
    pub x_root: Option<T>,
}

/// Upper edge of the primary scan window; every root lies in
/// `[1/3, 3^(-1/2)]`, comfortably inside.
const SCAN_HI: f64 = 0.60;

/// Step of the defensive sweeps outside the primary window.
const COARSE_STEP: f64 = 1e-3;

fn validate_tol<T: Real>(tol: T) -> Result<()> {
    if !tol.is_finite() || tol <= T::zero() {
        return Err(Error::BadTolerance {
            tol: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

fn det_sign<T: Real>(n: usize, r: T) -> i8 {
    // every scan path keeps r inside [0, 1)
    let p = ToeplitzParams::new(n, r).expect("scan radius stays in range");
    delta(&p).sign()
}

enum ScanHit<T> {
    /// The grid landed exactly on a root.
    Exact(T),
    /// Adjacent grid points with opposite determinant signs.
    Change { lo: T, hi: T, sign_lo: i8, sign_hi: i8 },
}

/// Walks [lo, hi] at `step` and reports the first sign change or exact zero.
fn scan_for_change<T: Real>(n: usize, lo: T, hi: T, step: T) -> Option<ScanHit<T>> {
    let mut r_prev = lo;
    let mut s_prev = det_sign(n, lo);
    if s_prev == 0 {
        return Some(ScanHit::Exact(lo));
    }
    for k in 1.. {
        let mut r = lo + step * T::from_usize(k).expect("step count fits in scalar");
        let last = r >= hi;
        if last {
            r = hi;
        }
        let s = det_sign(n, r);
        if s == 0 {
            return Some(ScanHit::Exact(r));
        }
        if s != s_prev {
            return Some(ScanHit::Change {
                lo: r_prev,
                hi: r,
                sign_lo: s_prev,
                sign_hi: s,
            });
        }
        if last {
            return None;
        }
        r_prev = r;
        s_prev = s;
    }
    unreachable!("scan always terminates at hi");
}

fn bisect_det<T: Real>(n: usize, mut lo: T, mut hi: T, sign_lo: i8, tol: T) -> Result<(T, usize)> {
    let mut iterations = 0;
    while hi - lo > tol {
        if iterations >= MAX_BISECT_ITERS {
            return Err(Error::IterationLimit {
                max_iters: MAX_BISECT_ITERS,
            });
        }
        let mid = (lo + hi) * lit::<T>(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let s = det_sign(n, mid);
        if s == 0 {
            return Ok((mid, iterations));
        }
        if s == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(((lo + hi) * lit::<T>(0.5), iterations))
}

fn finish_direct<T: Real>(n: usize, tol: T, hit: ScanHit<T>) -> Result<RadiusResult<T>> {
    let (value, bracket, iterations) = match hit {
        ScanHit::Exact(r) => (r, None, 0),
        ScanHit::Change {
            lo,
            hi,
            sign_lo,
            sign_hi,
        } => {
            let (root, iters) = bisect_det(n, lo, hi, sign_lo, tol)?;
            (
                root,
                Some(RootBracket {
                    lo,
                    hi,
                    sign_lo,
                    sign_hi,
                }),
                iters,
            )
        }
    };
    let residual = delta(&ToeplitzParams::new(n, value)?);
    Ok(RadiusResult {
        n,
        value: Some(value),
        method: Method::Direct,
        bracket,
        iterations,
        residual_log: Some(residual.log_mag()),
        x_root: None,
    })
}

/// Smallest determinant root by grid scan plus bisection.
///
/// The primary window [1/3, 0.60] is scanned at step
/// `min(1e-3, pi^2 / (4 n^2))`, below the gap separating the two smallest
/// roots, and the first sign change is bisected to width `tol`. If the
/// window shows no change, the leftovers (0, 1/3) and (0.60, 0.999) get one
/// defensive sweep at the coarse step before the no-root outcome is
/// returned; n = 1 is the one degree that ends there.
pub fn radius_direct<T: Real>(n: usize, tol: T) -> Result<RadiusResult<T>> {
    if n < 1 {
        return Err(Error::DegreeTooSmall { n, min: 1 });
    }
    validate_tol(tol)?;
    let third = lit::<T>(1.0 / 3.0);
    let nf = T::from_usize(n).expect("degree fits in scalar");
    let step = lit::<T>(COARSE_STEP).min(T::PI() * T::PI() / (lit::<T>(4.0) * nf * nf));
    if let Some(hit) = scan_for_change(n, third, lit(SCAN_HI), step) {
        return finish_direct(n, tol, hit);
    }
    for (lo, hi) in [
        (lit::<T>(COARSE_STEP), third),
        (lit::<T>(SCAN_HI), lit::<T>(0.999)),
    ] {
        if let Some(hit) = scan_for_change(n, lo, hi, lit(COARSE_STEP)) {
            return finish_direct(n, tol, hit);
        }
    }
    Ok(RadiusResult {
        n,
        value: None,
        method: Method::Direct,
        bracket: None,
        iterations: 0,
        residual_log: None,
        x_root: None,
    })
}

/// Root via the substitution curve; n >= 7 only.
///
/// The x-space bisection runs to `tol`, and the result is certified back in
/// determinant land: the sign of `D_n` must change across `[r - h, r + h]`
/// with `h = clamp(10 tol, a few ulps of r, quarter of the local root
/// spacing)`. A certificate failure is an error, not a warning.
pub fn radius_spectral<T: Real>(n: usize, tol: T) -> Result<RadiusResult<T>> {
    if n < SPECTRAL_MIN_N {
        return Err(Error::SpectralUnavailable { n });
    }
    validate_tol(tol)?;
    let sol = solve_spectral(n, tol)?;
    let r = sol.point.r;
    let nf = T::from_usize(n + 2).expect("degree fits in scalar");
    let spacing_quarter = T::PI() * T::PI() / (lit::<T>(4.0) * nf * nf);
    let ulps = r * T::epsilon() * lit::<T>(8.0);
    let h = (lit::<T>(10.0) * tol).min(spacing_quarter).max(ulps);
    let s_lo = det_sign(n, r - h);
    let s_hi = det_sign(n, r + h);
    if s_lo * s_hi > 0 {
        return Err(Error::RootCertificate {
            n,
            r: r.to_f64().unwrap_or(f64::NAN),
            h: h.to_f64().unwrap_or(f64::NAN),
        });
    }
    let residual = delta(&ToeplitzParams::new(n, r)?);
    Ok(RadiusResult {
        n,
        value: Some(r),
        method: Method::Spectral,
        bracket: Some(sol.bracket),
        iterations: sol.iterations,
        residual_log: Some(residual.log_mag()),
        x_root: Some(sol.point.x),
    })
}

/// The radius for degree n under the dispatch policy.
///
/// `Method::Both` runs the direct route alone below n = 7 (and reports
/// `Direct`); from n = 7 on it runs both routes, errors unless they agree
/// within `max(1e-10, 10 tol)`, and returns the spectral value tagged
/// `Both`. Explicit `Direct`/`Spectral` run that route only.
pub fn radius<T: Real>(n: usize, opts: &RadiusOptions<T>) -> Result<RadiusResult<T>> {
    if n < 1 {
        return Err(Error::DegreeTooSmall { n, min: 1 });
    }
    validate_tol(opts.tol)?;
    match opts.method {
        Method::Direct => radius_direct(n, opts.tol),
        Method::Spectral => radius_spectral(n, opts.tol),
        Method::Both if n < SPECTRAL_MIN_N => radius_direct(n, opts.tol),
        Method::Both => {
            let d = radius_direct(n, opts.tol)?;
            let s = radius_spectral(n, opts.tol)?;
            let to_f64 = |v: Option<T>| v.and_then(|x| x.to_f64()).unwrap_or(f64::NAN);
            let (dv, sv) = match (d.value, s.value) {
                (Some(dv), Some(sv)) => (dv, sv),
                _ => {
                    return Err(Error::MethodMismatch {
                        n,
                        direct: to_f64(d.value),
                        spectral: to_f64(s.value),
                    });
                }
            };
            let allowance = lit::<T>(CROSS_CHECK_FLOOR).max(lit::<T>(10.0) * opts.tol);
            if (dv - sv).abs() > allowance {
                return Err(Error::MethodMismatch {
                    n,
                    direct: to_f64(Some(dv)),
                    spectral: to_f64(Some(sv)),
                });
            }
            Ok(RadiusResult {
                method: Method::Both,
                ..s
            })
        }
    }
}
