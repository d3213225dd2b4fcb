//! Spectral substitution route to the determinant roots.
//!
//! On x in [5*pi/6, pi] the decreasing branch r = g(x) of
//! `3 r^2 + 4 r cos x + 1 = 0` turns the determinant family into
//!
//! ```text
//! D_n(g(x)) = (-2 g(x))^(n+1) / (1 - g(x)^2) * p_n(x),
//! p_n(x)    = U_{n+1}(cos x) + 2 r U_n(cos x) + r^2 U_{n-1}(cos x),
//! ```
//!
//! with `U_k` the Chebyshev polynomials of the second kind and r = g(x)
//! inside `p_n`. Root-finding then happens on the smooth, order-one `p_n`
//! instead of on determinants whose magnitude is astronomically small.
//!
//! On the grid `x_v = v pi / (n+2)` the values `p_n(x_v)` reduce to
//! `(-1)^(v+1) 2r (1 + r cos x_v)` with r = g(x_v), which alternates in
//! sign, and `p_n(pi) = (-1)^(n+1) (n (1-r)^2 + 2 (1-r))` at r = 1/3. Both
//! facts are pinned numerically in the tests. Together they put the root
//! that maps to the smallest determinant root strictly between `x_{n+1}`
//! and pi, and `[x_{n+1}, pi - (pi/2)/(n+2)]` is a sign-change bracket
//! for it.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Discriminant values this far below zero are treated as roundoff and
/// clamped; the branch endpoint x = 5*pi/6 lands there in floating point.
const DISC_CLAMP: f64 = 1e-14;

/// The substitution `g(x) = (-2 cos x - sqrt(4 cos^2 x - 3)) / 3`.
///
/// This is the branch that decreases from `g(5*pi/6) = 3^(-1/2)` to
/// `g(pi) = 1/3`. Arguments outside the real branch are rejected.
pub fn subst_g<T: Real>(x: T) -> Result<T> {
    let reject = || Error::OutsideBranch {
        x: x.to_f64().unwrap_or(f64::NAN),
    };
    if !x.is_finite() || x < T::zero() || x > T::PI() + lit::<T>(1e-12) {
        return Err(reject());
    }
    let c = x.cos();
    let disc = lit::<T>(4.0) * c * c - lit::<T>(3.0);
    if disc < -lit::<T>(DISC_CLAMP) {
        return Err(reject());
    }
    let g = (-lit::<T>(2.0) * c - disc.max(T::zero()).sqrt()) / lit::<T>(3.0);
    if g <= T::zero() {
        // the cos x > 0 side solves the quadratic with a negative r
        return Err(reject());
    }
    Ok(g)
}

/// The generating symbol `(3r^2 + 4r cos theta + 1) / (r^2 + 2r cos theta + 1)`.
///
/// For r in [0, 1) the denominator is positive, so the value is always
/// finite. It vanishes exactly on the substitution curve theta = x,
/// r = g(x).
pub fn symbol_f<T: Real>(r: T, theta: T) -> T {
    let c = theta.cos();
    (lit::<T>(3.0) * r * r + lit::<T>(4.0) * r * c + T::one())
        / (r * r + lit::<T>(2.0) * r * c + T::one())
}

/// Chebyshev polynomials of the second kind, `U_0(t) ..= U_kmax(t)`, by the
/// forward recurrence `U_{k+1} = 2t U_k - U_{k-1}`.
pub fn cheb_u<T: Real>(t: T, kmax: usize) -> Result<Vec<T>> {
    if !t.is_finite() || t.abs() > T::one() + lit::<T>(1e-12) {
        return Err(Error::ChebyshevDomain {
            t: t.to_f64().unwrap_or(f64::NAN),
        });
    }
    let two_t = lit::<T>(2.0) * t;
    let mut us = Vec::with_capacity(kmax + 1);
    us.push(T::one());
    if kmax >= 1 {
        us.push(two_t);
        for k in 2..=kmax {
            let next = two_t * us[k - 1] - us[k - 2];
            us.push(next);
        }
    }
    Ok(us)
}

/// `(U_{n-1}, U_n, U_{n+1})` at t in O(n) time and O(1) space.
fn u_window<T: Real>(t: T, n: usize) -> (T, T, T) {
    debug_assert!(n >= 1);
    let two_t = lit::<T>(2.0) * t;
    let mut um = T::one(); // U_0
    let mut u = two_t; // U_1
    for _ in 1..n {
        let next = two_t * u - um;
        um = u;
        u = next;
    }
    let up = two_t * u - um;
    (um, u, up)
}

/// `p_n(x) = U_{n+1}(cos x) + 2 r U_n(cos x) + r^2 U_{n-1}(cos x)` with
/// r = g(x). Needs n >= 1 and x on the real branch of g.
pub fn pn_eval<T: Real>(n: usize, x: T) -> Result<T> {
    if n < 1 {
        return Err(Error::DegreeTooSmall { n, min: 1 });
    }
    let r = subst_g(x)?;
    let t = x.cos();
    let (um, u, up) = u_window(t, n);
    Ok(up + lit::<T>(2.0) * r * u + r * r * um)
}

/// A point on the substitution curve: the abscissa x, the radius r = g(x)
/// and t = cos x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint<T> {
    pub x: T,
    pub r: T,
    pub t: T,
}

impl<T: Real> SpectralPoint<T> {
    pub fn new(x: T) -> Result<Self> {
        let r = subst_g(x)?;
        Ok(Self { x, r, t: x.cos() })
    }

    /// Residual of the defining coupling `3 r^2 + 4 r t + 1`; zero up to
    /// roundoff for every point built by [`SpectralPoint::new`].
    pub fn coupling_residual(&self) -> T {
        lit::<T>(3.0) * self.r * self.r + lit::<T>(4.0) * self.r * self.t + T::one()
    }
}

/// The sign grid `x_v = v pi / (n+2)`, v = 1 ..= n+1.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeGrid<T> {
    n: usize,
    nodes: Vec<T>,
}

impl<T: Real> NodeGrid<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The abscissas, strictly increasing in (0, pi).
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }
}

/// Builds the grid for degree n.
pub fn nodes<T: Real>(n: usize) -> Result<NodeGrid<T>> {
    if n < 1 {
        return Err(Error::DegreeTooSmall { n, min: 1 });
    }
    let step = T::PI() / T::from_usize(n + 2).expect("degree fits in scalar");
    let nodes = (1..=n + 1)
        .map(|v| T::from_usize(v).expect("index fits in scalar") * step)
        .collect();
    Ok(NodeGrid { n, nodes })
}

/// A sign-change interval with the signs recorded at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket<T> {
    pub lo: T,
    pub hi: T,
    pub sign_lo: i8,
    pub sign_hi: i8,
}

/// Smallest degree the spectral route accepts.
pub const SPECTRAL_MIN_N: usize = 7;

/// Bisection iteration cap. Hitting it is an error, never a silent return.
pub const MAX_BISECT_ITERS: usize = 200;

fn sign_of<T: Real>(v: T) -> i8 {
    if v > T::zero() {
        1
    } else if v < T::zero() {
        -1
    } else {
        0
    }
}

/// Sign-change bracket `[x_{n+1}, pi - (pi/2)/(n+2)]` for the root of p_n
/// nearest pi, the one mapping to the smallest determinant root.
///
/// Both endpoint signs are evaluated, not assumed; matching signs come back
/// as [`Error::BracketSigns`].
pub fn bracket<T: Real>(n: usize) -> Result<RootBracket<T>> {
    if n < SPECTRAL_MIN_N {
        return Err(Error::SpectralUnavailable { n });
    }
    let denom = T::from_usize(n + 2).expect("degree fits in scalar");
    let lo = T::from_usize(n + 1).expect("degree fits in scalar") * T::PI() / denom;
    let hi = T::PI() - T::PI() / (lit::<T>(2.0) * denom);
    let sign_lo = sign_of(pn_eval(n, lo)?);
    let sign_hi = sign_of(pn_eval(n, hi)?);
    if sign_lo * sign_hi != -1 {
        return Err(Error::BracketSigns {
            n,
            sign_lo,
            sign_hi,
        });
    }
    Ok(RootBracket {
        lo,
        hi,
        sign_lo,
        sign_hi,
    })
}

/// Outcome of the spectral bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSolution<T> {
    pub point: SpectralPoint<T>,
    pub bracket: RootBracket<T>,
    pub iterations: usize,
}

/// Bisects p_n over [`bracket`] until the interval is narrower than `tol`
/// in x, or until the midpoint stops splitting the interval in the working
/// precision, and returns the midpoint as a [`SpectralPoint`].
pub fn solve_spectral<T: Real>(n: usize, tol: T) -> Result<SpectralSolution<T>> {
    if !tol.is_finite() || tol <= T::zero() {
        return Err(Error::BadTolerance {
            tol: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let br = bracket::<T>(n)?;
    let (mut lo, mut hi) = (br.lo, br.hi);
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
        let s_mid = sign_of(pn_eval(n, mid)?);
        if s_mid == 0 {
            lo = mid;
            hi = mid;
            break;
        }
        // lo keeps the sign it started with
        if s_mid == br.sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let point = SpectralPoint::new((lo + hi) * lit::<T>(0.5))?;
    Ok(SpectralSolution {
        point,
        bracket: br,
        iterations,
    })
}
