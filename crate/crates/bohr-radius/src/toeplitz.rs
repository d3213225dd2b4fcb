//! Alternating-sign Toeplitz determinants.
//!
//! The matrix family is symmetric Toeplitz with first row
//! `1, r, -r^2, r^3, ..., (-1)^(k-1) r^k, ...`. Its determinant `D_n(r)`
//! obeys a three-term recurrence,
//!
//! ```text
//! D_n = (3 r^2 + 1) D_{n-1} - 4 r^2 D_{n-2},    D_{-1} = D_0 = 1,
//! ```
//!
//! which is what every solver in this crate actually evaluates. The dense
//! realization and an LU determinant are kept as an independent cross-check
//! for small sizes.
//!
//! The smallest positive root of `D_n` is the radius the rest of the crate
//! is after; it decreases from `3^-1/2` at n = 2 toward `1/3`, so the
//! interesting r never leaves `[1/3, 3^-1/2]`.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Validated input pair for the determinant family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToeplitzParams<T> {
    n: usize,
    r: T,
}

impl<T: Real> ToeplitzParams<T> {
    /// Any `n` is accepted; `r` must be finite and in `[0, 1)`.
    pub fn new(n: usize, r: T) -> Result<Self> {
        if !r.is_finite() || r < T::zero() || r >= T::one() {
            return Err(Error::RadiusOutOfRange {
                r: r.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> T {
        self.r
    }
}

/// Dense (n+1) x (n+1) realization, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzMatrix<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: Real> ToeplitzMatrix<T> {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry at (i, j); both indices must be below `size()`.
    pub fn entry(&self, i: usize, j: usize) -> T {
        assert!(i < self.size && j < self.size, "index out of range");
        self.entries[i * self.size + j]
    }
}

/// Materializes the (n+1) x (n+1) matrix with entries `c_(|i-j|)`, where
/// `c_0 = 1` and `c_k = (-1)^(k-1) r^k`.
pub fn build_matrix<T: Real>(p: &ToeplitzParams<T>) -> ToeplitzMatrix<T> {
    let size = p.n + 1;
    let mut c = Vec::with_capacity(size);
    c.push(T::one());
    if size > 1 {
        c.push(p.r);
        for k in 2..size {
            let prev = c[k - 1];
            c.push(-prev * p.r);
        }
    }
    let mut entries = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            entries.push(c[i.abs_diff(j)]);
        }
    }
    ToeplitzMatrix { size, entries }
}

/// Size cap for the dense determinant path. Past this the determinant
/// under- or overflows f64 anyway; the recurrence route has no such limit.
pub const DENSE_SIZE_CAP: usize = 65;

/// Determinant by partial-pivoting Gaussian elimination.
///
/// This is the cross-check route; it panics past `DENSE_SIZE_CAP` because
/// results out there would be numerically meaningless. A pivot column with
/// no nonzero entry short-circuits to zero.
pub fn dense_det<T: Real>(m: &ToeplitzMatrix<T>) -> T {
    assert!(
        m.size <= DENSE_SIZE_CAP,
        "dense determinant capped at size {DENSE_SIZE_CAP}"
    );
    let n = m.size;
    let mut a = m.entries.clone();
    let mut det = T::one();
    for col in 0..n {
        let mut piv = col;
        for row in (col + 1)..n {
            if a[row * n + col].abs() > a[piv * n + col].abs() {
                piv = row;
            }
        }
        if a[piv * n + col] == T::zero() {
            return T::zero();
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det = det * d;
        for row in (col + 1)..n {
            let f = a[row * n + col] / d;
            if f == T::zero() {
                continue;
            }
            for j in col..n {
                let v = a[col * n + j];
                a[row * n + j] = a[row * n + j] - f * v;
            }
        }
    }
    det
}

/// Sign and log-magnitude of a determinant, with the plain value retained
/// when the recurrence never had to rescale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledDet<T> {
    sign: i8,
    log_mag: T,
    raw: Option<T>,
}

impl<T: Real> ScaledDet<T> {
    /// -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude. Meaningful only when `sign() != 0`.
    pub fn log_mag(&self) -> T {
        self.log_mag
    }

    /// The unscaled value, present whenever no rescaling happened.
    pub fn raw(&self) -> Option<T> {
        self.raw
    }
}

/// Evaluates `D_n(r)` through the recurrence in log-scaled form.
///
/// The working pair is renormalized whenever its magnitude leaves
/// `[1/RESCALE_LIMIT, RESCALE_LIMIT]`, with the log of the scale factor
/// accumulated separately, so degrees up to 10^6 and beyond neither overflow
/// nor underflow.
pub fn delta<T: Real>(p: &ToeplitzParams<T>) -> ScaledDet<T> {
    delta_with_limit(p, T::RESCALE_LIMIT)
}

/// Same recurrence with an explicit rescale ceiling. Unit tests pass 1 to
/// force a rescale at every step and check that sign and log-magnitude are
/// unchanged by the normalization.
pub(crate) fn delta_with_limit<T: Real>(p: &ToeplitzParams<T>, limit: T) -> ScaledDet<T> {
    let r = p.r;
    let a = lit::<T>(3.0) * r * r + T::one();
    let b = lit::<T>(4.0) * r * r;
    let floor = limit.recip();
    let mut prev = T::one(); // D_{-1}
    let mut curr = T::one(); // D_0
    let mut shift = T::zero();
    let mut rescaled = false;
    for _ in 0..p.n {
        let next = a * curr - b * prev;
        prev = curr;
        curr = next;
        let mag = prev.abs().max(curr.abs());
        if mag > T::zero() && (mag > limit || mag < floor) {
            prev = prev / mag;
            curr = curr / mag;
            shift = shift + mag.ln();
            rescaled = true;
        }
    }
    let sign = if curr > T::zero() {
        1
    } else if curr < T::zero() {
        -1
    } else {
        0
    };
    ScaledDet {
        sign,
        log_mag: curr.abs().ln() + shift,
        raw: if rescaled { None } else { Some(curr) },
    }
}

/// Log of the family's natural magnitude scale, `(2r)^(n+1) / (1 - r^2)`.
/// Determinant values are judged against this when deciding whether a grid
/// point sits on a root.
fn family_log_scale<T: Real>(n: usize, r: T) -> T {
    let n1 = T::from_usize(n + 1).expect("degree fits in scalar");
    n1 * (lit::<T>(2.0) * r).ln() - (T::one() - r * r).ln()
}

/// Magnitudes this far below the family scale count as zero.
const ZERO_REL_TOL: f64 = 1e-12;

/// Signs of `D_n` over a grid of radii.
///
/// A value within 1e-12 of zero relative to `(2r)^(n+1)/(1-r^2)` reports 0,
/// so a grid point that lands on a root (r = 3^-1/2 at n = 2, say) is
/// classified as a zero rather than as noise of arbitrary sign.
pub fn delta_sign_profile<T: Real>(n: usize, rs: &[T]) -> Result<Vec<i8>> {
    if rs.is_empty() {
        return Err(Error::EmptyInput {
            what: "grid of r values",
        });
    }
    let log_tol = lit::<T>(ZERO_REL_TOL.ln());
    let mut out = Vec::with_capacity(rs.len());
    for &r in rs {
        let p = ToeplitzParams::new(n, r)?;
        let d = delta(&p);
        let near_zero = d.sign == 0
            || (r > T::zero() && d.log_mag <= log_tol + family_log_scale(n, r));
        out.push(if near_zero { 0 } else { d.sign });
    }
    Ok(out)
}
