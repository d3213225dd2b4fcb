//! Error type shared by every module.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong across the solvers and the search.
///
/// Numeric payloads are carried as `f64` regardless of the working scalar so
/// the enum stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree must be at least {min}, got {n}")]
    DegreeTooSmall { n: usize, min: usize },

    #[error("r must be a finite number in [0, 1), got {r}")]
    RadiusOutOfRange { r: f64 },

    #[error("tolerance must be a positive finite number, got {tol}")]
    BadTolerance { tol: f64 },

    #[error("x = {x} lies outside the real substitution branch [5*pi/6, pi]")]
    OutsideBranch { x: f64 },

    #[error("Chebyshev argument must satisfy |t| <= 1 (plus 1e-12 slack), got {t}")]
    ChebyshevDomain { t: f64 },

    #[error("the spectral route needs n >= 7, got n = {n}; use the direct method")]
    SpectralUnavailable { n: usize },

    #[error("bracket endpoints at n = {n} carry matching signs ({sign_lo}, {sign_hi}); no root is isolated")]
    BracketSigns { n: usize, sign_lo: i8, sign_hi: i8 },

    #[error("bisection did not converge within {max_iters} iterations")]
    IterationLimit { max_iters: usize },

    #[error("direct and spectral radii disagree at n = {n}: direct {direct}, spectral {spectral}")]
    MethodMismatch { n: usize, direct: f64, spectral: f64 },

    #[error("determinant keeps its sign across r = {r} +- {h} at n = {n}; root certificate failed")]
    RootCertificate { n: usize, r: f64, h: f64 },

    #[error("the degree-{n} determinant has no root in (0, 1)")]
    NoRoot { n: usize },

    #[error("{what} must not be empty")]
    EmptyInput { what: &'static str },

    #[error("extrapolation rows must double n from row to row: got {prev} followed by {next}")]
    RatioMismatch { prev: usize, next: usize },

    #[error("extrapolation order must be 1 or 2, got {order}")]
    UnsupportedOrder { order: usize },

    #[error("sup-norm grid needs at least {min} samples for degree {degree}, got {got}")]
    GridTooSmall { degree: usize, min: usize, got: usize },

    #[error("search needs at least one restart")]
    NoRestarts,
}
