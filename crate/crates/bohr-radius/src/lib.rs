//! Radius of validity of the coefficient-sum inequality for polynomials of
//! a fixed degree.
//!
//! For each degree n let R_n be the largest r such that
//!
//! ```text
//! sum_k |a_k| r^k  <=  max_{|z|=1} |p(z)|
//! ```
//!
//! holds for every polynomial `p(z) = sum_k a_k z^k` of degree at most n.
//! R_n is the smallest root in (0, 1) of an explicit Toeplitz determinant
//! family; it decreases from `3^(-1/2)` at n = 2 toward `1/3`, and
//! `n^2 (R_n - 1/3)` converges to `pi^2 / 3`. This crate computes R_n two
//! independent ways, cross-checks them against each other, reproduces the
//! limit numerically, and tests the inequality itself by random search.
//!
//! Module map:
//!
//! * [`toeplitz`]: the determinant family, via a log-scaled three-term
//!   recurrence (any n) and a dense LU cross-check (small n).
//! * [`spectral`]: the substitution r = g(x) under which the determinant
//!   factors over Chebyshev polynomials; root-finding on a smooth,
//!   order-one function instead of underflowing determinants.
//! * [`solver`]: both root-finders plus the cross-checking dispatcher.
//! * [`asympt`]: convergence tables for `n^2 (R_n - 1/3)` and Richardson
//!   extrapolation.
//! * [`bohrcheck`]: majorant vs sup-norm, seeded violation search, and an
//!   empirical bracket of the radius that never touches a determinant.
//! * [`cli`]: implementation of the `bohr` binary.
//!
//! Everything numeric is generic over [`Real`] (`f64` and `f32`); the
//! crate-root aliases pin the `f64` instantiations, which is what the CLI
//! and almost any caller wants.

pub mod asympt;
pub mod bohrcheck;
pub mod cli;
pub mod error;
mod scalar;
pub mod solver;
pub mod spectral;
pub mod toeplitz;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ToeplitzParams64 = toeplitz::ToeplitzParams<f64>;
pub type ToeplitzMatrix64 = toeplitz::ToeplitzMatrix<f64>;
pub type ScaledDet64 = toeplitz::ScaledDet<f64>;
pub type SpectralPoint64 = spectral::SpectralPoint<f64>;
pub type NodeGrid64 = spectral::NodeGrid<f64>;
pub type RootBracket64 = spectral::RootBracket<f64>;
pub type RadiusOptions64 = solver::RadiusOptions<f64>;
pub type RadiusResult64 = solver::RadiusResult<f64>;
pub type AsymRow64 = asympt::AsymRow<f64>;
pub type ExtrapolationResult64 = asympt::ExtrapolationResult<f64>;
pub type DiskPolynomial64 = bohrcheck::DiskPolynomial<f64>;
pub type BohrWitness64 = bohrcheck::BohrWitness<f64>;
pub type EmpiricalRadius64 = bohrcheck::EmpiricalRadius<f64>;
