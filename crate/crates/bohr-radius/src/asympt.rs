//! Convergence of `n^2 (R_n - 1/3)` and Richardson extrapolation of the
//! scaled sequence toward its limit pi^2 / 3.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::solver::{radius, RadiusOptions};

/// The limit of `n^2 (R_n - 1/3)`, i.e. pi^2 / 3, at full f64 precision.
pub const PI_SQUARED_OVER_3: f64 = 3.289868133696453;

/// One convergence-table row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymRow<T> {
    pub n: usize,
    pub radius: T,
    /// `c = n^2 (radius - 1/3)`.
    pub c: T,
    /// `c - pi^2/3`; approaches zero from below.
    pub deviation: T,
    /// `(n+2)(pi - x*) - pi` from the spectral root abscissa; `None` when
    /// only the direct route ran (n < 7).
    pub eps: Option<T>,
}

/// Computes one row through the cross-checked solver.
pub fn asym_row<T: Real>(n: usize) -> Result<AsymRow<T>> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { n, min: 2 });
    }
    let res = radius(n, &RadiusOptions::default())?;
    let r = res.value.ok_or(Error::NoRoot { n })?;
    let nf = T::from_usize(n).expect("degree fits in scalar");
    let c = nf * nf * (r - lit::<T>(1.0 / 3.0));
    let eps = res.x_root.map(|x| {
        let theta = T::PI() - x;
        T::from_usize(n + 2).expect("degree fits in scalar") * theta - T::PI()
    });
    Ok(AsymRow {
        n,
        radius: r,
        c,
        deviation: c - lit::<T>(PI_SQUARED_OVER_3),
        eps,
    })
}

/// Rows for every degree in `ns`, in order.
pub fn asym_table<T: Real>(ns: &[usize]) -> Result<Vec<AsymRow<T>>> {
    if ns.is_empty() {
        return Err(Error::EmptyInput {
            what: "degree list",
        });
    }
    ns.iter().map(|&n| asym_row(n)).collect()
}

/// Extrapolation outcome: the averaged pairwise estimates plus the (n, c)
/// samples they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolationResult<T> {
    pub estimate: T,
    pub order: usize,
    pub samples: Vec<(usize, T)>,
}

/// Richardson step for a sequence sampled at doubling n, assuming an error
/// term `b / n^order`: each adjacent pair yields
/// `(2^order c_{2n} - c_n) / (2^order - 1)` and the estimates are averaged.
/// Supported orders are 1 and 2.
pub fn richardson<T: Real>(rows: &[AsymRow<T>], order: usize) -> Result<ExtrapolationResult<T>> {
    if order != 1 && order != 2 {
        return Err(Error::UnsupportedOrder { order });
    }
    if rows.len() < 2 {
        return Err(Error::EmptyInput {
            what: "extrapolation rows (need at least two)",
        });
    }
    for w in rows.windows(2) {
        if w[1].n != 2 * w[0].n {
            return Err(Error::RatioMismatch {
                prev: w[0].n,
                next: w[1].n,
            });
        }
    }
    let pow = lit::<T>((1u32 << order) as f64);
    let mut acc = T::zero();
    for w in rows.windows(2) {
        acc = acc + (pow * w[1].c - w[0].c) / (pow - T::one());
    }
    let pairs = T::from_usize(rows.len() - 1).expect("row count fits in scalar");
    Ok(ExtrapolationResult {
        estimate: acc / pairs,
        order,
        samples: rows.iter().map(|row| (row.n, row.c)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn limit_constant_is_pi_squared_over_three() {
        let pi = core::f64::consts::PI;
        assert_relative_eq!(PI_SQUARED_OVER_3, pi * pi / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn row_for_degree_two_is_exact_arithmetic() {
        let row = asym_row::<f64>(2).unwrap();
        // c_2 = 4 (3^(-1/2) - 1/3)
        assert_abs_diff_eq!(
            row.c,
            4.0 * (3.0f64.sqrt().recip() - 1.0 / 3.0),
            epsilon = 1e-9
        );
        assert!(row.deviation < 0.0);
        assert_eq!(row.eps, None); // direct route only below n = 7
        assert_eq!(row.n, 2);
    }

    #[test]
    fn rows_for_spectral_degrees_carry_eps_in_range() {
        for n in [7usize, 40, 100] {
            let row = asym_row::<f64>(n).unwrap();
            let eps = row.eps.unwrap();
            assert!(
                eps > -core::f64::consts::FRAC_PI_2 && eps < 0.0,
                "n={n}: eps={eps}"
            );
        }
        let row = asym_row::<f64>(100).unwrap();
        assert_abs_diff_eq!(row.eps.unwrap(), -0.03052904427, epsilon = 1e-8);
        assert_relative_eq!(row.c, 3.105054321448, max_relative = 1e-9);
    }

    #[test]
    fn deviation_shrinks_as_n_doubles() {
        let rows = asym_table::<f64>(&[100, 200, 400, 800]).unwrap();
        let mut prev = f64::INFINITY;
        for row in &rows {
            let mag = row.deviation.abs();
            assert!(mag < prev, "n={}: |deviation|={mag}", row.n);
            assert!(row.deviation < 0.0);
            prev = mag;
        }
        // halving ratio, loosely
        let ratio = rows[1].deviation / rows[0].deviation;
        assert!(ratio > 0.4 && ratio < 0.6, "ratio={ratio}");
    }

    #[test]
    fn table_preserves_order_and_rejects_empty_input() {
        let rows = asym_table::<f64>(&[16, 8, 32]).unwrap();
        let ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![16, 8, 32]);
        assert_eq!(
            asym_table::<f64>(&[]),
            Err(Error::EmptyInput {
                what: "degree list"
            })
        );
        assert!(asym_table::<f64>(&[1]).is_err());
    }

    #[test]
    fn richardson_removes_the_leading_error_term() {
        let rows = asym_table::<f64>(&[128, 256]).unwrap();
        let ex = richardson(&rows, 1).unwrap();
        let raw_err = (rows[1].c - PI_SQUARED_OVER_3).abs();
        let ext_err = (ex.estimate - PI_SQUARED_OVER_3).abs();
        assert!(
            ext_err < raw_err / 10.0,
            "extrapolation must beat the raw tail: {ext_err} vs {raw_err}"
        );
        assert_eq!(ex.order, 1);
        assert_eq!(ex.samples.len(), 2);
        assert_eq!(ex.samples[0].0, 128);
    }

    #[test]
    fn richardson_on_synthetic_data_is_exact_per_order() {
        // c_n = L + b/n: order 1 recovers L exactly up to roundoff
        let mk = |n: usize| AsymRow::<f64> {
            n,
            radius: 0.0,
            c: 7.0 + 3.0 / n as f64,
            deviation: 0.0,
            eps: None,
        };
        let rows = vec![mk(100), mk(200), mk(400)];
        let ex = richardson(&rows, 1).unwrap();
        assert_abs_diff_eq!(ex.estimate, 7.0, epsilon = 1e-12);

        // c_n = L + b/n^2 under order 2
        let mk2 = |n: usize| AsymRow::<f64> {
            n,
            radius: 0.0,
            c: -2.0 + 5.0 / (n * n) as f64,
            deviation: 0.0,
            eps: None,
        };
        let rows = vec![mk2(64), mk2(128)];
        let ex = richardson(&rows, 2).unwrap();
        assert_abs_diff_eq!(ex.estimate, -2.0, epsilon = 1e-12);
    }

    #[test]
    fn richardson_validates_its_inputs() {
        let rows = asym_table::<f64>(&[64, 128]).unwrap();
        assert_eq!(
            richardson(&rows, 3),
            Err(Error::UnsupportedOrder { order: 3 })
        );
        assert!(matches!(
            richardson(&rows[..1], 1),
            Err(Error::EmptyInput { .. })
        ));
        let bad = asym_table::<f64>(&[64, 100]).unwrap();
        assert_eq!(
            richardson(&bad, 1),
            Err(Error::RatioMismatch {
                prev: 64,
                next: 100
            })
        );
    }
}
