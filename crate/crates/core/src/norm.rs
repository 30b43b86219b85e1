//! Spectral norm by power iteration on the Gram matrix `M^H M`.
//!
//! The iteration starts from the normalised all-ones vector, so results are
//! reproducible. The Rayleigh quotients `ρ_k` of a positive semidefinite
//! matrix increase monotonically towards the top eigenvalue; the stopping rule
//! estimates the remaining gap from two consecutive increments, assuming
//! geometric convergence (`gap ≈ δ_k · c / (1 - c)` with `c = δ_k / δ_{k-1}`).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormOptions {
    /// Relative tolerance on the norm.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            tol: 1e-8,
            max_iter: 10_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate {
    pub norm: f64,
    pub iterations: usize,
}

pub fn operator_norm(m: &DMatrix<Complex64>) -> Result<f64> {
    operator_norm_with(m, NormOptions::default()).map(|e| e.norm)
}

pub fn operator_norm_with(m: &DMatrix<Complex64>, opts: NormOptions) -> Result<NormEstimate> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Overflow("operator norm input"));
    }
    let n = m.ncols();
    if n == 0 || m.nrows() == 0 {
        return Ok(NormEstimate {
            norm: 0.0,
            iterations: 0,
        });
    }
    let adjoint = m.adjoint();
    let mut x = DVector::from_element(n, Complex64::new(1.0 / (n as f64).sqrt(), 0.0));
    let mut rho_prev = f64::NAN;
    let mut delta_prev = f64::NAN;

    for k in 1..=opts.max_iter {
        let y = m * &x;
        let rho = y.norm_squared();
        if !rho.is_finite() {
            return Err(Error::Overflow("power iteration"));
        }
        if rho == 0.0 {
            return Ok(NormEstimate {
                norm: 0.0,
                iterations: k,
            });
        }
        let z = &adjoint * y;
        let z_norm = z.norm();
        if !z_norm.is_finite() {
            return Err(Error::Overflow("power iteration"));
        }

        let delta = rho - rho_prev;
        if delta.is_finite() {
            let converged = if delta <= f64::EPSILON * rho {
                true
            } else if delta_prev.is_finite() && delta_prev > 0.0 {
                let c = delta / delta_prev;
                c < 1.0 && delta * c / (1.0 - c) <= opts.tol * rho
            } else {
                false
            };
            if converged {
                return Ok(NormEstimate {
                    norm: rho.sqrt(),
                    iterations: k,
                });
            }
        }
        rho_prev = rho;
        delta_prev = delta;
        x = z / Complex64::new(z_norm, 0.0);
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        estimate: rho_prev.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn real(rows: usize, cols: usize, data: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)))
    }

    #[test]
    fn identity_has_unit_norm() {
        for n in [1, 2, 7, 50] {
            let id = DMatrix::<Complex64>::identity(n, n);
            assert_relative_eq!(operator_norm(&id).unwrap(), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn bidiagonal_two_by_two() {
        let b = real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert_relative_eq!(operator_norm(&b).unwrap(), golden, max_relative = 1e-8);
    }

    #[test]
    fn diagonal_and_zero() {
        let d = real(3, 3, &[1.0, 0.0, 0.0, 0.0, -4.0, 0.0, 0.0, 0.0, 2.0]);
        assert_relative_eq!(operator_norm(&d).unwrap(), 4.0, max_relative = 1e-8);
        let z = DMatrix::<Complex64>::zeros(4, 4);
        assert_eq!(operator_norm(&z).unwrap(), 0.0);
    }

    #[test]
    fn matches_svd_on_complex_matrix() {
        let m = DMatrix::from_fn(6, 6, |r, c| {
            Complex64::new(
                ((r * 7 + c * 3) % 5) as f64 - 2.0,
                ((r + 2 * c) % 3) as f64 - 1.0,
            )
        });
        let svd_top = m.clone().svd(false, false).singular_values.max();
        assert_relative_eq!(operator_norm(&m).unwrap(), svd_top, max_relative = 1e-8);
    }

    #[test]
    fn reports_overflow_and_cap() {
        let mut m = DMatrix::<Complex64>::identity(2, 2);
        m[(0, 1)] = Complex64::new(f64::INFINITY, 0.0);
        assert!(matches!(operator_norm(&m), Err(Error::Overflow(_))));

        let big = DMatrix::from_element(3, 3, Complex64::new(1e200, 0.0));
        assert!(matches!(operator_norm(&big), Err(Error::Overflow(_))));

        // Two nearly equal top singular values converge slowly.
        let slow = real(2, 2, &[1.0, 0.0, 0.0, 0.999_999]);
        let capped = operator_norm_with(
            &slow,
            NormOptions {
                tol: 1e-14,
                max_iter: 5,
            },
        );
        assert!(matches!(
            capped,
            Err(Error::NoConvergence { iterations: 5, .. })
        ));
    }
}
