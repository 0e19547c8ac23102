//! Small dense nonlinear solvers shared by the shooting and model-inversion
//! code paths.

use nalgebra::{DMatrix, DVector};

use crate::error::{CrownError, Result};

pub struct GaussNewtonOptions {
    pub max_iterations: usize,
    pub residual_tol: f64,
    pub fd_step: f64,
}

impl Default for GaussNewtonOptions {
    fn default() -> Self {
        Self {
            max_iterations: 60,
            residual_tol: 1e-10,
            fd_step: 1e-6,
        }
    }
}

pub struct GaussNewtonOutcome {
    pub x: DVector<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Damped Gauss–Newton on a square system r: ℝⁿ → ℝⁿ with a central
/// finite-difference Jacobian and backtracking on the residual norm.
pub fn gauss_newton<F>(
    r: F,
    x0: DVector<f64>,
    opts: &GaussNewtonOptions,
) -> Result<GaussNewtonOutcome>
where
    F: Fn(&DVector<f64>) -> Result<DVector<f64>>,
{
    let mut x = x0;
    let mut res = r(&x)?;
    let mut res_norm = res.norm();
    for iter in 0..opts.max_iterations {
        if res_norm < opts.residual_tol {
            return Ok(GaussNewtonOutcome {
                x,
                residual: res_norm,
                iterations: iter,
            });
        }
        let jac = fd_jacobian(&r, &x, opts.fd_step)?;
        let lu = jac.lu();
        let step = match lu.solve(&res) {
            Some(s) => s,
            None => {
                return Err(CrownError::ShootingDidNotConverge {
                    iterations: iter,
                    residual: res_norm,
                })
            }
        };
        let mut damping = 1.0;
        let mut advanced = false;
        for _ in 0..30 {
            let trial = &x - &step * damping;
            if let Ok(trial_res) = r(&trial) {
                let trial_norm = trial_res.norm();
                if trial_norm < res_norm {
                    x = trial;
                    res = trial_res;
                    res_norm = trial_norm;
                    advanced = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if !advanced {
            return Err(CrownError::ShootingDidNotConverge {
                iterations: iter,
                residual: res_norm,
            });
        }
    }
    if res_norm < opts.residual_tol {
        Ok(GaussNewtonOutcome {
            x,
            residual: res_norm,
            iterations: opts.max_iterations,
        })
    } else {
        Err(CrownError::ShootingDidNotConverge {
            iterations: opts.max_iterations,
            residual: res_norm,
        })
    }
}

/// Central finite-difference Jacobian of r at x, with the residual function
/// treated as a black box.
pub fn fd_jacobian<F>(r: &F, x: &DVector<f64>, step: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&DVector<f64>) -> Result<DVector<f64>>,
{
    let n = x.len();
    let mut jac = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut plus = x.clone();
        plus[k] += step;
        let mut minus = x.clone();
        minus[k] -= step;
        let col = (r(&plus)? - r(&minus)?) / (2.0 * step);
        jac.set_column(k, &col);
    }
    Ok(jac)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_small_nonlinear_system() {
        // x² + y² = 5, x·y = 2 has the solution (2, 1).
        let r = |v: &DVector<f64>| -> Result<DVector<f64>> {
            Ok(DVector::from_vec(vec![
                v[0] * v[0] + v[1] * v[1] - 5.0,
                v[0] * v[1] - 2.0,
            ]))
        };
        let out = gauss_newton(
            r,
            DVector::from_vec(vec![1.8, 0.7]),
            &GaussNewtonOptions::default(),
        )
        .unwrap();
        assert!((out.x[0] - 2.0).abs() < 1e-8);
        assert!((out.x[1] - 1.0).abs() < 1e-8);
        assert!(out.residual < 1e-10);
    }

    #[test]
    fn reports_non_convergence() {
        // No real solution: x² + 1 = 0.
        let r = |v: &DVector<f64>| -> Result<DVector<f64>> {
            Ok(DVector::from_vec(vec![v[0] * v[0] + 1.0]))
        };
        let out = gauss_newton(
            r,
            DVector::from_vec(vec![3.0]),
            &GaussNewtonOptions {
                max_iterations: 25,
                ..Default::default()
            },
        );
        assert!(matches!(
            out,
            Err(CrownError::ShootingDidNotConverge { .. })
        ));
    }
}
