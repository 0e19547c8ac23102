//! Geodesics of the left-invariant metric and the geodesic symmetry.
//!
//! In body coordinates u(τ) = dL_{γ(τ)}⁻¹ γ̇(τ) ∈ 𝔰 the geodesic equation
//! for a left-invariant metric is u̇ = ad_uᵀ u, which on 𝔰 reads
//!
//! ```text
//! u̇_v = ½ u_H u_v + J_{u_z} u_v,
//! u̇_z = u_H u_z,
//! u̇_H = −½|u_v|² − |u_z|²,
//! ```
//!
//! coupled to the chart reconstruction V̇ = e^{s/2}u_v,
//! Ż = e^s u_z + ½e^{s/2}[V, u_v], ṡ = u_H. The speed |u| is conserved and
//! t ↦ exp(tH) is a geodesic (u ≡ H is stationary), which fixes the sign
//! convention.
//!
//! [`riemannian_exp`] integrates this system with adaptive RK4;
//! [`riemannian_log`] inverts it by Gauss–Newton shooting seeded at the
//! group logarithm; the geodesic symmetry is σ(x) = exp(−log x).

use nalgebra::DVector;

use crate::error::{CrownError, Result};
use crate::numeric::{gauss_newton, GaussNewtonOptions};
use crate::solvable::{GroupPoint, SolvGroup, SolvVector};

#[derive(Debug, Clone)]
pub struct ShootingOptions {
    /// Residual tolerance on the boundary-value mismatch in the chart.
    pub residual_tol: f64,
    /// Gauss–Newton iteration cap.
    pub max_iterations: usize,
    /// Local error tolerance of the adaptive RK4 integrator.
    pub ode_tol: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            max_iterations: 60,
            ode_tol: 1e-11,
        }
    }
}

fn pack(u: &SolvVector, x: &GroupPoint) -> DVector<f64> {
    let p = u.v.len();
    let q = u.z.len();
    let n = p + q + 1;
    let mut state = DVector::zeros(2 * n);
    for i in 0..p {
        state[i] = u.v[i];
        state[n + i] = x.v[i];
    }
    for i in 0..q {
        state[p + i] = u.z[i];
        state[n + p + i] = x.z[i];
    }
    state[n - 1] = u.h;
    state[2 * n - 1] = x.t;
    state
}

fn unpack(g: &SolvGroup, state: &DVector<f64>) -> (SolvVector, GroupPoint) {
    let p = g.p();
    let q = g.q();
    let n = p + q + 1;
    let u = SolvVector::new(
        DVector::from_fn(p, |i, _| state[i]),
        DVector::from_fn(q, |i, _| state[p + i]),
        state[n - 1],
    );
    let x = GroupPoint::new(
        DVector::from_fn(p, |i, _| state[n + i]),
        DVector::from_fn(q, |i, _| state[n + p + i]),
        state[2 * n - 1],
    );
    (u, x)
}

fn rhs(g: &SolvGroup, state: &DVector<f64>) -> Result<DVector<f64>> {
    let (u, x) = unpack(g, state);
    let j_uz_uv = g.algebra().rep().j_map(&u.z, &u.v)?;
    let du_v = &u.v * (0.5 * u.h) + j_uz_uv;
    let du_z = &u.z * u.h;
    let du_h = -0.5 * u.v.norm_squared() - u.z.norm_squared();

    let es2 = (x.t / 2.0).exp();
    let es = x.t.exp();
    let bracket = g.algebra().bracket(&x.v, &u.v)?;
    let dx_v = &u.v * es2;
    let dx_z = &u.z * es + bracket * (0.5 * es2);
    let dx_t = u.h;

    Ok(pack(
        &SolvVector::new(du_v, du_z, du_h),
        &GroupPoint::new(dx_v, dx_z, dx_t),
    ))
}

fn rk4_step(g: &SolvGroup, state: &DVector<f64>, h: f64) -> Result<DVector<f64>> {
    let k1 = rhs(g, state)?;
    let k2 = rhs(g, &(state + &k1 * (h / 2.0)))?;
    let k3 = rhs(g, &(state + &k2 * (h / 2.0)))?;
    let k4 = rhs(g, &(state + &k3 * h))?;
    Ok(state + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
}

/// Integrates the geodesic system over τ ∈ [0, 1] with step-doubling
/// adaptive RK4.
fn integrate(g: &SolvGroup, u0: &SolvVector, tol: f64) -> Result<DVector<f64>> {
    let mut state = pack(u0, &g.identity());
    let mut tau = 0.0;
    let mut h = 0.05f64;
    let mut steps = 0;
    while tau < 1.0 {
        if steps > 100_000 {
            return Err(CrownError::ShootingDidNotConverge {
                iterations: steps,
                residual: 1.0 - tau,
            });
        }
        h = h.min(1.0 - tau);
        let full = rk4_step(g, &state, h)?;
        let half = rk4_step(g, &state, h / 2.0)?;
        let two_half = rk4_step(g, &half, h / 2.0)?;
        let err = (&full - &two_half).abs().max() / 15.0;
        let scale = tol * (1.0 + state.abs().max());
        if err <= scale {
            // Local extrapolation: keep the two-half-step solution.
            state = two_half;
            tau += h;
            let grow = if err > 0.0 {
                0.9 * (scale / err).powf(0.2)
            } else {
                2.0
            };
            h *= grow.clamp(0.5, 2.0);
        } else {
            h *= (0.9 * (scale / err).powf(0.25)).clamp(0.1, 0.9);
        }
        steps += 1;
    }
    Ok(state)
}

/// Riemannian exponential at the identity: the time-1 endpoint of the
/// geodesic with initial body velocity X.
pub fn riemannian_exp(g: &SolvGroup, x: &SolvVector, opts: &ShootingOptions) -> Result<GroupPoint> {
    let state = integrate(g, x, opts.ode_tol)?;
    Ok(unpack(g, &state).1)
}

/// Riemannian logarithm at the identity by Gauss–Newton shooting, seeded
/// with the group logarithm. Converges on a ball of chart radius ≈ 3 around
/// the identity (larger in practice for near-axis points).
pub fn riemannian_log(g: &SolvGroup, x: &GroupPoint, opts: &ShootingOptions) -> Result<SolvVector> {
    let p = g.p();
    let q = g.q();
    let n = p + q + 1;
    let target = pack(&SolvVector::zero(p, q), x);
    let residual = |vel: &DVector<f64>| -> Result<DVector<f64>> {
        let u0 = SolvVector::new(
            DVector::from_fn(p, |i, _| vel[i]),
            DVector::from_fn(q, |i, _| vel[p + i]),
            vel[n - 1],
        );
        let end = riemannian_exp(g, &u0, opts)?;
        let mut r = DVector::zeros(n);
        for i in 0..p {
            r[i] = end.v[i] - target[n + i];
        }
        for i in 0..q {
            r[p + i] = end.z[i] - target[n + p + i];
        }
        r[n - 1] = end.t - target[2 * n - 1];
        Ok(r)
    };
    let seed = g.group_log(x);
    let mut init = DVector::zeros(n);
    for i in 0..p {
        init[i] = seed.v[i];
    }
    for i in 0..q {
        init[p + i] = seed.z[i];
    }
    init[n - 1] = seed.h;
    let gn_opts = GaussNewtonOptions {
        max_iterations: opts.max_iterations,
        residual_tol: opts.residual_tol,
        fd_step: 1e-6,
    };
    let out = gauss_newton(residual, init, &gn_opts)?;
    Ok(SolvVector::new(
        DVector::from_fn(p, |i, _| out.x[i]),
        DVector::from_fn(q, |i, _| out.x[p + i]),
        out.x[n - 1],
    ))
}

/// The geodesic symmetry centered at the identity: σ(x) = exp(−log x).
pub fn geodesic_symmetry(g: &SolvGroup, x: &GroupPoint) -> Result<GroupPoint> {
    let opts = ShootingOptions::default();
    let log = riemannian_log(g, x, &opts)?;
    riemannian_exp(g, &log.neg(), &opts)
}

/// d(e, x) = |log_e x| in the left-invariant metric.
pub fn geodesic_distance_from_identity(g: &SolvGroup, x: &GroupPoint) -> Result<f64> {
    Ok(riemannian_log(g, x, &ShootingOptions::default())?.norm())
}
