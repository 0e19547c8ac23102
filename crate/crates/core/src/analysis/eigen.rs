//! The holomorphic character a^λ, Poisson kernels, and boundary probes.
//!
//! With β(H) = 1 and λ = cβ, the chart coordinate ζ gives the single-valued
//! holomorphic map a^λ(z) = e^{cζ} on the crown; its restriction to S is
//! e^{ct}, an eigenfunction of Δ with eigenvalue c² − 2ρc. The Poisson
//! kernel is P_λ = a^λ ∘ σ with σ the geodesic symmetry; since σ is an
//! isometry fixing the identity, P_λ has the same eigenvalue.

use std::io::Write;
use std::path::Path;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::complexify::ComplexGroupPoint;
use crate::crown::CrownMembership;
use crate::error::{CrownError, Result};
use crate::solvable::{GroupPoint, SolvGroup};

use super::ellipticity::{ellipticity_margin_with, MarginOptions};
use super::geodesic::geodesic_symmetry;

/// Spectral parameter c ∈ ℂ encoding λ = cβ, β(H) = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam {
    pub c: Complex64,
}

impl SpectralParam {
    pub fn new(c: Complex64) -> Self {
        Self { c }
    }

    pub fn real(c: f64) -> Self {
        Self {
            c: Complex64::new(c, 0.0),
        }
    }

    /// λ is positive when Re λ is a positive multiple of β, i.e. Re c > 0.
    pub fn is_positive(&self) -> bool {
        self.c.re > 0.0
    }
}

/// The Δ-eigenvalue of a^λ and P_λ: c² − 2ρc.
pub fn expected_eigenvalue(g: &SolvGroup, lambda: SpectralParam) -> Complex64 {
    lambda.c * lambda.c - 2.0 * g.rho() * lambda.c
}

impl SolvGroup {
    /// a^λ(z) = e^{c·ζ} on the crown (or at real points).
    pub fn a_lambda(&self, z: &ComplexGroupPoint, lambda: SpectralParam) -> Result<Complex64> {
        if !z.is_real(1e-14) && !self.crown().contains(z) {
            return Err(CrownError::OutsideCrown(format!(
                "a^lambda is only guaranteed single-valued on the crown (zeta = {})",
                z.zeta
            )));
        }
        Ok((lambda.c * z.zeta).exp())
    }

    /// Restriction of a^λ to S: e^{ct}.
    pub fn a_lambda_real(&self, x: &GroupPoint, lambda: SpectralParam) -> Complex64 {
        (lambda.c * x.t).exp()
    }
}

/// P_λ(x) = a^λ(σ(x)); only the A-coordinate of the symmetry matters.
pub fn poisson_kernel(g: &SolvGroup, x: &GroupPoint, lambda: SpectralParam) -> Result<Complex64> {
    let sigma = geodesic_symmetry(g, x)?;
    Ok(g.a_lambda_real(&sigma, lambda))
}

/// One sample of a boundary probe along the ray s ↦ exp(i s t H)·exp(i s Y).
#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub s: f64,
    /// Ellipticity margin of the restricted Laplacian at the ray point.
    pub margin: f64,
    /// Crown membership of the ray point.
    pub member: bool,
    /// Whether the mixed decomposition was non-degenerate there.
    pub decomposition_ok: bool,
    /// Ball-model membership of the bridged parameters
    /// (a, b, φ) = (|Y_v|/2, |Y_z|/2, st/2).
    pub ball_member: bool,
    /// a^λ at the ray point while it stays in the crown.
    pub a_lambda: Option<Complex64>,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    /// First ray parameter at which crown membership (or the decomposition)
    /// fails, refined by bisection.
    pub first_failure: Option<f64>,
}

/// Probes a^λ, the mixed decomposition, the ellipticity margin and the
/// bridged ball model along s·(Y, t) for s ∈ [0, s_max].
pub fn boundary_probe(
    g: &SolvGroup,
    y_v: &DVector<f64>,
    y_z: &DVector<f64>,
    t: f64,
    lambda: SpectralParam,
    steps: usize,
    s_max: f64,
) -> Result<ProbeReport> {
    if steps < 2 {
        return Err(CrownError::InvalidParameter(format!(
            "probe needs at least 2 steps, got {steps}"
        )));
    }
    if y_v.len() != g.p() || y_z.len() != g.q() {
        return Err(CrownError::DimensionMismatch {
            expected: g.p() + g.q(),
            got: y_v.len() + y_z.len(),
            context: "probe direction must lie in the algebra of N",
        });
    }
    let crown = g.crown();
    let margin_opts = MarginOptions {
        random_restarts: 16,
        iterations: 200,
        ..Default::default()
    };
    let member_at = |s: f64| -> bool {
        crown
            .membership(&ComplexGroupPoint::slice_point(
                s * t,
                &(y_v * s),
                &(y_z * s),
            ))
            .is_inside()
    };
    let mut rows = Vec::with_capacity(steps);
    let mut bracket: Option<(f64, f64)> = None;
    for k in 0..steps {
        let s = s_max * k as f64 / (steps - 1) as f64;
        let z = ComplexGroupPoint::slice_point(s * t, &(y_v * s), &(y_z * s));
        let membership = crown.membership(&z);
        let member = membership.is_inside();
        let decomposition_ok = membership != CrownMembership::DecompositionDegenerate;
        let margin = ellipticity_margin_with(g, &z, &margin_opts)?;
        let ball_member = crate::rank_one::su21_condition(
            (y_v.norm() * s) / 2.0,
            (y_z.norm() * s) / 2.0,
            s * t / 2.0,
        );
        let a_lambda = if member {
            Some(g.a_lambda(&z, lambda)?)
        } else {
            None
        };
        if bracket.is_none() && !member && k > 0 {
            let prev = s_max * (k - 1) as f64 / (steps - 1) as f64;
            if member_at(prev) {
                bracket = Some((prev, s));
            } else if k == 1 {
                bracket = Some((0.0, s));
            }
        }
        rows.push(ProbeRow {
            s,
            margin,
            member,
            decomposition_ok,
            ball_member,
            a_lambda,
        });
    }
    let first_failure = bracket.map(|(mut lo, mut hi)| {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if member_at(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    });
    Ok(ProbeReport { rows, first_failure })
}

/// CSV export with the `s,margin,member` columns.
pub fn write_probe_csv<W: Write>(report: &ProbeReport, mut out: W) -> Result<()> {
    writeln!(out, "s,margin,member")?;
    for row in &report.rows {
        writeln!(out, "{:?},{:?},{}", row.s, row.margin, row.member)?;
    }
    Ok(())
}

pub fn save_probe_csv(report: &ProbeReport, path: &Path) -> Result<()> {
    write_probe_csv(report, std::fs::File::create(path)?)
}
