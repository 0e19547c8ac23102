//! Matrix models of the rank-one crown: SL(2,ℝ) on ℙ¹×ℙ¹ and SU(2,1) on
//! the complex 2-ball.
//!
//! For SL(2,ℝ) the complexified symmetric space is realized as
//! ℙ¹(ℂ)×ℙ¹(ℂ) ∖ diag via g ↦ (g(i), g(−i)); the crown is the product of
//! the upper and lower half planes. For SU(2,1) acting on the ball
//! X = { z ∈ ℂ² : ‖z‖ < 1 }, the complexification is realized by pairs
//!
//! ```text
//! g ↦ (g(0), conj(σ(g)(0))),        σ(g) = I₂,₁ (g†)⁻¹ I₂,₁,
//! ```
//!
//! where σ is the conjugation of SL(3,ℂ) fixing SU(2,1); the joint
//! stabilizer of the base pair is exactly the block-diagonal K_ℂ, and real
//! group elements embed as z ↦ (z, z̄). The crown is X × X.
//!
//! For g = a_{iφ}·exp(iZ_{a,b}) with a real, the first component lies in
//! the ball iff (1 + 2b − 2a²)cos 2φ > (1 − cos 2φ)a², and the σ-partner
//! flips the sign of b, so membership of the pair is the symmetrized
//! inequality
//!
//! ```text
//! (1 − 2|b| − 2a²) cos 2φ > (1 − cos 2φ) a².
//! ```
//!
//! The `bridge` function translates (a, b, φ) into the dilation-chart norms
//! (|V|, |Z|, t) = (2|a|, 2|b|, 2φ); under it the pair-membership
//! inequality matches the 𝒟-inequality of [`crate::crown`] exactly, the
//! boxes Λ, Ω correspond, and at φ = 0 pair membership reduces precisely to
//! |a|² + |b| < ½.

use nalgebra::{DVector, Matrix2, Matrix3, Vector2};
use num_complex::Complex64;

use crate::error::{CrownError, Result};
use crate::numeric::{gauss_newton, GaussNewtonOptions};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

// ---------------------------------------------------------------------------
// SL(2) on ℙ¹ × ℙ¹
// ---------------------------------------------------------------------------

/// A point of ℙ¹(ℂ) = ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjectivePoint {
    Finite(Complex64),
    Infinity,
}

impl ProjectivePoint {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ProjectivePoint::Finite(z) => Some(z),
            ProjectivePoint::Infinity => None,
        }
    }

    pub fn distance(self, other: Self) -> f64 {
        match (self, other) {
            (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => (a - b).norm(),
            (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

/// An element of SL(2,ℂ) acting on ℙ¹ by fractional-linear maps.
#[derive(Debug, Clone, PartialEq)]
pub struct Moebius2 {
    m: Matrix2<Complex64>,
}

impl Moebius2 {
    /// Validates det = 1 to 1e−12.
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        if (det - ONE).norm() > 1e-12 {
            return Err(CrownError::InvalidParameter(format!(
                "matrix must have determinant 1, got {det}"
            )));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.m
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix2::identity(),
        }
    }

    /// n_x = [[1, x], [0, 1]], acting by z ↦ z + x.
    pub fn translation(x: f64) -> Self {
        Self {
            m: Matrix2::new(ONE, Complex64::new(x, 0.0), ZERO, ONE),
        }
    }

    /// exp(s·diag(1,−1)) = diag(e^s, e^{−s}), acting by z ↦ e^{2s} z.
    pub fn dilation(s: f64) -> Self {
        Self {
            m: Matrix2::new(Complex64::new(s.exp(), 0.0), ZERO, ZERO, Complex64::new((-s).exp(), 0.0)),
        }
    }

    /// exp(it·diag(1,−1)) = diag(e^{it}, e^{−it}), acting by z ↦ e^{2it} z.
    pub fn imaginary_dilation(t: f64) -> Self {
        Self {
            m: Matrix2::new(Complex64::from_polar(1.0, t), ZERO, ZERO, Complex64::from_polar(1.0, -t)),
        }
    }

    /// exp(iy·E₁₂) = [[1, iy], [0, 1]], acting by z ↦ z + iy.
    pub fn imaginary_translation(y: f64) -> Self {
        Self {
            m: Matrix2::new(ONE, I * y, ZERO, ONE),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: self.m * other.m,
        }
    }

    /// Fractional-linear action on ℙ¹.
    pub fn apply(&self, z: ProjectivePoint) -> ProjectivePoint {
        let (a, b, c, d) = (self.m[(0, 0)], self.m[(0, 1)], self.m[(1, 0)], self.m[(1, 1)]);
        match z {
            ProjectivePoint::Infinity => {
                if c.norm() < 1e-14 {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(a / c)
                }
            }
            ProjectivePoint::Finite(z) => {
                let denom = c * z + d;
                if denom.norm() < 1e-14 {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite((a * z + b) / denom)
                }
            }
        }
    }
}

/// The pair (g(i), g(−i)) for g = n_x·a_s·exp(itH)·exp(iyE₁₂).
///
/// In the SL(2) scale the crown parameters are |t| < π/4 and |y| < 1.
pub fn sl2_pair(x: f64, s: f64, t: f64, y: f64) -> (ProjectivePoint, ProjectivePoint) {
    let g = Moebius2::translation(x)
        .compose(&Moebius2::dilation(s))
        .compose(&Moebius2::imaginary_dilation(t))
        .compose(&Moebius2::imaginary_translation(y));
    (
        g.apply(ProjectivePoint::Finite(I)),
        g.apply(ProjectivePoint::Finite(-I)),
    )
}

/// Membership of a pair in X × X̄ (upper × lower half plane); pairs
/// containing ∞ are outside.
pub fn sl2_in_crown(pair: &(ProjectivePoint, ProjectivePoint)) -> bool {
    match (pair.0.finite(), pair.1.finite()) {
        (Some(z), Some(w)) => z.im > 0.0 && w.im < 0.0,
        _ => false,
    }
}

/// Solves (g(i), g(−i)) = (z, w) for the parameters (x, s, t, y).
///
/// The product structure gives e^{2s+2it} = (z−w)/(2i) and
/// z + w = 2x + y(z−w); the solve is exact up to rounding. Returns `None`
/// when z = w (outside the pair model) or when the A-factor degenerates.
pub fn sl2_preimage(pair: &(ProjectivePoint, ProjectivePoint)) -> Option<(f64, f64, f64, f64)> {
    let z = pair.0.finite()?;
    let w = pair.1.finite()?;
    let u = (z - w) / (2.0 * I);
    if u.norm() < 1e-14 {
        return None;
    }
    let s = 0.5 * u.norm().ln();
    let t = 0.5 * u.arg();
    let dz = z - w;
    if dz.im.abs() < 1e-14 {
        return None;
    }
    let y = (z + w).im / dz.im;
    let x = ((z + w).re - y * dz.re) / 2.0;
    Some((x, s, t, y))
}

/// Roots of the leading-symbol quadric ξ² − 2ix e^{it} ξ + e^{2it}(1−x²) = 0
/// of the restricted Laplacian in the SL(2) model, computed by the quadratic
/// formula. In closed form they are i e^{it}(x ± 1): real exactly at x = ∓1
/// or t = ±π/2.
pub fn sl2_symbol_roots(x: f64, t: f64) -> (Complex64, Complex64) {
    let eit = Complex64::from_polar(1.0, t);
    let half_b = I * x * eit;
    let c = eit * eit * (1.0 - x * x);
    let disc = (half_b * half_b - c).sqrt();
    (half_b + disc, half_b - disc)
}

// ---------------------------------------------------------------------------
// SU(2,1) on the ball
// ---------------------------------------------------------------------------

/// The signature-(2,1) form diag(1, 1, −1).
fn form_matrix() -> Matrix3<Complex64> {
    Matrix3::from_diagonal(&nalgebra::Vector3::new(ONE, ONE, -ONE))
}

fn det3(m: &Matrix3<Complex64>) -> Complex64 {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

/// A validated element of SU(2,1): g†·diag(1,1,−1)·g = diag(1,1,−1) to
/// 1e−10 and det g = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SU21Element {
    m: Matrix3<Complex64>,
}

impl SU21Element {
    pub fn new(m: Matrix3<Complex64>) -> Result<Self> {
        let f = form_matrix();
        let residual = (m.adjoint() * f * m - f).map(|c| c.norm()).max();
        if residual > 1e-10 {
            return Err(CrownError::InvalidParameter(format!(
                "matrix does not preserve the (2,1) form (residual {residual:.3e})"
            )));
        }
        let det = det3(&m);
        if (det - ONE).norm() > 1e-10 {
            return Err(CrownError::InvalidParameter(format!(
                "matrix must have determinant 1, got {det}"
            )));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.m
    }

    /// a_t = exp(t·H) with H the off-diagonal boost generator.
    pub fn a(t: f64) -> Self {
        Self {
            m: su21_a_matrix(Complex64::new(t, 0.0)),
        }
    }

    /// The real unipotent exp(Z_{a,b}) ∈ N ⊂ SU(2,1).
    pub fn unipotent(a: Complex64, b: f64) -> Self {
        Self {
            m: su21_exp_z(a, b, false),
        }
    }

    /// m_θ = diag(e^{iθ}, e^{−2iθ}, e^{iθ}) ∈ M = Z_K(A). Conjugation sends
    /// Z_{a,b} to Z_{e^{3iθ}a, b}, so any complex a can be rotated real.
    pub fn m_rotation(theta: f64) -> Self {
        Self {
            m: Matrix3::from_diagonal(&nalgebra::Vector3::new(
                Complex64::from_polar(1.0, theta),
                Complex64::from_polar(1.0, -2.0 * theta),
                Complex64::from_polar(1.0, theta),
            )),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: self.m * other.m,
        }
    }
}

/// a_w = [[cosh w, 0, sinh w], [0, 1, 0], [sinh w, 0, cosh w]] for complex w;
/// w = iφ gives the elliptic element a_{iφ}.
pub fn su21_a_matrix(w: Complex64) -> Matrix3<Complex64> {
    let ch = w.cosh();
    let sh = w.sinh();
    Matrix3::new(ch, ZERO, sh, ZERO, ONE, ZERO, sh, ZERO, ch)
}

/// The Λ-parameter matrix
/// Z_{a,b} = [[ib, a, −ib], [−ā, 0, ā], [ib, a, −ib]] ∈ 𝔫.
pub fn su21_z_matrix(a: Complex64, b: f64) -> Matrix3<Complex64> {
    let ib = I * b;
    Matrix3::new(ib, a, -ib, -a.conj(), ZERO, a.conj(), ib, a, -ib)
}

/// exp(Z_{a,b}) (imaginary = false) or exp(iZ_{a,b}) (imaginary = true),
/// in closed form: Z³ = 0 with Z² = |a|²·[[−1,0,1],[0,0,0],[−1,0,1]].
fn su21_exp_z(a: Complex64, b: f64, imaginary: bool) -> Matrix3<Complex64> {
    let z = su21_z_matrix(a, b);
    let arg = if imaginary { z.map(|c| I * c) } else { z };
    let half_sq = arg * arg * Complex64::new(0.5, 0.0);
    Matrix3::identity() + arg + half_sq
}

/// n_{a,b} = exp(iZ_{a,b}); for real a this is the matrix
/// [[1−b+a²/2, ia, b−a²/2], [−ia, 1, ia], [−b+a²/2, ia, 1+b−a²/2]].
pub fn su21_n_matrix(a: Complex64, b: f64) -> Matrix3<Complex64> {
    su21_exp_z(a, b, true)
}

/// Fractional-linear action of g = (A u; vᵗ α) on z ∈ ℂ²:
/// g(z) = (Az + u)/(vᵗz + α). Errors when the denominator vanishes.
pub fn ball_apply(m: &Matrix3<Complex64>, z: &Vector2<Complex64>) -> Result<Vector2<Complex64>> {
    let denom = m[(2, 0)] * z[0] + m[(2, 1)] * z[1] + m[(2, 2)];
    if denom.norm() < 1e-13 {
        return Err(CrownError::VanishingDenominator(denom.norm()));
    }
    let n0 = m[(0, 0)] * z[0] + m[(0, 1)] * z[1] + m[(0, 2)];
    let n1 = m[(1, 0)] * z[0] + m[(1, 1)] * z[1] + m[(1, 2)];
    Ok(Vector2::new(n0 / denom, n1 / denom))
}

/// ‖z‖₂ < 1.
pub fn in_ball(z: &Vector2<Complex64>) -> bool {
    z[0].norm_sqr() + z[1].norm_sqr() < 1.0
}

/// The pair (g(0), conj(σ(g)(0))) for g = a_{iφ}·n_{a,b} with real a.
/// σ acts on the factors by a_{iφ} ↦ a_{−iφ} and exp(iZ_{a,b}) ↦
/// exp(iZ_{−a,−b}), so the partner is computed through its own matrix
/// product conj((a_{−iφ}·n_{−a,−b})(0)).
pub fn su21_point(
    a: f64,
    b: f64,
    phi: f64,
) -> Result<(Vector2<Complex64>, Vector2<Complex64>)> {
    let ac = Complex64::new(a, 0.0);
    let g = su21_a_matrix(I * phi) * su21_n_matrix(ac, b);
    let sigma_g = su21_a_matrix(-I * phi) * su21_n_matrix(-ac, -b);
    let origin = Vector2::new(ZERO, ZERO);
    let first = ball_apply(&g, &origin)?;
    let partner = ball_apply(&sigma_g, &origin)?.map(|c| c.conj());
    Ok((first, partner))
}

/// σ(g) = I₂,₁·(g†)⁻¹·I₂,₁, the conjugation of SL(3,ℂ) with respect to
/// SU(2,1); real group elements are fixed.
pub fn su21_sigma(m: &Matrix3<Complex64>) -> Result<Matrix3<Complex64>> {
    let f = form_matrix();
    let inv = m
        .adjoint()
        .try_inverse()
        .ok_or_else(|| CrownError::InvalidParameter("singular matrix in sigma".into()))?;
    Ok(f * inv * f)
}

/// Ball membership of the first pair component alone:
/// (1 + 2b − 2a²)·cos 2φ > (1 − cos 2φ)·a². Asymmetric in b; the σ-partner
/// satisfies the same inequality with b ↦ −b.
pub fn su21_half_condition(a: f64, b: f64, phi: f64) -> bool {
    let c = (2.0 * phi).cos();
    (1.0 + 2.0 * b - 2.0 * a * a) * c > (1.0 - c) * a * a
}

/// Membership of the whole pair: (1 − 2|b| − 2a²)·cos 2φ > (1 − cos 2φ)·a²,
/// the conjunction of the two one-sided conditions.
pub fn su21_condition(a: f64, b: f64, phi: f64) -> bool {
    let c = (2.0 * phi).cos();
    (1.0 - 2.0 * b.abs() - 2.0 * a * a) * c > (1.0 - c) * a * a
}

/// The Λ inequality |a|² + |b| < ½ of the SU(2,1) model.
pub fn su21_in_lambda(a: Complex64, b: f64) -> bool {
    a.norm_sqr() + b.abs() < 0.5
}

/// Ball membership of n_{a,b}(0) at φ = 0 reduces algebraically to
/// 2a² − 2b < 1. For b ≤ 0 this agrees with the Λ inequality
/// |a|² + |b| < ½; for b > 0 it is strictly weaker, so Λ-membership
/// implies it but not conversely.
pub fn su21_ball_condition_at_phi0(a: f64, b: f64) -> bool {
    2.0 * a * a - 2.0 * b < 1.0
}

/// Coordinate bridge to the dilation-chart norms:
/// (|V|, |Z|, t) = (2|a|, 2|b|, 2φ).
pub fn bridge(a: f64, b: f64, phi: f64) -> (f64, f64, f64) {
    (2.0 * a.abs(), 2.0 * b.abs(), 2.0 * phi)
}

/// Numerically inverts the 8-parameter family
/// g = exp(Z_{a',b'})·a_s·a_{iφ}·exp(iZ_{a,b}) against a target pair in
/// X × X, by damped Gauss–Newton from the origin. Returns the parameter
/// vector (Re a', Im a', b', s, φ, Re a, Im a, b) on success.
pub fn su21_preimage(
    target: &(Vector2<Complex64>, Vector2<Complex64>),
    tol: f64,
) -> Result<DVector<f64>> {
    let residual = |p: &DVector<f64>| -> Result<DVector<f64>> {
        let n_real = su21_exp_z(Complex64::new(p[0], p[1]), p[2], false);
        let a_s = su21_a_matrix(Complex64::new(p[3], 0.0));
        let a_phi = su21_a_matrix(I * p[4]);
        let n_imag = su21_n_matrix(Complex64::new(p[5], p[6]), p[7]);
        let g = n_real * a_s * a_phi * n_imag;
        // σ factor-by-factor: real factors are fixed, a_{iφ} ↦ a_{−iφ},
        // exp(iZ) ↦ exp(−iZ).
        let sigma_g = n_real
            * a_s
            * su21_a_matrix(-I * p[4])
            * su21_n_matrix(Complex64::new(-p[5], -p[6]), -p[7]);
        let origin = Vector2::new(ZERO, ZERO);
        let first = ball_apply(&g, &origin)?;
        let second = ball_apply(&sigma_g, &origin)?.map(|c| c.conj());
        Ok(DVector::from_vec(vec![
            first[0].re - target.0[0].re,
            first[0].im - target.0[0].im,
            first[1].re - target.0[1].re,
            first[1].im - target.0[1].im,
            second[0].re - target.1[0].re,
            second[0].im - target.1[0].im,
            second[1].re - target.1[1].re,
            second[1].im - target.1[1].im,
        ]))
    };
    let opts = GaussNewtonOptions {
        max_iterations: 120,
        residual_tol: tol,
        fd_step: 1e-6,
    };
    let out = gauss_newton(residual, DVector::zeros(8), &opts)?;
    Ok(out.x)
}

// ---------------------------------------------------------------------------
// Ball-model bridge for the q = 1, p = 2 group
// ---------------------------------------------------------------------------

/// Carries the q = 1, p = 2 group point (V, Z, t) into the SU(2,1) ball
/// through the group isomorphism
///
/// ```text
/// (V, Z, t) ↦ exp(Z_{a,b})·a_{t/2},   a = (V₁ + iV₂)/2,  b = Z/2,
/// ```
///
/// evaluated at the origin. The isomorphism matches the bracket
/// ([Z_{a,0}, Z_{a',0}] = Z_{0, 2 Im(āa')}), the dilation weights
/// ([H, Z_{a,b}] = Z_{a,2b} with H = ½·(boost)), and scales the metric by a
/// constant, so it transports geodesic-symmetry questions faithfully.
pub fn ball_from_group(x: &crate::solvable::GroupPoint) -> Result<Vector2<Complex64>> {
    if x.v.len() != 2 || x.z.len() != 1 {
        return Err(CrownError::DimensionMismatch {
            expected: 2,
            got: x.v.len(),
            context: "ball model requires the q = 1, p = 2 group",
        });
    }
    let a = Complex64::new(x.v[0] / 2.0, x.v[1] / 2.0);
    let b = x.z[0] / 2.0;
    let g = su21_exp_z(a, b, false) * su21_a_matrix(Complex64::new(x.t / 2.0, 0.0));
    ball_apply(&g, &Vector2::new(ZERO, ZERO))
}

/// Horospherical inverse of [`ball_from_group`]: with r = (1+w₁)/(1−w₁),
/// the parameters are ā = w₂/(1−w₁), b = −Im(r)/2 and e^t = Re(r) − |a|².
pub fn group_from_ball(w: &Vector2<Complex64>) -> Result<crate::solvable::GroupPoint> {
    let one_minus = Complex64::new(1.0, 0.0) - w[0];
    if one_minus.norm() < 1e-13 {
        return Err(CrownError::VanishingDenominator(one_minus.norm()));
    }
    let a = (w[1] / one_minus).conj();
    let r = (Complex64::new(1.0, 0.0) + w[0]) / one_minus;
    let b = -r.im / 2.0;
    let et = r.re - a.norm_sqr();
    if et <= 0.0 {
        return Err(CrownError::OutsideCrown(format!(
            "ball point has no horospherical coordinates (e^t = {et})"
        )));
    }
    Ok(crate::solvable::GroupPoint::new(
        nalgebra::DVector::from_vec(vec![2.0 * a.re, 2.0 * a.im]),
        nalgebra::DVector::from_vec(vec![2.0 * b]),
        et.ln(),
    ))
}

/// The ball-model geodesic symmetry z ↦ −z transported to the group: an
/// independent closed-form oracle for the shooting-based symmetry on the
/// q = 1, p = 2 group.
pub fn ball_symmetry_oracle(x: &crate::solvable::GroupPoint) -> Result<crate::solvable::GroupPoint> {
    let w = ball_from_group(x)?;
    group_from_ball(&Vector2::new(-w[0], -w[1]))
}
