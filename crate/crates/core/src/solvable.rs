//! The harmonic solvable extension S = N ⋊ A.
//!
//! A ≅ ℝ⁺ acts on N by the anisotropic dilations (V, Z) ↦ (e^{t/2}V, e^t Z);
//! equivalently the Lie algebra 𝔰 = 𝔳 ⊕ 𝔷 ⊕ ℝH carries the bracket
//! relations [H, V] = ½V, [H, Z] = Z on top of the H-type bracket of 𝔫.
//! Points are stored in the chart (V, Z, t) ↦ exp(V + Z)·exp(tH), where the
//! product law reads
//!
//! ```text
//! (V, Z, t)·(V', Z', t') = (V + e^{t/2}V', Z + e^t Z' + ½e^{t/2}[V, V'], t + t').
//! ```
//!
//! The left-invariant metric making (V_j, Z_i, H) orthonormal turns S into a
//! harmonic space; its Laplace–Beltrami operator is
//!
//! ```text
//! Δ = Σ_j V_j² + Σ_i Z_i² + H² − 2ρH,        ρ = p/4 + q/2,
//! ```
//!
//! with every X ∈ 𝔰 acting as a left-invariant vector field. [`SolvGroup::apply_laplacian`]
//! evaluates Δf by central finite differences along the one-parameter curves
//! ε ↦ x·exp(εX) with one level of Richardson extrapolation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{CrownError, Result};
use crate::htype::{HTypeAlgebra, NPoint};

/// Default finite-difference step for the Laplacian.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// The solvable group S = N ⋊ A together with ρ = ½ tr(ad H|_𝔫).
#[derive(Debug, Clone, PartialEq)]
pub struct SolvGroup {
    alg: HTypeAlgebra,
    rho: f64,
}

/// A point of S in the chart (V, Z, t) ↦ exp(V+Z)·exp(tH).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint {
    pub v: DVector<f64>,
    pub z: DVector<f64>,
    pub t: f64,
}

/// An element of the Lie algebra 𝔰 = 𝔳 ⊕ 𝔷 ⊕ ℝH.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvVector {
    pub v: DVector<f64>,
    pub z: DVector<f64>,
    pub h: f64,
}

impl GroupPoint {
    pub fn new(v: DVector<f64>, z: DVector<f64>, t: f64) -> Self {
        Self { v, z, t }
    }

    pub fn identity(p: usize, q: usize) -> Self {
        Self::new(DVector::zeros(p), DVector::zeros(q), 0.0)
    }

    /// The N-part (V, Z, 0) ↦ (V, Z).
    pub fn n_part(&self) -> NPoint {
        NPoint::new(self.v.clone(), self.z.clone())
    }

    pub fn from_n(n: &NPoint) -> Self {
        Self::new(n.v.clone(), n.z.clone(), 0.0)
    }

    /// a_t = exp(tH).
    pub fn a(p: usize, q: usize, t: f64) -> Self {
        Self::new(DVector::zeros(p), DVector::zeros(q), t)
    }
}

impl SolvVector {
    pub fn new(v: DVector<f64>, z: DVector<f64>, h: f64) -> Self {
        Self { v, z, h }
    }

    pub fn zero(p: usize, q: usize) -> Self {
        Self::new(DVector::zeros(p), DVector::zeros(q), 0.0)
    }

    /// The k-th vector of the orthonormal basis (V_1..V_p, Z_1..Z_q, H).
    pub fn basis(p: usize, q: usize, k: usize) -> Self {
        let mut x = Self::zero(p, q);
        if k < p {
            x.v[k] = 1.0;
        } else if k < p + q {
            x.z[k - p] = 1.0;
        } else {
            x.h = 1.0;
        }
        x
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.v.dot(&other.v) + self.z.dot(&other.z) + self.h * other.h
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(&self.v * s, &self.z * s, self.h * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.v + &other.v, &self.z + &other.z, self.h + other.h)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }
}

impl SolvGroup {
    pub fn new(alg: HTypeAlgebra) -> Self {
        let rho = alg.p() as f64 / 4.0 + alg.q() as f64 / 2.0;
        Self { alg, rho }
    }

    /// Standard group over the standard Cl_q representation.
    pub fn standard(q: i64, multiplicity: i64) -> Result<Self> {
        Ok(Self::new(HTypeAlgebra::standard(q, multiplicity)?))
    }

    pub fn algebra(&self) -> &HTypeAlgebra {
        &self.alg
    }

    pub fn p(&self) -> usize {
        self.alg.p()
    }

    pub fn q(&self) -> usize {
        self.alg.q()
    }

    /// Dimension of S (and of 𝔰): p + q + 1.
    pub fn dim(&self) -> usize {
        self.p() + self.q() + 1
    }

    /// ρ = ½ tr(ad H|_𝔫) = p/4 + q/2.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn identity(&self) -> GroupPoint {
        GroupPoint::identity(self.p(), self.q())
    }

    /// Product law (V,Z,t)·(V',Z',t') = (V+e^{t/2}V', Z+e^tZ'+½e^{t/2}[V,V'], t+t').
    pub fn s_multiply(&self, x: &GroupPoint, y: &GroupPoint) -> Result<GroupPoint> {
        self.check_point(x)?;
        self.check_point(y)?;
        let et2 = (x.t / 2.0).exp();
        let et = x.t.exp();
        let bracket = self.alg.bracket(&x.v, &y.v)?;
        Ok(GroupPoint {
            v: &x.v + &y.v * et2,
            z: &x.z + &y.z * et + bracket * (0.5 * et2),
            t: x.t + y.t,
        })
    }

    /// (V,Z,t)⁻¹ = (−e^{−t/2}V, −e^{−t}Z, −t).
    pub fn s_inverse(&self, x: &GroupPoint) -> GroupPoint {
        let et2 = (-x.t / 2.0).exp();
        let et = (-x.t).exp();
        GroupPoint {
            v: &x.v * (-et2),
            z: &x.z * (-et),
            t: -x.t,
        }
    }

    /// Lie bracket on 𝔰:
    /// [X, Y] = (½(x_H Y_v − y_H X_v), [X_v, Y_v] + x_H Y_z − y_H X_z, 0).
    pub fn lie_bracket(&self, x: &SolvVector, y: &SolvVector) -> Result<SolvVector> {
        let vv = self.alg.bracket(&x.v, &y.v)?;
        Ok(SolvVector {
            v: &y.v * (0.5 * x.h) - &x.v * (0.5 * y.h),
            z: vv + &y.z * x.h - &x.z * y.h,
            h: 0.0,
        })
    }

    /// Matrix of ad_X on 𝔰 in the orthonormal basis (V_1..V_p, Z_1..Z_q, H).
    pub fn ad_matrix(&self, x: &SolvVector) -> Result<DMatrix<f64>> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for k in 0..n {
            let e = SolvVector::basis(self.p(), self.q(), k);
            let col = self.lie_bracket(x, &e)?;
            for i in 0..self.p() {
                m[(i, k)] = col.v[i];
            }
            for i in 0..self.q() {
                m[(self.p() + i, k)] = col.z[i];
            }
            m[(n - 1, k)] = col.h;
        }
        Ok(m)
    }

    /// Lie-group exponential 𝔰 → S in closed form: the (V, Z) parts flow with
    /// coefficients (e^{t/2}−1)/(t/2) and (e^t−1)/t.
    pub fn group_exp(&self, x: &SolvVector) -> GroupPoint {
        let (cv, cz) = exp_coefficients(x.h);
        GroupPoint {
            v: &x.v * cv,
            z: &x.z * cz,
            t: x.h,
        }
    }

    /// Inverse of [`Self::group_exp`]; globally defined.
    pub fn group_log(&self, g: &GroupPoint) -> SolvVector {
        let (cv, cz) = exp_coefficients(g.t);
        SolvVector {
            v: &g.v / cv,
            z: &g.z / cz,
            h: g.t,
        }
    }

    /// Δf(x) with Δ = Σ V_j² + Σ Z_i² + H² − 2ρH, each left-invariant field
    /// differentiated along ε ↦ x·exp(εX) by central differences at steps h
    /// and h/2 combined by one Richardson level.
    pub fn apply_laplacian_complex(
        &self,
        f: &dyn Fn(&GroupPoint) -> Complex64,
        x: &GroupPoint,
        h: f64,
    ) -> Result<Complex64> {
        self.laplacian_impl(f, x, h, true)
    }

    /// Real-valued version of [`Self::apply_laplacian_complex`].
    pub fn apply_laplacian(
        &self,
        f: &dyn Fn(&GroupPoint) -> f64,
        x: &GroupPoint,
        h: f64,
    ) -> Result<f64> {
        let fc = |p: &GroupPoint| Complex64::new(f(p), 0.0);
        Ok(self.laplacian_impl(&fc, x, h, true)?.re)
    }

    /// Plain second-order scheme without extrapolation; used to verify the
    /// O(h²) convergence rate.
    pub fn apply_laplacian_unextrapolated(
        &self,
        f: &dyn Fn(&GroupPoint) -> Complex64,
        x: &GroupPoint,
        h: f64,
    ) -> Result<Complex64> {
        self.laplacian_impl(f, x, h, false)
    }

    fn laplacian_impl(
        &self,
        f: &dyn Fn(&GroupPoint) -> Complex64,
        x: &GroupPoint,
        h: f64,
        richardson: bool,
    ) -> Result<Complex64> {
        if h <= 0.0 {
            return Err(CrownError::InvalidParameter(format!(
                "step size must be positive, got {h}"
            )));
        }
        self.check_point(x)?;
        let f0 = self.eval_finite(f, x)?;
        let mut sum = Complex64::new(0.0, 0.0);
        let n = self.dim();
        for k in 0..n {
            let dir = SolvVector::basis(self.p(), self.q(), k);
            let second = |step: f64| -> Result<Complex64> {
                let plus = self.eval_finite(f, &self.translate(x, &dir, step)?)?;
                let minus = self.eval_finite(f, &self.translate(x, &dir, -step)?)?;
                Ok((plus - 2.0 * f0 + minus) / (step * step))
            };
            let d2 = if richardson {
                let coarse = second(h)?;
                let fine = second(h / 2.0)?;
                (4.0 * fine - coarse) / 3.0
            } else {
                second(h)?
            };
            sum += d2;
        }
        // First-order H term.
        let hdir = SolvVector::basis(self.p(), self.q(), n - 1);
        let first = |step: f64| -> Result<Complex64> {
            let plus = self.eval_finite(f, &self.translate(x, &hdir, step)?)?;
            let minus = self.eval_finite(f, &self.translate(x, &hdir, -step)?)?;
            Ok((plus - minus) / (2.0 * step))
        };
        let d1 = if richardson {
            let coarse = first(h)?;
            let fine = first(h / 2.0)?;
            (4.0 * fine - coarse) / 3.0
        } else {
            first(h)?
        };
        Ok(sum - 2.0 * self.rho * d1)
    }

    /// x·exp(εX) for a basis direction X; exact since basis directions
    /// exponentiate to straight lines in the chart.
    fn translate(&self, x: &GroupPoint, dir: &SolvVector, eps: f64) -> Result<GroupPoint> {
        self.s_multiply(x, &self.group_exp(&dir.scale(eps)))
    }

    fn eval_finite(
        &self,
        f: &dyn Fn(&GroupPoint) -> Complex64,
        x: &GroupPoint,
    ) -> Result<Complex64> {
        let val = f(x);
        if !val.re.is_finite() || !val.im.is_finite() {
            return Err(CrownError::NonFinite(format!(
                "field value at t = {}, |V| = {}, |Z| = {}",
                x.t,
                x.v.norm(),
                x.z.norm()
            )));
        }
        Ok(val)
    }

    fn check_point(&self, x: &GroupPoint) -> Result<()> {
        if x.v.len() != self.p() {
            return Err(CrownError::DimensionMismatch {
                expected: self.p(),
                got: x.v.len(),
                context: "group point V-part",
            });
        }
        if x.z.len() != self.q() {
            return Err(CrownError::DimensionMismatch {
                expected: self.q(),
                got: x.z.len(),
                context: "group point Z-part",
            });
        }
        Ok(())
    }
}

/// ((e^{t/2}−1)/(t/2), (e^t−1)/t) with the t → 0 limits.
fn exp_coefficients(t: f64) -> (f64, f64) {
    if t == 0.0 {
        (1.0, 1.0)
    } else {
        (f64::exp_m1(t / 2.0) / (t / 2.0), f64::exp_m1(t) / t)
    }
}
