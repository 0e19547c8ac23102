//! The complexified group S_ℂ = N_ℂ ⋊ A_ℂ and the mixed-model coordinates.
//!
//! Points are stored in the global chart (W, ζ) ↦ exp(W)·exp(ζH) with
//! W ∈ 𝔫_ℂ and ζ ∈ ℂ. Storing ζ itself (rather than e^{ζ/2} ∈ ℂ*) is the
//! universal-cover model of the A_ℂ factor: products keep ζ additive, so
//! ζ ↦ e^{cζ} is single-valued with no branch tracking. The product law is
//! the real one with e^{t/2}, e^t replaced by e^{ζ/2}, e^ζ and the bracket
//! extended complex-bilinearly.
//!
//! [`SolvGroup::mixed_decompose`] inverts the factorization
//!
//! ```text
//! z = n · a_{t_r} · exp(i t_i H) · exp(i(Y_v + Y_z)),
//! ```
//!
//! with n ∈ N and Y real, by splitting W_v = U_v + i e^{ζ/2} Y_v over ℝ and
//! then solving the 𝔷-part including the ½[U_v, i δ_ζ Y_v] correction. The
//! linear solves are singular when cos(t_i/2)·cos(t_i) vanishes; both factors
//! stay away from zero for |t_i| < π/2.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{CrownError, Result};
use crate::solvable::{GroupPoint, SolvGroup};

/// Threshold on |cos(t_i/2)| and |cos(t_i)| below which the mixed-model
/// linear system is declared degenerate.
pub const DEGENERACY_TOL: f64 = 1e-3;

/// A point of S_ℂ in the chart (W_v, W_z, ζ) ↦ exp(W)·exp(ζH).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGroupPoint {
    pub w_v: DVector<Complex64>,
    pub w_z: DVector<Complex64>,
    pub zeta: Complex64,
}

/// Mixed-model coordinates: z = (U_v, U_z, 0)·a_{t_r}·exp(i t_i H)·exp(iY).
#[derive(Debug, Clone, PartialEq)]
pub struct CrownCoords {
    pub u_v: DVector<f64>,
    pub u_z: DVector<f64>,
    pub t_r: f64,
    pub t_i: f64,
    pub y_v: DVector<f64>,
    pub y_z: DVector<f64>,
}

impl ComplexGroupPoint {
    pub fn new(w_v: DVector<Complex64>, w_z: DVector<Complex64>, zeta: Complex64) -> Self {
        Self { w_v, w_z, zeta }
    }

    pub fn identity(p: usize, q: usize) -> Self {
        Self::new(
            DVector::zeros(p),
            DVector::zeros(q),
            Complex64::new(0.0, 0.0),
        )
    }

    /// Embeds a real group point.
    pub fn from_real(x: &GroupPoint) -> Self {
        Self {
            w_v: x.v.map(|a| Complex64::new(a, 0.0)),
            w_z: x.z.map(|a| Complex64::new(a, 0.0)),
            zeta: Complex64::new(x.t, 0.0),
        }
    }

    /// exp(i t H)·exp(i(Y_v + Y_z)) — a point of the slice D when (Y, t) ∈ 𝒟.
    /// The A-factor carries no N-part, so the product has no bracket term:
    /// the chart coordinates are (i e^{it/2} Y_v, i e^{it} Y_z, it).
    pub fn slice_point(t: f64, y_v: &DVector<f64>, y_z: &DVector<f64>) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let ez2 = Complex64::from_polar(1.0, t / 2.0);
        let ez = Complex64::from_polar(1.0, t);
        Self::new(
            y_v.map(|a| i * ez2 * a),
            y_z.map(|a| i * ez * a),
            i * t,
        )
    }

    /// Maximum coordinate distance to another point.
    pub fn distance(&self, other: &Self) -> f64 {
        let dv = (&self.w_v - &other.w_v).map(|c| c.norm()).max();
        let dz = (&self.w_z - &other.w_z).map(|c| c.norm()).max();
        let dt = (self.zeta - other.zeta).norm();
        dv.max(dz).max(dt)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.w_v.iter().all(|c| c.im.abs() <= tol)
            && self.w_z.iter().all(|c| c.im.abs() <= tol)
            && self.zeta.im.abs() <= tol
    }
}

impl CrownCoords {
    /// Real point: (U, t_r, 0, 0).
    pub fn from_real(x: &GroupPoint) -> Self {
        Self {
            u_v: x.v.clone(),
            u_z: x.z.clone(),
            t_r: x.t,
            t_i: 0.0,
            y_v: DVector::zeros(x.v.len()),
            y_z: DVector::zeros(x.z.len()),
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let mut d: f64 = (&self.u_v - &other.u_v).abs().max();
        d = d.max((&self.u_z - &other.u_z).abs().max());
        d = d.max((self.t_r - other.t_r).abs());
        d = d.max((self.t_i - other.t_i).abs());
        d = d.max((&self.y_v - &other.y_v).abs().max());
        d.max((&self.y_z - &other.y_z).abs().max())
    }
}

impl SolvGroup {
    /// Product law of S_ℂ in the chart:
    /// (W, ζ)·(W', ζ') = (W_v + e^{ζ/2}W'_v, W_z + e^ζ W'_z + ½e^{ζ/2}[W_v, W'_v], ζ + ζ').
    pub fn c_multiply(
        &self,
        x: &ComplexGroupPoint,
        y: &ComplexGroupPoint,
    ) -> Result<ComplexGroupPoint> {
        self.check_complex(x)?;
        self.check_complex(y)?;
        let ez2 = (x.zeta / 2.0).exp();
        let ez = x.zeta.exp();
        let bracket = self.algebra().bracket_complex(&x.w_v, &y.w_v)?;
        Ok(ComplexGroupPoint {
            w_v: &x.w_v + y.w_v.map(|c| ez2 * c),
            w_z: &x.w_z + y.w_z.map(|c| ez * c) + bracket.map(|c| 0.5 * ez2 * c),
            zeta: x.zeta + y.zeta,
        })
    }

    /// (W, ζ)⁻¹ = (−e^{−ζ/2}W_v, −e^{−ζ}W_z, −ζ).
    pub fn c_inverse(&self, x: &ComplexGroupPoint) -> ComplexGroupPoint {
        let ez2 = (-x.zeta / 2.0).exp();
        let ez = (-x.zeta).exp();
        ComplexGroupPoint {
            w_v: x.w_v.map(|c| -ez2 * c),
            w_z: x.w_z.map(|c| -ez * c),
            zeta: -x.zeta,
        }
    }

    /// The N_ℂ A_ℂ decomposition z = n(z)·a(z): immediate in this chart,
    /// with log a(z) = ζ single-valued.
    pub fn na_decompose(
        &self,
        z: &ComplexGroupPoint,
    ) -> ((DVector<Complex64>, DVector<Complex64>), Complex64) {
        ((z.w_v.clone(), z.w_z.clone()), z.zeta)
    }

    /// Rebuilds z = n·a from the output of [`Self::na_decompose`].
    pub fn na_compose(
        &self,
        n_part: &(DVector<Complex64>, DVector<Complex64>),
        log_a: Complex64,
    ) -> Result<ComplexGroupPoint> {
        let n = ComplexGroupPoint::new(n_part.0.clone(), n_part.1.clone(), Complex64::new(0.0, 0.0));
        let a = ComplexGroupPoint::new(
            DVector::zeros(self.p()),
            DVector::zeros(self.q()),
            log_a,
        );
        self.c_multiply(&n, &a)
    }

    /// Composes mixed coordinates into the chart:
    /// z = (U_v, U_z, 0)·exp((t_r + i t_i)H)·exp(i(Y_v + Y_z)).
    pub fn mixed_compose(&self, c: &CrownCoords) -> Result<ComplexGroupPoint> {
        let base = ComplexGroupPoint {
            w_v: c.u_v.map(|a| Complex64::new(a, 0.0)),
            w_z: c.u_z.map(|a| Complex64::new(a, 0.0)),
            zeta: Complex64::new(c.t_r, c.t_i),
        };
        let i = Complex64::new(0.0, 1.0);
        let tail = ComplexGroupPoint {
            w_v: c.y_v.map(|a| i * a),
            w_z: c.y_z.map(|a| i * a),
            zeta: Complex64::new(0.0, 0.0),
        };
        self.c_multiply(&base, &tail)
    }

    /// Inverts the mixed-model factorization. Fails with
    /// [`CrownError::DegenerateDecomposition`] when the linear solve is
    /// singular (cos(t_i/2)·cos(t_i) ≈ 0), which signals a point outside the
    /// validity region NA·exp(iΩ)·exp(iΛ).
    pub fn mixed_decompose(&self, z: &ComplexGroupPoint) -> Result<CrownCoords> {
        self.check_complex(z)?;
        let t_r = z.zeta.re;
        let t_i = z.zeta.im;
        let cos_half = (t_i / 2.0).cos();
        let cos_full = t_i.cos();
        if cos_half.abs() < DEGENERACY_TOL || cos_full.abs() < DEGENERACY_TOL {
            return Err(CrownError::DegenerateDecomposition {
                t_i,
                cos_half: cos_half.abs(),
                cos_full: cos_full.abs(),
            });
        }
        let er2 = (t_r / 2.0).exp();
        let er = t_r.exp();
        let tan_half = (t_i / 2.0).tan();
        let tan_full = t_i.tan();

        // 𝔳-split: W_v = U_v + i e^{ζ/2} Y_v with U_v, Y_v real.
        let re_v = z.w_v.map(|c| c.re);
        let im_v = z.w_v.map(|c| c.im);
        let y_v = &im_v / (er2 * cos_half);
        let u_v = &re_v + &im_v * tan_half;

        // 𝔷-part: W_z − ½[U_v, i e^{ζ/2} Y_v] = U_z + i e^ζ Y_z.
        let bracket = self.algebra().bracket(&u_v, &y_v)?;
        let half_iez2 = Complex64::new(0.0, 0.5) * Complex64::from_polar(er2, t_i / 2.0);
        let r = &z.w_z - bracket.map(|a| half_iez2 * a);
        let re_z = r.map(|c| c.re);
        let im_z = r.map(|c| c.im);
        let y_z = &im_z / (er * cos_full);
        let u_z = &re_z + &im_z * tan_full;

        Ok(CrownCoords {
            u_v,
            u_z,
            t_r,
            t_i,
            y_v,
            y_z,
        })
    }

    pub(crate) fn check_complex(&self, x: &ComplexGroupPoint) -> Result<()> {
        if x.w_v.len() != self.p() {
            return Err(CrownError::DimensionMismatch {
                expected: self.p(),
                got: x.w_v.len(),
                context: "complex point 𝔳-part",
            });
        }
        if x.w_z.len() != self.q() {
            return Err(CrownError::DimensionMismatch {
                expected: self.q(),
                got: x.w_z.len(),
                context: "complex point 𝔷-part",
            });
        }
        Ok(())
    }
}

/// Spectral (2-norm) condition number of the 2×2 system solved per
/// 𝔳-coordinate in the mixed decomposition, at t_r = 0:
/// [[1, −sin(t_i/2)], [0, cos(t_i/2)]]. Grows like 2/|cos(t_i/2)| as
/// t_i → π.
pub fn v_split_condition(t_i: f64) -> f64 {
    let s = (t_i / 2.0).sin().abs();
    if s >= 1.0 {
        f64::INFINITY
    } else {
        ((1.0 + s) / (1.0 - s)).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_complex, random_complex_vector, random_vector, rng};
    use rand::Rng;

    fn random_c_point(rng: &mut impl Rng, g: &SolvGroup, scale: f64) -> ComplexGroupPoint {
        ComplexGroupPoint::new(
            random_complex_vector(rng, g.p(), scale),
            random_complex_vector(rng, g.q(), scale),
            random_complex(rng, scale),
        )
    }

    #[test]
    fn real_inputs_reproduce_the_real_product() {
        let g = SolvGroup::standard(2, 1).unwrap();
        let mut rng = rng(3);
        for _ in 0..50 {
            let x = GroupPoint::new(
                random_vector(&mut rng, 4, 1.5),
                random_vector(&mut rng, 2, 1.5),
                rng.gen_range(-1.0..1.0),
            );
            let y = GroupPoint::new(
                random_vector(&mut rng, 4, 1.5),
                random_vector(&mut rng, 2, 1.5),
                rng.gen_range(-1.0..1.0),
            );
            let real = g.s_multiply(&x, &y).unwrap();
            let complex = g
                .c_multiply(
                    &ComplexGroupPoint::from_real(&x),
                    &ComplexGroupPoint::from_real(&y),
                )
                .unwrap();
            assert!(complex.distance(&ComplexGroupPoint::from_real(&real)) < 1e-13);
        }
    }

    #[test]
    fn c_multiply_is_associative() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let mut rng = rng(5);
        for _ in 0..100 {
            let x = random_c_point(&mut rng, &g, 1.0);
            let y = random_c_point(&mut rng, &g, 1.0);
            let z = random_c_point(&mut rng, &g, 1.0);
            let a = g.c_multiply(&g.c_multiply(&x, &y).unwrap(), &z).unwrap();
            let b = g.c_multiply(&x, &g.c_multiply(&y, &z).unwrap()).unwrap();
            assert!(a.distance(&b) < 1e-12);
        }
    }

    #[test]
    fn conjugation_by_a_dilates() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let mut rng = rng(7);
        for _ in 0..50 {
            let w = ComplexGroupPoint::new(
                random_complex_vector(&mut rng, 2, 1.0),
                random_complex_vector(&mut rng, 1, 1.0),
                Complex64::new(0.0, 0.0),
            );
            let zeta = random_complex(&mut rng, 1.5);
            let a = ComplexGroupPoint::new(DVector::zeros(2), DVector::zeros(1), zeta);
            let a_inv = g.c_inverse(&a);
            let conj = g
                .c_multiply(&g.c_multiply(&a, &w).unwrap(), &a_inv)
                .unwrap();
            let ez2 = (zeta / 2.0).exp();
            let ez = zeta.exp();
            let expected = ComplexGroupPoint::new(
                w.w_v.map(|c| ez2 * c),
                w.w_z.map(|c| ez * c),
                Complex64::new(0.0, 0.0),
            );
            assert!(conj.distance(&expected) < 1e-12);
        }
    }

    #[test]
    fn four_pi_i_conjugation_is_trivial_on_n() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let mut rng = rng(11);
        let w = ComplexGroupPoint::new(
            random_complex_vector(&mut rng, 2, 1.0),
            random_complex_vector(&mut rng, 1, 1.0),
            Complex64::new(0.0, 0.0),
        );
        let a = ComplexGroupPoint::new(
            DVector::zeros(2),
            DVector::zeros(1),
            Complex64::new(0.0, 4.0 * std::f64::consts::PI),
        );
        let conj = g
            .c_multiply(&g.c_multiply(&a, &w).unwrap(), &g.c_inverse(&a))
            .unwrap();
        assert!(conj.distance(&w) < 1e-12);
    }

    #[test]
    fn c_inverse_cancels() {
        let g = SolvGroup::standard(2, 1).unwrap();
        let mut rng = rng(13);
        for _ in 0..50 {
            let x = random_c_point(&mut rng, &g, 1.2);
            let e = g.c_multiply(&x, &g.c_inverse(&x)).unwrap();
            assert!(e.distance(&ComplexGroupPoint::identity(4, 2)) < 1e-12);
        }
    }

    #[test]
    fn na_decompose_round_trip() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let mut rng = rng(17);
        for _ in 0..50 {
            let z = random_c_point(&mut rng, &g, 1.0);
            let (n_part, log_a) = g.na_decompose(&z);
            let back = g.na_compose(&n_part, log_a).unwrap();
            assert!(back.distance(&z) < 1e-13);
        }
        // Real points and pure imaginary A-points decompose trivially.
        let x = GroupPoint::new(
            DVector::from_vec(vec![0.5, 1.0]),
            DVector::from_vec(vec![-0.25]),
            0.75,
        );
        let (n_part, log_a) = g.na_decompose(&ComplexGroupPoint::from_real(&x));
        assert_eq!(log_a, Complex64::new(0.75, 0.0));
        assert_eq!(n_part.0[1], Complex64::new(1.0, 0.0));
        let it = ComplexGroupPoint::new(
            DVector::zeros(2),
            DVector::zeros(1),
            Complex64::new(0.0, 0.4),
        );
        let (n_part, log_a) = g.na_decompose(&it);
        assert_eq!(log_a, Complex64::new(0.0, 0.4));
        assert!(n_part.0.iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn mixed_decompose_fixes_real_and_slice_points() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let x = GroupPoint::new(
            DVector::from_vec(vec![0.4, -0.3]),
            DVector::from_vec(vec![0.2]),
            0.6,
        );
        let c = g
            .mixed_decompose(&ComplexGroupPoint::from_real(&x))
            .unwrap();
        assert!((&c.u_v - &x.v).abs().max() < 1e-14);
        assert!((&c.u_z - &x.z).abs().max() < 1e-14);
        assert_eq!(c.t_r, 0.6);
        assert_eq!(c.t_i, 0.0);
        assert!(c.y_v.abs().max() < 1e-14 && c.y_z.abs().max() < 1e-14);

        let it = ComplexGroupPoint::new(
            DVector::zeros(2),
            DVector::zeros(1),
            Complex64::new(0.0, 1.1),
        );
        let c = g.mixed_decompose(&it).unwrap();
        assert!(c.u_v.abs().max() == 0.0 && c.u_z.abs().max() == 0.0);
        assert_eq!(c.t_r, 0.0);
        assert_eq!(c.t_i, 1.1);
        assert!(c.y_v.abs().max() == 0.0 && c.y_z.abs().max() == 0.0);
    }

    fn random_crown_coords(rng: &mut impl Rng, g: &SolvGroup, ti_cap: f64) -> CrownCoords {
        CrownCoords {
            u_v: random_vector(rng, g.p(), 1.0),
            u_z: random_vector(rng, g.q(), 1.0),
            t_r: rng.gen_range(-1.0..1.0),
            t_i: rng.gen_range(-ti_cap..ti_cap),
            y_v: random_vector(rng, g.p(), 1.0),
            y_z: random_vector(rng, g.q(), 1.0),
        }
    }

    #[test]
    fn mixed_round_trip_both_ways() {
        let cap = std::f64::consts::FRAC_PI_2 - 0.05;
        let mut rng = rng(19);
        for (q, m) in [(1, 1), (3, 1)] {
            let g = SolvGroup::standard(q, m).unwrap();
            for _ in 0..200 {
                let c = random_crown_coords(&mut rng, &g, cap);
                let z = g.mixed_compose(&c).unwrap();
                let back = g.mixed_decompose(&z).unwrap();
                assert!(back.distance(&c) < 1e-10);
                let z2 = g.mixed_compose(&back).unwrap();
                assert!(z2.distance(&z) < 1e-10);
            }
        }
    }

    #[test]
    fn decomposition_degenerates_near_t_i_pi() {
        let g = SolvGroup::standard(1, 1).unwrap();
        for dt in [-1e-3, 0.0, 1e-3] {
            let z = ComplexGroupPoint::new(
                DVector::zeros(2),
                DVector::zeros(1),
                Complex64::new(0.0, std::f64::consts::PI + dt),
            );
            match g.mixed_decompose(&z) {
                Err(CrownError::DegenerateDecomposition { .. }) => {}
                other => panic!("expected degenerate decomposition, got {other:?}"),
            }
        }
        // And near t_i = π/2 where cos(t_i) vanishes.
        let z = ComplexGroupPoint::new(
            DVector::zeros(2),
            DVector::zeros(1),
            Complex64::new(0.3, std::f64::consts::FRAC_PI_2 + 1e-5),
        );
        assert!(matches!(
            g.mixed_decompose(&z),
            Err(CrownError::DegenerateDecomposition { .. })
        ));
    }

    #[test]
    fn v_split_condition_grows_toward_pi() {
        assert!((v_split_condition(0.0) - 1.0).abs() < 1e-15);
        let samples: Vec<f64> = (0..20)
            .map(|k| 0.5 + (std::f64::consts::PI - 0.6) * k as f64 / 19.0)
            .collect();
        let conds: Vec<f64> = samples.iter().map(|&t| v_split_condition(t)).collect();
        for w in conds.windows(2) {
            assert!(w[1] > w[0]);
        }
        assert!(conds.last().unwrap() > &10.0);
        // Bounded by a small multiple of 1/|cos(t_i/2)|.
        for &t in &samples {
            assert!(v_split_condition(t) <= 2.0 / (t / 2.0).cos().abs());
        }
    }
}
