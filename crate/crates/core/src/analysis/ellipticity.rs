//! Ellipticity of the restricted Laplacian.
//!
//! At z ∈ S_ℂ the Laplacian restricted to the translated real form S·z has
//! leading part Σ_k (Ad(z)X_k)² over the orthonormal frame X_k of 𝔰, so its
//! principal symbol at a real covector ξ is the complex-bilinear quadratic
//! form
//!
//! ```text
//! Q(ξ) = Σ_k ⟨ξ, Ad(z)X_k⟩² = ⟨L(z)ξ, ξ⟩,     L(z) = Ad(z)·Ad(z)ᵀ,
//! ```
//!
//! with the plain (bilinear) transpose. Ellipticity means Q has no nonzero
//! real isotropic vector; [`ellipticity_margin`] returns min_{|ξ|=1} |Q(ξ)|,
//! so a positive margin certifies ellipticity and the margin decays to zero
//! toward the crown boundary.
//!
//! The minimum is computed on the sphere by projected gradient descent on
//! (Re Q)² + (Im Q)², initialized at eigenvectors of the two real quadratic
//! forms (and pencil combinations) plus random restarts, and polished with
//! tangent-space Gauss–Newton steps on the two-residual system
//! (Re Q, Im Q) → 0.

use nalgebra::{DMatrix, DVector};

use crate::complexify::ComplexGroupPoint;
use crate::error::Result;
use crate::sampling::{rng, unit_vector};
use crate::solvable::SolvGroup;

use super::adjoint;

/// Margins above this value are treated as a positive certificate of
/// ellipticity.
pub const ELLIPTIC_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct MarginOptions {
    /// Number of random restarts on top of the eigenvector initializations.
    pub random_restarts: usize,
    /// Projected-gradient iteration cap per restart.
    pub iterations: usize,
    /// Seed for the restart directions.
    pub seed: u64,
}

impl Default for MarginOptions {
    fn default() -> Self {
        Self {
            random_restarts: 32,
            iterations: 250,
            seed: 0x5eed,
        }
    }
}

/// min_{|ξ|=1, ξ real} |Q(ξ)| with default options.
pub fn ellipticity_margin(g: &SolvGroup, z: &ComplexGroupPoint) -> Result<f64> {
    ellipticity_margin_with(g, z, &MarginOptions::default())
}

pub fn ellipticity_margin_with(
    g: &SolvGroup,
    z: &ComplexGroupPoint,
    opts: &MarginOptions,
) -> Result<f64> {
    let l = adjoint(g, z)?.quadratic_form();
    let n = l.nrows();
    // Real and imaginary parts of L are the two real quadratic forms;
    // symmetrize to absorb rounding.
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut b = DMatrix::<f64>::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            a[(r, c)] = 0.5 * (l[(r, c)].re + l[(c, r)].re);
            b[(r, c)] = 0.5 * (l[(r, c)].im + l[(c, r)].im);
        }
    }
    Ok(min_isotropy(&a, &b, opts).sqrt())
}

pub fn is_elliptic(margin: f64) -> bool {
    margin > ELLIPTIC_TOL
}

/// Minimum of F(ξ) = (ξᵀAξ)² + (ξᵀBξ)² on the unit sphere.
fn min_isotropy(a: &DMatrix<f64>, b: &DMatrix<f64>, opts: &MarginOptions) -> f64 {
    let n = a.nrows();
    let mut starts: Vec<DVector<f64>> = Vec::new();
    for theta in [0.0, 0.25, 0.5, 0.75] {
        let pencil = a * (theta as f64 * std::f64::consts::PI).cos()
            + b * (theta as f64 * std::f64::consts::PI).sin();
        let eig = nalgebra::SymmetricEigen::new(pencil);
        for k in 0..n {
            starts.push(eig.eigenvectors.column(k).clone_owned());
        }
    }
    let mut rng = rng(opts.seed);
    for _ in 0..opts.random_restarts.max(1) {
        starts.push(unit_vector(&mut rng, n));
    }

    let mut best = f64::INFINITY;
    for start in starts {
        let value = descend(a, b, start, opts.iterations);
        if value < best {
            best = value;
        }
        if best <= 0.0 {
            return 0.0;
        }
    }
    best.max(0.0)
}

fn f_value(a: &DMatrix<f64>, b: &DMatrix<f64>, x: &DVector<f64>) -> (f64, f64, f64) {
    let ax = a * x;
    let bx = b * x;
    let qa = x.dot(&ax);
    let qb = x.dot(&bx);
    (qa * qa + qb * qb, qa, qb)
}

fn descend(a: &DMatrix<f64>, b: &DMatrix<f64>, start: DVector<f64>, iterations: usize) -> f64 {
    let mut x = start.normalize();
    let (mut f, mut qa, mut qb) = f_value(a, b, &x);
    let mut step = 0.1;
    for _ in 0..iterations {
        if f < 1e-28 {
            break;
        }
        let grad = (a * &x) * (4.0 * qa) + (b * &x) * (4.0 * qb);
        let tangent = &grad - &x * grad.dot(&x);
        let gnorm = tangent.norm();
        if gnorm < 1e-15 {
            break;
        }
        let mut advanced = false;
        for _ in 0..40 {
            let candidate = (&x - &tangent * (step / gnorm)).normalize();
            let (fc, qac, qbc) = f_value(a, b, &candidate);
            if fc < f {
                x = candidate;
                f = fc;
                qa = qac;
                qb = qbc;
                step *= 1.25;
                advanced = true;
                break;
            }
            step *= 0.5;
        }
        if !advanced {
            break;
        }
    }
    // Tangent-space Gauss–Newton polish on (qa, qb) → 0; kept only while it
    // improves F.
    for _ in 0..20 {
        if f < 1e-30 {
            break;
        }
        let ax = a * &x;
        let bx = b * &x;
        let ra = x.dot(&ax);
        let rb = x.dot(&bx);
        // Jacobian rows 2(Aξ)ᵀ, 2(Bξ)ᵀ projected onto the tangent space.
        let ja = (&ax - &x * ra) * 2.0;
        let jb = (&bx - &x * rb) * 2.0;
        let g11 = ja.dot(&ja);
        let g12 = ja.dot(&jb);
        let g22 = jb.dot(&jb);
        let det = g11 * g22 - g12 * g12;
        if det.abs() < 1e-24 {
            break;
        }
        // Minimal-norm step δ = Jᵀ (J Jᵀ)⁻¹ (−r).
        let c1 = (-ra * g22 + rb * g12) / det;
        let c2 = (ra * g12 - rb * g11) / det;
        let delta = &ja * c1 + &jb * c2;
        let candidate = (&x + &delta).normalize();
        let (fc, _, _) = f_value(a, b, &candidate);
        if fc < f {
            x = candidate;
            let v = f_value(a, b, &x);
            f = v.0;
        } else {
            break;
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crown::{in_d_scalar, t_max_scalar};
    use nalgebra::DVector;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_2;

    fn a_slice_point(g: &SolvGroup, t: f64) -> ComplexGroupPoint {
        ComplexGroupPoint::new(
            DVector::zeros(g.p()),
            DVector::zeros(g.q()),
            Complex64::new(0.0, t),
        )
    }

    #[test]
    fn margin_at_identity_is_one() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let z = ComplexGroupPoint::identity(2, 1);
        let margin = ellipticity_margin(&g, &z).unwrap();
        assert!((margin - 1.0).abs() < 1e-9, "margin {margin}");
    }

    #[test]
    fn margin_on_the_imaginary_a_axis_matches_a_simplex_oracle() {
        // At z = exp(itH) the form is Q(ξ) = e^{it}|ξ_v|² + e^{2it}|ξ_z|² + ξ_H²,
        // so |Q| depends only on the three sphere masses. Minimize over a fine
        // simplex grid as an independent oracle.
        let g = SolvGroup::standard(1, 1).unwrap();
        for t in [0.4, 1.0, 1.4] {
            let z = a_slice_point(&g, t);
            let margin = ellipticity_margin(&g, &z).unwrap();
            let e1 = Complex64::from_polar(1.0, t);
            let e2 = Complex64::from_polar(1.0, 2.0 * t);
            let mut oracle = f64::INFINITY;
            let res = 400;
            for i in 0..=res {
                for j in 0..=(res - i) {
                    let s0 = i as f64 / res as f64;
                    let s1 = j as f64 / res as f64;
                    let s2 = 1.0 - s0 - s1;
                    let q = e1 * s0 + e2 * s1 + s2;
                    oracle = oracle.min(q.norm());
                }
            }
            assert!(margin > 0.0, "t={t}");
            assert!(
                (margin - oracle).abs() < 2e-3,
                "t={t}: margin {margin} oracle {oracle}"
            );
        }
    }

    #[test]
    fn margin_vanishes_at_the_omega_boundary() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let z = a_slice_point(&g, FRAC_PI_2);
        let margin = ellipticity_margin(&g, &z).unwrap();
        assert!(margin < 1e-6, "margin {margin}");
    }

    #[test]
    fn margin_decays_along_a_ray_to_the_boundary() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let yv = DVector::from_vec(vec![0.9, 0.0]);
        let yz = DVector::from_vec(vec![0.2]);
        let t = t_max_scalar(0.9, 0.2).unwrap();
        let mut last = f64::INFINITY;
        for &s in &[0.2, 0.5, 0.7, 0.9, 1.0] {
            let z = ComplexGroupPoint::slice_point(s * t, &(&yv * s), &(&yz * s));
            let margin = ellipticity_margin(&g, &z).unwrap();
            assert!(margin < last + 1e-9, "non-monotone at s={s}");
            last = margin;
            assert!(in_d_scalar(0.9 * s, 0.2 * s, t * s) || s >= 1.0);
            // The degeneracy surface sits inside the closure of 𝒟 once the
            // 𝔳-parameter is present, so only the deep interior is asserted
            // positive; the margin has vanished by the time the ray reaches
            // the 𝒟-boundary.
            if s <= 0.7 {
                assert!(is_elliptic(margin), "s={s}: margin {margin}");
            }
        }
        assert!(last < 1e-4, "boundary margin {last}");
    }

    #[test]
    fn margin_positive_on_interior_sample_for_q3() {
        let g = SolvGroup::standard(3, 1).unwrap();
        let yv = DVector::from_vec(vec![0.5, 0.2, 0.0, 0.1]);
        let yz = DVector::from_vec(vec![0.1, 0.0, 0.2]);
        let t = 0.6;
        assert!(in_d_scalar(yv.norm(), yz.norm(), t));
        let z = ComplexGroupPoint::slice_point(t, &yv, &yz);
        let margin = ellipticity_margin(&g, &z).unwrap();
        assert!(is_elliptic(margin), "margin {margin}");
    }

    #[test]
    fn ellipticity_region_thresholds_on_the_axes() {
        // Along the three coordinate axes the degeneracy thresholds are
        // t = π/2 (A-axis), |Y_z| = 1 (center), and |Y_v| = 1 (𝔳-direction).
        // The first two coincide with the 𝒟-bounds; the 𝔳-threshold is
        // strictly inside Λ (which allows |Y_v| < √2).
        let g = SolvGroup::standard(1, 1).unwrap();
        let margin_at = |v: f64, y: f64, t: f64| {
            let yv = DVector::from_vec(vec![v, 0.0]);
            let yz = DVector::from_vec(vec![y]);
            ellipticity_margin(&g, &ComplexGroupPoint::slice_point(t, &yv, &yz)).unwrap()
        };
        assert!(is_elliptic(margin_at(0.0, 0.95, 0.0)));
        assert!(!is_elliptic(margin_at(0.0, 1.05, 0.0)));
        assert!(is_elliptic(margin_at(0.95, 0.0, 0.0)));
        assert!(!is_elliptic(margin_at(1.05, 0.0, 0.0)));
        // |Y_v| slightly above 1 is still inside 𝒟 yet degenerate.
        assert!(in_d_scalar(1.05, 0.0, 0.0));
    }
}
