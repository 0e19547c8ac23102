//! The adjoint representation of S_ℂ on 𝔰_ℂ.
//!
//! For z = exp(W)·exp(ζH) the adjoint factors as Ad(z) = (id + ad W)·D_ζ
//! with D_ζ = diag(e^{ζ/2} on 𝔳, e^ζ on 𝔷, 1 on 𝔞). The nilpotent factor
//! is exact: (ad W)² = 0 on 𝔰 because [W, [W, H]] = [W_v, W_v] = 0 and
//! brackets of 𝔫 with 𝔷 vanish. Explicitly
//!
//! ```text
//! ad(W) V' = [W_v, V'] ∈ 𝔷,    ad(W) Z' = 0,    ad(W) H = −(½W_v + W_z).
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::complexify::ComplexGroupPoint;
use crate::error::Result;
use crate::solvable::SolvGroup;

/// Ad(z) in the orthonormal basis (V_1..V_p, Z_1..Z_q, H) of 𝔰_ℂ.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointMatrix {
    m: DMatrix<Complex64>,
}

impl AdjointMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// The complex-symmetric symbol matrix L(z) = Ad(z)·Ad(z)ᵀ of the
    /// conjugated Laplacian Σ_k (Ad(z)X_k)²: pairing a real covector ξ with
    /// the frame columns gives ⟨L(z)ξ, ξ⟩ = Σ_k ⟨ξ, Ad(z)e_k⟩². The
    /// transpose is the plain one (bilinear extension of the real inner
    /// product, not the Hermitian adjoint).
    pub fn quadratic_form(&self) -> DMatrix<Complex64> {
        &self.m * self.m.transpose()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: &self.m * &other.m,
        }
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.m.clone().try_inverse().map(|m| Self { m })
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (&self.m - &other.m).map(|c| c.norm()).max()
    }
}

/// Ad(z) for z = exp(W)·exp(ζH), computed as (id + ad W)·D_ζ.
pub fn adjoint(g: &SolvGroup, z: &ComplexGroupPoint) -> Result<AdjointMatrix> {
    g.check_complex(z)?;
    let p = g.p();
    let q = g.q();
    let n = p + q + 1;
    let ez2 = (z.zeta / 2.0).exp();
    let ez = z.zeta.exp();

    // ad(W): columns over the basis.
    let mut ad_w = DMatrix::<Complex64>::zeros(n, n);
    // [W_v, V_j]_k = (J_k W_v)_j under the bilinear pairing.
    for k in 0..q {
        let jk = &g.algebra().rep().generators()[k];
        for j in 0..p {
            let mut entry = Complex64::new(0.0, 0.0);
            for col in 0..p {
                let a = jk[(j, col)];
                if a != 0.0 {
                    entry += a * z.w_v[col];
                }
            }
            ad_w[(p + k, j)] = entry;
        }
    }
    // ad(W) H = −(½W_v + W_z).
    for j in 0..p {
        ad_w[(j, n - 1)] = -0.5 * z.w_v[j];
    }
    for k in 0..q {
        ad_w[(p + k, n - 1)] = -z.w_z[k];
    }

    let mut m = DMatrix::<Complex64>::identity(n, n) + ad_w;
    // Right-multiply by the diagonal dilation D_ζ.
    for col in 0..p {
        for row in 0..n {
            m[(row, col)] *= ez2;
        }
    }
    for col in p..p + q {
        for row in 0..n {
            m[(row, col)] *= ez;
        }
    }
    Ok(AdjointMatrix { m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_complex, random_complex_vector, random_vector, rng};
    use nalgebra::DVector;
    use rand::Rng;

    fn random_c_point(
        rng: &mut impl Rng,
        g: &SolvGroup,
        scale: f64,
    ) -> ComplexGroupPoint {
        ComplexGroupPoint::new(
            random_complex_vector(rng, g.p(), scale),
            random_complex_vector(rng, g.q(), scale),
            random_complex(rng, scale),
        )
    }

    #[test]
    fn adjoint_of_real_a_points_is_diagonal() {
        let g = SolvGroup::standard(2, 1).unwrap();
        let t = 0.8f64;
        let z = ComplexGroupPoint::new(
            DVector::zeros(4),
            DVector::zeros(2),
            Complex64::new(t, 0.0),
        );
        let ad = adjoint(&g, &z).unwrap();
        let m = ad.matrix();
        for i in 0..4 {
            assert!((m[(i, i)] - Complex64::new((t / 2.0).exp(), 0.0)).norm() < 1e-14);
        }
        for i in 4..6 {
            assert!((m[(i, i)] - Complex64::new(t.exp(), 0.0)).norm() < 1e-14);
        }
        assert!((m[(6, 6)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let off_diag: f64 = (0..7)
            .flat_map(|r| (0..7).map(move |c| (r, c)))
            .filter(|(r, c)| r != c)
            .map(|(r, c)| m[(r, c)].norm())
            .fold(0.0, f64::max);
        assert_eq!(off_diag, 0.0);
    }

    #[test]
    fn adjoint_of_imaginary_unipotent_has_the_stated_h_column() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let mut rng = rng(3);
        let y_v = random_vector(&mut rng, 2, 1.0);
        let y_z = random_vector(&mut rng, 1, 1.0);
        let z = ComplexGroupPoint::new(
            y_v.map(|a| Complex64::new(0.0, a)),
            y_z.map(|a| Complex64::new(0.0, a)),
            Complex64::new(0.0, 0.0),
        );
        let ad = adjoint(&g, &z).unwrap();
        let m = ad.matrix();
        // Column of H: H − i(½Y_v + Y_z).
        for j in 0..2 {
            assert!((m[(j, 3)] - Complex64::new(0.0, -0.5 * y_v[j])).norm() < 1e-14);
        }
        assert!((m[(2, 3)] - Complex64::new(0.0, -y_z[0])).norm() < 1e-14);
        assert!((m[(3, 3)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn adjoint_is_multiplicative_and_inverts() {
        let mut rng = rng(5);
        for (q, m) in [(1, 1), (3, 1)] {
            let g = SolvGroup::standard(q, m).unwrap();
            for _ in 0..50 {
                let x = random_c_point(&mut rng, &g, 0.8);
                let y = random_c_point(&mut rng, &g, 0.8);
                let xy = g.c_multiply(&x, &y).unwrap();
                let lhs = adjoint(&g, &xy).unwrap();
                let rhs = adjoint(&g, &x).unwrap().compose(&adjoint(&g, &y).unwrap());
                assert!(lhs.distance(&rhs) < 1e-10, "q={q}");

                let inv_point = g.c_inverse(&x);
                let ad_inv = adjoint(&g, &inv_point).unwrap();
                let ad_x_inv = adjoint(&g, &x).unwrap().try_inverse().unwrap();
                assert!(ad_inv.distance(&ad_x_inv) < 1e-10);
            }
        }
    }
}
