//! Heisenberg-type Lie algebras and the nilpotent group N.
//!
//! 𝔫 = 𝔳 ⊕ 𝔷 is step-two nilpotent with [𝔳, 𝔷] = 0 = [𝔷, 𝔷] and bracket on
//! 𝔳 determined by the J-maps through ⟨J_Z V, V'⟩ = ⟨Z, [V, V']⟩. The
//! exponential map identifies N with 𝔫, and Campbell–Hausdorff truncates:
//!
//! ```text
//! (V, Z)·(V', Z') = (V + V', Z + Z' + ½[V, V']).
//! ```

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::clifford::{build_clifford_rep, CliffordRep};
use crate::error::{CrownError, Result};

/// An H-type algebra 𝔫 = 𝔳 ⊕ 𝔷 carried by a Clifford representation.
///
/// `bracket_coeffs[k]` holds the structure constants c_ij^k = ⟨J_k e_i, e_j⟩,
/// i.e. the coefficient of Z_k in [e_i, e_j]; as a matrix it is J_kᵀ.
#[derive(Debug, Clone, PartialEq)]
pub struct HTypeAlgebra {
    rep: CliffordRep,
    bracket_coeffs: Vec<DMatrix<f64>>,
}

/// A point of N in the exponential chart: n = exp(V + Z).
#[derive(Debug, Clone, PartialEq)]
pub struct NPoint {
    pub v: DVector<f64>,
    pub z: DVector<f64>,
}

impl NPoint {
    pub fn new(v: DVector<f64>, z: DVector<f64>) -> Self {
        Self { v, z }
    }

    pub fn identity(p: usize, q: usize) -> Self {
        Self {
            v: DVector::zeros(p),
            z: DVector::zeros(q),
        }
    }
}

impl HTypeAlgebra {
    /// Wraps a Clifford representation as an H-type algebra. The center
    /// dimension q ≥ 1 is guaranteed by `CliffordRep` construction.
    pub fn new(rep: CliffordRep) -> Self {
        let bracket_coeffs = rep.generators().iter().map(|j| j.transpose()).collect();
        Self {
            rep,
            bracket_coeffs,
        }
    }

    /// Standard algebra with center dimension q and 𝔳 = multiplicity copies
    /// of the minimal Cl_q-module.
    pub fn standard(q: i64, multiplicity: i64) -> Result<Self> {
        Ok(Self::new(build_clifford_rep(q, multiplicity)?))
    }

    pub fn p(&self) -> usize {
        self.rep.p()
    }

    pub fn q(&self) -> usize {
        self.rep.q()
    }

    pub fn rep(&self) -> &CliffordRep {
        &self.rep
    }

    pub fn bracket_coeffs(&self) -> &[DMatrix<f64>] {
        &self.bracket_coeffs
    }

    /// [V, V'] ∈ 𝔷, component k = ⟨J_k V, V'⟩.
    pub fn bracket(&self, v: &DVector<f64>, w: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_v(v)?;
        self.check_v(w)?;
        Ok(DVector::from_fn(self.q(), |k, _| {
            (&self.rep.generators()[k] * v).dot(w)
        }))
    }

    /// Complex-bilinear extension of the bracket to 𝔳_ℂ.
    pub fn bracket_complex(
        &self,
        v: &DVector<Complex64>,
        w: &DVector<Complex64>,
    ) -> Result<DVector<Complex64>> {
        if v.len() != self.p() || w.len() != self.p() {
            return Err(CrownError::DimensionMismatch {
                expected: self.p(),
                got: v.len().max(w.len()),
                context: "bracket_complex: arguments must lie in C^p",
            });
        }
        Ok(DVector::from_fn(self.q(), |k, _| {
            let j = &self.rep.generators()[k];
            let mut acc = Complex64::new(0.0, 0.0);
            for row in 0..self.p() {
                let mut jv = Complex64::new(0.0, 0.0);
                for col in 0..self.p() {
                    let a = j[(row, col)];
                    if a != 0.0 {
                        jv += a * v[col];
                    }
                }
                acc += jv * w[row];
            }
            acc
        }))
    }

    /// Group law of N in the exponential chart.
    pub fn n_multiply(&self, x: &NPoint, y: &NPoint) -> Result<NPoint> {
        self.check_point(x)?;
        self.check_point(y)?;
        let bracket = self.bracket(&x.v, &y.v)?;
        Ok(NPoint {
            v: &x.v + &y.v,
            z: &x.z + &y.z + bracket * 0.5,
        })
    }

    /// (V, Z)⁻¹ = (−V, −Z).
    pub fn n_inverse(&self, x: &NPoint) -> NPoint {
        NPoint {
            v: -&x.v,
            z: -&x.z,
        }
    }

    /// Whether the bracket map 𝔳 × 𝔳 → 𝔷 is onto, i.e. [𝔳, 𝔳] = 𝔷.
    /// Checked as the rank of the q × p(p−1)/2 matrix of basis brackets.
    pub fn bracket_is_surjective(&self) -> bool {
        let p = self.p();
        let q = self.q();
        let cols = p * (p - 1) / 2;
        let mut m = DMatrix::zeros(q, cols);
        let mut col = 0;
        for i in 0..p {
            for j in (i + 1)..p {
                for k in 0..q {
                    m[(k, col)] = self.bracket_coeffs[k][(i, j)];
                }
                col += 1;
            }
        }
        m.rank(1e-10) == q
    }

    fn check_v(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() != self.p() {
            return Err(CrownError::DimensionMismatch {
                expected: self.p(),
                got: v.len(),
                context: "vector must lie in R^p",
            });
        }
        Ok(())
    }

    fn check_point(&self, x: &NPoint) -> Result<()> {
        self.check_v(&x.v)?;
        if x.z.len() != self.q() {
            return Err(CrownError::DimensionMismatch {
                expected: self.q(),
                got: x.z.len(),
                context: "Z-part must lie in R^q",
            });
        }
        Ok(())
    }
}
