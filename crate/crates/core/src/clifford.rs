//! Real Clifford algebra representations.
//!
//! A representation of Cl_q on ℝ^p is a family of real p×p matrices
//! J_1, …, J_q that are skew-symmetric, orthogonal, and pairwise
//! anticommuting:
//!
//! ```text
//! J_kᵀ = −J_k,   J_kᵀJ_k = id,   J_jJ_k + J_kJ_j = −2δ_jk id.
//! ```
//!
//! Equivalently, J_Z := Σ_k Z_k J_k satisfies J_Z² = −|Z|² id for every
//! Z ∈ ℝ^q. These J-maps are exactly the data needed to equip 𝔳 ⊕ 𝔷
//! with a Heisenberg-type bracket (see [`crate::htype`]).
//!
//! Construction: for q ≤ 7 the generators are left multiplications by the
//! imaginary units of the Cayley–Dickson algebras ℂ, ℍ, 𝕆 (alternativity
//! and norm composition give the Clifford relations). q = 8 doubles the
//! octonion system, and q > 8 tensors with the q = 8 system and its volume
//! element, realizing the periodicity d_{q+8} = 16·d_q of the minimal
//! module dimension.

use nalgebra::{DMatrix, DVector};

use crate::error::{CrownError, Result};

/// Minimal dimension of a real Cl_q-module.
///
/// d_1 = 2, d_2 = d_3 = 4, d_4 = … = d_7 = 8, d_8 = 16, d_{q+8} = 16·d_q.
pub fn minimal_module_dim(q: usize) -> usize {
    assert!(q >= 1, "q must be >= 1");
    match q {
        1 => 2,
        2 | 3 => 4,
        4..=7 => 8,
        8 => 16,
        _ => 16 * minimal_module_dim(q - 8),
    }
}

/// A representation of the real Clifford algebra Cl_q on ℝ^p.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRep {
    q: usize,
    p: usize,
    generators: Vec<DMatrix<f64>>,
}

impl CliffordRep {
    /// Number of generators (dimension of the center 𝔷 downstream).
    pub fn q(&self) -> usize {
        self.q
    }

    /// Dimension of the module 𝔳.
    pub fn p(&self) -> usize {
        self.p
    }

    /// The generator matrices J_1, …, J_q.
    pub fn generators(&self) -> &[DMatrix<f64>] {
        &self.generators
    }

    /// Builds a representation from explicit generators, validating the
    /// Clifford relations to 1e−12.
    pub fn from_generators(generators: Vec<DMatrix<f64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(CrownError::InvalidParameter(
                "at least one generator required".into(),
            ));
        }
        let p = generators[0].nrows();
        for (k, j) in generators.iter().enumerate() {
            if j.nrows() != p || j.ncols() != p {
                return Err(CrownError::DimensionMismatch {
                    expected: p,
                    got: j.nrows().max(j.ncols()),
                    context: "Clifford generator must be square of uniform size",
                });
            }
            let skew = (j.transpose() + j).abs().max();
            if skew > 1e-12 {
                return Err(CrownError::InvalidParameter(format!(
                    "generator {k} is not skew-symmetric (residual {skew:.3e})"
                )));
            }
            let orth = (j.transpose() * j - DMatrix::identity(p, p)).abs().max();
            if orth > 1e-12 {
                return Err(CrownError::InvalidParameter(format!(
                    "generator {k} is not orthogonal (residual {orth:.3e})"
                )));
            }
        }
        for a in 0..generators.len() {
            for b in (a + 1)..generators.len() {
                let anti = (&generators[a] * &generators[b] + &generators[b] * &generators[a])
                    .abs()
                    .max();
                if anti > 1e-12 {
                    return Err(CrownError::InvalidParameter(format!(
                        "generators {a}, {b} do not anticommute (residual {anti:.3e})"
                    )));
                }
            }
        }
        Ok(Self {
            q: generators.len(),
            p,
            generators,
        })
    }

    /// J_Z = Σ_k Z_k J_k as a matrix.
    pub fn j_matrix(&self, z: &DVector<f64>) -> Result<DMatrix<f64>> {
        if z.len() != self.q {
            return Err(CrownError::DimensionMismatch {
                expected: self.q,
                got: z.len(),
                context: "j_matrix: Z must lie in R^q",
            });
        }
        let mut m = DMatrix::zeros(self.p, self.p);
        for (k, j) in self.generators.iter().enumerate() {
            m += j * z[k];
        }
        Ok(m)
    }

    /// Applies J_Z to V, i.e. Σ_k Z_k J_k V. Linear in both arguments.
    pub fn j_map(&self, z: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        if z.len() != self.q {
            return Err(CrownError::DimensionMismatch {
                expected: self.q,
                got: z.len(),
                context: "j_map: Z must lie in R^q",
            });
        }
        if v.len() != self.p {
            return Err(CrownError::DimensionMismatch {
                expected: self.p,
                got: v.len(),
                context: "j_map: V must lie in R^p",
            });
        }
        let mut out = DVector::zeros(self.p);
        for (k, j) in self.generators.iter().enumerate() {
            if z[k] != 0.0 {
                out += j * v * z[k];
            }
        }
        Ok(out)
    }
}

/// Builds the standard Cl_q representation on ℝ^p with p = multiplicity·d_q.
///
/// Deterministic for fixed inputs; all matrix entries are in {−1, 0, 1}.
pub fn build_clifford_rep(q: i64, multiplicity: i64) -> Result<CliffordRep> {
    if q <= 0 {
        return Err(CrownError::InvalidParameter(format!(
            "q must be >= 1, got {q}"
        )));
    }
    if multiplicity <= 0 {
        return Err(CrownError::InvalidParameter(format!(
            "multiplicity must be >= 1, got {multiplicity}"
        )));
    }
    let q = q as usize;
    let m = multiplicity as usize;
    let irreducible = irreducible_generators(q);
    let generators = if m == 1 {
        irreducible
    } else {
        irreducible.into_iter().map(|j| block_copies(&j, m)).collect()
    };
    CliffordRep::from_generators(generators)
}

/// Irreducible (minimal-dimension) generator family for Cl_q.
fn irreducible_generators(q: usize) -> Vec<DMatrix<f64>> {
    match q {
        1..=3 => division_algebra_generators(q),
        4..=7 => division_algebra_generators(q),
        8 => double_system(&division_algebra_generators(7)),
        _ => periodic_system(q),
    }
}

/// Left multiplications by the first q imaginary units of the Cayley–Dickson
/// algebra of dimension 2^n, with n chosen minimal (ℂ for q=1, ℍ for q≤3,
/// 𝕆 for q≤7).
fn division_algebra_generators(q: usize) -> Vec<DMatrix<f64>> {
    let n = match q {
        1 => 1,
        2 | 3 => 2,
        4..=7 => 3,
        _ => unreachable!("division algebras cover q <= 7 only"),
    };
    let dim = 1usize << n;
    (1..=q).map(|k| left_mult_matrix(dim, k)).collect()
}

/// Matrix of x ↦ e_k·x in the Cayley–Dickson algebra of dimension `dim`.
fn left_mult_matrix(dim: usize, k: usize) -> DMatrix<f64> {
    let mut unit = vec![0.0; dim];
    unit[k] = 1.0;
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut basis = vec![0.0; dim];
        basis[col] = 1.0;
        let prod = cd_mul(&unit, &basis);
        for row in 0..dim {
            m[(row, col)] = prod[row];
        }
    }
    m
}

/// Cayley–Dickson product: (a,b)(c,d) = (ac − d̄b, da + bc̄).
fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let dim = x.len();
    if dim == 1 {
        return vec![x[0] * y[0]];
    }
    let h = dim / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &cd_conj(c));
    let mut out = Vec::with_capacity(dim);
    for i in 0..h {
        out.push(ac[i] - db[i]);
    }
    for i in 0..h {
        out.push(da[i] + bc[i]);
    }
    out
}

fn cd_conj(x: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = x.iter().map(|v| -v).collect();
    out[0] = x[0];
    out
}

/// Doubling step: from K_1..K_r on ℝ^d to r+1 generators on ℝ^{2d}:
/// diag(K_i, −K_i) plus the off-diagonal complex structure.
fn double_system(base: &[DMatrix<f64>]) -> Vec<DMatrix<f64>> {
    let d = base[0].nrows();
    let mut out = Vec::with_capacity(base.len() + 1);
    for k in base {
        let mut j = DMatrix::zeros(2 * d, 2 * d);
        j.view_mut((0, 0), (d, d)).copy_from(k);
        j.view_mut((d, d), (d, d)).copy_from(&(-k));
        out.push(j);
    }
    let mut j = DMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        j[(i, d + i)] = -1.0;
        j[(d + i, i)] = 1.0;
    }
    out.push(j);
    out
}

/// Periodicity step for q > 8: with G_1..G_8 the q=8 system on ℝ^16 and
/// ω = G_1⋯G_8 its volume element (symmetric, ω² = id, anticommuting with
/// each G_i), the family {G_i ⊗ id} ∪ {ω ⊗ K_j} represents Cl_q on
/// ℝ^{16·d_{q−8}}.
fn periodic_system(q: usize) -> Vec<DMatrix<f64>> {
    let eight = irreducible_generators(8);
    let rest = irreducible_generators(q - 8);
    let d = rest[0].nrows();
    let id_d = DMatrix::<f64>::identity(d, d);
    let mut omega = DMatrix::<f64>::identity(16, 16);
    for g in &eight {
        omega = omega * g;
    }
    let mut out = Vec::with_capacity(q);
    for g in &eight {
        out.push(g.kronecker(&id_d));
    }
    for k in &rest {
        out.push(omega.kronecker(k));
    }
    out
}

/// m diagonal copies of a matrix.
fn block_copies(j: &DMatrix<f64>, m: usize) -> DMatrix<f64> {
    let d = j.nrows();
    let mut out = DMatrix::zeros(m * d, m * d);
    for b in 0..m {
        out.view_mut((b * d, b * d), (d, d)).copy_from(j);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{rng, unit_vector};
    use rand::Rng;

    #[test]
    fn q1_is_the_standard_complex_structure() {
        let rep = build_clifford_rep(1, 1).unwrap();
        assert_eq!(rep.p(), 2);
        let j = &rep.generators()[0];
        let expected = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        assert_eq!(j, &expected);
    }

    #[test]
    fn q3_generators_are_quaternion_left_multiplications() {
        let rep = build_clifford_rep(3, 1).unwrap();
        assert_eq!(rep.p(), 4);
        let [ji, jj, jk] = [&rep.generators()[0], &rep.generators()[1], &rep.generators()[2]];
        // L_i L_j = L_k and the anticommutators vanish, by direct multiplication.
        assert!((ji * jj - jk).abs().max() < 1e-15);
        for (a, b) in [(ji, jj), (ji, jk), (jj, jk)] {
            assert!((a * b + b * a).abs().max() < 1e-15);
        }
        for j in [ji, jj, jk] {
            assert!((j * j + DMatrix::identity(4, 4)).abs().max() < 1e-15);
        }
    }

    #[test]
    fn q2_multiplicity_two_is_block_diagonal() {
        let rep = build_clifford_rep(2, 2).unwrap();
        assert_eq!(rep.p(), 8);
        let single = build_clifford_rep(2, 1).unwrap();
        for (j8, j4) in rep.generators().iter().zip(single.generators()) {
            assert_eq!(j8.view((0, 0), (4, 4)).clone_owned(), *j4);
            assert_eq!(j8.view((4, 4), (4, 4)).clone_owned(), *j4);
            assert_eq!(j8.view((0, 4), (4, 4)).abs().max(), 0.0);
            assert_eq!(j8.view((4, 0), (4, 4)).abs().max(), 0.0);
        }
    }

    #[test]
    fn minimal_dims_match_the_periodicity_table() {
        let expected = [2, 4, 4, 8, 8, 8, 8, 16, 32, 64, 64, 128];
        for (q, d) in (1..=12).zip(expected) {
            assert_eq!(minimal_module_dim(q), d, "q = {q}");
            let rep = build_clifford_rep(q as i64, 1).unwrap();
            assert_eq!(rep.p(), d);
        }
    }

    #[test]
    fn clifford_relations_hold_across_q_and_multiplicity() {
        for (q, m) in [(1, 1), (2, 1), (3, 2), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1), (9, 1), (1, 3)] {
            // from_generators re-validates skewness, orthogonality and
            // anticommutation, so success is the assertion.
            let rep = build_clifford_rep(q, m).unwrap();
            assert_eq!(rep.p() as i64, m * minimal_module_dim(q as usize) as i64);
        }
    }

    #[test]
    fn j_map_basis_example() {
        let rep = build_clifford_rep(1, 1).unwrap();
        let z = DVector::from_vec(vec![1.0]);
        let v = DVector::from_vec(vec![1.0, 0.0]);
        let jv = rep.j_map(&z, &v).unwrap();
        assert_eq!(jv, DVector::from_vec(vec![0.0, 1.0]));
    }

    #[test]
    fn j_z_squares_to_minus_norm_squared() {
        let mut rng = rng(7);
        for (q, m) in [(1, 1), (2, 1), (3, 1), (7, 1), (1, 2), (9, 1)] {
            let rep = build_clifford_rep(q, m).unwrap();
            for _ in 0..50 {
                let z = DVector::from_fn(rep.q(), |_, _| rng.gen_range(-2.0..2.0));
                let v = DVector::from_fn(rep.p(), |_, _| rng.gen_range(-2.0..2.0));
                let jjv = rep.j_map(&z, &rep.j_map(&z, &v).unwrap()).unwrap();
                let residual = (&jjv + &v * z.norm_squared()).abs().max();
                assert!(residual < 1e-12, "q={q} m={m}: residual {residual:.3e}");
            }
        }
    }

    #[test]
    fn j_map_is_skew_and_isometric() {
        let mut rng = rng(13);
        let rep = build_clifford_rep(3, 1).unwrap();
        for _ in 0..100 {
            let z = unit_vector(&mut rng, rep.q());
            let v = DVector::from_fn(rep.p(), |_, _| rng.gen_range(-2.0..2.0));
            let jv = rep.j_map(&z, &v).unwrap();
            assert!(jv.dot(&v).abs() < 1e-12);
            assert!((jv.norm() - z.norm() * v.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_z_maps_to_zero() {
        let rep = build_clifford_rep(2, 1).unwrap();
        let z = DVector::zeros(2);
        let v = DVector::from_vec(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(rep.j_map(&z, &v).unwrap().norm(), 0.0);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(build_clifford_rep(0, 1).is_err());
        assert!(build_clifford_rep(-2, 1).is_err());
        assert!(build_clifford_rep(1, 0).is_err());
        let rep = build_clifford_rep(1, 1).unwrap();
        assert!(rep.j_map(&DVector::zeros(2), &DVector::zeros(2)).is_err());
        assert!(rep.j_map(&DVector::zeros(1), &DVector::zeros(3)).is_err());
        // A symmetric matrix is not a valid generator.
        assert!(CliffordRep::from_generators(vec![DMatrix::identity(2, 2)]).is_err());
    }
}
