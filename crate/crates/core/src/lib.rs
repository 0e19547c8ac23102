//! Heisenberg-type algebras, their harmonic solvable extensions, and the
//! complex crown domain.
//!
//! The crate builds, layer by layer:
//!
//! - [`clifford`]: representations of the real Clifford algebra Cl_q — the
//!   J-maps that define Heisenberg-type structure.
//! - [`htype`]: H-type Lie algebras 𝔫 = 𝔳 ⊕ 𝔷 and the nilpotent group N in
//!   its exponential chart.
//! - [`solvable`]: the solvable extension S = N ⋊ A with its product law,
//!   left-invariant inner product, and Laplace–Beltrami operator.
//! - [`complexify`]: the complexified group S_ℂ = N_ℂ ⋊ A_ℂ in a global
//!   chart, the N_ℂA_ℂ decomposition, and the mixed-model factorization
//!   z = n·a·exp(i t H)·exp(iY).
//! - [`crown`]: the parameter sets Ω, Λ, 𝒟 and the crown Cr(S) = N A D,
//!   boundary-surface meshing, and reduction to Heisenberg-based groups.
//! - [`rank_one`]: the SL(2,ℝ) and SU(2,1) matrix models of the rank-one
//!   crown and the coordinate bridge between conventions.
//! - [`analysis`]: adjoint representation, ellipticity of the restricted
//!   Laplacian, holomorphic a^λ, geodesic symmetry by shooting, Poisson
//!   kernels, and boundary probes.
//! - [`cli`]: configuration and the `verify` / `mesh` / `scan` / `probe`
//!   commands used by the `hcrown` binary.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability.

pub mod analysis;
pub mod cli;
pub mod clifford;
pub mod complexify;
pub mod crown;
pub mod error;
pub mod htype;
pub mod numeric;
pub mod rank_one;
pub mod sampling;
pub mod solvable;

pub use clifford::{build_clifford_rep, CliffordRep};
pub use complexify::{ComplexGroupPoint, CrownCoords};
pub use crown::CrownSpec;
pub use error::{CrownError, Result};
pub use htype::{HTypeAlgebra, NPoint};
pub use solvable::{GroupPoint, SolvGroup};

#[cfg(test)]
pub(crate) mod test_util {
    pub use crate::sampling::{rng, unit_vector};
}
