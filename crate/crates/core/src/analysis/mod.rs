//! Geometric analysis on S and its crown: the adjoint representation on
//! 𝔰_ℂ, ellipticity of the restricted Laplacian, the holomorphic character
//! a^λ, geodesic symmetry by shooting, Poisson kernels, and boundary
//! probes.

mod adjoint;
mod eigen;
mod ellipticity;
mod geodesic;

pub use adjoint::{adjoint, AdjointMatrix};
pub use eigen::{
    boundary_probe, expected_eigenvalue, poisson_kernel, write_probe_csv, ProbeReport, ProbeRow,
    SpectralParam,
};
pub use ellipticity::{
    ellipticity_margin, ellipticity_margin_with, is_elliptic, MarginOptions, ELLIPTIC_TOL,
};
pub use geodesic::{
    geodesic_distance_from_identity, geodesic_symmetry, riemannian_exp, riemannian_log,
    ShootingOptions,
};
