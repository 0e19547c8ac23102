//! The crown domain Cr(S) = N·A·D and its parameter sets.
//!
//! In the mixed model the imaginary directions are constrained by
//!
//! ```text
//! Ω = { t : |t| < π/2 },
//! Λ = { (V, Z) : ½|V|² + |Z| < 1 },
//! 𝒟 = { (V, Z, t) : |t| < π/2,  cos t (1 − ½|V|² − |Z|) > ¼(1 − cos t)|V|² },
//! ```
//!
//! and Cr(S) consists of the points n·a·exp(itH)·exp(iY) with (Y, t) ∈ 𝒟.
//! All predicates depend only on (|V|, |Z|, t); on that scalar model the
//! boundary hypersurface is the graph t = ±t_max(|V|, |Z|) with
//!
//! ```text
//! t_max = 2·arctan √(1 − |V|²/(2(1 − |Z|))).
//! ```
//!
//! The defining inequality is taken together with |t| < π/2; a grid
//! flood-fill ([`flood_fill_component`]) verifies that this closed-form set
//! is a single connected component containing 0, discharging the
//! component-convention in the definition of 𝒟.

use std::io::Write;
use std::path::Path;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::complexify::ComplexGroupPoint;
use crate::error::{CrownError, Result};
use crate::htype::HTypeAlgebra;
use crate::clifford::CliffordRep;
use crate::solvable::{GroupPoint, SolvGroup};

/// |t| < π/2.
pub fn in_omega(t: f64) -> bool {
    t.abs() < std::f64::consts::FRAC_PI_2
}

/// ½v² + z < 1 for the norms v = |V|, z = |Z|.
pub fn in_lambda_scalar(v: f64, z: f64) -> bool {
    0.5 * v * v + z < 1.0
}

/// Signed margin of the 𝒟-inequality: cos t (1 − ½v² − z) − ¼(1 − cos t) v².
pub fn d_margin_scalar(v: f64, z: f64, t: f64) -> f64 {
    let c = t.cos();
    c * (1.0 - 0.5 * v * v - z) - 0.25 * (1.0 - c) * v * v
}

/// Membership in 𝒟 on the scalar model: |t| < π/2 and the strict inequality.
pub fn in_d_scalar(v: f64, z: f64, t: f64) -> bool {
    in_omega(t) && d_margin_scalar(v, z, t) > 0.0
}

/// Positive boundary value of t over (v, z): 2·arctan √(1 − v²/(2(1−z))).
///
/// Requires (v, z) ∈ Λ (which already forces z < 1); on that domain
/// in_d(v, z, t) ⟺ |t| < t_max(v, z).
pub fn t_max_scalar(v: f64, z: f64) -> Result<f64> {
    if !in_lambda_scalar(v, z) || z >= 1.0 {
        return Err(CrownError::InvalidParameter(format!(
            "t_max requires ½v² + z < 1 and z < 1, got v = {v}, z = {z}"
        )));
    }
    let arg = 1.0 - v * v / (2.0 * (1.0 - z));
    Ok(2.0 * arg.max(0.0).sqrt().atan())
}

/// Residual of the boundary-hypersurface equation
/// cos t (1 − ½v² − z) = ¼(1 − cos t) v².
pub fn boundary_residual(v: f64, z: f64, t: f64) -> f64 {
    d_margin_scalar(v, z, t)
}

/// Why a point is, or is not, in the crown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrownMembership {
    Inside,
    /// The mixed-model linear system was singular.
    DecompositionDegenerate,
    /// Decomposition succeeded but (Y, t_i) ∉ 𝒟.
    OutsideD,
}

impl CrownMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, CrownMembership::Inside)
    }
}

/// Crown-domain queries for a fixed solvable group.
#[derive(Debug, Clone, Copy)]
pub struct CrownSpec<'g> {
    group: &'g SolvGroup,
}

impl<'g> CrownSpec<'g> {
    pub fn new(group: &'g SolvGroup) -> Self {
        Self { group }
    }

    pub fn group(&self) -> &SolvGroup {
        self.group
    }

    pub fn in_omega(&self, t: f64) -> bool {
        in_omega(t)
    }

    /// ½|V|² + |Z| < 1.
    pub fn in_lambda(&self, v: &DVector<f64>, z: &DVector<f64>) -> bool {
        in_lambda_scalar(v.norm(), z.norm())
    }

    /// (V, Z, t) ∈ 𝒟.
    pub fn in_d(&self, v: &DVector<f64>, z: &DVector<f64>, t: f64) -> bool {
        in_d_scalar(v.norm(), z.norm(), t)
    }

    pub fn t_max(&self, v: &DVector<f64>, z: &DVector<f64>) -> Result<f64> {
        t_max_scalar(v.norm(), z.norm())
    }

    /// Membership of z ∈ S_ℂ in Cr(S) = N·A·D, with the failure reason.
    pub fn membership(&self, z: &ComplexGroupPoint) -> CrownMembership {
        match self.group.mixed_decompose(z) {
            Err(CrownError::DegenerateDecomposition { .. }) => {
                CrownMembership::DecompositionDegenerate
            }
            Err(_) => CrownMembership::OutsideD,
            Ok(coords) => {
                if in_d_scalar(coords.y_v.norm(), coords.y_z.norm(), coords.t_i) {
                    CrownMembership::Inside
                } else {
                    CrownMembership::OutsideD
                }
            }
        }
    }

    pub fn contains(&self, z: &ComplexGroupPoint) -> bool {
        self.membership(z).is_inside()
    }
}

impl SolvGroup {
    /// Crown-domain view of this group.
    pub fn crown(&self) -> CrownSpec<'_> {
        CrownSpec::new(self)
    }
}

/// Parametric mesh of the boundary hypersurface over the scalar coordinates
/// (|V|, |Z|, t), covering both sheets t = ±t_max in a single
/// `resolution × resolution` grid.
#[derive(Debug, Clone)]
pub struct BoundaryMesh {
    /// Rows of (|V|, |Z|, t), grid-major: index = i·resolution + j.
    pub vertices: Vec<[f64; 3]>,
    /// Quad faces over the parameter grid (counterclockwise).
    pub faces: Vec<[usize; 4]>,
    pub resolution: usize,
}

/// Meshes the surface cos t (1 − ½v² − z) = ¼(1 − cos t)v², parametrized by
/// α ∈ [−π/2, π/2] (v = √(2(1−z)) cos α, t = 2 arctan sin α) and z ∈ [0, 1].
pub fn boundary_mesh(resolution: usize) -> Result<BoundaryMesh> {
    if resolution < 2 {
        return Err(CrownError::InvalidParameter(format!(
            "mesh resolution must be >= 2, got {resolution}"
        )));
    }
    let n = resolution;
    let mut vertices = Vec::with_capacity(n * n);
    for i in 0..n {
        let alpha = -std::f64::consts::FRAC_PI_2
            + std::f64::consts::PI * i as f64 / (n - 1) as f64;
        let (s, c) = alpha.sin_cos();
        let t = 2.0 * s.atan();
        for j in 0..n {
            let z = j as f64 / (n - 1) as f64;
            let v = (2.0 * (1.0 - z)).sqrt() * c;
            vertices.push([v, z, t]);
        }
    }
    let mut faces = Vec::with_capacity((n - 1) * (n - 1));
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            faces.push([i * n + j, (i + 1) * n + j, (i + 1) * n + j + 1, i * n + j + 1]);
        }
    }
    Ok(BoundaryMesh {
        vertices,
        faces,
        resolution: n,
    })
}

impl BoundaryMesh {
    /// Largest residual of the defining equation over all vertices.
    pub fn max_residual(&self) -> f64 {
        self.vertices
            .iter()
            .map(|&[v, z, t]| boundary_residual(v, z, t).abs())
            .fold(0.0, f64::max)
    }

    /// (max |V|, max |Z|, max |t|) over the vertices.
    pub fn extents(&self) -> (f64, f64, f64) {
        let mut e = (0.0f64, 0.0f64, 0.0f64);
        for &[v, z, t] in &self.vertices {
            e.0 = e.0.max(v.abs());
            e.1 = e.1.max(z.abs());
            e.2 = e.2.max(t.abs());
        }
        e
    }

    /// CSV export: header `absV,absZ,t`, one vertex per row, faces implicit
    /// by the grid. Full round-trip float precision.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "absV,absZ,t")?;
        for &[v, z, t] in &self.vertices {
            writeln!(out, "{v:?},{z:?},{t:?}")?;
        }
        Ok(())
    }

    /// Wavefront OBJ export with v/f records (quads; 1-based indices).
    pub fn write_obj<W: Write>(&self, mut out: W) -> Result<()> {
        for &[v, z, t] in &self.vertices {
            writeln!(out, "v {v:?} {z:?} {t:?}")?;
        }
        for f in &self.faces {
            writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
        }
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    pub fn save_obj(&self, path: &Path) -> Result<()> {
        self.write_obj(std::fs::File::create(path)?)
    }
}

/// Flood fill of { |t| < π/2 } ∩ { d_margin > 0 } on a res³ grid of cell
/// centers over [0, √2] × [0, 1] × [−π/2, π/2]. Returns
/// (cells inside, cells reachable from the cell nearest the origin).
pub fn flood_fill_component(res: usize) -> (usize, usize) {
    let vmax = std::f64::consts::SQRT_2;
    let zmax = 1.0;
    let tspan = std::f64::consts::PI;
    let center = |i: usize, j: usize, k: usize| -> (f64, f64, f64) {
        (
            (i as f64 + 0.5) * vmax / res as f64,
            (j as f64 + 0.5) * zmax / res as f64,
            -tspan / 2.0 + (k as f64 + 0.5) * tspan / res as f64,
        )
    };
    let idx = |i: usize, j: usize, k: usize| (i * res + j) * res + k;
    let mut inside = vec![false; res * res * res];
    let mut n_inside = 0;
    for i in 0..res {
        for j in 0..res {
            for k in 0..res {
                let (v, z, t) = center(i, j, k);
                if in_d_scalar(v, z, t) {
                    inside[idx(i, j, k)] = true;
                    n_inside += 1;
                }
            }
        }
    }
    // Seed at the cell whose center is nearest (0, 0, 0).
    let seed = (0usize, 0usize, res / 2);
    if !inside[idx(seed.0, seed.1, seed.2)] {
        return (n_inside, 0);
    }
    let mut seen = vec![false; res * res * res];
    let mut queue = std::collections::VecDeque::new();
    seen[idx(seed.0, seed.1, seed.2)] = true;
    queue.push_back(seed);
    let mut reached = 0;
    while let Some((i, j, k)) = queue.pop_front() {
        reached += 1;
        let mut push = |i: usize, j: usize, k: usize| {
            let id = idx(i, j, k);
            if inside[id] && !seen[id] {
                seen[id] = true;
                queue.push_back((i, j, k));
            }
        };
        if i > 0 {
            push(i - 1, j, k);
        }
        if i + 1 < res {
            push(i + 1, j, k);
        }
        if j > 0 {
            push(i, j - 1, k);
        }
        if j + 1 < res {
            push(i, j + 1, k);
        }
        if k > 0 {
            push(i, j, k - 1);
        }
        if k + 1 < res {
            push(i, j, k + 1);
        }
    }
    (n_inside, reached)
}

/// The projection S → S₁ induced by 𝔫₁ = 𝔫 / 𝔷₁^⊥ for a unit Z₁ ∈ 𝔷.
#[derive(Debug, Clone)]
pub struct HeisenbergReduction {
    z1: DVector<f64>,
}

impl HeisenbergReduction {
    pub fn z1(&self) -> &DVector<f64> {
        &self.z1
    }

    /// (V, Z, t) ↦ (V, ⟨Z₁, Z⟩, t).
    pub fn project_point(&self, x: &GroupPoint) -> GroupPoint {
        GroupPoint::new(
            x.v.clone(),
            DVector::from_vec(vec![self.z1.dot(&x.z)]),
            x.t,
        )
    }

    /// Complex-linear extension with the same ζ.
    pub fn project_complex(&self, x: &ComplexGroupPoint) -> ComplexGroupPoint {
        let mut zc = Complex64::new(0.0, 0.0);
        for (a, w) in self.z1.iter().zip(x.w_z.iter()) {
            zc += a * w;
        }
        ComplexGroupPoint::new(x.w_v.clone(), DVector::from_vec(vec![zc]), x.zeta)
    }

    /// Zero-padding section S₁ → S: the 𝔷₁^⊥ components are set to zero.
    pub fn lift_point(&self, x: &GroupPoint) -> GroupPoint {
        GroupPoint::new(x.v.clone(), &self.z1 * x.z[0], x.t)
    }

    pub fn lift_complex(&self, x: &ComplexGroupPoint) -> ComplexGroupPoint {
        ComplexGroupPoint::new(x.w_v.clone(), self.z1.map(|a| a * x.w_z[0]), x.zeta)
    }
}

/// Quotients 𝔫 by 𝔷₁^⊥ for a unit Z₁, producing the Heisenberg-based group
/// S₁ of dimension p + 2 (its single J-map is J_{Z₁}) and the projection
/// homomorphism.
pub fn reduce(g: &SolvGroup, z1: &DVector<f64>) -> Result<(SolvGroup, HeisenbergReduction)> {
    if z1.len() != g.q() {
        return Err(CrownError::DimensionMismatch {
            expected: g.q(),
            got: z1.len(),
            context: "reduce: Z1 must lie in the center",
        });
    }
    let norm = z1.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(CrownError::InvalidParameter(format!(
            "reduce requires |Z1| = 1, got {norm}"
        )));
    }
    let unit = z1 / norm;
    let j1 = g.algebra().rep().j_matrix(&unit)?;
    let rep = CliffordRep::from_generators(vec![j1])?;
    let g1 = SolvGroup::new(HTypeAlgebra::new(rep));
    Ok((g1, HeisenbergReduction { z1: unit }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_vector, rng, unit_vector};
    use rand::Rng;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn omega_is_the_open_interval() {
        assert!(in_omega(0.0));
        assert!(!in_omega(FRAC_PI_2));
        assert!(!in_omega(-FRAC_PI_2));
        assert!(in_omega(-1.5));
        assert!(in_omega(FRAC_PI_2 - 1e-12));
    }

    #[test]
    fn lambda_examples() {
        assert!(in_lambda_scalar(0.0, 0.0));
        assert!(!in_lambda_scalar(SQRT_2, 0.0));
        assert!(in_lambda_scalar(1.0, 0.4));
        assert!(!in_lambda_scalar(1.0, 0.5));
    }

    #[test]
    fn d_examples_and_threshold() {
        assert!(in_d_scalar(0.0, 0.0, 0.0));
        // At |V| = 1, Z = 0 the inequality reduces to cos t > 1/3.
        let threshold = (1.0f64 / 3.0).acos();
        assert!((threshold - 1.230_959_417_340_774_7).abs() < 1e-12);
        assert!(in_d_scalar(1.0, 0.0, threshold - 1e-9));
        assert!(!in_d_scalar(1.0, 0.0, threshold + 1e-9));
        // On ∂Λ with V ≠ 0 the inequality fails strictly for every t ≠ 0.
        for t in [-1.2, -0.3, 0.4, 1.5] {
            assert!(!in_d_scalar(1.0, 0.5, t));
        }
    }

    #[test]
    fn t_max_examples() {
        assert!((t_max_scalar(0.0, 0.0).unwrap() - FRAC_PI_2).abs() < 1e-14);
        let tm = t_max_scalar(1.0, 0.0).unwrap();
        assert!((tm - (1.0f64 / 3.0).acos()).abs() < 1e-12);
        assert!((tm - 2.0 * (0.5f64).sqrt().atan()).abs() < 1e-15);
        // ½v² + z → 1⁻ forces t_max → 0.
        assert!(t_max_scalar(1.2, 1.0 - 0.5 * 1.2 * 1.2 - 1e-9).unwrap() < 1e-3);
        assert!(t_max_scalar(1.5, 0.0).is_err());
    }

    #[test]
    fn in_d_iff_t_below_t_max() {
        let mut rng = rng(3);
        for _ in 0..2000 {
            let v = rng.gen_range(0.0..SQRT_2);
            let z = rng.gen_range(0.0..1.0);
            if !in_lambda_scalar(v, z) {
                continue;
            }
            let tm = t_max_scalar(v, z).unwrap();
            let t = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
            assert_eq!(
                in_d_scalar(v, z, t),
                t.abs() < tm,
                "v={v} z={z} t={t} tm={tm}"
            );
        }
    }

    #[test]
    fn propo1_inclusions_and_projections() {
        let mut rng = rng(5);
        // 𝒟 ⊂ Λ × Ω.
        for _ in 0..2000 {
            let v = rng.gen_range(0.0..1.6);
            let z = rng.gen_range(0.0..1.1);
            let t = rng.gen_range(-1.7..1.7);
            if in_d_scalar(v, z, t) {
                assert!(in_lambda_scalar(v, z) && in_omega(t));
            }
        }
        // Every (V, Z) ∈ Λ admits some t (t = 0 works), so π_𝔫(𝒟) = Λ.
        for _ in 0..500 {
            let v = rng.gen_range(0.0..SQRT_2);
            let z = rng.gen_range(0.0..1.0);
            if in_lambda_scalar(v, z) {
                assert!(in_d_scalar(v, z, 0.0));
            }
        }
        // Every |t| < π/2 is realized at (V, Z) = 0, so π_𝔞(𝒟) = Ω.
        for _ in 0..500 {
            let t = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
            assert!(in_d_scalar(0.0, 0.0, t));
        }
    }

    #[test]
    fn d_is_star_shaped() {
        let mut rng = rng(7);
        let mut hits = 0;
        while hits < 500 {
            let v = rng.gen_range(0.0..SQRT_2);
            let z = rng.gen_range(0.0..1.0);
            let t = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
            if !in_d_scalar(v, z, t) {
                continue;
            }
            hits += 1;
            for k in 1..=10 {
                let s = k as f64 / 10.0;
                assert!(in_d_scalar(s * v, s * z, s * t));
            }
        }
    }

    #[test]
    fn crown_membership_basic_points() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let crown = g.crown();
        let mut rng = rng(11);
        for _ in 0..50 {
            let x = GroupPoint::new(
                random_vector(&mut rng, 2, 2.0),
                random_vector(&mut rng, 1, 2.0),
                rng.gen_range(-2.0..2.0),
            );
            assert!(crown.contains(&ComplexGroupPoint::from_real(&x)));
        }
        let boundary = ComplexGroupPoint::new(
            nalgebra::DVector::zeros(2),
            nalgebra::DVector::zeros(1),
            Complex64::new(0.0, FRAC_PI_2),
        );
        assert!(!crown.contains(&boundary));
        assert_eq!(
            crown.membership(&boundary),
            CrownMembership::DecompositionDegenerate
        );
        let inside = ComplexGroupPoint::new(
            nalgebra::DVector::zeros(2),
            nalgebra::DVector::zeros(1),
            Complex64::new(0.0, 1.4),
        );
        assert_eq!(crown.membership(&inside), CrownMembership::Inside);
        let outside = ComplexGroupPoint::new(
            nalgebra::DVector::zeros(2),
            nalgebra::DVector::zeros(1),
            Complex64::new(0.0, 1.6),
        );
        assert_eq!(crown.membership(&outside), CrownMembership::OutsideD);
    }

    #[test]
    fn crown_contains_composed_interior_points() {
        let g = SolvGroup::standard(3, 1).unwrap();
        let crown = g.crown();
        let mut rng = rng(13);
        let mut hits = 0;
        while hits < 200 {
            let yv = random_vector(&mut rng, 4, 1.5);
            let yz = random_vector(&mut rng, 3, 1.1);
            let t = rng.gen_range(-1.5..1.5);
            if !in_d_scalar(yv.norm(), yz.norm(), t) {
                continue;
            }
            hits += 1;
            let d_point = ComplexGroupPoint::slice_point(t, &yv, &yz);
            let n = GroupPoint::new(random_vector(&mut rng, 4, 1.0), random_vector(&mut rng, 3, 1.0), rng.gen_range(-1.0..1.0));
            let z = g
                .c_multiply(&ComplexGroupPoint::from_real(&n), &d_point)
                .unwrap();
            assert!(crown.contains(&z));
        }
    }

    #[test]
    fn mesh_structure_residual_and_extents() {
        let mesh = boundary_mesh(64).unwrap();
        assert_eq!(mesh.vertices.len(), 64 * 64);
        assert_eq!(mesh.faces.len(), 63 * 63);
        assert!(mesh.max_residual() < 1e-10);
        let (v, z, t) = mesh.extents();
        assert!(v <= SQRT_2 + 1e-12 && z <= 1.0 + 1e-12 && t <= FRAC_PI_2 + 1e-12);
        // The (0, 0) vertex sits at t = π/2: last α row, first z column.
        let top = mesh.vertices[(64 - 1) * 64];
        assert!(top[0].abs() < 1e-12 && top[1] == 0.0);
        assert!((top[2] - FRAC_PI_2).abs() < 1e-12);
        assert!(boundary_mesh(1).is_err());
    }

    #[test]
    fn mesh_exports_are_well_formed() {
        let mesh = boundary_mesh(8).unwrap();
        let mut csv = Vec::new();
        mesh.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("absV,absZ,t"));
        assert_eq!(lines.count(), 64);
        // Round-trip precision: parse a row back.
        let row: Vec<f64> = text
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(row.len(), 3);
        assert_eq!(row[0], mesh.vertices[0][0]);

        let mut obj = Vec::new();
        mesh.write_obj(&mut obj).unwrap();
        let text = String::from_utf8(obj).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 64);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 49);
    }

    #[test]
    fn flood_fill_finds_one_component() {
        let (inside, reached) = flood_fill_component(32);
        assert!(inside > 0);
        assert_eq!(inside, reached);
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let g = SolvGroup::standard(3, 1).unwrap();
        let mut rng = rng(17);
        let z1 = unit_vector(&mut rng, 3);
        let (g1, proj) = reduce(&g, &z1).unwrap();
        assert_eq!(g1.q(), 1);
        assert_eq!(g1.p(), g.p());
        for _ in 0..200 {
            let x = GroupPoint::new(
                random_vector(&mut rng, 4, 1.5),
                random_vector(&mut rng, 3, 1.5),
                rng.gen_range(-1.0..1.0),
            );
            let y = GroupPoint::new(
                random_vector(&mut rng, 4, 1.5),
                random_vector(&mut rng, 3, 1.5),
                rng.gen_range(-1.0..1.0),
            );
            let lhs = proj.project_point(&g.s_multiply(&x, &y).unwrap());
            let rhs = g1
                .s_multiply(&proj.project_point(&x), &proj.project_point(&y))
                .unwrap();
            assert!((&lhs.v - &rhs.v).abs().max() < 1e-12);
            assert!((&lhs.z - &rhs.z).abs().max() < 1e-12);
            assert!((lhs.t - rhs.t).abs() < 1e-12);
        }
    }

    #[test]
    fn reduction_with_q1_is_identity() {
        let g = SolvGroup::standard(1, 1).unwrap();
        let z1 = DVector::from_vec(vec![1.0]);
        let (g1, proj) = reduce(&g, &z1).unwrap();
        assert_eq!(g1.algebra().rep(), g.algebra().rep());
        let x = GroupPoint::new(
            DVector::from_vec(vec![0.3, 0.7]),
            DVector::from_vec(vec![-0.2]),
            0.5,
        );
        assert_eq!(proj.project_point(&x), x);
    }

    #[test]
    fn reduction_preserves_crown_membership() {
        let g = SolvGroup::standard(3, 1).unwrap();
        let crown = g.crown();
        let mut rng = rng(19);
        let z1 = unit_vector(&mut rng, 3);
        let (g1, proj) = reduce(&g, &z1).unwrap();
        let crown1 = g1.crown();
        let mut hits = 0;
        while hits < 300 {
            let yv = random_vector(&mut rng, 4, 1.5);
            let yz = random_vector(&mut rng, 3, 1.1);
            let t = rng.gen_range(-1.5..1.5);
            let z = ComplexGroupPoint::slice_point(t, &yv, &yz);
            if !crown.contains(&z) {
                continue;
            }
            hits += 1;
            assert!(crown1.contains(&proj.project_complex(&z)));
        }
    }

    #[test]
    fn reduction_is_onto_the_reduced_crown() {
        // Members of Cr(S₁) lift to Cr(S) by zero-padding the 𝔷₁^⊥ part.
        let g = SolvGroup::standard(3, 1).unwrap();
        let crown = g.crown();
        let mut rng = rng(23);
        let z1 = unit_vector(&mut rng, 3);
        let (g1, proj) = reduce(&g, &z1).unwrap();
        let crown1 = g1.crown();
        let mut hits = 0;
        while hits < 300 {
            let yv = random_vector(&mut rng, 4, 1.5);
            let yz = random_vector(&mut rng, 1, 1.1);
            let t = rng.gen_range(-1.5..1.5);
            let z = ComplexGroupPoint::slice_point(t, &yv, &yz);
            if !crown1.contains(&z) {
                continue;
            }
            hits += 1;
            let lifted = proj.lift_complex(&z);
            assert!(crown.contains(&lifted));
            assert!(proj.project_complex(&lifted).distance(&z) < 1e-12);
        }
    }

    #[test]
    fn reduce_rejects_non_unit_z1() {
        let g = SolvGroup::standard(2, 1).unwrap();
        assert!(reduce(&g, &DVector::from_vec(vec![1.0, 1.0])).is_err());
        assert!(reduce(&g, &DVector::from_vec(vec![1.0])).is_err());
    }
}
