//! Configuration and commands behind the `hcrown` binary.
//!
//! Exit codes: 0 success, 1 property failure, 2 configuration error,
//! 3 I/O error. Runs are deterministic for a fixed seed.
//!
//! Configuration is flat `key=value` text (`#` comments allowed); every key
//! can be overridden by a flag:
//!
//! ```text
//! q=1            --q
//! mult=1         --mult
//! seed=7         --seed
//! tol_group=...  --tol-group      group-law residuals
//! tol_decomp=... --tol-decomp     mixed-decomposition round trips
//! tol_ellip=...  --tol-ellip      interior ellipticity margins
//! tol_eigen=...  --tol-eigen      eigenfunction identities
//! tol_geodesic=. --tol-geodesic   symmetry involution residuals
//! out=path       --out
//! ```

use std::io::Write;
use std::path::{Path, PathBuf};

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use crate::analysis::{
    adjoint, boundary_probe, ellipticity_margin_with, expected_eigenvalue, poisson_kernel,
    write_probe_csv, MarginOptions, SpectralParam,
};
use crate::complexify::ComplexGroupPoint;
use crate::crown::{
    boundary_mesh, flood_fill_component, in_d_scalar, reduce, t_max_scalar,
};
use crate::error::{CrownError, Result};
use crate::rank_one;
use crate::sampling::{random_vector, rng, unit_vector};
use crate::solvable::{GroupPoint, SolvGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_CONFIG_ERROR: i32 = 2;
pub const EXIT_IO_ERROR: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub group_law: f64,
    pub decomposition: f64,
    pub ellipticity: f64,
    pub eigenfunction: f64,
    pub geodesic: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            group_law: 1e-12,
            decomposition: 1e-10,
            ellipticity: 1e-6,
            eigenfunction: 1e-6,
            geodesic: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub q: i64,
    pub multiplicity: i64,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            q: 1,
            multiplicity: 1,
            seed: 7,
            tolerances: Tolerances::default(),
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q < 1 {
            return Err(CrownError::InvalidParameter("q must be ≥ 1".into()));
        }
        if self.multiplicity < 1 {
            return Err(CrownError::InvalidParameter(
                "multiplicity must be ≥ 1".into(),
            ));
        }
        let t = &self.tolerances;
        for (name, value) in [
            ("tol_group", t.group_law),
            ("tol_decomp", t.decomposition),
            ("tol_ellip", t.ellipticity),
            ("tol_eigen", t.eigenfunction),
            ("tol_geodesic", t.geodesic),
        ] {
            if !(value > 0.0) {
                return Err(CrownError::InvalidParameter(format!(
                    "{name} must be > 0, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Applies one `key=value` assignment (from a config file or a flag).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| CrownError::InvalidParameter(format!("invalid {what}: {value}"));
        match key {
            "q" => self.q = value.parse().map_err(|_| bad("q"))?,
            "mult" => self.multiplicity = value.parse().map_err(|_| bad("mult"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "tol_group" => self.tolerances.group_law = value.parse().map_err(|_| bad(key))?,
            "tol_decomp" => self.tolerances.decomposition = value.parse().map_err(|_| bad(key))?,
            "tol_ellip" => self.tolerances.ellipticity = value.parse().map_err(|_| bad(key))?,
            "tol_eigen" => self.tolerances.eigenfunction = value.parse().map_err(|_| bad(key))?,
            "tol_geodesic" => self.tolerances.geodesic = value.parse().map_err(|_| bad(key))?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => {
                return Err(CrownError::InvalidParameter(format!(
                    "unknown configuration key: {other}"
                )))
            }
        }
        Ok(())
    }

    /// Parses a flat key=value configuration file.
    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CrownError::InvalidParameter(format!(
                    "config line {} is not key=value: {line}",
                    lineno + 1
                ))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn group(&self) -> Result<SolvGroup> {
        self.validate()?;
        SolvGroup::standard(self.q, self.multiplicity)
    }
}

/// Result of one verification property.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: bool,
    pub worst_residual: f64,
    pub detail: String,
}

impl PropertyReport {
    fn from_residual(name: &'static str, worst: f64, tol: f64) -> Self {
        Self {
            name,
            passed: worst <= tol,
            worst_residual: worst,
            detail: format!("tolerance {tol:.1e}"),
        }
    }

    fn from_flag(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            worst_residual: f64::NAN,
            detail,
        }
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// Runs every module's invariant suite at desk scale. Returns the reports;
/// the command wrapper turns them into an exit code.
pub fn verify_all(config: &RunConfig) -> Result<Vec<PropertyReport>> {
    config.validate()?;
    let tol = &config.tolerances;
    let g = config.group()?;
    let mut reports = Vec::new();
    let mut rng = rng(config.seed);

    // Clifford identities on the configured group plus a standard spread.
    {
        let mut worst = 0.0f64;
        for (q, m) in [
            (config.q, config.multiplicity),
            (1, 1),
            (2, 1),
            (3, 1),
        ] {
            let rep = crate::clifford::build_clifford_rep(q, m)?;
            for _ in 0..100 {
                let z = random_vector(&mut rng, rep.q(), 1.5);
                let v = random_vector(&mut rng, rep.p(), 1.5);
                let jv = rep.j_map(&z, &v)?;
                let jjv = rep.j_map(&z, &jv)?;
                worst = worst.max((&jjv + &v * z.norm_squared()).abs().max());
                worst = worst.max(jv.dot(&v).abs());
                worst = worst.max((jv.norm() - z.norm() * v.norm()).abs());
            }
        }
        reports.push(PropertyReport::from_residual(
            "clifford.j_map_identities",
            worst,
            tol.group_law,
        ));
    }

    // H-type bracket duality and nilpotent group law.
    {
        let alg = g.algebra();
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let z = random_vector(&mut rng, g.q(), 1.5);
            let v = random_vector(&mut rng, g.p(), 1.5);
            let w = random_vector(&mut rng, g.p(), 1.5);
            let lhs = alg.rep().j_map(&z, &v)?.dot(&w);
            let rhs = z.dot(&alg.bracket(&v, &w)?);
            worst = worst.max((lhs - rhs).abs());
        }
        reports.push(PropertyReport::from_residual(
            "htype.bracket_duality",
            worst,
            tol.group_law,
        ));
        reports.push(PropertyReport::from_flag(
            "htype.bracket_surjective",
            alg.bracket_is_surjective(),
            "rank of basis brackets equals q".into(),
        ));
    }

    // Solvable group law: associativity, dilation, inverses.
    {
        let mut worst = 0.0f64;
        for _ in 0..300 {
            let x = random_group_point(&mut rng, &g, 1.5);
            let y = random_group_point(&mut rng, &g, 1.5);
            let z = random_group_point(&mut rng, &g, 1.5);
            let a = g.s_multiply(&g.s_multiply(&x, &y)?, &z)?;
            let b = g.s_multiply(&x, &g.s_multiply(&y, &z)?)?;
            worst = worst.max(group_point_distance(&a, &b));
            let e = g.s_multiply(&x, &g.s_inverse(&x))?;
            worst = worst.max(group_point_distance(&e, &g.identity()));
            let t: f64 = rng.gen_range(-1.5..1.5);
            let n = GroupPoint::new(x.v.clone(), x.z.clone(), 0.0);
            let conj = g.s_multiply(
                &g.s_multiply(&GroupPoint::a(g.p(), g.q(), t), &n)?,
                &GroupPoint::a(g.p(), g.q(), -t),
            )?;
            let expected = GroupPoint::new(&n.v * (t / 2.0).exp(), &n.z * t.exp(), 0.0);
            worst = worst.max(group_point_distance(&conj, &expected));
        }
        reports.push(PropertyReport::from_residual(
            "solvable.group_law",
            worst,
            tol.group_law,
        ));
    }

    // Complexified group law and the mixed-model round trip.
    {
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let x = random_complex_point(&mut rng, &g, 1.0);
            let y = random_complex_point(&mut rng, &g, 1.0);
            let z = random_complex_point(&mut rng, &g, 1.0);
            let a = g.c_multiply(&g.c_multiply(&x, &y)?, &z)?;
            let b = g.c_multiply(&x, &g.c_multiply(&y, &z)?)?;
            worst = worst.max(a.distance(&b));
        }
        reports.push(PropertyReport::from_residual(
            "complexify.associativity",
            worst,
            tol.group_law,
        ));

        let cap = std::f64::consts::FRAC_PI_2 - 0.05;
        let mut worst = 0.0f64;
        for _ in 0..300 {
            let coords = crate::complexify::CrownCoords {
                u_v: random_vector(&mut rng, g.p(), 1.0),
                u_z: random_vector(&mut rng, g.q(), 1.0),
                t_r: rng.gen_range(-1.0..1.0),
                t_i: rng.gen_range(-cap..cap),
                y_v: random_vector(&mut rng, g.p(), 1.0),
                y_z: random_vector(&mut rng, g.q(), 1.0),
            };
            let z = g.mixed_compose(&coords)?;
            let back = g.mixed_decompose(&z)?;
            worst = worst.max(back.distance(&coords));
            worst = worst.max(g.mixed_compose(&back)?.distance(&z));
        }
        let degenerate = ComplexGroupPoint::new(
            DVector::zeros(g.p()),
            DVector::zeros(g.q()),
            Complex64::new(0.0, std::f64::consts::PI),
        );
        let degenerate_ok = matches!(
            g.mixed_decompose(&degenerate),
            Err(CrownError::DegenerateDecomposition { .. })
        );
        reports.push(PropertyReport::from_residual(
            "complexify.mixed_round_trip",
            worst,
            tol.decomposition,
        ));
        reports.push(PropertyReport::from_flag(
            "complexify.degenerate_detection",
            degenerate_ok,
            "t_i = π raises the degenerate-system error".into(),
        ));
    }

    // Crown sets: t_max equivalence, inclusions, star shape, connectivity.
    {
        let mut ok = true;
        for _ in 0..2000 {
            let v: f64 = rng.gen_range(0.0..std::f64::consts::SQRT_2);
            let z: f64 = rng.gen_range(0.0..1.0);
            let t: f64 = rng.gen_range(-1.6..1.6);
            if in_d_scalar(v, z, t) {
                ok &= crate::crown::in_lambda_scalar(v, z) && crate::crown::in_omega(t);
                for k in 1..=4 {
                    let s = k as f64 / 4.0;
                    ok &= in_d_scalar(s * v, s * z, s * t);
                }
            }
            if crate::crown::in_lambda_scalar(v, z) && t.abs() < std::f64::consts::FRAC_PI_2 {
                let tm = t_max_scalar(v, z)?;
                ok &= in_d_scalar(v, z, t) == (t.abs() < tm);
            }
        }
        let (inside, reached) = flood_fill_component(24);
        reports.push(PropertyReport::from_flag(
            "crown.set_geometry",
            ok,
            "inclusions, t_max equivalence, star shape".into(),
        ));
        reports.push(PropertyReport::from_flag(
            "crown.single_component",
            inside == reached && inside > 0,
            format!("flood fill 24³: {reached}/{inside} cells reached"),
        ));
    }

    // Reduction to the Heisenberg-based group.
    {
        let z1 = unit_vector(&mut rng, g.q());
        let (g1, proj) = reduce(&g, &z1)?;
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let x = random_group_point(&mut rng, &g, 1.2);
            let y = random_group_point(&mut rng, &g, 1.2);
            let lhs = proj.project_point(&g.s_multiply(&x, &y)?);
            let rhs = g1.s_multiply(&proj.project_point(&x), &proj.project_point(&y))?;
            worst = worst.max(group_point_distance(&lhs, &rhs));
        }
        let mut membership_ok = true;
        let crown = g.crown();
        let crown1 = g1.crown();
        let mut hits = 0;
        while hits < 200 {
            let yv = random_vector(&mut rng, g.p(), 1.5);
            let yz = random_vector(&mut rng, g.q(), 1.1);
            let t: f64 = rng.gen_range(-1.5..1.5);
            let z = ComplexGroupPoint::slice_point(t, &yv, &yz);
            if !crown.contains(&z) {
                continue;
            }
            hits += 1;
            membership_ok &= crown1.contains(&proj.project_complex(&z));
        }
        reports.push(PropertyReport::from_residual(
            "crown.reduction_homomorphism",
            worst,
            tol.group_law,
        ));
        reports.push(PropertyReport::from_flag(
            "crown.reduction_membership",
            membership_ok,
            "crown membership preserved under projection".into(),
        ));
    }

    // Rank-one models.
    {
        let mut ok = true;
        for _ in 0..500 {
            let x: f64 = rng.gen_range(-2.0..2.0);
            let s: f64 = rng.gen_range(-1.5..1.5);
            let t: f64 = rng.gen_range(-std::f64::consts::FRAC_PI_4..std::f64::consts::FRAC_PI_4);
            let y: f64 = rng.gen_range(-1.0..1.0);
            ok &= rank_one::sl2_in_crown(&rank_one::sl2_pair(x, s, t, y));
        }
        let mut worst = 0.0f64;
        for _ in 0..300 {
            let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.05..2.0));
            let w = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..-0.05));
            let target = (
                rank_one::ProjectivePoint::Finite(z),
                rank_one::ProjectivePoint::Finite(w),
            );
            if let Some((x, s, t, y)) = rank_one::sl2_preimage(&target) {
                let pair = rank_one::sl2_pair(x, s, t, y);
                worst = worst.max(pair.0.distance(target.0).max(pair.1.distance(target.1)));
            } else {
                ok = false;
            }
        }
        reports.push(PropertyReport::from_flag(
            "rank_one.sl2_membership",
            ok,
            "interior parameters land in the crown; preimages exist".into(),
        ));
        reports.push(PropertyReport::from_residual(
            "rank_one.sl2_preimage",
            worst,
            1e-9,
        ));

        let mut su_ok = true;
        let mut checked = 0;
        while checked < 2000 {
            let a: f64 = rng.gen_range(-0.8..0.8);
            let b: f64 = rng.gen_range(-0.6..0.6);
            let phi: f64 =
                rng.gen_range(-std::f64::consts::FRAC_PI_4..std::f64::consts::FRAC_PI_4);
            if !rank_one::su21_in_lambda(Complex64::new(a, 0.0), b) {
                continue;
            }
            let c = (2.0 * phi).cos();
            if ((1.0 - 2.0 * b.abs() - 2.0 * a * a) * c - (1.0 - c) * a * a).abs() < 1e-9 {
                continue;
            }
            checked += 1;
            if let Ok((first, second)) = rank_one::su21_point(a, b, phi) {
                let member = rank_one::in_ball(&first) && rank_one::in_ball(&second);
                su_ok &= member == rank_one::su21_condition(a, b, phi);
                let (v, z, t) = rank_one::bridge(a, b, phi);
                su_ok &= in_d_scalar(v, z, t) == rank_one::su21_condition(a, b, phi);
            } else {
                su_ok = false;
            }
        }
        reports.push(PropertyReport::from_flag(
            "rank_one.su21_equivalence_and_bridge",
            su_ok,
            format!("{checked} samples, zero disagreements required"),
        ));
    }

    // Adjoint multiplicativity.
    {
        let mut worst = 0.0f64;
        for _ in 0..60 {
            let x = random_complex_point(&mut rng, &g, 0.8);
            let y = random_complex_point(&mut rng, &g, 0.8);
            let xy = g.c_multiply(&x, &y)?;
            let lhs = adjoint(&g, &xy)?;
            let rhs = adjoint(&g, &x)?.compose(&adjoint(&g, &y)?);
            worst = worst.max(lhs.distance(&rhs));
            if let Some(inv) = adjoint(&g, &x)?.try_inverse() {
                worst = worst.max(adjoint(&g, &g.c_inverse(&x))?.distance(&inv));
            }
        }
        reports.push(PropertyReport::from_residual(
            "analysis.adjoint_multiplicative",
            worst,
            1e-10,
        ));
    }

    // Ellipticity margins: positive inside 0.8·𝒟, tiny at the boundary.
    {
        let opts = MarginOptions {
            random_restarts: 16,
            iterations: 200,
            seed: config.seed,
        };
        let mut min_interior = f64::INFINITY;
        for row in scan_rows(&g, 0.8, 5, &opts)? {
            if row.member {
                min_interior = min_interior.min(row.margin);
            }
        }
        reports.push(PropertyReport::from_flag(
            "analysis.ellipticity_interior",
            min_interior > tol.ellipticity,
            format!("min margin {min_interior:.3e} on 0.8·D grid"),
        ));
        let mut max_boundary = 0.0f64;
        for (v, z) in [(0.0, 0.0), (0.9, 0.2), (1.1, 0.1), (0.4, 0.6)] {
            let t = t_max_scalar(v, z)?;
            let yv = scaled_direction(g.p(), v);
            let yz = scaled_direction(g.q(), z);
            let point = ComplexGroupPoint::slice_point(t, &yv, &yz);
            max_boundary = max_boundary.max(ellipticity_margin_with(&g, &point, &opts)?);
        }
        reports.push(PropertyReport::from_flag(
            "analysis.ellipticity_boundary",
            max_boundary < 1e-4,
            format!("max boundary margin {max_boundary:.3e}"),
        ));
    }

    // Eigenfunction identities for a^λ.
    {
        let mut worst = 0.0f64;
        for c in [
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0 * g.rho(), 0.0),
            Complex64::new(0.5, 0.7),
        ] {
            let lambda = SpectralParam::new(c);
            let mu = expected_eigenvalue(&g, lambda);
            for _ in 0..10 {
                let x = random_group_point(&mut rng, &g, 1.0);
                let f = |p: &GroupPoint| g.a_lambda_real(p, lambda);
                let lap = g.apply_laplacian_complex(&f, &x, 1e-3)?;
                let denom = f(&x).norm() * mu.norm().max(1.0);
                worst = worst.max((lap - mu * f(&x)).norm() / denom);
            }
        }
        reports.push(PropertyReport::from_residual(
            "analysis.a_lambda_eigenfunction",
            worst,
            tol.eigenfunction,
        ));
    }

    // Geodesic symmetry: involution, A-line reversal, Poisson identity.
    {
        let mut worst = 0.0f64;
        for t in [-1.0, 0.6] {
            let sigma =
                crate::analysis::geodesic_symmetry(&g, &GroupPoint::a(g.p(), g.q(), t))?;
            worst = worst.max(group_point_distance(&sigma, &GroupPoint::a(g.p(), g.q(), -t)));
        }
        for _ in 0..5 {
            let x = random_group_point(&mut rng, &g, 0.7);
            let sigma = crate::analysis::geodesic_symmetry(&g, &x)?;
            let back = crate::analysis::geodesic_symmetry(&g, &sigma)?;
            worst = worst.max(group_point_distance(&back, &x));
        }
        reports.push(PropertyReport::from_residual(
            "analysis.geodesic_symmetry",
            worst,
            tol.geodesic,
        ));

        if g.p() == 2 && g.q() == 1 {
            let mut worst = 0.0f64;
            for _ in 0..5 {
                let x = random_group_point(&mut rng, &g, 0.6);
                let sigma = crate::analysis::geodesic_symmetry(&g, &x)?;
                let oracle = rank_one::ball_symmetry_oracle(&x)?;
                worst = worst.max(group_point_distance(&sigma, &oracle));
            }
            reports.push(PropertyReport::from_residual(
                "analysis.symmetry_ball_oracle",
                worst,
                1e-5,
            ));
        }

        let lambda = SpectralParam::new(Complex64::new(0.8, 0.2));
        let mu = expected_eigenvalue(&g, lambda);
        let mut worst = 0.0f64;
        for _ in 0..2 {
            let x = random_group_point(&mut rng, &g, 0.5);
            let f = |p: &GroupPoint| poisson_kernel(&g, p, lambda).unwrap();
            let lap = g.apply_laplacian_complex(&f, &x, 1e-3)?;
            let denom = f(&x).norm() * mu.norm().max(1.0);
            worst = worst.max((lap - mu * f(&x)).norm() / denom);
        }
        reports.push(PropertyReport::from_residual(
            "analysis.poisson_eigenfunction",
            worst,
            1e-4,
        ));
    }

    Ok(reports)
}

fn scaled_direction(dim: usize, norm: f64) -> DVector<f64> {
    let mut v = DVector::zeros(dim);
    if dim > 0 {
        v[0] = norm;
    }
    v
}

fn random_group_point(rng: &mut impl Rng, g: &SolvGroup, scale: f64) -> GroupPoint {
    GroupPoint::new(
        random_vector(rng, g.p(), scale),
        random_vector(rng, g.q(), scale),
        rng.gen_range(-scale..scale),
    )
}

fn random_complex_point(rng: &mut impl Rng, g: &SolvGroup, scale: f64) -> ComplexGroupPoint {
    ComplexGroupPoint::new(
        crate::sampling::random_complex_vector(rng, g.p(), scale),
        crate::sampling::random_complex_vector(rng, g.q(), scale),
        crate::sampling::random_complex(rng, scale),
    )
}

fn group_point_distance(a: &GroupPoint, b: &GroupPoint) -> f64 {
    (&a.v - &b.v)
        .abs()
        .max()
        .max((&a.z - &b.z).abs().max())
        .max((a.t - b.t).abs())
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

/// One grid sample of a margin scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub abs_v: f64,
    pub abs_z: f64,
    pub t: f64,
    pub margin: f64,
    pub member: bool,
}

/// Grid over scale·𝒟 in the scalar coordinates (|V|, |Z|, t), parametrized
/// by (u, ζ, τ) ∈ [0,1]³ with |V| = u·√(2(1−|Z|)), t = τ·t_max. τ = 1 with
/// scale = 1 lands exactly on the boundary surface.
pub fn scan_rows(
    g: &SolvGroup,
    scale: f64,
    res: usize,
    opts: &MarginOptions,
) -> Result<Vec<ScanRow>> {
    if !(scale > 0.0) || scale > 1.0 {
        return Err(CrownError::InvalidParameter(format!(
            "scan scale must lie in (0, 1], got {scale}"
        )));
    }
    let mut rows = Vec::new();
    if res == 0 {
        return Ok(rows);
    }
    let steps = |i: usize| {
        if res == 1 {
            0.0
        } else {
            i as f64 / (res - 1) as f64
        }
    };
    for i in 0..res {
        let u = steps(i);
        for j in 0..res {
            let zeta = steps(j) * 0.999;
            for k in 0..res {
                let tau = steps(k);
                let z0 = zeta;
                let v0 = u * (2.0 * (1.0 - z0)).sqrt();
                let t0 = tau * t_max_scalar(v0.min((2.0 * (1.0 - z0)).sqrt() - 1e-12), z0)?;
                let (v, z, t) = (scale * v0, scale * z0, scale * t0);
                let yv = scaled_direction(g.p(), v);
                let yz = scaled_direction(g.q(), z);
                let point = ComplexGroupPoint::slice_point(t, &yv, &yz);
                let margin = ellipticity_margin_with(g, &point, opts)?;
                rows.push(ScanRow {
                    abs_v: v,
                    abs_z: z,
                    t,
                    margin,
                    member: in_d_scalar(v, z, t),
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], mut out: W) -> Result<()> {
    writeln!(out, "absV,absZ,t,margin,member")?;
    for r in rows {
        writeln!(
            out,
            "{:?},{:?},{:?},{:?},{}",
            r.abs_v, r.abs_z, r.t, r.margin, r.member
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// command wrappers and argument parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Verify,
    Mesh {
        resolution: usize,
    },
    Scan {
        res: usize,
        scale: f64,
    },
    Probe {
        v: f64,
        z: f64,
        t: f64,
        steps: usize,
        s_max: f64,
    },
}

/// Parses command-line arguments (without the program name).
pub fn parse_args(args: &[String]) -> std::result::Result<(Command, RunConfig), String> {
    if args.is_empty() {
        return Err(USAGE.to_string());
    }
    let mut config = RunConfig::default();
    let mut resolution = 64usize;
    let mut res = 8usize;
    let mut scale = 0.9f64;
    let mut v = 0.0f64;
    let mut z = 0.0f64;
    let mut t = 1.0f64;
    let mut steps = 50usize;
    let mut s_max = 1.1f64;

    let command = args[0].as_str();
    let mut i = 1;
    // First pass: --config, applied before flag overrides.
    let mut rest: Vec<(String, String)> = Vec::new();
    while i < args.len() {
        let flag = &args[i];
        let value = args
            .get(i + 1)
            .ok_or_else(|| format!("flag {flag} needs a value"))?
            .clone();
        if flag == "--config" {
            config
                .load_file(Path::new(&value))
                .map_err(|e| e.to_string())?;
        } else {
            rest.push((flag.clone(), value));
        }
        i += 2;
    }
    for (flag, value) in rest {
        let parse_f64 =
            |v: &str| -> std::result::Result<f64, String> { v.parse().map_err(|_| format!("invalid number: {v}")) };
        let parse_usize = |v: &str| -> std::result::Result<usize, String> {
            v.parse().map_err(|_| format!("invalid count: {v}"))
        };
        match flag.as_str() {
            "--q" => config.set("q", &value).map_err(|e| e.to_string())?,
            "--mult" => config.set("mult", &value).map_err(|e| e.to_string())?,
            "--seed" => config.set("seed", &value).map_err(|e| e.to_string())?,
            "--tol-group" => config.set("tol_group", &value).map_err(|e| e.to_string())?,
            "--tol-decomp" => config.set("tol_decomp", &value).map_err(|e| e.to_string())?,
            "--tol-ellip" => config.set("tol_ellip", &value).map_err(|e| e.to_string())?,
            "--tol-eigen" => config.set("tol_eigen", &value).map_err(|e| e.to_string())?,
            "--tol-geodesic" => config
                .set("tol_geodesic", &value)
                .map_err(|e| e.to_string())?,
            "--out" => config.set("out", &value).map_err(|e| e.to_string())?,
            "--resolution" => resolution = parse_usize(&value)?,
            "--res" => res = parse_usize(&value)?,
            "--scale" => scale = parse_f64(&value)?,
            "--v" => v = parse_f64(&value)?,
            "--z" => z = parse_f64(&value)?,
            "--t" => t = parse_f64(&value)?,
            "--steps" => steps = parse_usize(&value)?,
            "--smax" => s_max = parse_f64(&value)?,
            other => return Err(format!("unknown flag: {other}\n{USAGE}")),
        }
    }
    let command = match command {
        "verify" => Command::Verify,
        "mesh" => Command::Mesh { resolution },
        "scan" => Command::Scan { res, scale },
        "probe" => Command::Probe {
            v,
            z,
            t,
            steps,
            s_max,
        },
        other => return Err(format!("unknown command: {other}\n{USAGE}")),
    };
    Ok((command, config))
}

pub const USAGE: &str = "usage: hcrown <command> [flags]

commands:
  verify    run every module's invariant suite (exit 0 iff all pass)
  mesh      export the crown boundary surface (--resolution N, --out base.csv)
  scan      ellipticity margins over scale·D (--res N, --scale X, --out path)
  probe     ray probe toward the boundary (--v --z --t --steps --smax, --out path)

common flags: --config file, --q N, --mult N, --seed N,
  --tol-group --tol-decomp --tol-ellip --tol-eigen --tol-geodesic, --out path";

/// Entry point used by the binary; returns the process exit code.
pub fn run(command: Command, config: RunConfig) -> i32 {
    if let Err(e) = config.validate() {
        eprintln!("configuration error: {e}");
        return EXIT_CONFIG_ERROR;
    }
    match command {
        Command::Verify => cmd_verify(&config),
        Command::Mesh { resolution } => cmd_mesh(&config, resolution),
        Command::Scan { res, scale } => cmd_scan(&config, res, scale),
        Command::Probe {
            v,
            z,
            t,
            steps,
            s_max,
        } => cmd_probe(&config, v, z, t, steps, s_max),
    }
}

pub fn cmd_verify(config: &RunConfig) -> i32 {
    match verify_all(config) {
        Err(e) => {
            eprintln!("configuration error: {e}");
            EXIT_CONFIG_ERROR
        }
        Ok(reports) => {
            let mut failed = 0;
            for r in &reports {
                let residual = if r.worst_residual.is_nan() {
                    String::new()
                } else {
                    format!(" worst residual {:.3e}", r.worst_residual)
                };
                println!(
                    "{} {:<40}{} ({})",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    residual,
                    r.detail
                );
                if !r.passed {
                    failed += 1;
                }
            }
            println!(
                "{} properties, {} failed (q={}, mult={}, seed={})",
                reports.len(),
                failed,
                config.q,
                config.multiplicity,
                config.seed
            );
            if failed == 0 {
                EXIT_OK
            } else {
                EXIT_PROPERTY_FAILURE
            }
        }
    }
}

pub fn cmd_mesh(config: &RunConfig, resolution: usize) -> i32 {
    let mesh = match boundary_mesh(resolution) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return EXIT_CONFIG_ERROR;
        }
    };
    let base = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("crown_boundary.csv"));
    let obj = base.with_extension("obj");
    if let Err(e) = mesh.save_csv(&base).and_then(|_| mesh.save_obj(&obj)) {
        eprintln!("i/o error: {e}");
        return EXIT_IO_ERROR;
    }
    println!(
        "wrote {} vertices ({}×{} grid, residual {:.2e}) to {} and {}",
        mesh.vertices.len(),
        mesh.resolution,
        mesh.resolution,
        mesh.max_residual(),
        base.display(),
        obj.display()
    );
    EXIT_OK
}

pub fn cmd_scan(config: &RunConfig, res: usize, scale: f64) -> i32 {
    let g = match config.group() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return EXIT_CONFIG_ERROR;
        }
    };
    let opts = MarginOptions {
        seed: config.seed,
        ..Default::default()
    };
    let rows = match scan_rows(&g, scale, res, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return EXIT_CONFIG_ERROR;
        }
    };
    let path = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("margin_scan.csv"));
    let file = match std::fs::File::create(&path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("i/o error: {e}");
            return EXIT_IO_ERROR;
        }
    };
    if let Err(e) = write_scan_csv(&rows, file) {
        eprintln!("i/o error: {e}");
        return EXIT_IO_ERROR;
    }
    println!("wrote {} scan rows to {}", rows.len(), path.display());
    EXIT_OK
}

pub fn cmd_probe(config: &RunConfig, v: f64, z: f64, t: f64, steps: usize, s_max: f64) -> i32 {
    let g = match config.group() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return EXIT_CONFIG_ERROR;
        }
    };
    let yv = scaled_direction(g.p(), v);
    let yz = scaled_direction(g.q(), z);
    let report = match boundary_probe(
        &g,
        &yv,
        &yz,
        t,
        SpectralParam::real(1.0),
        steps,
        s_max,
    ) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return EXIT_CONFIG_ERROR;
        }
    };
    let path = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("boundary_probe.csv"));
    let file = match std::fs::File::create(&path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("i/o error: {e}");
            return EXIT_IO_ERROR;
        }
    };
    if let Err(e) = write_probe_csv(&report, file) {
        eprintln!("i/o error: {e}");
        return EXIT_IO_ERROR;
    }
    match report.first_failure {
        Some(s) => println!(
            "wrote {} probe rows to {}; membership fails at s = {s:.9}",
            report.rows.len(),
            path.display()
        ),
        None => println!(
            "wrote {} probe rows to {}; no failure up to s = {s_max}",
            report.rows.len(),
            path.display()
        ),
    }
    EXIT_OK
}
