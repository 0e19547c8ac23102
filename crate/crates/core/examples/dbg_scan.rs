use harmonic_crown::analysis::{ellipticity_margin_with, MarginOptions};
use harmonic_crown::complexify::ComplexGroupPoint;
use harmonic_crown::crown::t_max_scalar;
use harmonic_crown::solvable::SolvGroup;
use nalgebra::DVector;

fn margin_at(g: &SolvGroup, v: f64, y: f64, t: f64, opts: &MarginOptions) -> f64 {
    let yv = { let mut x = DVector::zeros(g.p()); x[0] = v; x };
    let yz = { let mut x = DVector::zeros(g.q()); x[0] = y; x };
    ellipticity_margin_with(g, &ComplexGroupPoint::slice_point(t, &yv, &yz), opts).unwrap()
}

fn main() {
    let g = SolvGroup::standard(1, 1).unwrap();
    let opts = MarginOptions { random_restarts: 24, iterations: 300, seed: 3 };
    println!("(v, y): t_max vs t_star (ellipticity threshold in t; 9.99 = elliptic for all t<pi/2)");
    for (v, y) in [(0.0,0.0),(0.3,0.0),(0.6,0.0),(0.9,0.0),(0.99,0.0),(1.01,0.0),(1.2,0.0),
                   (0.0,0.5),(0.0,0.9),(0.5,0.5),(0.9,0.2),(0.3,0.6),(0.6,0.4),(1.1,0.1)] {
        let tmax = t_max_scalar(v, y).map(|x| x).unwrap_or(0.0);
        // bisect ellipticity threshold in t over [0, pi/2)
        let elliptic = |t: f64| margin_at(&g, v, y, t, &opts) > 1e-7;
        let t_star = if !elliptic(1e-6) {
            0.0
        } else {
            let mut lo = 0.0f64;
            let mut hi = std::f64::consts::FRAC_PI_2 - 1e-9;
            if elliptic(hi) { 9.99 } else {
                for _ in 0..40 { let mid = 0.5*(lo+hi); if elliptic(mid) { lo = mid } else { hi = mid } }
                0.5*(lo+hi)
            }
        };
        println!("v={v:.2} y={y:.2}: t_max={tmax:.6}  t_star={t_star:.6}  ratio={:.4}", t_star/tmax.max(1e-12));
    }
}
