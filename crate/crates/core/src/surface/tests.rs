use std::f64::consts::{PI, SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::hcurve::{elastic_energy, euclidean_length, hyperbolic_length};
use crate::initdata::{class_circle, clifford, generate, CurveShape, CurveSpec};

fn class(b: f64, n: usize) -> ProfileCurve<f64> {
    let (c, rho) = class_circle(b, 1.0);
    generate(&CurveSpec::new(CurveShape::Circle { c, rho, x0: 0.0 }, n)).unwrap()
}

/// Random smooth closed curve: a circle with a few random Fourier modes on the radius.
fn random_curve(rng: &mut ChaCha8Rng, n: usize) -> ProfileCurve<f64> {
    let c = rng.gen_range(1.0..3.0);
    let rho = rng.gen_range(0.3..0.7) * c;
    let x0 = rng.gen_range(-2.0..2.0);
    let modes: Vec<(f64, f64)> = (2..=4)
        .map(|_| (rng.gen_range(-0.06..0.06), rng.gen_range(0.0..TAU)))
        .collect();
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|k| {
            let th = TAU * k as f64 / n as f64;
            let r = rho
                * (1.0
                    + modes
                        .iter()
                        .enumerate()
                        .map(|(j, (a, p))| a * ((j + 2) as f64 * th + p).cos())
                        .sum::<f64>());
            [x0 + r * th.cos(), c + r * th.sin()]
        })
        .collect();
    ProfileCurve::from_points(&pts).unwrap()
}

fn figure_eight(n: usize) -> ProfileCurve<f64> {
    generate(&CurveSpec::new(
        CurveShape::FigureEight {
            height: 3.0,
            width: 1.0,
            lobe: 1.0,
        },
        n,
    ))
    .unwrap()
}

#[test]
fn clifford_energy_and_area() {
    let q = surface_quantities(&clifford::<f64>(256));
    assert!((q.willmore - 2.0 * PI * PI).abs() < 1e-3);
    // area 4π² ρ c with ρ = 1/√2, c = 1
    assert!((q.area - 4.0 * PI * PI / SQRT_2).abs() < 1e-3);
}

#[test]
fn sigma_b_willmore_energy() {
    let q = surface_quantities(&class(1.5, 256));
    assert!((q.willmore - PI * PI * (1.5 + 1.0 / 1.5)).abs() < 1e-3);
}

#[test]
fn willmore_via_elastic_values() {
    let w = willmore_energy_via_elastic(&clifford::<f64>(256));
    assert!((w - 2.0 * PI * PI).abs() < 1e-3);
    let q = surface_quantities(&clifford::<f64>(256));
    assert!((w - q.willmore).abs() < 1e-5 * q.willmore);
    let w2 = willmore_energy_via_elastic(&class(2.0, 256));
    assert!((w2 - 2.5 * PI * PI).abs() < 1e-3);
}

#[test]
fn two_willmore_routes_agree_on_random_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let c = random_curve(&mut rng, 1024);
        let a = surface_quantities(&c).willmore;
        let b = willmore_energy_via_elastic(&c);
        assert!((a - b).abs() <= 1e-6 * a, "{a} vs {b}");
    }
}

/// Brute force over a `(u, v)` grid of points of the revolved torus.
fn diameter_oracle(curve: &ProfileCurve<f64>, m: usize) -> f64 {
    let pts: Vec<[f64; 3]> = curve
        .points()
        .flat_map(|[x, y]| {
            (0..m).map(move |j| {
                let v = TAU * j as f64 / m as f64;
                [x, y * v.cos(), y * v.sin()]
            })
        })
        .collect();
    let mut best = 0.0f64;
    for a in &pts {
        for b in &pts {
            let d = (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2);
            best = best.max(d);
        }
    }
    best.sqrt()
}

#[test]
fn clifford_diameter() {
    let c = clifford::<f64>(256);
    let d = diameter(&c);
    assert!((d - (2.0 + SQRT_2)).abs() < 1e-4, "{d}");
    let oracle = diameter_oracle(&clifford::<f64>(64), 64);
    assert!((d - oracle).abs() < 1e-3, "{d} vs {oracle}");
}

#[test]
fn diameter_matches_grid_oracle_on_figure_eight() {
    let c = figure_eight(64);
    let d = diameter(&c);
    let oracle = diameter_oracle(&c, 64);
    assert!(oracle <= d + 1e-12);
    assert!(d - oracle < 1e-12 + 1e-3 * d, "{d} vs {oracle}");
}

#[test]
fn diameter_upper_bound_and_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let c = random_curve(&mut rng, 256);
        let d = diameter(&c);
        assert!(d <= 0.5 * euclidean_length(&c) + 2.0 * c.y_max() + 1e-9);
        assert!((diameter(&c.translated(3.3)) - d).abs() < 1e-12);
    }
}

/// Midpoint quadrature in `v` of `H N·e₃` against `dμ`, with `N = (y', −x')/|γ'|`
/// revolved as `(N_x, N_y cos 2πv, N_y sin 2πv)`.
fn flux_oracle(curve: &ProfileCurve<f64>, m: usize) -> f64 {
    let g = CurveGeometry::new(curve);
    let q = surface_quantities(curve);
    let mut total = 0.0;
    for k in 0..curve.len() {
        let ny = -g.dx[k] / g.speed[k];
        let per_v = q.mean[k] * ny * curve.y()[k] * g.speed[k] * g.du;
        for j in 0..m {
            let v = 0.5 * (j as f64 + 0.5) / m as f64;
            total += per_v * (TAU * v).sin() * TAU * (0.5 / m as f64);
        }
    }
    total
}

#[test]
fn flux_identity() {
    let c = clifford::<f64>(256);
    let flux = half_revolution_flux(&c);
    assert!((flux + 2.0 * SQRT_2 * PI).abs() < 1e-5, "{flux}");
    assert!((flux - flux_oracle(&c, 400)).abs() < 1e-4);
    assert!(flux_identity_residual(&c) <= 1e-5);
    assert!(flux_identity_residual(&class(2.0, 256)) <= 1e-5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = random_curve(&mut rng, 512);
    assert!(flux_identity_residual(&r) <= 1e-5);
    assert!((half_revolution_flux(&r) - flux_oracle(&r, 400)).abs() < 1e-4);
    // orientation reversal flips N and H together
    assert!((half_revolution_flux(&r.reversed()) - half_revolution_flux(&r)).abs() < 1e-10);
}

#[test]
fn identity_suite_on_clifford_and_figure_eight() {
    let r = identity_suite(&clifford::<f64>(256));
    assert!(r.all_pass(), "{:?}", r.violations);
    assert!(r.gauss_total.abs() <= 1e-6 * r.a2_total);
    let f = identity_suite(&figure_eight(512));
    assert!(f.all_pass(), "{:?}", f.violations);
}

#[test]
fn identity_suite_on_random_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..20 {
        let c = random_curve(&mut rng, 512);
        let r = identity_suite(&c);
        assert!(r.all_pass(), "curve {i}: {:?}", r.violations);
        assert!(r.pointwise_ok);
    }
}

#[test]
fn identity_suite_flags_violations() {
    let r = identity_suite_with(
        &figure_eight(64),
        IdentityTolerances {
            equality: 1e-30,
            inequality: 1e-6,
        },
    );
    assert!(!r.all_pass());
}

#[test]
fn scaling_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c = random_curve(&mut rng, 512);
    let lambda = 2.7;
    let s = c.scaled(lambda);
    let (q, qs) = (surface_quantities(&c), surface_quantities(&s));
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    assert!(rel(qs.willmore, q.willmore) < 1e-10);
    assert!(rel(elastic_energy(&s), elastic_energy(&c)) < 1e-10);
    assert!(rel(hyperbolic_length(&s), hyperbolic_length(&c)) < 1e-10);
    assert!(rel(qs.area, lambda * lambda * q.area) < 1e-10);
    assert!(rel(diameter(&s), lambda * diameter(&c)) < 1e-10);
    assert!(rel(euclidean_length(&s), lambda * euclidean_length(&c)) < 1e-10);
}

#[test]
fn pointwise_curvature_relations() {
    let q = surface_quantities(&figure_eight(512));
    for k in 0..q.mean.len() {
        assert!(q.aring2[k] >= -1e-12);
        assert!(q.aring2[k] <= q.a2[k] + 1e-12);
        // |Å|² = ½(κ₁ − κ₂)²
        let d = q.kappa1[k] - q.kappa2[k];
        assert!((q.aring2[k] - 0.5 * d * d).abs() < 1e-10 * q.a2[k].max(1.0));
    }
    assert!(q.area > 0.0 && q.willmore >= 0.0);
}

#[test]
fn f32_surface_route() {
    let q = surface_quantities(&clifford::<f32>(128));
    assert!((q.willmore as f64 - 2.0 * PI * PI).abs() < 1e-2);
}
