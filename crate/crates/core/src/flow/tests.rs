use std::f64::consts::TAU;
use std::sync::atomic::{AtomicUsize, Ordering};

use super::*;
use crate::hcurve::elastica_residual;
use crate::initdata::{class_circle, clifford, generate, CurveShape, CurveSpec};

fn class(b: f64, n: usize) -> ProfileCurve<f64> {
    let (c, rho) = class_circle(b, 1.0);
    generate(&CurveSpec::new(CurveShape::Circle { c, rho, x0: 0.0 }, n)).unwrap()
}

fn perturbed(n: usize) -> ProfileCurve<f64> {
    generate(&CurveSpec::new(
        CurveShape::PerturbedClifford {
            amplitude: 0.05,
            mode: 2,
            scale: 1.0,
            x0: 0.0,
        },
        n,
    ))
    .unwrap()
}

fn wobbly(n: usize) -> ProfileCurve<f64> {
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|k| {
            let th = TAU * k as f64 / n as f64;
            let r = 0.6 * (1.0 + 0.1 * (3.0 * th).cos() + 0.05 * (2.0 * th).sin());
            [0.2 + r * th.cos(), 1.3 + r * th.sin()]
        })
        .collect();
    ProfileCurve::from_points(&pts).unwrap()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn clifford_velocity_decays_under_refinement() {
    let errs: Vec<f64> = [64, 128, 256]
        .iter()
        .map(|&n| max_abs(&normal_velocity(&clifford::<f64>(n))))
        .collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 2.0, "{errs:?}");
    }
}

#[test]
fn non_clifford_circle_moves() {
    let v: Vec<f64> = [128, 256, 512]
        .iter()
        .map(|&n| max_abs(&normal_velocity(&class(2.0, n))))
        .collect();
    assert!(v[0] > 0.1, "{v:?}");
    assert!((v[1] - v[2]).abs() < 1e-3 * v[2], "{v:?}");
}

#[test]
fn velocity_scales_with_inverse_cube() {
    let c = wobbly(256);
    let v = normal_velocity(&c);
    for lambda in [0.3, 2.5, 7.0] {
        let vs = normal_velocity(&c.scaled(lambda));
        let scale = max_abs(&v);
        for (a, b) in v.iter().zip(&vs) {
            assert!((a - b * lambda.powi(3)).abs() <= 1e-8 * scale);
        }
    }
}

#[test]
fn velocity_matches_elastica_route() {
    // The elastica residual against the hyperbolic normal equals y³ V.
    for c in [wobbly(512), perturbed(512), class(1.7, 512)] {
        let v = normal_velocity(&c);
        let r = elastica_residual(&c);
        let scale = max_abs(&r);
        for k in 0..c.len() {
            let y3 = c.y()[k].powi(3);
            assert!(
                (r[k] - y3 * v[k]).abs() <= 1e-5 * scale,
                "node {k}: {} vs {}",
                r[k],
                y3 * v[k]
            );
        }
    }
}

#[test]
fn workspace_reports_nonfinite() {
    let c = wobbly(64);
    let mut x = c.x().to_vec();
    x[3] = f64::NAN;
    let mut ws = Workspace::new(64);
    assert!(ws.willmore(&x, c.y()).is_none());
    assert!(ws.willmore(c.x(), c.y()).is_some());
}

#[test]
fn clifford_step_is_stationary() {
    let c = clifford::<f64>(256);
    let mut flow = Flow::new(&c, FlowConfig::default()).unwrap();
    let w0 = flow.scalars().willmore;
    flow.step().unwrap();
    let moved = c
        .points()
        .zip(flow.state().curve.points())
        .map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]))
        .fold(0.0, f64::max);
    assert!(moved < 1e-9, "{moved}");
    assert!((flow.scalars().willmore - w0).abs() < 1e-10 * w0);
}

#[test]
fn perturbed_clifford_energy_decreases() {
    let mut flow = Flow::new(&perturbed(128), FlowConfig::default()).unwrap();
    let mut w = flow.scalars().willmore;
    for _ in 0..200 {
        flow.step().unwrap();
        let next = flow.scalars().willmore;
        assert!(next < w, "{next} !< {w}");
        w = next;
    }
}

#[test]
fn dissipation_balances_energy_loss() {
    for integrator in [Integrator::Chebyshev, Integrator::Rk4] {
        let config = FlowConfig {
            integrator,
            ..FlowConfig::default()
        };
        let mut flow = Flow::new(&perturbed(64), config).unwrap();
        let w0 = flow.scalars().willmore;
        while flow.state().t < 0.02 {
            flow.step().unwrap();
        }
        let loss = w0 - flow.scalars().willmore;
        let d = flow.state().dissipation;
        assert!(loss > 1e-3, "{loss}");
        assert!(
            (loss - d).abs() < 0.02 * loss,
            "{integrator:?}: {loss} vs {d}"
        );
    }
}

#[test]
fn integrators_agree() {
    let t_end = 5e-3;
    let w: Vec<f64> = [Integrator::Chebyshev, Integrator::Rk4]
        .into_iter()
        .map(|integrator| {
            let config = FlowConfig {
                integrator,
                t_max: Some(t_end),
                resample_every: 1_000_000,
                ..FlowConfig::default()
            };
            let mut flow = Flow::new(&perturbed(64), config).unwrap();
            while flow.state().t + flow.state().dt < t_end {
                flow.step().unwrap();
            }
            flow.state.dt = t_end - flow.state().t;
            flow.step().unwrap();
            flow.scalars().willmore
        })
        .collect();
    assert!((w[0] - w[1]).abs() < 1e-6 * w[0], "{w:?}");
}

/// Delegates to the Willmore field but fails a chosen number of evaluations.
struct Faulty {
    fail: AtomicUsize,
}

impl VelocityField<f64> for Faulty {
    fn evaluate(&self, x: &[f64], y: &[f64], ws: &mut Workspace<f64>) -> Option<FieldScalars<f64>> {
        let out = ws.willmore(x, y);
        let left = self.fail.load(Ordering::Relaxed);
        if left > 0 {
            self.fail.store(left - 1, Ordering::Relaxed);
            ws.vx[0] = f64::NAN;
            return None;
        }
        out
    }
}

#[test]
fn injected_nan_rejects_and_halves() {
    let field = Faulty {
        fail: AtomicUsize::new(0),
    };
    let mut flow = Flow::with_field(&perturbed(64), FlowConfig::default(), field).unwrap();
    let dt0 = flow.state().dt;
    let before = flow.state().curve.clone();
    flow.field.fail.store(1, Ordering::Relaxed);
    let report = flow.step().unwrap();
    assert_eq!(report.rejections, vec![(dt0, Rejection::NonFinite)]);
    assert_eq!(report.dt, 0.5 * dt0);
    assert_eq!(flow.state().rejected, 1);
    assert_eq!(flow.state().step, 1);
    assert_ne!(flow.state().curve, before);
    assert!(flow.state().curve.y().iter().all(|v| v.is_finite()));
}

/// The reversed field increases `W`, so every step is rejected.
struct Uphill;

impl VelocityField<f64> for Uphill {
    fn evaluate(&self, x: &[f64], y: &[f64], ws: &mut Workspace<f64>) -> Option<FieldScalars<f64>> {
        let out = ws.willmore(x, y)?;
        for v in ws.vx.iter_mut().chain(ws.vy.iter_mut()) {
            *v = -*v;
        }
        Some(out)
    }
}

#[test]
fn step_floor_is_an_outcome() {
    let flow = Flow::with_field(&perturbed(64), FlowConfig::default(), Uphill).unwrap();
    let out = flow.run();
    assert_eq!(out.kind, OutcomeKind::StepFloor);
    assert_eq!(out.state.step, 0);
    assert!(out.state.rejected > 10);
    assert_eq!(out.rows.len(), 1);
}

#[test]
fn parabolic_rescaling() {
    let lambda = 1.7;
    let c = perturbed(64);
    let config = FlowConfig::default();
    let mut a = Flow::new(&c, config.clone()).unwrap();
    let mut b = Flow::new(&c.scaled(lambda), config).unwrap();
    for _ in 0..300 {
        a.step().unwrap();
        b.step().unwrap();
    }
    let (sa, sb) = (a.state(), b.state());
    assert!(sa.t > 1e-3);
    assert!((sb.t - lambda.powi(4) * sa.t).abs() < 1e-9 * sb.t);
    for (p, q) in sa.curve.points().zip(sb.curve.points()) {
        assert!((lambda * p[0] - q[0]).abs() < 1e-8 && (lambda * p[1] - q[1]).abs() < 1e-8);
    }
}

#[test]
fn clifford_run_converges_quickly() {
    let out = run(&clifford::<f64>(128), &FlowConfig::default()).unwrap();
    assert_eq!(out.kind, OutcomeKind::Converged);
    assert!(out.state.step < 20_000, "{}", out.state.step);
    let fit = out.fit.unwrap();
    assert!((fit.b_fit - 1.0).abs() < 1e-3);
    assert!((fit.radius - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);
    assert!(out.rows.len() >= 2);
}

#[test]
fn rows_follow_snapshot_cadence() {
    let config = FlowConfig {
        snapshot_every: 7,
        max_steps: 30,
        ..FlowConfig::default()
    };
    let out = run(&perturbed(64), &config).unwrap();
    assert_eq!(out.kind, OutcomeKind::MaxSteps);
    let steps: Vec<u64> = out.rows.iter().map(|r| r.step).collect();
    assert_eq!(steps, vec![0, 7, 14, 21, 28, 30]);
    for r in &out.rows {
        let expected = (out.state.initial.willmore - r.willmore) - r.dissipation;
        assert_eq!(r.energy_balance_residual, expected);
        assert_eq!(r.total_curvature, Some(1));
    }
}

#[test]
fn thresholds_classify() {
    let c = perturbed(64);
    let tight = |f: fn(&mut FlowConfig)| {
        let mut config = FlowConfig::default();
        f(&mut config);
        Flow::new(&c, config).unwrap().classify().map(|(k, _)| k)
    };
    assert_eq!(tight(|_| {}), None);
    assert_eq!(
        tight(|c| c.tol_converge = 1e6),
        Some(OutcomeKind::Converged)
    );
    assert_eq!(
        tight(|c| c.kappa_blow = 1.0),
        Some(OutcomeKind::SingularCurvature)
    );
    assert_eq!(
        tight(|c| c.lh_blow = 0.5),
        Some(OutcomeKind::SingularLength)
    );
    assert_eq!(
        tight(|c| c.y_floor_rel = 0.9),
        Some(OutcomeKind::SingularCurvature)
    );
}

#[test]
fn initial_resampling_sets_node_count() {
    let config = FlowConfig {
        n: Some(96),
        ..FlowConfig::default()
    };
    let flow = Flow::new(&perturbed(64), config).unwrap();
    assert_eq!(flow.state().curve.len(), 96);
}

#[test]
fn config_validation() {
    let bad = [
        FlowConfig {
            sigma: 0.0,
            ..FlowConfig::default()
        },
        FlowConfig {
            resample_every: 0,
            ..FlowConfig::default()
        },
        FlowConfig {
            n: Some(17),
            ..FlowConfig::default()
        },
        FlowConfig {
            cfl: 1.5,
            ..FlowConfig::default()
        },
        FlowConfig {
            t_max: Some(-1.0),
            ..FlowConfig::default()
        },
    ];
    for c in bad {
        assert!(c.validate().is_err(), "{c:?}");
    }
    assert!(FlowConfig::default().validate().is_ok());
}

#[test]
fn config_serde_rejects_unknown_fields() {
    let ok: FlowConfig = serde_json::from_str(r#"{"integrator":"rk4","stages":8}"#).unwrap();
    assert_eq!(ok.integrator, Integrator::Rk4);
    assert_eq!(ok.resample_every, 10);
    assert!(serde_json::from_str::<FlowConfig>(r#"{"sigmaa":0.1}"#).is_err());
}

#[test]
fn run_many_preserves_order() {
    let config = FlowConfig {
        max_steps: 5,
        ..FlowConfig::default()
    };
    let curves = vec![class(1.2, 64), class(1.5, 64)];
    let out = run_many(&curves, &config, Some(2));
    assert_eq!(out.len(), 2);
    let w: Vec<f64> = out
        .iter()
        .map(|o| o.as_ref().unwrap().state.initial.willmore)
        .collect();
    assert!(w[0] < w[1]);
}

#[test]
fn f32_flow_steps() {
    let c: ProfileCurve<f32> = generate(&CurveSpec::new(
        CurveShape::PerturbedClifford {
            amplitude: 0.05,
            mode: 2,
            scale: 1.0,
            x0: 0.0,
        },
        64,
    ))
    .unwrap();
    let mut flow = Flow::new(&c, FlowConfig::default()).unwrap();
    let w0 = flow.scalars().willmore;
    for _ in 0..20 {
        flow.step().unwrap();
    }
    assert!(flow.scalars().willmore < w0);
}
