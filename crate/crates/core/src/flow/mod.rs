//! Willmore flow of tori of revolution as a normal-velocity evolution of the profile curve.
//!
//! The state is a profile curve, so rotational symmetry holds by construction. Steps are
//! explicit, accepted only if the Willmore energy does not increase, and the mesh is
//! redistributed by uniform resampling at a fixed cadence.

mod integrator;
mod velocity;
mod workspace;

#[cfg(test)]
mod tests;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use integrator::{ChebyshevTableau, Integrator, CHEBYSHEV_DAMPING, RK4_STABILITY_EXTENT};
pub use velocity::{
    normal_velocity, sample_velocity, VelocityField, VelocitySample, WillmoreVelocity,
};
pub use workspace::{FieldScalars, Workspace};

use crate::diagnostics::{clifford_fit, CliffordFit};
use crate::error::{Error, Result};
use crate::hcurve::{resample_uniform, total_curvature, ProfileCurve};
use crate::report::DiagnosticsRow;
use crate::Real;
use integrator::Stepper;

/// Largest symbol of the second-derivative stencil; the linearised operator's spectral
/// radius is estimated as `(D2_SYMBOL_MAX / Δs_min²)²`.
pub const D2_SYMBOL_MAX: f64 = 16.0 / 3.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowConfig {
    /// Resample the initial curve to this many nodes.
    pub n: Option<usize>,
    /// Initial step as a fraction of the stability cap.
    pub sigma: f64,
    /// Step cap as a fraction of the estimated stability limit.
    pub cfl: f64,
    pub integrator: Integrator,
    /// Stage count of the Chebyshev integrator.
    pub stages: usize,
    pub resample_every: u64,
    /// Resample early once the mesh ratio exceeds this.
    pub remesh_ratio: f64,
    /// Double the step after this many consecutive accepted steps.
    pub grow_after: u64,
    /// Converged when `max|V| · L_euc³` falls to this.
    pub tol_converge: f64,
    pub max_steps: u64,
    pub t_max: Option<f64>,
    /// Singular when `max|A| · L_euc` exceeds this.
    pub kappa_blow: f64,
    /// Singular when `min y` falls below this fraction of the initial `max y`.
    pub y_floor_rel: f64,
    /// Singular when `L_H` exceeds this multiple of its initial value.
    pub lh_blow: f64,
    /// Step floor as a fraction of the current stability cap.
    pub dt_floor_rel: f64,
    /// Accepted energy increase relative to `W`, absorbing round-off.
    pub energy_slack: f64,
    /// Accepted steps between diagnostics rows.
    pub snapshot_every: u64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            n: None,
            sigma: 0.1,
            cfl: 0.5,
            integrator: Integrator::Chebyshev,
            stages: 64,
            resample_every: 10,
            remesh_ratio: 4.0,
            grow_after: 4,
            tol_converge: 1e-3,
            max_steps: 10_000_000,
            t_max: None,
            kappa_blow: 1e3,
            y_floor_rel: 1e-4,
            lh_blow: 3.0,
            dt_floor_rel: 1e-6,
            energy_slack: 1e-12,
            snapshot_every: 100,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("sigma", self.sigma),
            ("cfl", self.cfl),
            ("tol_converge", self.tol_converge),
            ("kappa_blow", self.kappa_blow),
            ("y_floor_rel", self.y_floor_rel),
            ("lh_blow", self.lh_blow),
            ("dt_floor_rel", self.dt_floor_rel),
            ("t_max", self.t_max.unwrap_or(1.0)),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(self.energy_slack >= 0.0) {
            return Err(Error::InvalidArgument(
                "energy_slack must be non-negative".into(),
            ));
        }
        if !(self.remesh_ratio > 1.0) {
            return Err(Error::InvalidArgument("remesh_ratio must exceed 1".into()));
        }
        if self.sigma > 1.0 || self.cfl > 1.0 {
            return Err(Error::InvalidArgument(
                "sigma and cfl must not exceed 1".into(),
            ));
        }
        for (name, v) in [
            ("resample_every", self.resample_every),
            ("grow_after", self.grow_after),
            ("max_steps", self.max_steps),
            ("snapshot_every", self.snapshot_every),
        ] {
            if v == 0 {
                return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
            }
        }
        if self.stages < 2 {
            return Err(Error::InvalidArgument("stages must be at least 2".into()));
        }
        if let Some(n) = self.n {
            if n < 16 || n % 2 == 1 {
                return Err(Error::NodeCount(n));
            }
        }
        Ok(())
    }
}

/// Values at `t = 0` against which invariants and thresholds are measured.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InitialValues {
    pub willmore: f64,
    pub hyperbolic_length: f64,
    pub euclidean_length: f64,
    pub area: f64,
    pub y_max: f64,
    pub total_curvature: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct FlowState<T> {
    pub curve: ProfileCurve<T>,
    pub t: f64,
    /// Accepted steps.
    pub step: u64,
    /// Step size to attempt next.
    pub dt: f64,
    /// `½ ∫₀ᵗ ∫ V² dμ dτ`, which equals `W(0) − W(t)` for the exact flow.
    pub dissipation: f64,
    pub initial: InitialValues,
    pub rejected: u64,
    pub resamples: u64,
    /// Largest `W(after) − W(before)` over accepted steps.
    pub max_energy_increase: f64,
    /// Largest `|ΔW| / W` caused by one resampling.
    pub max_resample_drift: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeKind {
    Converged,
    SingularCurvature,
    SingularLength,
    StepFloor,
    MaxSteps,
    TimeLimit,
}

/// Absolute thresholds derived from the configuration and the initial curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    /// On `max|V| · L_euc³`.
    pub converge: f64,
    /// On `max|A| · L_euc`.
    pub kappa_blow: f64,
    pub y_floor: f64,
    pub lh_blow: f64,
}

#[derive(Clone, Debug)]
pub struct FlowOutcome<T> {
    pub kind: OutcomeKind,
    /// Value of the quantity whose threshold ended the run.
    pub trigger: f64,
    pub thresholds: Thresholds,
    pub state: FlowState<T>,
    pub scalars: FieldScalars<T>,
    /// Present when `kind` is `Converged`.
    pub fit: Option<CliffordFit>,
    pub rows: Vec<DiagnosticsRow>,
}

/// Why an attempted step was discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    NonFinite,
    EnergyIncrease,
    InvalidCurve,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepReport {
    pub dt: f64,
    /// Rejections preceding acceptance, in order.
    pub rejections: Vec<(f64, Rejection)>,
    pub resampled: bool,
}

/// A running flow: state, velocity field and reusable buffers.
pub struct Flow<T: Real, F: VelocityField<T> = WillmoreVelocity> {
    config: FlowConfig,
    field: F,
    state: FlowState<T>,
    scalars: FieldScalars<T>,
    thresholds: Thresholds,
    ws: Workspace<T>,
    stepper: Stepper<T>,
    f0: [Vec<T>; 2],
    out: [Vec<T>; 2],
    streak: u64,
}

impl<T: Real> Flow<T> {
    pub fn new(curve: &ProfileCurve<T>, config: FlowConfig) -> Result<Self> {
        Self::with_field(curve, config, WillmoreVelocity)
    }
}

impl<T: Real, F: VelocityField<T>> Flow<T, F> {
    pub fn with_field(curve: &ProfileCurve<T>, config: FlowConfig, field: F) -> Result<Self> {
        config.validate()?;
        let curve = match config.n {
            Some(n) => resample_uniform(curve, n)?,
            None => curve.clone(),
        };
        let n = curve.len();
        let mut ws = Workspace::new(n);
        let scalars = field
            .evaluate(curve.x(), curve.y(), &mut ws)
            .ok_or(Error::NonFinite { index: 0 })?;
        let f0 = [ws.vx.clone(), ws.vy.clone()];
        let initial = InitialValues {
            willmore: scalars.willmore.as_f64(),
            hyperbolic_length: scalars.hyperbolic_length.as_f64(),
            euclidean_length: scalars.euclidean_length.as_f64(),
            area: scalars.area.as_f64(),
            y_max: curve.y_max().as_f64(),
            total_curvature: total_curvature(&curve).ok().map(|t| t.turning),
        };
        let thresholds = Thresholds {
            converge: config.tol_converge,
            kappa_blow: config.kappa_blow,
            y_floor: config.y_floor_rel * initial.y_max,
            lh_blow: config.lh_blow * initial.hyperbolic_length,
        };
        let stepper = Stepper::new(config.integrator, config.stages, n);
        let mut flow = Self {
            field,
            state: FlowState {
                curve,
                t: 0.0,
                step: 0,
                dt: 0.0,
                dissipation: 0.0,
                initial,
                rejected: 0,
                resamples: 0,
                max_energy_increase: f64::NEG_INFINITY,
                max_resample_drift: 0.0,
            },
            scalars,
            thresholds,
            ws,
            stepper,
            f0,
            out: [vec![T::zero(); n], vec![T::zero(); n]],
            streak: 0,
            config,
        };
        flow.state.dt = flow.config.sigma * flow.step_cap();
        Ok(flow)
    }

    pub fn state(&self) -> &FlowState<T> {
        &self.state
    }

    pub fn config(&self) -> &FlowConfig {
        &self.config
    }

    pub fn thresholds(&self) -> Thresholds {
        self.thresholds
    }

    /// Field scalars at the current state.
    pub fn scalars(&self) -> FieldScalars<T> {
        self.scalars
    }

    /// Velocity `V` at the current nodes.
    pub fn speed(&self) -> &[T] {
        &self.ws.speed
    }

    /// `cfl · extent / λ`, with `λ = (D2_SYMBOL_MAX / Δs_min²)²`.
    pub fn step_cap(&self) -> f64 {
        let ds = self.state.curve.min_segment().as_f64();
        let lambda = (D2_SYMBOL_MAX / (ds * ds)).powi(2);
        self.config.cfl * self.stepper.extent() / lambda
    }

    /// Velocity evaluations per attempted step.
    pub fn evaluations_per_step(&self) -> usize {
        self.stepper.evaluations()
    }

    /// One accepted step, halving `dt` on each rejection.
    pub fn step(&mut self) -> Result<StepReport> {
        let mut rejections = Vec::new();
        loop {
            let cap = self.step_cap();
            let dt = self.state.dt.min(cap);
            let floor = self.config.dt_floor_rel * cap;
            if !(dt >= floor) {
                return Err(Error::StepFloor { dt, floor });
            }
            match self.attempt(dt) {
                Ok(()) => {
                    let resampled = self.after_accept()?;
                    return Ok(StepReport {
                        dt,
                        rejections,
                        resampled,
                    });
                }
                Err(why) => {
                    log::debug!("step {} rejected at dt = {dt:e}: {why:?}", self.state.step);
                    rejections.push((dt, why));
                    self.state.rejected += 1;
                    self.state.dt = 0.5 * dt;
                    self.streak = 0;
                }
            }
        }
    }

    fn attempt(&mut self, dt: f64) -> std::result::Result<(), Rejection> {
        let dt_t = T::lit(dt);
        let interior = self
            .stepper
            .advance(
                &self.field,
                &mut self.ws,
                self.state.curve.x(),
                self.state.curve.y(),
                &self.f0,
                dt_t,
                &mut self.out,
            )
            .ok_or(Rejection::NonFinite)?;
        let next = self
            .field
            .evaluate(&self.out[0], &self.out[1], &mut self.ws)
            .ok_or(Rejection::NonFinite)?;
        let (w0, w1) = (self.scalars.willmore.as_f64(), next.willmore.as_f64());
        if !(w1 <= w0 + self.config.energy_slack * w0.abs()) {
            return Err(Rejection::EnergyIncrease);
        }
        let curve = ProfileCurve::new(self.out[0].clone(), self.out[1].clone())
            .map_err(|_| Rejection::InvalidCurve)?;

        let (s0, s1) = (self.scalars.speed_l2.as_f64(), next.speed_l2.as_f64());
        let mean_l2 = match interior {
            Some(mid) => (s0 + 4.0 * mid.as_f64() + s1) / 6.0,
            None => 0.5 * (s0 + s1),
        };
        self.state.dissipation += 0.5 * dt * mean_l2;
        self.state.max_energy_increase = self.state.max_energy_increase.max(w1 - w0);
        self.state.curve = curve;
        self.state.t += dt;
        self.state.step += 1;
        self.scalars = next;
        self.f0[0].copy_from_slice(&self.ws.vx);
        self.f0[1].copy_from_slice(&self.ws.vy);
        self.streak += 1;
        if self.streak >= self.config.grow_after {
            self.streak = 0;
            self.state.dt = (2.0 * dt).min(self.step_cap());
        } else {
            self.state.dt = dt;
        }
        Ok(())
    }

    fn after_accept(&mut self) -> Result<bool> {
        let due = self.state.step.is_multiple_of(self.config.resample_every);
        let coarse = self.state.curve.mesh_ratio().as_f64() > self.config.remesh_ratio;
        if !(due || coarse) {
            return Ok(false);
        }
        let curve = resample_uniform(&self.state.curve, self.state.curve.len())?;
        let scalars = self
            .field
            .evaluate(curve.x(), curve.y(), &mut self.ws)
            .ok_or(Error::NonFinite { index: 0 })?;
        let before = self.scalars.willmore.as_f64();
        let drift = ((scalars.willmore.as_f64() - before) / before).abs();
        self.state.max_resample_drift = self.state.max_resample_drift.max(drift);
        self.state.resamples += 1;
        self.state.curve = curve;
        self.scalars = scalars;
        self.f0[0].copy_from_slice(&self.ws.vx);
        self.f0[1].copy_from_slice(&self.ws.vy);
        Ok(true)
    }

    /// Terminal condition at the current state, with the value that triggered it.
    pub fn classify(&self) -> Option<(OutcomeKind, f64)> {
        let s = &self.scalars;
        let l = s.euclidean_length.as_f64();
        let v_norm = s.speed_max.as_f64() * l.powi(3);
        let k_norm = s.curvature_max.as_f64() * l;
        let y_min = self.state.curve.y_min().as_f64();
        let l_h = s.hyperbolic_length.as_f64();
        let th = &self.thresholds;
        if v_norm <= th.converge {
            Some((OutcomeKind::Converged, v_norm))
        } else if k_norm > th.kappa_blow {
            Some((OutcomeKind::SingularCurvature, k_norm))
        } else if y_min < th.y_floor {
            Some((OutcomeKind::SingularCurvature, y_min))
        } else if l_h > th.lh_blow {
            Some((OutcomeKind::SingularLength, l_h))
        } else if self.state.step >= self.config.max_steps {
            Some((OutcomeKind::MaxSteps, self.state.step as f64))
        } else if self.config.t_max.is_some_and(|t| self.state.t >= t) {
            Some((OutcomeKind::TimeLimit, self.state.t))
        } else {
            None
        }
    }

    /// Diagnostics row for the current state.
    pub fn row(&self) -> DiagnosticsRow {
        let mut row = DiagnosticsRow::measure(&self.state.curve);
        row.t = self.state.t;
        row.step = self.state.step;
        row.dt = self.state.dt;
        row.willmore = self.scalars.willmore.as_f64();
        row.speed_max = self.scalars.speed_max.as_f64();
        row.dissipation = self.state.dissipation;
        row.energy_balance_residual =
            (self.state.initial.willmore - row.willmore) - self.state.dissipation;
        row
    }

    /// Steps until a terminal condition, emitting a row at the start, every
    /// `snapshot_every` accepted steps, and at the end. `observer` sees each row.
    pub fn run_with(
        mut self,
        observer: &mut dyn FnMut(&FlowState<T>, &DiagnosticsRow),
    ) -> FlowOutcome<T> {
        let mut rows = Vec::new();
        let mut emit = |flow: &Self, rows: &mut Vec<DiagnosticsRow>| {
            let row = flow.row();
            observer(&flow.state, &row);
            rows.push(row);
        };
        emit(&self, &mut rows);
        let (kind, trigger) = loop {
            if let Some(done) = self.classify() {
                break done;
            }
            if let Err(e) = self.step() {
                match e {
                    Error::StepFloor { dt, .. } => break (OutcomeKind::StepFloor, dt),
                    other => {
                        log::warn!("step failed: {other}");
                        break (OutcomeKind::StepFloor, self.state.dt);
                    }
                }
            }
            if self.state.step.is_multiple_of(self.config.snapshot_every) {
                emit(&self, &mut rows);
            }
        };
        if rows.last().map(|r| r.step) != Some(self.state.step) {
            emit(&self, &mut rows);
        }
        log::info!(
            "{kind:?} at t = {:e} after {} steps ({} rejected, {} resamples)",
            self.state.t,
            self.state.step,
            self.state.rejected,
            self.state.resamples
        );
        FlowOutcome {
            kind,
            trigger,
            thresholds: self.thresholds,
            fit: (kind == OutcomeKind::Converged).then(|| clifford_fit(&self.state.curve)),
            scalars: self.scalars,
            state: self.state,
            rows,
        }
    }

    pub fn run(self) -> FlowOutcome<T> {
        self.run_with(&mut |_, _| {})
    }
}

/// Runs the Willmore flow from `curve` until a terminal condition.
pub fn run<T: Real>(curve: &ProfileCurve<T>, config: &FlowConfig) -> Result<FlowOutcome<T>> {
    Ok(Flow::new(curve, config.clone())?.run())
}

/// Independent runs on a pool of at most `threads` workers (all cores when `None`).
/// Results keep the input order; a failed setup does not affect the other runs.
pub fn run_many<T: Real>(
    curves: &[ProfileCurve<T>],
    config: &FlowConfig,
    threads: Option<usize>,
) -> Vec<Result<FlowOutcome<T>>> {
    let work = || curves.par_iter().map(|c| run(c, config)).collect();
    match rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool.install(work),
        Err(_) => curves.iter().map(|c| run(c, config)).collect(),
    }
}
