use serde::{Deserialize, Serialize};

use super::velocity::VelocityField;
use super::workspace::Workspace;
use crate::Real;

/// Explicit time integrator for `∂_t γ = V N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    /// Classical four-stage Runge–Kutta.
    Rk4,
    /// Damped second-order Runge–Kutta–Chebyshev with the configured stage count.
    #[default]
    Chebyshev,
}

/// Real-axis stability interval `[−extent, 0]` of RK4.
pub const RK4_STABILITY_EXTENT: f64 = 2.785_293_563;

/// Damping of the Chebyshev polynomials, `w0 = 1 + ε/s²`.
pub const CHEBYSHEV_DAMPING: f64 = 2.0 / 13.0;

/// Coefficients of an `s`-stage second-order Runge–Kutta–Chebyshev method.
///
/// Stage `j ≥ 2`: `Y_j = (1 − μ − ν) Y_0 + μ Y_{j−1} + ν Y_{j−2} + μ̃ dt F(Y_{j−1}) + γ̃ dt F(Y_0)`.
#[derive(Clone, Debug)]
pub struct ChebyshevTableau {
    /// `(μ, ν, μ̃, γ̃)` per stage; entry 0 is unused, entry 1 only carries `μ̃`.
    pub stages: Vec<[f64; 4]>,
    /// Real-axis stability interval `[−extent, 0]`.
    pub extent: f64,
}

impl ChebyshevTableau {
    pub fn new(s: usize) -> Self {
        let s = s.max(2);
        let sf = s as f64;
        let w0 = 1.0 + CHEBYSHEV_DAMPING / (sf * sf);
        let (mut t, mut tp, mut tpp) = (vec![0.0; s + 1], vec![0.0; s + 1], vec![0.0; s + 1]);
        t[0] = 1.0;
        t[1] = w0;
        tp[1] = 1.0;
        for j in 2..=s {
            t[j] = 2.0 * w0 * t[j - 1] - t[j - 2];
            tp[j] = 2.0 * t[j - 1] + 2.0 * w0 * tp[j - 1] - tp[j - 2];
            tpp[j] = 4.0 * tp[j - 1] + 2.0 * w0 * tpp[j - 1] - tpp[j - 2];
        }
        let w1 = tp[s] / tpp[s];
        let mut b = vec![0.0; s + 1];
        for j in 2..=s {
            b[j] = tpp[j] / (tp[j] * tp[j]);
        }
        b[0] = b[2];
        b[1] = b[2];
        let mut stages = vec![[0.0; 4], [0.0, 0.0, b[1] * w1, 0.0]];
        for j in 2..=s {
            let mu = 2.0 * b[j] * w0 / b[j - 1];
            let nu = -b[j] / b[j - 2];
            let mu_t = 2.0 * b[j] * w1 / b[j - 1];
            let a_prev = 1.0 - b[j - 1] * t[j - 1];
            stages.push([mu, nu, mu_t, -a_prev * mu_t]);
        }
        Self {
            stages,
            extent: (w0 + 1.0) / w1,
        }
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len() - 1
    }
}

/// Reusable stage storage for one run.
#[derive(Clone, Debug)]
pub(crate) struct Stepper<T> {
    integrator: Integrator,
    tableau: Option<ChebyshevTableau>,
    a: [Vec<T>; 2],
    b: [Vec<T>; 2],
    c: [Vec<T>; 2],
    acc: [Vec<T>; 2],
}

impl<T: Real> Stepper<T> {
    pub fn new(integrator: Integrator, stages: usize, n: usize) -> Self {
        let z = || [vec![T::zero(); n], vec![T::zero(); n]];
        Self {
            integrator,
            tableau: (integrator == Integrator::Chebyshev).then(|| ChebyshevTableau::new(stages)),
            a: z(),
            b: z(),
            c: z(),
            acc: z(),
        }
    }

    pub fn extent(&self) -> f64 {
        self.tableau
            .as_ref()
            .map_or(RK4_STABILITY_EXTENT, |t| t.extent)
    }

    pub fn evaluations(&self) -> usize {
        self.tableau.as_ref().map_or(4, |t| t.stage_count())
    }

    /// Advances `(x, y)` by `dt` given the velocity `f0` at the start point, writing the
    /// result into `out`. Returns `∫V² dμ` averaged over the interior stages if the method
    /// has interior stages at the half step, `Some(None)` if it has none, `None` on a
    /// non-finite stage.
    #[allow(clippy::too_many_arguments)]
    pub fn advance<F: VelocityField<T> + ?Sized>(
        &mut self,
        field: &F,
        ws: &mut Workspace<T>,
        x: &[T],
        y: &[T],
        f0: &[Vec<T>; 2],
        dt: T,
        out: &mut [Vec<T>; 2],
    ) -> Option<Option<T>> {
        match self.integrator {
            Integrator::Rk4 => self.rk4(field, ws, x, y, f0, dt, out).map(Some),
            Integrator::Chebyshev => self.chebyshev(field, ws, x, y, f0, dt, out).map(|_| None),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn rk4<F: VelocityField<T> + ?Sized>(
        &mut self,
        field: &F,
        ws: &mut Workspace<T>,
        x: &[T],
        y: &[T],
        f0: &[Vec<T>; 2],
        dt: T,
        out: &mut [Vec<T>; 2],
    ) -> Option<T> {
        let n = x.len();
        let half = T::lit(0.5);
        let sixth = dt / T::lit(6.0);
        let [ax, ay] = &mut self.a;
        let [sx, sy] = &mut self.acc;
        for k in 0..n {
            sx[k] = f0[0][k];
            sy[k] = f0[1][k];
            ax[k] = x[k] + half * dt * f0[0][k];
            ay[k] = y[k] + half * dt * f0[1][k];
        }
        let mut mid = T::zero();
        let two = T::lit(2.0);
        for h in [half, T::one()] {
            let sc = field.evaluate(ax, ay, ws)?;
            mid += half * sc.speed_l2;
            for k in 0..n {
                sx[k] += two * ws.vx[k];
                sy[k] += two * ws.vy[k];
                ax[k] = x[k] + h * dt * ws.vx[k];
                ay[k] = y[k] + h * dt * ws.vy[k];
            }
        }
        field.evaluate(ax, ay, ws)?;
        for k in 0..n {
            out[0][k] = x[k] + sixth * (sx[k] + ws.vx[k]);
            out[1][k] = y[k] + sixth * (sy[k] + ws.vy[k]);
        }
        Some(mid)
    }

    #[allow(clippy::too_many_arguments)]
    fn chebyshev<F: VelocityField<T> + ?Sized>(
        &mut self,
        field: &F,
        ws: &mut Workspace<T>,
        x: &[T],
        y: &[T],
        f0: &[Vec<T>; 2],
        dt: T,
        out: &mut [Vec<T>; 2],
    ) -> Option<()> {
        let tab = self.tableau.as_ref().expect("chebyshev tableau");
        let n = x.len();
        let s = tab.stage_count();
        // prev2 = Y_{j-2}, prev1 = Y_{j-1}, next = Y_j; rotated through a, b, c.
        let (mut prev2, mut prev1, mut next) = (&mut self.a, &mut self.b, &mut self.c);
        let m1 = T::lit(tab.stages[1][2]) * dt;
        for k in 0..n {
            prev2[0][k] = x[k];
            prev2[1][k] = y[k];
            prev1[0][k] = x[k] + m1 * f0[0][k];
            prev1[1][k] = y[k] + m1 * f0[1][k];
        }
        for j in 2..=s {
            let [mu, nu, mu_t, gamma_t] = tab.stages[j].map(T::lit);
            let keep = T::one() - mu - nu;
            field.evaluate(&prev1[0], &prev1[1], ws)?;
            let (mt, gt) = (mu_t * dt, gamma_t * dt);
            for d in 0..2 {
                let (p0, v) = (
                    if d == 0 { x } else { y },
                    if d == 0 { &ws.vx } else { &ws.vy },
                );
                for k in 0..n {
                    next[d][k] = keep * p0[k]
                        + mu * prev1[d][k]
                        + nu * prev2[d][k]
                        + mt * v[k]
                        + gt * f0[d][k];
                }
            }
            std::mem::swap(&mut prev2, &mut prev1);
            std::mem::swap(&mut prev1, &mut next);
        }
        out[0].copy_from_slice(&prev1[0]);
        out[1].copy_from_slice(&prev1[1]);
        Some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_extent_grows_quadratically() {
        for s in [8, 32, 64, 128] {
            let t = ChebyshevTableau::new(s);
            let per = t.extent / (s * s) as f64;
            assert!((0.6..0.67).contains(&per), "s = {s}: {per}");
        }
    }

    #[test]
    fn chebyshev_is_second_order_on_linear_decay() {
        // y' = −y: one step must match e^{−h} to O(h³).
        let tab = ChebyshevTableau::new(10);
        let step = |h: f64| {
            let f = |v: f64| -v;
            let (mut p2, mut p1) = (1.0, 1.0 + tab.stages[1][2] * h * f(1.0));
            for j in 2..=tab.stage_count() {
                let [mu, nu, mt, gt] = tab.stages[j];
                let nx = (1.0 - mu - nu) + mu * p1 + nu * p2 + mt * h * f(p1) + gt * h * f(1.0);
                p2 = p1;
                p1 = nx;
            }
            (p1 - (-h).exp()).abs()
        };
        let (e1, e2) = (step(0.1), step(0.05));
        let order = (e1 / e2).log2();
        assert!(order > 2.8, "local error order {order}");
    }

    #[test]
    fn chebyshev_damps_stiff_modes() {
        let tab = ChebyshevTableau::new(40);
        for frac in [0.1, 0.5, 0.9, 0.99] {
            let z = -frac * tab.extent;
            let (mut p2, mut p1) = (1.0, 1.0 + tab.stages[1][2] * z);
            for j in 2..=tab.stage_count() {
                let [mu, nu, mt, gt] = tab.stages[j];
                let nx = (1.0 - mu - nu) + mu * p1 + nu * p2 + mt * z * p1 + gt * z;
                p2 = p1;
                p1 = nx;
            }
            assert!(p1.abs() < 1.0, "amplification {p1} at z = {z}");
        }
    }
}
