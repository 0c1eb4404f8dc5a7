use crate::hcurve::stencil::{d1, d2};
use crate::Real;

/// Integrals and extrema that come for free with one velocity evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FieldScalars<T> {
    pub willmore: T,
    /// `∫ V² dμ`
    pub speed_l2: T,
    pub speed_max: T,
    /// `max |A|` over the nodes.
    pub curvature_max: T,
    pub area: T,
    pub euclidean_length: T,
    pub hyperbolic_length: T,
}

/// Scratch buffers for evaluating the velocity of an `n`-node curve without allocating.
///
/// After [`Workspace::willmore`] returns, `speed` holds `V` and `(vx, vy)` holds `V N`.
#[derive(Clone, Debug)]
pub struct Workspace<T> {
    dx: Vec<T>,
    dy: Vec<T>,
    ddx: Vec<T>,
    ddy: Vec<T>,
    mean: Vec<T>,
    gauss: Vec<T>,
    dh: Vec<T>,
    ddh: Vec<T>,
    pub speed: Vec<T>,
    pub vx: Vec<T>,
    pub vy: Vec<T>,
}

impl<T: Real> Workspace<T> {
    pub fn new(n: usize) -> Self {
        let z = vec![T::zero(); n];
        Self {
            dx: z.clone(),
            dy: z.clone(),
            ddx: z.clone(),
            ddy: z.clone(),
            mean: z.clone(),
            gauss: z.clone(),
            dh: z.clone(),
            ddh: z.clone(),
            speed: z.clone(),
            vx: z.clone(),
            vy: z,
        }
    }

    pub fn len(&self) -> usize {
        self.speed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.speed.is_empty()
    }

    /// Willmore velocity `V = −(ΔH + ½H(H² − 4K))` along `N = (y', −x')/|γ'|`.
    /// Returns `None` if anything evaluates to a non-finite value.
    pub fn willmore(&mut self, x: &[T], y: &[T]) -> Option<FieldScalars<T>> {
        let n = x.len();
        if n != self.len() {
            *self = Self::new(n);
        }
        let du = T::one() / T::count(n);
        d1(x, du, &mut self.dx);
        d1(y, du, &mut self.dy);
        d2(x, du, &mut self.ddx);
        d2(y, du, &mut self.ddy);

        let mut out = FieldScalars::<T>::default();
        let tau = T::TAU();
        let mut h2 = T::zero();
        for k in 0..n {
            let (xp, yp, yk) = (self.dx[k], self.dy[k], y[k]);
            let s2 = xp * xp + yp * yp;
            let s = s2.sqrt();
            let k1 = -(xp * self.ddy[k] - yp * self.ddx[k]) / (s2 * s);
            let k2 = xp / (s * yk);
            let h = k1 + k2;
            let mu = tau * yk * s * du;
            self.mean[k] = h;
            self.gauss[k] = k1 * k2;
            h2 += h * h * mu;
            out.area += mu;
            out.euclidean_length += s;
            out.hyperbolic_length += s / yk;
            out.curvature_max = out.curvature_max.max((k1 * k1 + k2 * k2).sqrt());
        }
        out.willmore = h2 * T::lit(0.25);
        out.euclidean_length *= du;
        out.hyperbolic_length *= du;

        d1(&self.mean, du, &mut self.dh);
        d2(&self.mean, du, &mut self.ddh);
        let half = T::lit(0.5);
        let four = T::lit(4.0);
        for k in 0..n {
            let (xp, yp, yk) = (self.dx[k], self.dy[k], y[k]);
            let s2 = xp * xp + yp * yp;
            let s = s2.sqrt();
            // ΔH = (1/(s y)) [ (y/s) H'' + (y/s)' H' ]
            let w = yk / s;
            let dw = yp / s - yk * (xp * self.ddx[k] + yp * self.ddy[k]) / (s2 * s);
            let lap = (w * self.ddh[k] + dw * self.dh[k]) / (s * yk);
            let h = self.mean[k];
            let v = -(lap + half * h * (h * h - four * self.gauss[k]));
            self.speed[k] = v;
            self.vx[k] = v * yp / s;
            self.vy[k] = -v * xp / s;
            out.speed_l2 += v * v * tau * yk * s * du;
            out.speed_max = out.speed_max.max(v.abs());
        }
        let finite = out.speed_l2.is_finite()
            && out.willmore.is_finite()
            && self.vx.iter().chain(&self.vy).all(|v| v.is_finite());
        finite.then_some(out)
    }
}
