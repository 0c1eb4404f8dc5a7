//! Redistribution of nodes to equal Euclidean arclength spacing.

use super::ProfileCurve;
use crate::error::{Error, Result};
use crate::Real;

/// Interpolant used to reparametrize a curve by arclength.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResampleMethod {
    /// Periodic trigonometric interpolation of the node coordinates.
    #[default]
    Trigonometric,
    /// Periodic cubic spline in chord-length parametrization.
    CubicSpline,
}

/// Resamples to `n` nodes at equal Euclidean arclength with the default interpolant.
pub fn resample_uniform<T: Real>(curve: &ProfileCurve<T>, n: usize) -> Result<ProfileCurve<T>> {
    resample_uniform_with(curve, n, ResampleMethod::default())
}

pub fn resample_uniform_with<T: Real>(
    curve: &ProfileCurve<T>,
    n: usize,
    method: ResampleMethod,
) -> Result<ProfileCurve<T>> {
    if n < 16 || !n.is_multiple_of(2) {
        return Err(Error::NodeCount(n));
    }
    for k in 0..curve.len() {
        if curve.segment_length(k) <= T::zero() {
            return Err(Error::DegenerateSegment { index: k });
        }
    }
    let (x, y) = match method {
        ResampleMethod::Trigonometric => trigonometric(curve, n),
        ResampleMethod::CubicSpline => cubic(curve, n),
    };
    ProfileCurve::new(x, y)
}

/// Real trigonometric interpolant of periodic samples on `[0, 1)`.
struct TrigSeries<T> {
    mean: T,
    cos: Vec<T>,
    sin: Vec<T>,
    nyquist: T,
}

impl<T: Real> TrigSeries<T> {
    fn fit(samples: &[T], table: &[(T, T)]) -> Self {
        let n = samples.len();
        let half = n / 2;
        let scale = T::lit(2.0) / T::count(n);
        let mean = samples.iter().copied().sum::<T>() / T::count(n);
        let mut cos = vec![T::zero(); half];
        let mut sin = vec![T::zero(); half];
        for j in 1..half {
            let (mut a, mut b) = (T::zero(), T::zero());
            for (k, &f) in samples.iter().enumerate() {
                let (c, s) = table[(j * k) % n];
                a += f * c;
                b += f * s;
            }
            cos[j] = a * scale;
            sin[j] = b * scale;
        }
        let nyquist = samples
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f } else { -f })
            .sum::<T>()
            / T::count(n);
        Self {
            mean,
            cos,
            sin,
            nyquist,
        }
    }

    /// Value, derivative and antiderivative (zero at `u = 0`) at `u`.
    fn eval(&self, u: T) -> (T, T, T) {
        let half = self.cos.len();
        let tau = T::TAU();
        let theta = tau * u;
        let (s1, c1) = theta.sin_cos();
        let (mut cj, mut sj) = (c1, s1);
        let mut val = self.mean;
        let mut der = T::zero();
        let mut integral = self.mean * u;
        for j in 1..half {
            let w = tau * T::count(j);
            let (a, b) = (self.cos[j], self.sin[j]);
            val += a * cj + b * sj;
            der += w * (b * cj - a * sj);
            integral += (a * sj + b * (T::one() - cj)) / w;
            let next_c = cj * c1 - sj * s1;
            sj = sj * c1 + cj * s1;
            cj = next_c;
        }
        let wn = T::PI() * T::count(2 * half);
        let (sn, cn) = (wn * u).sin_cos();
        val += self.nyquist * cn;
        der -= self.nyquist * wn * sn;
        integral += self.nyquist * sn / wn;
        (val, der, integral)
    }
}

fn twiddles<T: Real>(n: usize) -> Vec<(T, T)> {
    (0..n)
        .map(|m| {
            let (s, c) = (T::TAU() * T::count(m) / T::count(n)).sin_cos();
            (c, s)
        })
        .collect()
}

fn trigonometric<T: Real>(curve: &ProfileCurve<T>, n_out: usize) -> (Vec<T>, Vec<T>) {
    let n = curve.len();
    let table = twiddles::<T>(n);
    let xs = TrigSeries::fit(curve.x(), &table);
    let ys = TrigSeries::fit(curve.y(), &table);
    let du = curve.du();
    let speed: Vec<T> = (0..n)
        .map(|k| {
            let u = T::count(k) * du;
            xs.eval(u).1.hypot(ys.eval(u).1)
        })
        .collect();
    let sigma = TrigSeries::fit(&speed, &table);
    let total = sigma.mean;

    // cumulative arclength at the old nodes seeds the Newton iteration
    let cumulative: Vec<T> = (0..=n).map(|k| sigma.eval(T::count(k) * du).2).collect();
    let mut params = Vec::with_capacity(n_out);
    let mut seg = 0usize;
    for m in 0..n_out {
        let target = total * T::count(m) / T::count(n_out);
        while seg + 1 < n && cumulative[seg + 1] < target {
            seg += 1;
        }
        let span = cumulative[seg + 1] - cumulative[seg];
        let frac = if span > T::zero() {
            (target - cumulative[seg]) / span
        } else {
            T::zero()
        };
        let mut u = (T::count(seg) + frac) * du;
        for _ in 0..30 {
            let (s, _, s_int) = sigma.eval(u);
            let step = (s_int - target) / s;
            u -= step;
            if step.abs() <= T::epsilon() * T::lit(4.0) {
                break;
            }
        }
        params.push(u);
    }
    params
        .into_iter()
        .map(|u| (xs.eval(u).0, ys.eval(u).0))
        .unzip()
}

/// Solves the periodic tridiagonal system with constant bands `(1, 4, 1)` scaled
/// per-row by the chord parameters, via Sherman–Morrison on the cyclic corner.
fn periodic_spline_second_derivatives<T: Real>(f: &[T], h: &[T]) -> Vec<T> {
    let n = f.len();
    let six = T::lit(6.0);
    let two = T::lit(2.0);
    // row k: h[k-1] m[k-1] + 2 (h[k-1] + h[k]) m[k] + h[k] m[k+1] = rhs[k]
    let prev = |k: usize| (k + n - 1) % n;
    let mut sub = vec![T::zero(); n];
    let mut diag = vec![T::zero(); n];
    let mut sup = vec![T::zero(); n];
    let mut rhs = vec![T::zero(); n];
    for k in 0..n {
        let hp = h[prev(k)];
        let hk = h[k];
        sub[k] = hp;
        diag[k] = two * (hp + hk);
        sup[k] = hk;
        let next = (k + 1) % n;
        rhs[k] = six * ((f[next] - f[k]) / hk - (f[k] - f[prev(k)]) / hp);
    }
    cyclic_thomas(&sub, &diag, &sup, &rhs)
}

fn cyclic_thomas<T: Real>(a: &[T], b: &[T], c: &[T], d: &[T]) -> Vec<T> {
    let n = b.len();
    let alpha = c[n - 1];
    let beta = a[0];
    let gamma = -b[0];
    let mut bb = b.to_vec();
    bb[0] = b[0] - gamma;
    bb[n - 1] = b[n - 1] - alpha * beta / gamma;
    let x = thomas(a, &bb, c, d);
    let mut u = vec![T::zero(); n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(a, &bb, c, &u);
    let factor = (x[0] + beta * x[n - 1] / gamma) / (T::one() + z[0] + beta * z[n - 1] / gamma);
    x.iter()
        .zip(&z)
        .map(|(&xi, &zi)| xi - factor * zi)
        .collect()
}

fn thomas<T: Real>(a: &[T], b: &[T], c: &[T], d: &[T]) -> Vec<T> {
    let n = b.len();
    let mut cp = vec![T::zero(); n];
    let mut dp = vec![T::zero(); n];
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for i in 1..n {
        let m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    let mut x = vec![T::zero(); n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

struct Spline<'a, T> {
    f: &'a [T],
    m: Vec<T>,
    h: &'a [T],
}

impl<T: Real> Spline<'_, T> {
    /// Value and derivative on segment `k` at local offset `t ∈ [0, h_k]`.
    fn eval(&self, k: usize, t: T) -> (T, T) {
        let n = self.f.len();
        let j = (k + 1) % n;
        let h = self.h[k];
        let six = T::lit(6.0);
        let (fa, fb, ma, mb) = (self.f[k], self.f[j], self.m[k], self.m[j]);
        let a = h - t;
        let val = ma * a * a * a / (six * h)
            + mb * t * t * t / (six * h)
            + (fa / h - ma * h / six) * a
            + (fb / h - mb * h / six) * t;
        let der = -ma * a * a / (T::lit(2.0) * h) + mb * t * t / (T::lit(2.0) * h) - fa / h
            + ma * h / six
            + fb / h
            - mb * h / six;
        (val, der)
    }
}

fn cubic<T: Real>(curve: &ProfileCurve<T>, n_out: usize) -> (Vec<T>, Vec<T>) {
    let n = curve.len();
    let h: Vec<T> = (0..n).map(|k| curve.segment_length(k)).collect();
    let sx = Spline {
        f: curve.x(),
        m: periodic_spline_second_derivatives(curve.x(), &h),
        h: &h,
    };
    let sy = Spline {
        f: curve.y(),
        m: periodic_spline_second_derivatives(curve.y(), &h),
        h: &h,
    };
    let speed = |k: usize, t: T| {
        let (_, dx) = sx.eval(k, t);
        let (_, dy) = sy.eval(k, t);
        dx.hypot(dy)
    };
    // 5-point Gauss–Legendre per segment
    let nodes = [
        (0.0, 128.0 / 225.0),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let seg_len = |k: usize, upto: T| -> T {
        let half = upto / T::lit(2.0);
        nodes
            .iter()
            .map(|&(z, w)| T::lit(w) * speed(k, half * (T::one() + T::lit(z))))
            .sum::<T>()
            * half
    };
    let mut cumulative = vec![T::zero(); n + 1];
    for k in 0..n {
        cumulative[k + 1] = cumulative[k] + seg_len(k, h[k]);
    }
    let total = cumulative[n];
    let mut xs = Vec::with_capacity(n_out);
    let mut ys = Vec::with_capacity(n_out);
    let mut k = 0usize;
    for m in 0..n_out {
        let target = total * T::count(m) / T::count(n_out);
        while k + 1 < n && cumulative[k + 1] < target {
            k += 1;
        }
        let remaining = target - cumulative[k];
        let full = cumulative[k + 1] - cumulative[k];
        let mut t = h[k] * remaining / full;
        for _ in 0..20 {
            let step = (seg_len(k, t) - remaining) / speed(k, t);
            t -= step;
            if step.abs() <= T::epsilon() * T::lit(16.0) * h[k] {
                break;
            }
        }
        xs.push(sx.eval(k, t).0);
        ys.push(sy.eval(k, t).0);
    }
    (xs, ys)
}
