//! Curvature concentration radius of a torus of revolution.
//!
//! For a ball `B_r(p)` with `p = (h, ρ_c cos θ, ρ_c sin θ)` the revolution symmetry lets
//! us take `θ = 0`. At meridian parameter `u` the squared distance to `p` is
//! `(x − h)² + y² + ρ_c² − 2 y ρ_c cos 2πv`, so the fraction of the revolution circle
//! inside the ball is `arccos(clamp((d₀ − r²) / (2 y ρ_c))) / π` in closed form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hcurve::{CurveGeometry, ProfileCurve};
use crate::surface::surface_from_geometry;
use crate::Real;

/// `|A|² dμ` per meridian node together with the node positions.
#[derive(Clone, Debug)]
pub struct ConcentrationField {
    x: Vec<f64>,
    y: Vec<f64>,
    weight: Vec<f64>,
    total: f64,
}

impl ConcentrationField {
    pub fn new<T: Real>(curve: &ProfileCurve<T>) -> Self {
        let g = CurveGeometry::new(curve);
        let q = surface_from_geometry(curve, &g);
        let weight: Vec<f64> =
            q.a2.iter()
                .zip(&q.measure)
                .map(|(a, m)| (*a * *m).as_f64())
                .collect();
        Self {
            x: curve.x().iter().map(|v| v.as_f64()).collect(),
            y: curve.y().iter().map(|v| v.as_f64()).collect(),
            total: weight.iter().sum(),
            weight,
        }
    }

    /// `∫ |A|² dμ` over the whole torus.
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// `∫_{F⁻¹(B_r(p))} |A|² dμ` for the centre `p = (h, ρ_c, 0)`.
    pub fn integral(&self, r: f64, h: f64, rho_c: f64) -> f64 {
        let r2 = r * r;
        let mut sum = 0.0;
        for k in 0..self.x.len() {
            let (x, y) = (self.x[k], self.y[k]);
            let d0 = (x - h) * (x - h) + y * y + rho_c * rho_c;
            let frac = if rho_c <= 0.0 {
                if d0 < r2 {
                    1.0
                } else {
                    0.0
                }
            } else {
                let c = (d0 - r2) / (2.0 * y * rho_c);
                if c >= 1.0 {
                    continue;
                }
                c.max(-1.0).acos() / std::f64::consts::PI
            };
            sum += frac * self.weight[k];
        }
        sum
    }

    fn candidates(&self) -> Vec<[f64; 2]> {
        let (lo, hi) = self
            .x
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(v), b.max(v))
            });
        let ymax = self.y.iter().copied().fold(0.0, f64::max);
        let (lo, hi) = (lo - ymax, hi + ymax);
        let axis = 64;
        let mut c: Vec<[f64; 2]> = self.x.iter().zip(&self.y).map(|(&x, &y)| [x, y]).collect();
        c.extend((0..=axis).map(|j| [lo + (hi - lo) * j as f64 / axis as f64, 0.0]));
        c
    }

    /// Largest captured integral over candidate centres at radius `r`, refined by a
    /// compass search in the meridian half-plane from the best candidates.
    pub fn max_integral(&self, r: f64) -> (f64, [f64; 2]) {
        let mut scored: Vec<(f64, [f64; 2])> = self
            .candidates()
            .into_iter()
            .map(|p| (self.integral(r, p[0], p[1]), p))
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut best = scored[0];
        for &(start_val, start) in scored.iter().take(3) {
            let refined = self.compass(r, start, start_val);
            if refined.0 > best.0 {
                best = refined;
            }
        }
        best
    }

    fn compass(&self, r: f64, start: [f64; 2], start_val: f64) -> (f64, [f64; 2]) {
        let mut p = start;
        let mut val = start_val;
        let mut step = 0.25 * r;
        while step > 1e-5 * r {
            let mut moved = false;
            for d in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
                let q = [p[0] + step * d[0], (p[1] + step * d[1]).max(0.0)];
                let v = self.integral(r, q[0], q[1]);
                if v > val {
                    val = v;
                    p = q;
                    moved = true;
                    break;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        (val, p)
    }
}

/// `∫_{F⁻¹(B_r(p))} |A|² dμ` with `p = (h, ρ_c, 0)` in the meridian half-plane.
pub fn concentration_integral<T: Real>(curve: &ProfileCurve<T>, r: f64, center: [f64; 2]) -> f64 {
    ConcentrationField::new(curve).integral(r, center[0], center[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub epsilon0: f64,
    /// Largest verified radius at which no ball captures more than `epsilon0`;
    /// infinite when `epsilon0` is at least the total `∫|A|² dμ`.
    pub r_star: f64,
    /// Centre `(h, ρ_c)` that captures the most at `r_star`.
    pub center: [f64; 2],
    pub integral_at_center: f64,
    /// Upper end of the final bisection bracket.
    pub r_upper: f64,
    pub total: f64,
}

/// Relative width of the final `r` bracket.
pub const RADIUS_BRACKET_REL: f64 = 1e-4;

/// Bisection in `r` on `r ↦ max_p ∫_{F⁻¹(B_r(p))} |A|² dμ`, which is nondecreasing.
pub fn concentration_radius<T: Real>(
    curve: &ProfileCurve<T>,
    epsilon0: f64,
) -> Result<ConcentrationReport> {
    if !(epsilon0 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon0 must be positive, got {epsilon0}"
        )));
    }
    let field = ConcentrationField::new(curve);
    let total = field.total();
    if epsilon0 >= total {
        return Ok(ConcentrationReport {
            epsilon0,
            r_star: f64::INFINITY,
            center: [f64::NAN, f64::NAN],
            integral_at_center: total,
            r_upper: f64::INFINITY,
            total,
        });
    }
    // every ball of radius above the diameter around a surface point captures everything
    let mut hi = 2.0 * crate::surface::diameter(curve).as_f64();
    let mut lo = hi;
    loop {
        lo *= 0.5;
        if field.max_integral(lo).0 <= epsilon0 {
            break;
        }
        hi = lo;
        if lo < 1e-12 {
            return Err(Error::InvalidArgument(
                "concentration radius below resolution".into(),
            ));
        }
    }
    while hi - lo > RADIUS_BRACKET_REL * lo {
        let mid = 0.5 * (lo + hi);
        if field.max_integral(mid).0 <= epsilon0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (integral_at_center, center) = field.max_integral(lo);
    Ok(ConcentrationReport {
        epsilon0,
        r_star: lo,
        center,
        integral_at_center,
        r_upper: hi,
        total,
    })
}
