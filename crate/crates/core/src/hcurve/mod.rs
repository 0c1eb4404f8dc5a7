//! Closed curves in the hyperbolic half-plane.
//!
//! A [`ProfileCurve`] is sampled at `N` uniform parameter values `u_k = k/N` on the
//! periodic circle `R/Z`. Derivatives use periodic fourth-order stencils and all
//! integrals are trapezoid sums on the uniform grid, which is spectrally accurate
//! for smooth periodic integrands.
//!
//! The half-plane carries the metric `(dx² + dy²) / y²`. With hyperbolic arclength
//! derivative `∂_s = (y / |γ'|) ∂_u` the curvature vector is
//!
//! ```text
//! κ = ( ∂_s²x − (2/y) ∂_s x ∂_s y ,  ∂_s²y + (1/y)((∂_s x)² − (∂_s y)²) )
//! ```

mod geometry;
pub mod io;
mod resample;
pub mod stencil;

pub use geometry::{elastica_residual, hyperbolic_curvature, CurveGeometry};
pub use resample::{resample_uniform, resample_uniform_with, ResampleMethod};

use crate::error::{Error, Result};
use crate::Real;

/// Validation limits for a [`ProfileCurve`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveLimits {
    /// Nodes with `y <= y_floor` are rejected.
    pub y_floor: f64,
    /// Largest allowed ratio between the longest and shortest segment.
    pub q_max: f64,
}

impl Default for CurveLimits {
    fn default() -> Self {
        Self {
            y_floor: 1e-8,
            q_max: 10.0,
        }
    }
}

/// Periodic sampled immersed curve in the open upper half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileCurve<T> {
    x: Vec<T>,
    y: Vec<T>,
}

impl<T: Real> ProfileCurve<T> {
    /// Builds a curve and checks it against the default [`CurveLimits`].
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        Self::with_limits(x, y, &CurveLimits::default())
    }

    pub fn with_limits(x: Vec<T>, y: Vec<T>, limits: &CurveLimits) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidArgument(format!(
                "coordinate lengths differ: {} vs {}",
                x.len(),
                y.len()
            )));
        }
        let curve = Self { x, y };
        curve.validate(limits)?;
        Ok(curve)
    }

    pub fn from_points(points: &[[T; 2]]) -> Result<Self> {
        let (x, y) = points.iter().map(|p| (p[0], p[1])).unzip();
        Self::new(x, y)
    }

    /// Checks node count, half-plane membership, immersion and mesh quality.
    pub fn validate(&self, limits: &CurveLimits) -> Result<()> {
        let n = self.len();
        if n < 16 || !n.is_multiple_of(2) {
            return Err(Error::NodeCount(n));
        }
        for k in 0..n {
            if !self.x[k].is_finite() || !self.y[k].is_finite() {
                return Err(Error::NonFinite { index: k });
            }
            if self.y[k].as_f64() <= limits.y_floor {
                return Err(Error::BelowHalfPlane {
                    index: k,
                    y: self.y[k].as_f64(),
                });
            }
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for k in 0..n {
            let s = self.segment_length(k).as_f64();
            if s <= 0.0 {
                return Err(Error::DegenerateSegment { index: k });
            }
            lo = lo.min(s);
            hi = hi.max(s);
        }
        let ratio = hi / lo;
        if ratio > limits.q_max {
            return Err(Error::MeshQuality {
                ratio,
                limit: limits.q_max,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    #[inline]
    pub fn x(&self) -> &[T] {
        &self.x
    }

    #[inline]
    pub fn y(&self) -> &[T] {
        &self.y
    }

    #[inline]
    pub fn point(&self, k: usize) -> [T; 2] {
        [self.x[k], self.y[k]]
    }

    pub fn points(&self) -> impl Iterator<Item = [T; 2]> + '_ {
        self.x.iter().zip(&self.y).map(|(&x, &y)| [x, y])
    }

    /// Parameter spacing `1/N`.
    #[inline]
    pub fn du(&self) -> T {
        T::one() / T::count(self.len())
    }

    /// Length of the chord from node `k` to node `k + 1` (periodic).
    pub fn segment_length(&self, k: usize) -> T {
        let j = (k + 1) % self.len();
        (self.x[j] - self.x[k]).hypot(self.y[j] - self.y[k])
    }

    /// Ratio of longest to shortest chord.
    pub fn mesh_ratio(&self) -> T {
        let (lo, hi) = (0..self.len())
            .map(|k| self.segment_length(k))
            .fold((T::infinity(), T::zero()), |(lo, hi), s| {
                (lo.min(s), hi.max(s))
            });
        hi / lo
    }

    pub fn min_segment(&self) -> T {
        (0..self.len())
            .map(|k| self.segment_length(k))
            .fold(T::infinity(), T::min)
    }

    pub fn y_min(&self) -> T {
        self.y.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn y_max(&self) -> T {
        self.y.iter().copied().fold(T::neg_infinity(), T::max)
    }

    /// `(x, y) ↦ λ (x, y)`, an isometry of the half-plane for `λ > 0`.
    pub fn scaled(&self, lambda: T) -> Self {
        assert!(lambda > T::zero(), "scale factor must be positive");
        Self {
            x: self.x.iter().map(|&v| v * lambda).collect(),
            y: self.y.iter().map(|&v| v * lambda).collect(),
        }
    }

    /// Translation along the rotation axis.
    pub fn translated(&self, dx: T) -> Self {
        Self {
            x: self.x.iter().map(|&v| v + dx).collect(),
            y: self.y.clone(),
        }
    }

    /// Same point set, cyclically relabelled so that node `shift` becomes node 0.
    pub fn rotated_labels(&self, shift: usize) -> Self {
        let n = self.len();
        let idx = |k: usize| (k + shift) % n;
        Self {
            x: (0..n).map(|k| self.x[idx(k)]).collect(),
            y: (0..n).map(|k| self.y[idx(k)]).collect(),
        }
    }

    /// Reverses orientation.
    pub fn reversed(&self) -> Self {
        Self {
            x: self.x.iter().rev().copied().collect(),
            y: self.y.iter().rev().copied().collect(),
        }
    }
}

/// Euclidean length `∫ |γ'| du`, trapezoid rule on the stencil speed.
pub fn euclidean_length<T: Real>(curve: &ProfileCurve<T>) -> T {
    hyperbolic_curvature(curve).euclidean_length()
}

/// Hyperbolic length `∫ |γ'| / γ⁽²⁾ du`.
pub fn hyperbolic_length<T: Real>(curve: &ProfileCurve<T>) -> T {
    hyperbolic_curvature(curve).hyperbolic_length()
}

/// Elastic energy `∫ |κ|²_{H²} ds` in hyperbolic arclength.
pub fn elastic_energy<T: Real>(curve: &ProfileCurve<T>) -> T {
    hyperbolic_curvature(curve).elastic_energy()
}

/// Turning number of a closed curve together with the raw turning-angle sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TotalCurvature<T> {
    pub turning: i64,
    pub raw: T,
}

/// Tolerance on `|raw − round(raw)|` accepted by [`total_curvature`].
pub const TOTAL_CURVATURE_TOL: f64 = 1e-8;

/// `(1/2π) Σ` of the signed exterior angles of the polyline.
pub fn total_curvature<T: Real>(curve: &ProfileCurve<T>) -> Result<TotalCurvature<T>> {
    let n = curve.len();
    let (x, y) = (curve.x(), curve.y());
    let seg = |k: usize| {
        let j = (k + 1) % n;
        (x[j] - x[k], y[j] - y[k])
    };
    let mut sum = T::zero();
    let mut prev = seg(n - 1);
    for k in 0..n {
        let cur = seg(k);
        let cross = prev.0 * cur.1 - prev.1 * cur.0;
        let dot = prev.0 * cur.0 + prev.1 * cur.1;
        sum += cross.atan2(dot);
        prev = cur;
    }
    let raw = sum / T::TAU();
    let nearest = raw.round();
    let tol = TOTAL_CURVATURE_TOL.max(1e3 * T::epsilon().as_f64());
    if (raw - nearest).abs().as_f64() >= tol {
        return Err(Error::Resolution {
            raw: raw.as_f64(),
            tol,
        });
    }
    Ok(TotalCurvature {
        turning: nearest.to_i64().unwrap_or(0),
        raw,
    })
}
