//! Initial profile curves: circles, perturbed Clifford circles, figure-eights and files.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hcurve::{io, resample_uniform, ProfileCurve};
use crate::Real;

/// Geometric family of an initial curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveShape {
    /// Circle of radius `rho` centred at `(x0, c)`.
    Circle {
        c: f64,
        rho: f64,
        #[serde(default)]
        x0: f64,
    },
    /// Circle whose revolved torus has conformal class `i b`.
    CircleByClass {
        b: f64,
        #[serde(default = "one")]
        scale: f64,
        #[serde(default)]
        x0: f64,
    },
    /// Clifford circle with radius `(scale/√2)(1 + a cos(mθ))`.
    PerturbedClifford {
        amplitude: f64,
        mode: u32,
        #[serde(default = "one")]
        scale: f64,
        #[serde(default)]
        x0: f64,
    },
    /// `(w sin 2t, h + l sin t)`, turning number zero.
    FigureEight {
        height: f64,
        width: f64,
        lobe: f64,
    },
    FromFile {
        path: PathBuf,
    },
}

fn one() -> f64 {
    1.0
}

/// Shape plus node count; `n = None` picks the per-shape default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub shape: CurveShape,
    #[serde(default)]
    pub n: Option<usize>,
}

impl CurveSpec {
    pub fn new(shape: CurveShape, n: usize) -> Self {
        Self { shape, n: Some(n) }
    }

    pub fn node_count(&self) -> Option<usize> {
        self.n.or(match self.shape {
            CurveShape::FigureEight { .. } => Some(512),
            CurveShape::FromFile { .. } => None,
            _ => Some(256),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        match self.shape {
            CurveShape::Circle { c, rho, .. } => {
                if !(rho > 0.0 && rho < c) {
                    return bad(format!("circle needs 0 < rho < c, got rho={rho}, c={c}"));
                }
            }
            CurveShape::CircleByClass { b, scale, .. } => {
                if !(b >= 1.0) || !(scale > 0.0) {
                    return bad(format!(
                        "class circle needs b >= 1 and scale > 0, got b={b}, scale={scale}"
                    ));
                }
            }
            CurveShape::PerturbedClifford {
                amplitude, scale, ..
            } => {
                let rho = std::f64::consts::FRAC_1_SQRT_2;
                if !(amplitude.abs() < rho / 2.0) || !(scale > 0.0) {
                    return bad(format!(
                        "perturbation needs |a| < {} and scale > 0, got a={amplitude}, scale={scale}",
                        rho / 2.0
                    ));
                }
            }
            CurveShape::FigureEight {
                height,
                width,
                lobe,
            } => {
                if !(lobe > 0.0 && height > lobe && width > 0.0) {
                    return bad(format!(
                        "figure-eight needs h > l > 0 and w > 0, got h={height}, l={lobe}, w={width}"
                    ));
                }
            }
            CurveShape::FromFile { .. } => {}
        }
        if let Some(n) = self.n {
            if n < 16 || n % 2 != 0 {
                return Err(Error::NodeCount(n));
            }
        }
        Ok(())
    }
}

/// Builds the initial curve described by `spec`. Deterministic in `spec`.
pub fn generate<T: Real>(spec: &CurveSpec) -> Result<ProfileCurve<T>> {
    spec.validate()?;
    if let CurveShape::FromFile { path } = &spec.shape {
        let curve: ProfileCurve<T> = io::load_curve(path)?;
        return match spec.n {
            Some(n) if n != curve.len() => resample_uniform(&curve, n),
            _ => Ok(curve),
        };
    }
    let n = spec
        .node_count()
        .expect("analytic shapes have a default node count");
    let angle = |k: usize| T::TAU() * T::count(k) / T::count(n);
    let (x, y): (Vec<T>, Vec<T>) = match spec.shape {
        CurveShape::Circle { c, rho, x0 } => circle(n, x0, c, rho),
        CurveShape::CircleByClass { b, scale, x0 } => {
            let (c, rho) = class_circle(b, scale);
            circle(n, x0, c, rho)
        }
        CurveShape::PerturbedClifford {
            amplitude,
            mode,
            scale,
            x0,
        } => {
            let (a, m) = (T::lit(amplitude), T::count(mode as usize));
            let base = T::lit(scale) * T::FRAC_1_SQRT_2();
            (0..n)
                .map(|k| {
                    let th = angle(k);
                    let r = base * (T::one() + a * (m * th).cos());
                    (T::lit(x0) + r * th.cos(), T::lit(scale) + r * th.sin())
                })
                .unzip()
        }
        CurveShape::FigureEight {
            height,
            width,
            lobe,
        } => (0..n)
            .map(|k| {
                let t = angle(k);
                (
                    T::lit(width) * (t + t).sin(),
                    T::lit(height) + T::lit(lobe) * t.sin(),
                )
            })
            .unzip(),
        CurveShape::FromFile { .. } => unreachable!(),
    };
    ProfileCurve::new(x, y)
}

/// Centre height and radius of the circle with conformal class `i b` at the given scale:
/// `c = scale`, `ρ = scale · b / √(1 + b²)`, so that `ρ / √(c² − ρ²) = b`.
pub fn class_circle(b: f64, scale: f64) -> (f64, f64) {
    (scale, scale * b / (1.0 + b * b).sqrt())
}

fn circle<T: Real>(n: usize, x0: f64, c: f64, rho: f64) -> (Vec<T>, Vec<T>) {
    let (x0, c, rho) = (T::lit(x0), T::lit(c), T::lit(rho));
    (0..n)
        .map(|k| {
            let th = T::TAU() * T::count(k) / T::count(n);
            (x0 + rho * th.cos(), c + rho * th.sin())
        })
        .unzip()
}

/// Clifford profile circle: centre `(0, 1)`, radius `1/√2`.
pub fn clifford<T: Real>(n: usize) -> ProfileCurve<T> {
    generate(&CurveSpec::new(
        CurveShape::CircleByClass {
            b: 1.0,
            scale: 1.0,
            x0: 0.0,
        },
        n,
    ))
    .expect("Clifford circle is a valid profile curve")
}
