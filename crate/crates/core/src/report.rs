//! Per-snapshot diagnostics rows and their CSV encoding.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagnostics::conformal_class;
use crate::hcurve::{total_curvature, CurveGeometry, ProfileCurve};
use crate::surface::{diameter, surface_from_geometry};
use crate::Real;

/// One line of a run's time series. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub step: u64,
    pub dt: f64,
    #[serde(rename = "W")]
    pub willmore: f64,
    #[serde(rename = "E")]
    pub elastic_energy: f64,
    #[serde(rename = "L_H")]
    pub hyperbolic_length: f64,
    #[serde(rename = "L_euc")]
    pub euclidean_length: f64,
    pub area: f64,
    pub diam: f64,
    /// `None` when the polyline turning sum is not close to an integer.
    #[serde(rename = "T")]
    pub total_curvature: Option<i64>,
    /// Conformal class `ω = i b`.
    pub b: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// `max |A|` over the nodes.
    pub kappa_max: f64,
    #[serde(rename = "V_max")]
    pub speed_max: f64,
    pub dissipation: f64,
    /// `(W(0) − W(t)) − dissipation`.
    pub energy_balance_residual: f64,
}

/// CSV header matching [`DiagnosticsRow`] field order.
pub const CSV_HEADER: &str = "t,step,dt,W,E,L_H,L_euc,area,diam,T,b,y_min,y_max,kappa_max,V_max,dissipation,energy_balance_residual";

impl DiagnosticsRow {
    /// Geometric columns of `curve`; the time-stepping columns are filled by the caller.
    pub fn measure<T: Real>(curve: &ProfileCurve<T>) -> Self {
        let g = CurveGeometry::new(curve);
        let q = surface_from_geometry(curve, &g);
        let l_h = g.hyperbolic_length().as_f64();
        let kappa_max = q.a2.iter().fold(0.0f64, |m, a| m.max(a.as_f64())).sqrt();
        Self {
            t: 0.0,
            step: 0,
            dt: 0.0,
            willmore: q.willmore.as_f64(),
            elastic_energy: g.elastic_energy().as_f64(),
            hyperbolic_length: l_h,
            euclidean_length: g.euclidean_length().as_f64(),
            area: q.area.as_f64(),
            diam: diameter(curve).as_f64(),
            total_curvature: total_curvature(curve).ok().map(|t| t.turning),
            b: conformal_class(l_h).unwrap_or(f64::NAN),
            y_min: curve.y_min().as_f64(),
            y_max: curve.y_max().as_f64(),
            kappa_max,
            speed_max: 0.0,
            dissipation: 0.0,
            energy_balance_residual: 0.0,
        }
    }

    /// One CSV line without the trailing newline. Floats use shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(320);
        let t = self
            .total_curvature
            .map_or_else(String::new, |t| t.to_string());
        let _ = write!(
            s,
            "{:?},{},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{},{:?},{:?},{:?},{:?},{:?},{:?},{:?}",
            self.t,
            self.step,
            self.dt,
            self.willmore,
            self.elastic_energy,
            self.hyperbolic_length,
            self.euclidean_length,
            self.area,
            self.diam,
            t,
            self.b,
            self.y_min,
            self.y_max,
            self.kappa_max,
            self.speed_max,
            self.dissipation,
            self.energy_balance_residual
        );
        s
    }
}

/// Header plus one line per row, newline terminated.
pub fn rows_to_csv(rows: &[DiagnosticsRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Range of the conformal class `b` sampled along a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassInterval {
    pub lo: f64,
    pub hi: f64,
    /// Largest change of `b` between consecutive rows: the sampling resolution.
    pub max_jump: f64,
}

pub fn class_interval(rows: &[DiagnosticsRow]) -> Option<ClassInterval> {
    let b: Vec<f64> = rows.iter().map(|r| r.b).filter(|b| b.is_finite()).collect();
    let first = *b.first()?;
    let (lo, hi) = b
        .iter()
        .fold((first, first), |(l, h), &v| (l.min(v), h.max(v)));
    let max_jump = b
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max);
    Some(ClassInterval { lo, hi, max_jump })
}

/// Total length of `[lo, hi]` not covered by the union of `intervals`.
pub fn uncovered_length(intervals: &[(f64, f64)], lo: f64, hi: f64) -> f64 {
    let mut iv: Vec<(f64, f64)> = intervals
        .iter()
        .map(|&(a, b)| (a.max(lo), b.min(hi)))
        .filter(|(a, b)| a < b)
        .collect();
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut gap = 0.0;
    let mut reach = lo;
    for (a, b) in iv {
        if a > reach {
            gap += a - reach;
        }
        reach = reach.max(b);
    }
    gap + (hi - reach).max(0.0)
}
