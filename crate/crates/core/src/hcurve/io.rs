//! Text snapshot format for profile curves.
//!
//! ```text
//! # revoflow-curve v1 N=<n>
//! <u> <x> <y>        (n rows, u = k/n)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{CurveLimits, ProfileCurve};
use crate::error::{Error, Result};
use crate::Real;

pub const HEADER_PREFIX: &str = "# revoflow-curve v1 N=";

/// Renders a curve with round-trip precision.
pub fn format_curve<T: Real>(curve: &ProfileCurve<T>) -> String {
    let n = curve.len();
    let mut out = String::with_capacity(64 * (n + 1));
    let _ = writeln!(out, "{HEADER_PREFIX}{n}");
    for (k, [x, y]) in curve.points().enumerate() {
        let u = k as f64 / n as f64;
        let _ = writeln!(out, "{u} {} {}", x.as_f64(), y.as_f64());
    }
    out
}

pub fn save_curve<T: Real>(path: impl AsRef<Path>, curve: &ProfileCurve<T>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, format_curve(curve)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_curve<T: Real>(path: impl AsRef<Path>) -> Result<ProfileCurve<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_curve(&text, &path.display().to_string())
}

/// Parses snapshot text; `origin` labels errors. Rows with `y <= 0` are rejected by line.
pub fn parse_curve<T: Real>(text: &str, origin: &str) -> Result<ProfileCurve<T>> {
    let err = |line: usize, message: String| Error::Parse {
        path: origin.to_string(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| err(1, "empty file".into()))?;
    let n: usize = header
        .strip_prefix(HEADER_PREFIX)
        .ok_or_else(|| err(hline, format!("expected header `{HEADER_PREFIX}<n>`")))?
        .trim()
        .parse()
        .map_err(|e| err(hline, format!("bad node count: {e}")))?;

    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for (line, row) in lines {
        if row.is_empty() || row.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(
                line,
                format!("expected `u x y`, found {} fields", fields.len()),
            ));
        }
        let mut vals = [0.0f64; 3];
        for (v, f) in vals.iter_mut().zip(&fields) {
            *v = f
                .parse()
                .map_err(|e| err(line, format!("bad number `{f}`: {e}")))?;
        }
        if !vals.iter().all(|v| v.is_finite()) {
            return Err(err(line, "non-finite value".into()));
        }
        if vals[2] <= 0.0 {
            return Err(err(
                line,
                format!("y = {} is not in the open half-plane", vals[2]),
            ));
        }
        x.push(T::lit(vals[1]));
        y.push(T::lit(vals[2]));
    }
    if x.len() != n {
        return Err(err(
            hline,
            format!("header declares {n} rows, found {}", x.len()),
        ));
    }
    ProfileCurve::with_limits(x, y, &CurveLimits::default())
}
