use std::path::Path;

use anyhow::Result;
use serde_json::json;

use revoflow::flow::normal_velocity;
use revoflow::hcurve::io::load_curve;
use revoflow::{
    clifford_fit, concentration_radius, elastica_residual, identity_suite, Curve, DiagnosticsRow,
};

pub fn run(path: &Path, epsilon0: Option<f64>, output: Option<&Path>) -> Result<()> {
    let curve: Curve = load_curve(path)?;
    let report = analyze(&curve, epsilon0)?;
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub fn analyze(curve: &Curve, epsilon0: Option<f64>) -> Result<serde_json::Value> {
    let row = DiagnosticsRow::measure(curve);
    let max_abs = |v: Vec<f64>| v.into_iter().fold(0.0, |m: f64, r| m.max(r.abs()));
    let concentration = epsilon0
        .map(|e| concentration_radius(curve, e))
        .transpose()?;
    Ok(json!({
        "n": curve.len(),
        "measures": row,
        "identities": identity_suite(curve),
        "clifford_fit": clifford_fit(curve),
        "elastica_residual_max": max_abs(elastica_residual(curve)),
        "speed_max": max_abs(normal_velocity(curve)),
        "concentration": concentration,
    }))
}
