use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;

use revoflow::report::rows_to_csv;
use revoflow::{
    class_interval, generate, run_many, uncovered_length, Curve, CurveShape, CurveSpec,
    FlowOutcome, OutcomeKind,
};

use crate::config::{self, SweepConfig};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "REVOFLOW_THREADS";

const EIGHT_PI: f64 = 8.0 * std::f64::consts::PI;

/// One CSV line per grid value; empty cells where a run never started.
#[derive(Debug, Default, Serialize)]
struct SweepRow {
    b: f64,
    #[serde(rename = "W0")]
    w0: Option<f64>,
    below_8pi: Option<bool>,
    outcome: Option<OutcomeKind>,
    steps: Option<u64>,
    t: Option<f64>,
    #[serde(rename = "W_final")]
    w_final: Option<f64>,
    #[serde(rename = "W_max")]
    w_max: Option<f64>,
    b_lo: Option<f64>,
    b_hi: Option<f64>,
    b_max_jump: Option<f64>,
    b_fit: Option<f64>,
    error: Option<String>,
}

pub fn run(path: &Path) -> Result<()> {
    let mut cfg: SweepConfig = config::load(path)?;
    cfg.output.dir = config::resolve(path.parent().unwrap_or(Path::new(".")), &cfg.output.dir);
    sweep(&cfg)
}

fn threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            Ok(Some(v.trim().parse().with_context(|| {
                format!("{THREADS_ENV}={v} is not a count")
            })?))
        }
        Err(_) => Ok(None),
    }
}

pub fn sweep(cfg: &SweepConfig) -> Result<()> {
    cfg.flow.validate().context("invalid [flow]")?;
    let dir = &cfg.output.dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;

    let mut rows: Vec<SweepRow> = Vec::with_capacity(cfg.b_grid.len());
    let mut curves: Vec<Curve> = Vec::new();
    let mut slots: Vec<usize> = Vec::new();
    for &b in &cfg.b_grid {
        let spec = CurveSpec::new(
            CurveShape::CircleByClass {
                b,
                scale: cfg.scale,
                x0: 0.0,
            },
            cfg.n,
        );
        let mut row = SweepRow {
            b,
            ..Default::default()
        };
        match generate::<f64>(&spec) {
            Ok(c) => {
                slots.push(rows.len());
                curves.push(c);
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        rows.push(row);
    }

    let results = run_many(&curves, &cfg.flow, threads()?);
    let mut covered = Vec::new();
    let mut resolution: f64 = 0.0;
    for (slot, res) in slots.into_iter().zip(results) {
        let row = &mut rows[slot];
        match res {
            Ok(o) => {
                fill(row, &o);
                if cfg.output.rows {
                    let p = dir.join(format!("rows_b{:.4}.csv", row.b));
                    fs::write(&p, rows_to_csv(&o.rows))
                        .with_context(|| format!("writing {}", p.display()))?;
                }
                if o.kind == OutcomeKind::Converged && row.w_max.is_some_and(|w| w < EIGHT_PI) {
                    if let (Some(lo), Some(hi)) = (row.b_lo, row.b_hi) {
                        covered.push((lo, hi));
                        resolution = resolution.max(row.b_max_jump.unwrap_or(0.0));
                    }
                }
            }
            Err(e) => row.error = Some(e.to_string()),
        }
    }

    let csv_path = dir.join("sweep.csv");
    let mut w = csv::Writer::from_path(&csv_path)
        .with_context(|| format!("creating {}", csv_path.display()))?;
    if rows.is_empty() {
        w.write_record([
            "b",
            "W0",
            "below_8pi",
            "outcome",
            "steps",
            "t",
            "W_final",
            "W_max",
            "b_lo",
            "b_hi",
            "b_max_jump",
            "b_fit",
            "error",
        ])?;
    }
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;

    let in_grid = rows.iter().map(|r| r.b).filter(|b| b.is_finite());
    let (lo, hi) = in_grid.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), b| {
        (l.min(b), h.max(b))
    });
    let uncovered = (lo <= hi).then(|| uncovered_length(&covered, lo.max(1.0), hi.max(1.0)));
    let summary = json!({
        "runs": rows.len(),
        "converged_below_8pi": covered.len(),
        "failed": rows.iter().filter(|r| r.error.is_some()).count(),
        "b_range": (lo <= hi).then_some([lo, hi]),
        "covered": covered,
        "uncovered_length": uncovered,
        "resolution": resolution,
    });
    fs::write(
        dir.join("summary.json"),
        serde_json::to_string_pretty(&summary)? + "\n",
    )?;
    println!(
        "{} runs, {} converged below 8π; uncovered length {}; output in {}",
        rows.len(),
        covered.len(),
        uncovered.map_or("n/a".into(), |u| format!("{u:e}")),
        dir.display()
    );
    Ok(())
}

fn fill(row: &mut SweepRow, o: &FlowOutcome<f64>) {
    let w0 = o.state.initial.willmore;
    row.w0 = Some(w0);
    row.below_8pi = Some(w0 < EIGHT_PI);
    row.outcome = Some(o.kind);
    row.steps = Some(o.state.step);
    row.t = Some(o.state.t);
    row.w_final = o.rows.last().map(|r| r.willmore);
    row.w_max = o.rows.iter().map(|r| r.willmore).reduce(f64::max);
    if let Some(iv) = class_interval(&o.rows) {
        row.b_lo = Some(iv.lo);
        row.b_hi = Some(iv.hi);
        row.b_max_jump = Some(iv.max_jump);
    }
    row.b_fit = o.fit.map(|f| f.b_fit);
}
