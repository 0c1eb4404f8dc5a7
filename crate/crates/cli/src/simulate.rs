use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::json;

use revoflow::hcurve::io::save_curve;
use revoflow::{class_interval, generate, identity_suite, Curve, Flow, CSV_HEADER};

use crate::config::{self, RunConfig};
use crate::{perturb, svg};

pub fn run(path: &Path) -> Result<()> {
    let mut cfg: RunConfig = config::load(path)?;
    cfg.resolve_paths(path.parent().unwrap_or(Path::new(".")));
    simulate(&cfg)
}

/// Writes `diagnostics.csv`, `curves/` and `summary.json` under `cfg.output.dir`.
pub fn simulate(cfg: &RunConfig) -> Result<()> {
    let mut curve: Curve = generate(&cfg.spec).context("building the initial curve")?;
    if let Some(p) = &cfg.perturb {
        curve = perturb::apply(&curve, p, cfg.seed)?;
    }
    let flow = Flow::new(&curve, cfg.flow.clone()).context("starting the flow")?;

    let out = &cfg.output;
    let curves_dir = out.dir.join("curves");
    fs::create_dir_all(&curves_dir)
        .with_context(|| format!("creating {}", curves_dir.display()))?;
    let csv_path = out.dir.join("diagnostics.csv");
    let mut csv = BufWriter::new(
        File::create(&csv_path).with_context(|| format!("creating {}", csv_path.display()))?,
    );
    writeln!(csv, "{CSV_HEADER}")?;

    let mut io_error: Option<anyhow::Error> = None;
    let mut snapshots: Vec<Curve> = Vec::new();
    let outcome = flow.run_with(&mut |state, row| {
        if io_error.is_some() {
            return;
        }
        let snap = row.step == 0 || (out.curve_every > 0 && row.step % out.curve_every == 0);
        let res = writeln!(csv, "{}", row.to_csv())
            .map_err(anyhow::Error::from)
            .and_then(|_| {
                if snap {
                    write_snapshot(&curves_dir, row.step, &state.curve, out.svg)?;
                    if out.svg {
                        snapshots.push(state.curve.clone());
                    }
                }
                Ok(())
            });
        if let Err(e) = res {
            io_error = Some(e);
        }
    });
    if let Some(e) = io_error {
        return Err(e.context(format!("writing under {}", out.dir.display())));
    }
    csv.flush()?;

    let state = &outcome.state;
    write_snapshot(&curves_dir, state.step, &state.curve, out.svg)?;
    if out.svg {
        snapshots.push(state.curve.clone());
        let all: Vec<&Curve> = snapshots.iter().collect();
        fs::write(out.dir.join("trajectory.svg"), svg::render(&all))?;
    }

    let summary = json!({
        "outcome": outcome.kind,
        "trigger": outcome.trigger,
        "thresholds": outcome.thresholds,
        "t": state.t,
        "steps": state.step,
        "rejected": state.rejected,
        "resamples": state.resamples,
        "max_energy_increase": state.max_energy_increase,
        "max_resample_drift": state.max_resample_drift,
        "initial": state.initial,
        "final": outcome.rows.last(),
        "clifford_fit": outcome.fit,
        "identity_suite": identity_suite(&state.curve),
        "class_interval": class_interval(&outcome.rows),
        "seed": cfg.seed,
    });
    let summary_path = out.dir.join("summary.json");
    fs::write(
        &summary_path,
        serde_json::to_string_pretty(&summary)? + "\n",
    )
    .with_context(|| format!("writing {}", summary_path.display()))?;

    println!(
        "{:?} at t = {:e} after {} steps; W = {:.6}; output in {}",
        outcome.kind,
        state.t,
        state.step,
        outcome.rows.last().map_or(f64::NAN, |r| r.willmore),
        out.dir.display()
    );
    Ok(())
}

fn snapshot_path(dir: &Path, step: u64, ext: &str) -> PathBuf {
    dir.join(format!("step_{step:010}.{ext}"))
}

fn write_snapshot(dir: &Path, step: u64, curve: &Curve, with_svg: bool) -> Result<()> {
    save_curve(snapshot_path(dir, step, "txt"), curve)?;
    if with_svg {
        fs::write(snapshot_path(dir, step, "svg"), svg::render(&[curve]))?;
    }
    Ok(())
}
