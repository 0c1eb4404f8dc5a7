use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{de::DeserializeOwned, Deserialize};

use revoflow::{CurveShape, CurveSpec, FlowConfig};

/// `simulate` input.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub spec: CurveSpec,
    #[serde(default)]
    pub flow: FlowConfig,
    #[serde(default)]
    pub output: OutputConfig,
    /// Seed for `perturb`.
    #[serde(default)]
    pub seed: u64,
    pub perturb: Option<Perturb>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// Write a curve snapshot on diagnostics rows whose step is a multiple of this;
    /// `0` keeps only the initial and final curves.
    pub curve_every: u64,
    pub svg: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("revoflow-out"),
            curve_every: 0,
            svg: true,
        }
    }
}

/// Random smooth normal displacement `δ(u) = a L/(2π) Σ_{j=2}^{modes} (α_j cos 2πju + β_j sin 2πju) / j²`
/// with `α_j, β_j` uniform in `[−1, 1]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturb {
    pub amplitude: f64,
    #[serde(default = "default_modes")]
    pub modes: usize,
}

fn default_modes() -> usize {
    4
}

/// `sweep` input.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub b_grid: Vec<f64>,
    #[serde(default = "default_sweep_n")]
    pub n: usize,
    #[serde(default = "default_scale")]
    pub scale: f64,
    #[serde(default)]
    pub flow: FlowConfig,
    #[serde(default)]
    pub output: SweepOutput,
}

fn default_sweep_n() -> usize {
    128
}

fn default_scale() -> f64 {
    1.0
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepOutput {
    pub dir: PathBuf,
    /// Also write each run's diagnostics CSV.
    pub rows: bool,
}

impl Default for SweepOutput {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("revoflow-sweep"),
            rows: false,
        }
    }
}

/// Parses a TOML file; relative paths inside are later resolved against its directory.
pub fn load<C: DeserializeOwned>(path: &Path) -> Result<C> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

impl RunConfig {
    pub fn resolve_paths(&mut self, base: &Path) {
        self.output.dir = resolve(base, &self.output.dir);
        if let CurveShape::FromFile { path } = &mut self.spec.shape {
            *path = resolve(base, path);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_run_config() {
        let c: RunConfig = toml::from_str(
            r#"
            [spec]
            n = 64
            [spec.shape]
            kind = "circle_by_class"
            b = 1.5
            "#,
        )
        .unwrap();
        assert_eq!(c.spec.n, Some(64));
        assert_eq!(c.flow, FlowConfig::default());
        assert!(c.perturb.is_none());
        assert!(c.output.svg);
    }

    #[test]
    fn unknown_keys_are_named() {
        for text in [
            "[spec.shape]\nkind = \"circle_by_class\"\nb = 1.5\n[flow]\nsigmaa = 0.1\n",
            "bogus = 1\n[spec.shape]\nkind = \"circle_by_class\"\nb = 1.5\n",
            "[spec.shape]\nkind = \"circle_by_class\"\nb = 1.5\nrho = 2\n",
        ] {
            let err = toml::from_str::<RunConfig>(text).unwrap_err().to_string();
            assert!(err.contains("unknown field"), "{err}");
        }
    }

    #[test]
    fn sweep_defaults() {
        let c: SweepConfig = toml::from_str("b_grid = []").unwrap();
        assert!(c.b_grid.is_empty());
        assert_eq!(c.n, 128);
        assert!(!c.output.rows);
    }
}
