use anyhow::{Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use revoflow::{euclidean_length, Curve, ProfileCurve};

use crate::config::Perturb;

/// Displaces every node along the normal `(y′, −x′)/|γ′|` by a random smooth
/// profile of low modes. Deterministic in `seed`.
pub fn apply(curve: &Curve, p: &Perturb, seed: u64) -> Result<Curve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<(f64, f64)> = (2..=p.modes)
        .map(|_| (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
        .collect();
    let n = curve.len();
    let scale = p.amplitude * euclidean_length(curve) / std::f64::consts::TAU;
    let (x, y) = (curve.x(), curve.y());
    let mut nx = Vec::with_capacity(n);
    let mut ny = Vec::with_capacity(n);
    for k in 0..n {
        let (next, prev) = ((k + 1) % n, (k + n - 1) % n);
        let (tx, ty) = (x[next] - x[prev], y[next] - y[prev]);
        let norm = tx.hypot(ty);
        let u = std::f64::consts::TAU * k as f64 / n as f64;
        let delta: f64 = coeffs
            .iter()
            .zip(2..)
            .map(|(&(a, b), j)| {
                let j = j as f64;
                (a * (j * u).cos() + b * (j * u).sin()) / (j * j)
            })
            .sum::<f64>()
            * scale;
        nx.push(x[k] + delta * ty / norm);
        ny.push(y[k] - delta * tx / norm);
    }
    ProfileCurve::new(nx, ny).context("perturbed curve is invalid")
}
