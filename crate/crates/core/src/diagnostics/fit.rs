use serde::Serialize;

use crate::hcurve::ProfileCurve;
use crate::Real;

/// Least-squares circle through the nodes of a profile curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CliffordFit {
    /// `(x0, c)`
    pub center: [f64; 2],
    pub radius: f64,
    /// Root mean square of the geometric residuals `|p − center| − radius`.
    pub rms_residual: f64,
    /// `ρ / √(c² − ρ²)`; `1` for a scaled and translated Clifford circle,
    /// infinite when the fitted circle leaves the half-plane.
    pub b_fit: f64,
}

/// Algebraic (Kåsa) fit followed by geometric Gauss–Newton refinement.
pub fn clifford_fit<T: Real>(curve: &ProfileCurve<T>) -> CliffordFit {
    let pts: Vec<[f64; 2]> = curve
        .points()
        .map(|[x, y]| [x.as_f64(), y.as_f64()])
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p[0]).sum::<f64>() / n;
    let my = pts.iter().map(|p| p[1]).sum::<f64>() / n;

    // Kåsa in centred coordinates: minimise Σ (u² + v² + D u + E v + F)²
    let mut m = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for p in &pts {
        let (u, v) = (p[0] - mx, p[1] - my);
        let row = [u, v, 1.0];
        let z = -(u * u + v * v);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            rhs[i] += row[i] * z;
        }
    }
    let (mut cx, mut cy, mut r) = match solve3(m, rhs) {
        Some([d, e, f]) => {
            let (cx, cy) = (-d / 2.0, -e / 2.0);
            (cx + mx, cy + my, (cx * cx + cy * cy - f).max(0.0).sqrt())
        }
        None => (mx, my, 0.0),
    };

    for _ in 0..50 {
        let mut jtj = [[0.0; 3]; 3];
        let mut jtr = [0.0; 3];
        for p in &pts {
            let (dx, dy) = (p[0] - cx, p[1] - cy);
            let d = dx.hypot(dy);
            if d == 0.0 {
                continue;
            }
            let res = d - r;
            let jac = [-dx / d, -dy / d, -1.0];
            for i in 0..3 {
                for j in 0..3 {
                    jtj[i][j] += jac[i] * jac[j];
                }
                jtr[i] -= jac[i] * res;
            }
        }
        let Some(step) = solve3(jtj, jtr) else { break };
        cx += step[0];
        cy += step[1];
        r += step[2];
        if step.iter().map(|s| s.abs()).fold(0.0, f64::max) <= 1e-15 * r.abs().max(1.0) {
            break;
        }
    }

    let rms = (pts
        .iter()
        .map(|p| {
            let e = (p[0] - cx).hypot(p[1] - cy) - r;
            e * e
        })
        .sum::<f64>()
        / n)
        .sqrt();
    let gap = cy * cy - r * r;
    let b_fit = if cy > 0.0 && gap > 0.0 {
        r / gap.sqrt()
    } else {
        f64::INFINITY
    };
    CliffordFit {
        center: [cx, cy],
        radius: r,
        rms_residual: rms,
        b_fit,
    }
}

/// Gaussian elimination with partial pivoting.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
