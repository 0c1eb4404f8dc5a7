//! Quantities of the torus obtained by revolving a profile curve about the x-axis,
//! `F(u, v) = (x(u), y(u) cos 2πv, y(u) sin 2πv)`.
//!
//! Principal curvatures are taken with respect to `N = ∂_u F × ∂_v F / |·|`, which in
//! the meridian plane is `(y', −x') / |γ'|`:
//! `κ₁ = −κ_euc`, `κ₂ = x' / (|γ'| y)`. The surface measure is `2π y |γ'| du dv`.

use serde::Serialize;

use crate::hcurve::{CurveGeometry, ProfileCurve};
use crate::Real;

#[derive(Clone, Debug)]
pub struct SurfaceQuantities<T> {
    pub kappa1: Vec<T>,
    pub kappa2: Vec<T>,
    /// `H = κ₁ + κ₂`
    pub mean: Vec<T>,
    /// `K = κ₁ κ₂`
    pub gauss: Vec<T>,
    /// `|A|² = κ₁² + κ₂²`
    pub a2: Vec<T>,
    /// `|Å|² = ½H² − 2K`
    pub aring2: Vec<T>,
    /// Per-node surface measure `2π y |γ'| du` (already integrated over `v`).
    pub measure: Vec<T>,
    /// `¼ ∫ H² dμ`
    pub willmore: T,
    pub area: T,
    pub gauss_total: T,
    pub a2_total: T,
    pub aring2_total: T,
}

pub fn surface_quantities<T: Real>(curve: &ProfileCurve<T>) -> SurfaceQuantities<T> {
    surface_from_geometry(curve, &CurveGeometry::new(curve))
}

pub(crate) fn surface_from_geometry<T: Real>(
    curve: &ProfileCurve<T>,
    g: &CurveGeometry<T>,
) -> SurfaceQuantities<T> {
    let n = curve.len();
    let y = curve.y();
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut q = SurfaceQuantities {
        kappa1: Vec::with_capacity(n),
        kappa2: Vec::with_capacity(n),
        mean: Vec::with_capacity(n),
        gauss: Vec::with_capacity(n),
        a2: Vec::with_capacity(n),
        aring2: Vec::with_capacity(n),
        measure: Vec::with_capacity(n),
        willmore: T::zero(),
        area: T::zero(),
        gauss_total: T::zero(),
        a2_total: T::zero(),
        aring2_total: T::zero(),
    };
    for k in 0..n {
        let k1 = -g.kappa_euc[k];
        let k2 = g.dx[k] / (g.speed[k] * y[k]);
        let h = k1 + k2;
        let kk = k1 * k2;
        let a2 = k1 * k1 + k2 * k2;
        let aring2 = half * h * h - two * kk;
        let mu = T::TAU() * y[k] * g.ds[k];
        q.willmore += h * h * mu;
        q.area += mu;
        q.gauss_total += kk * mu;
        q.a2_total += a2 * mu;
        q.aring2_total += aring2 * mu;
        q.kappa1.push(k1);
        q.kappa2.push(k2);
        q.mean.push(h);
        q.gauss.push(kk);
        q.a2.push(a2);
        q.aring2.push(aring2);
        q.measure.push(mu);
    }
    q.willmore *= T::lit(0.25);
    q
}

/// `W = (π/2) E`, the Willmore energy computed from the hyperbolic elastic energy.
pub fn willmore_energy_via_elastic<T: Real>(curve: &ProfileCurve<T>) -> T {
    T::FRAC_PI_2() * CurveGeometry::new(curve).elastic_energy()
}

/// Extrinsic diameter of the revolved torus over the sampled meridians.
///
/// For meridian points `(x_j, y_j)` and `(x_k, y_k)` the distance is maximised at a
/// revolution angle difference of `π`, giving `√((x_j − x_k)² + (y_j + y_k)²)`.
pub fn diameter<T: Real>(curve: &ProfileCurve<T>) -> T {
    let (x, y) = (curve.x(), curve.y());
    let mut best = T::zero();
    for j in 0..x.len() {
        for k in j..x.len() {
            let dx = x[j] - x[k];
            let sy = y[j] + y[k];
            best = best.max(dx * dx + sy * sy);
        }
    }
    best.sqrt()
}

/// Half-revolution flux `∫_{S¹×[0,½]} H⃗·e₃ dμ = −2 ∫ (κ₁ + κ₂) x' y du`.
pub fn half_revolution_flux<T: Real>(curve: &ProfileCurve<T>) -> T {
    let g = CurveGeometry::new(curve);
    flux_from(curve, &g, &surface_from_geometry(curve, &g))
}

fn flux_from<T: Real>(
    curve: &ProfileCurve<T>,
    g: &CurveGeometry<T>,
    q: &SurfaceQuantities<T>,
) -> T {
    let y = curve.y();
    let sum: T = (0..curve.len()).map(|k| q.mean[k] * g.dx[k] * y[k]).sum();
    -T::lit(2.0) * sum * g.du
}

/// `|flux + 2 L_euc|`; the flux identity says the half-revolution flux equals `−2 L_euc`.
pub fn flux_identity_residual<T: Real>(curve: &ProfileCurve<T>) -> T {
    let g = CurveGeometry::new(curve);
    let q = surface_from_geometry(curve, &g);
    (flux_from(curve, &g, &q) + T::lit(2.0) * g.euclidean_length()).abs()
}

/// Tolerances for [`identity_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityTolerances {
    /// Relative tolerance on the integral identities.
    pub equality: f64,
    /// Relative slack allowed on the inequalities.
    pub inequality: f64,
}

impl Default for IdentityTolerances {
    fn default() -> Self {
        Self {
            equality: 1e-5,
            inequality: 1e-6,
        }
    }
}

/// Signed residuals of the integral identities and inequalities satisfied by every
/// torus of revolution. Inequality gaps are `rhs − lhs` and must be non-negative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub willmore: f64,
    pub willmore_via_elastic: f64,
    pub area: f64,
    pub diameter: f64,
    pub euclidean_length: f64,
    pub hyperbolic_length: f64,
    pub y_min: f64,
    pub y_max: f64,
    /// `∫ K dμ`, zero for a torus.
    pub gauss_total: f64,
    pub a2_total: f64,
    /// `∫|A|² dμ − 4W`
    pub a2_residual: f64,
    /// `∫|Å|² dμ − 2W`
    pub aring2_residual: f64,
    /// `flux + 2 L_euc`
    pub flux_residual: f64,
    /// `L_H − ln(y_max / y_min)`
    pub hyplen_gap: f64,
    /// `L_H − L_euc / y_max`
    pub hyplen2_gap: f64,
    /// `√(area · W) − L_euc`
    pub length_area_gap: f64,
    /// `diam² − area / W`
    pub diameter_area_gap: f64,
    /// `½ L_euc + 2 y_max − diam`
    pub diameter_bound_gap: f64,
    /// `min |Å|² ≥ 0` and `max (|Å|² − |A|²) ≤ 0` hold pointwise
    pub pointwise_ok: bool,
    pub tolerances: IdentityTolerances,
    pub violations: Vec<String>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn identity_suite<T: Real>(curve: &ProfileCurve<T>) -> IdentityReport {
    identity_suite_with(curve, IdentityTolerances::default())
}

pub fn identity_suite_with<T: Real>(
    curve: &ProfileCurve<T>,
    tol: IdentityTolerances,
) -> IdentityReport {
    let g = CurveGeometry::new(curve);
    let q = surface_from_geometry(curve, &g);
    let w = q.willmore.as_f64();
    let area = q.area.as_f64();
    let l_euc = g.euclidean_length().as_f64();
    let l_h = g.hyperbolic_length().as_f64();
    let diam = diameter(curve).as_f64();
    let y_min = curve.y_min().as_f64();
    let y_max = curve.y_max().as_f64();
    let flux = flux_from(curve, &g, &q).as_f64();
    let a2_total = q.a2_total.as_f64();

    let pointwise_ok = (0..curve.len()).all(|k| {
        let (r, a) = (q.aring2[k].as_f64(), q.a2[k].as_f64());
        let eps = 1e-12 * a.max(1.0);
        r >= -eps && r <= a + eps
    });

    let mut report = IdentityReport {
        willmore: w,
        willmore_via_elastic: std::f64::consts::FRAC_PI_2 * g.elastic_energy().as_f64(),
        area,
        diameter: diam,
        euclidean_length: l_euc,
        hyperbolic_length: l_h,
        y_min,
        y_max,
        gauss_total: q.gauss_total.as_f64(),
        a2_total,
        a2_residual: a2_total - 4.0 * w,
        aring2_residual: q.aring2_total.as_f64() - 2.0 * w,
        flux_residual: flux + 2.0 * l_euc,
        hyplen_gap: l_h - (y_max / y_min).ln(),
        hyplen2_gap: l_h - l_euc / y_max,
        length_area_gap: (area * w).sqrt() - l_euc,
        diameter_area_gap: diam * diam - area / w,
        diameter_bound_gap: 0.5 * l_euc + 2.0 * y_max - diam,
        pointwise_ok,
        tolerances: tol,
        violations: Vec::new(),
    };

    let mut v = Vec::new();
    let mut eq = |name: &str, residual: f64, scale: f64| {
        if !(residual.abs() <= tol.equality * scale) {
            v.push(format!(
                "{name}: residual {residual:e} exceeds {:e}",
                tol.equality * scale
            ));
        }
    };
    eq("gauss_bonnet", report.gauss_total, a2_total);
    eq("a2_equals_4w", report.a2_residual, 4.0 * w);
    eq("aring2_equals_2w", report.aring2_residual, 2.0 * w);
    eq("flux", report.flux_residual, 2.0 * l_euc);
    let mut ineq = |name: &str, gap: f64, scale: f64| {
        if !(gap >= -tol.inequality * scale) {
            v.push(format!("{name}: gap {gap:e} is negative"));
        }
    };
    ineq("hyplen", report.hyplen_gap, l_h);
    ineq("hyplen2", report.hyplen2_gap, l_h);
    ineq("length_area", report.length_area_gap, l_euc);
    ineq("diameter_area", report.diameter_area_gap, diam * diam);
    ineq("diameter_bound", report.diameter_bound_gap, diam);
    if !pointwise_ok {
        v.push("pointwise: |Å|² outside [0, |A|²]".into());
    }
    report.violations = v;
    report
}

#[cfg(test)]
mod tests;
