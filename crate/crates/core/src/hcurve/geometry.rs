use super::stencil::{d1, d2};
use super::ProfileCurve;
use crate::Real;

/// Per-node differential geometry of a [`ProfileCurve`].
///
/// Everything here is recomputed from the node positions; nothing is stored
/// independently of the curve it came from.
#[derive(Clone, Debug)]
pub struct CurveGeometry<T> {
    pub du: T,
    /// `γ'` and `γ''` with respect to the uniform parameter.
    pub dx: Vec<T>,
    pub dy: Vec<T>,
    pub ddx: Vec<T>,
    pub ddy: Vec<T>,
    /// Euclidean speed `|γ'|`.
    pub speed: Vec<T>,
    /// Euclidean arclength weights `|γ'| du`.
    pub ds: Vec<T>,
    pub tangent: Vec<[T; 2]>,
    /// Tangent rotated by `+π/2`.
    pub normal: Vec<[T; 2]>,
    /// `⟨γ'', n⟩ / |γ'|²`.
    pub kappa_euc: Vec<T>,
    /// Hyperbolic curvature vector, Euclidean components.
    pub kappa_h: Vec<[T; 2]>,
    /// Hyperbolic geodesic curvature `⟨κ, n_H⟩_{H²}` with `n_H = (−∂_s y, ∂_s x)`.
    pub kappa_geo: Vec<T>,
    /// Hyperbolic speed `|γ'| / y`.
    pub hyp_speed: Vec<T>,
    y: Vec<T>,
}

/// Computes tangent, normal, Euclidean and hyperbolic curvature at every node.
pub fn hyperbolic_curvature<T: Real>(curve: &ProfileCurve<T>) -> CurveGeometry<T> {
    CurveGeometry::new(curve)
}

impl<T: Real> CurveGeometry<T> {
    pub fn new(curve: &ProfileCurve<T>) -> Self {
        let n = curve.len();
        let du = curve.du();
        let (x, y) = (curve.x(), curve.y());
        let mut dx = vec![T::zero(); n];
        let mut dy = vec![T::zero(); n];
        let mut ddx = vec![T::zero(); n];
        let mut ddy = vec![T::zero(); n];
        d1(x, du, &mut dx);
        d1(y, du, &mut dy);
        d2(x, du, &mut ddx);
        d2(y, du, &mut ddy);

        let two = T::lit(2.0);
        let mut speed = Vec::with_capacity(n);
        let mut ds = Vec::with_capacity(n);
        let mut tangent = Vec::with_capacity(n);
        let mut normal = Vec::with_capacity(n);
        let mut kappa_euc = Vec::with_capacity(n);
        let mut kappa_h = Vec::with_capacity(n);
        let mut kappa_geo = Vec::with_capacity(n);
        let mut hyp_speed = Vec::with_capacity(n);
        for k in 0..n {
            let (xp, yp, xpp, ypp, yk) = (dx[k], dy[k], ddx[k], ddy[k], y[k]);
            let s = xp.hypot(yp);
            let t = [xp / s, yp / s];
            let nrm = [-t[1], t[0]];
            let ke = (xp * ypp - yp * xpp) / (s * s * s);

            // ∂_s γ = (y/s) γ',  ∂_s² γ = (y/s) [ (y/s) γ'' + (y/s)' γ' ]
            let q = yk / s;
            let dq = yp / s - yk * (xp * xpp + yp * ypp) / (s * s * s);
            let sx = q * xp;
            let sy = q * yp;
            let ssx = q * (q * xpp + dq * xp);
            let ssy = q * (q * ypp + dq * yp);
            let kh = [ssx - two / yk * sx * sy, ssy + (sx * sx - sy * sy) / yk];
            // ⟨κ, n_H⟩_{H²} with n_H = (−∂_s y, ∂_s x)
            let kg = (-kh[0] * sy + kh[1] * sx) / (yk * yk);

            speed.push(s);
            ds.push(s * du);
            tangent.push(t);
            normal.push(nrm);
            kappa_euc.push(ke);
            kappa_h.push(kh);
            kappa_geo.push(kg);
            hyp_speed.push(s / yk);
        }
        Self {
            du,
            dx,
            dy,
            ddx,
            ddy,
            speed,
            ds,
            tangent,
            normal,
            kappa_euc,
            kappa_h,
            kappa_geo,
            hyp_speed,
            y: y.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.speed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.speed.is_empty()
    }

    /// `|κ|_{H²}` at node `k`.
    pub fn kappa_h_norm(&self, k: usize) -> T {
        self.kappa_h[k][0].hypot(self.kappa_h[k][1]) / self.y[k]
    }

    pub fn euclidean_length(&self) -> T {
        self.ds.iter().copied().sum()
    }

    pub fn hyperbolic_length(&self) -> T {
        self.hyp_speed.iter().copied().sum::<T>() * self.du
    }

    pub fn elastic_energy(&self) -> T {
        (0..self.len())
            .map(|k| {
                let m = self.kappa_h_norm(k);
                m * m * self.hyp_speed[k]
            })
            .sum::<T>()
            * self.du
    }

    /// Hyperbolic arclength derivative `(y / |γ'|) ∂_u` of a nodal field.
    pub(crate) fn d_s(&self, f: &[T], out: &mut [T]) {
        d1(f, self.du, out);
        for k in 0..out.len() {
            out[k] *= self.y[k] / self.speed[k];
        }
    }
}

/// `⟨(∇_s^⊥)²κ + ½|κ|²κ − κ, n_H⟩_{H²}` at each node.
///
/// The normal covariant derivative is applied twice to the curvature vector using
/// the Christoffel symbols of the half-plane:
/// `(∇_s X)¹ = ∂_s X¹ − (ẋ X² + ẏ X¹)/y`, `(∇_s X)² = ∂_s X² + (ẋ X¹ − ẏ X²)/y`.
pub fn elastica_residual<T: Real>(curve: &ProfileCurve<T>) -> Vec<T> {
    let g = CurveGeometry::new(curve);
    let n = curve.len();
    let y = curve.y();
    let half = T::lit(0.5);
    // ∂_s γ, hyperbolic unit tangent with Euclidean length y
    let sx: Vec<T> = (0..n).map(|k| y[k] * g.tangent[k][0]).collect();
    let sy: Vec<T> = (0..n).map(|k| y[k] * g.tangent[k][1]).collect();

    let normal_derivative = |field: &[[T; 2]]| -> Vec<[T; 2]> {
        let c0: Vec<T> = field.iter().map(|v| v[0]).collect();
        let c1: Vec<T> = field.iter().map(|v| v[1]).collect();
        let mut d0 = vec![T::zero(); n];
        let mut d1v = vec![T::zero(); n];
        g.d_s(&c0, &mut d0);
        g.d_s(&c1, &mut d1v);
        (0..n)
            .map(|k| {
                let (tx, ty, yk) = (sx[k], sy[k], y[k]);
                let cov = [
                    d0[k] - (tx * c1[k] + ty * c0[k]) / yk,
                    d1v[k] + (tx * c0[k] - ty * c1[k]) / yk,
                ];
                // remove the component along ∂_s γ; ⟨·,·⟩_{H²} = Euclidean / y²
                let along = (cov[0] * tx + cov[1] * ty) / (yk * yk);
                [cov[0] - along * tx, cov[1] - along * ty]
            })
            .collect()
    };

    let first = normal_derivative(&g.kappa_h);
    let second = normal_derivative(&first);
    (0..n)
        .map(|k| {
            let m = g.kappa_h_norm(k);
            let coeff = half * m * m - T::one();
            let r = [
                second[k][0] + coeff * g.kappa_h[k][0],
                second[k][1] + coeff * g.kappa_h[k][1],
            ];
            (-r[0] * sy[k] + r[1] * sx[k]) / (y[k] * y[k])
        })
        .collect()
}
