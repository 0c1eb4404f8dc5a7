//! Periodic fourth-order centered differences on the uniform parameter grid.

use crate::Real;

/// First derivative, 5-point stencil `(f[k-2] - 8 f[k-1] + 8 f[k+1] - f[k+2]) / (12 du)`.
pub fn d1<T: Real>(f: &[T], du: T, out: &mut [T]) {
    let n = f.len();
    debug_assert_eq!(out.len(), n);
    let c = T::one() / (T::lit(12.0) * du);
    let eight = T::lit(8.0);
    let at = |k: isize| f[k.rem_euclid(n as isize) as usize];
    for k in [0, 1, n - 2, n - 1] {
        let i = k as isize;
        out[k] = (at(i - 2) - eight * at(i - 1) + eight * at(i + 1) - at(i + 2)) * c;
    }
    for k in 2..n - 2 {
        out[k] = (f[k - 2] - eight * f[k - 1] + eight * f[k + 1] - f[k + 2]) * c;
    }
}

/// Second derivative, 5-point stencil `(-f[k-2] + 16 f[k-1] - 30 f[k] + 16 f[k+1] - f[k+2]) / (12 du²)`.
pub fn d2<T: Real>(f: &[T], du: T, out: &mut [T]) {
    let n = f.len();
    debug_assert_eq!(out.len(), n);
    let c = T::one() / (T::lit(12.0) * du * du);
    let sixteen = T::lit(16.0);
    let thirty = T::lit(30.0);
    let at = |k: isize| f[k.rem_euclid(n as isize) as usize];
    for k in [0, 1, n - 2, n - 1] {
        let i = k as isize;
        out[k] = (-at(i - 2) + sixteen * at(i - 1) - thirty * at(i) + sixteen * at(i + 1)
            - at(i + 2))
            * c;
    }
    for k in 2..n - 2 {
        out[k] =
            (-f[k - 2] + sixteen * f[k - 1] - thirty * f[k] + sixteen * f[k + 1] - f[k + 2]) * c;
    }
}

/// Maximum modulus of the `d2` symbol times `du²`; sets the explicit stability limit.
pub const D2_SYMBOL_MAX: f64 = 16.0 / 3.0;

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn sampled(n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..n).map(|k| f(k as f64 / n as f64)).collect()
    }

    fn max_err(n: usize) -> (f64, f64) {
        let du = 1.0 / n as f64;
        let f = sampled(n, |u| (TAU * u).sin() + 0.3 * (2.0 * TAU * u).cos());
        let exact1 = sampled(n, |u| {
            TAU * (TAU * u).cos() - 0.6 * TAU * (2.0 * TAU * u).sin()
        });
        let exact2 = sampled(n, |u| {
            -TAU * TAU * (TAU * u).sin() - 1.2 * TAU * TAU * (2.0 * TAU * u).cos()
        });
        let mut o1 = vec![0.0; n];
        let mut o2 = vec![0.0; n];
        d1(&f, du, &mut o1);
        d2(&f, du, &mut o2);
        let e1 = o1
            .iter()
            .zip(&exact1)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let e2 = o2
            .iter()
            .zip(&exact2)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        (e1, e2)
    }

    #[test]
    fn stencils_are_fourth_order() {
        let (a1, a2) = max_err(32);
        let (b1, b2) = max_err(64);
        let order1 = (a1 / b1).log2();
        let order2 = (a2 / b2).log2();
        assert!(order1 > 3.8, "d1 order {order1}");
        assert!(order2 > 3.8, "d2 order {order2}");
    }

    #[test]
    fn constants_are_annihilated() {
        let f = vec![2.5f64; 16];
        let mut o = vec![1.0f64; 16];
        d1(&f, 0.1, &mut o);
        assert!(o.iter().all(|v| v.abs() < 1e-12));
        d2(&f, 0.1, &mut o);
        assert!(o.iter().all(|v| v.abs() < 1e-9));
    }
}
