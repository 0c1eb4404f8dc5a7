//! Analyzers for tori of revolution: conformal class, Σ_b energies, circle fitting and
//! curvature concentration.

mod concentration;
mod fit;

pub use concentration::{
    concentration_integral, concentration_radius, ConcentrationField, ConcentrationReport,
};
pub use fit::{clifford_fit, CliffordFit};

use crate::error::{Error, Result};
use crate::Real;

/// Imaginary part `b ≥ 1` of the conformal class `ω = i b` of a torus of revolution,
/// as a function of the hyperbolic length of its profile curve.
pub fn conformal_class<T: Real>(hyperbolic_length: T) -> Result<T> {
    if !(hyperbolic_length > T::zero()) || !hyperbolic_length.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "hyperbolic length must be positive, got {hyperbolic_length}"
        )));
    }
    let tau = T::TAU();
    Ok(if hyperbolic_length >= tau {
        hyperbolic_length / tau
    } else {
        tau / hyperbolic_length
    })
}

/// Lower bound `π / (4 arccos(1 − 8/ρ²))` on the number of disjoint unit balls centred
/// on a circle of radius `ρ ≥ 4`.
pub fn packing_lower_bound<T: Real>(rho: T) -> Result<T> {
    if !(rho >= T::lit(4.0)) {
        return Err(Error::InvalidArgument(format!(
            "packing bound requires rho >= 4, got {rho}"
        )));
    }
    let arg = T::one() - T::lit(8.0) / (rho * rho);
    Ok(T::PI() / (T::lit(4.0) * arg.acos()))
}

/// Willmore energy `π² (b + 1/b)` of the torus `Σ_b` with conformal class `i b`.
pub fn sigma_b_energy<T: Real>(b: T) -> Result<T> {
    if !(b >= T::one()) {
        return Err(Error::InvalidArgument(format!(
            "sigma_b needs b >= 1, got {b}"
        )));
    }
    Ok(T::PI() * T::PI() * (b + b.recip()))
}

/// The class `b > 1` with `W(Σ_b) = 8π`: `4/π + √(16/π² − 1)`.
pub fn critical_b<T: Real>() -> T {
    let four_over_pi = T::lit(4.0) / T::PI();
    four_over_pi + (four_over_pi * four_over_pi - T::one()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn conformal_class_branches() {
        assert!((conformal_class(2.0 * PI).unwrap() - 1.0).abs() < 1e-15);
        assert!((conformal_class(4.0 * PI).unwrap() - 2.0).abs() < 1e-15);
        assert!((conformal_class(PI).unwrap() - 2.0).abs() < 1e-15);
        assert!(conformal_class(0.0f64).is_err());
        assert!(conformal_class(-1.0f64).is_err());
    }

    #[test]
    fn packing_bound_values() {
        assert!((packing_lower_bound(4.0f64).unwrap() - 0.75).abs() < 1e-12);
        let at_100 = packing_lower_bound(100.0f64).unwrap();
        assert!(at_100 >= 19.0, "{at_100}");
        // asymptotically (π/16) ρ
        assert!((at_100 / (PI / 16.0 * 100.0) - 1.0).abs() < 1e-3);
        assert!(packing_lower_bound(3.99f64).is_err());
        let mut prev = 0.0;
        let mut rho = 4.0f64;
        while rho <= 1e6 {
            let v = packing_lower_bound(rho).unwrap();
            assert!(v >= prev, "not monotone at {rho}");
            prev = v;
            rho *= 1.05;
        }
    }

    #[test]
    fn sigma_b_values() {
        assert!((sigma_b_energy(1.0f64).unwrap() - 2.0 * PI * PI).abs() < 1e-12);
        assert!((sigma_b_energy(2.0f64).unwrap() - 2.5 * PI * PI).abs() < 1e-12);
        assert!((critical_b::<f64>() - 2.06136).abs() < 1e-5);
        assert!((sigma_b_energy(critical_b::<f64>()).unwrap() - 8.0 * PI).abs() < 1e-10);
        assert!(sigma_b_energy(0.99f64).is_err());
    }

    #[test]
    fn f32_paths_agree() {
        assert!((critical_b::<f32>() - 2.06136).abs() < 1e-5);
        assert!((conformal_class(4.0 * std::f32::consts::PI).unwrap() - 2.0).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn conformal_class_reflection(l in 0.01f64..100.0) {
            let a = conformal_class(l).unwrap();
            let b = conformal_class(4.0 * PI * PI / l).unwrap();
            prop_assert!(a >= 1.0);
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }

        #[test]
        fn sigma_b_strictly_increasing(b in 1.0f64..50.0, db in 1e-6f64..1.0) {
            prop_assert!(sigma_b_energy(b + db).unwrap() > sigma_b_energy(b).unwrap());
        }
    }
}
