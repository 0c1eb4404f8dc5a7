use super::workspace::{FieldScalars, Workspace};
use crate::hcurve::ProfileCurve;
use crate::Real;

/// A normal velocity field driving the curve evolution `∂_t γ = V N`.
pub trait VelocityField<T: Real>: Sync {
    /// Fills `ws.speed`, `ws.vx`, `ws.vy` for the nodes `(x, y)`; `None` signals a
    /// non-finite evaluation, which the stepper treats as a rejected step.
    fn evaluate(&self, x: &[T], y: &[T], ws: &mut Workspace<T>) -> Option<FieldScalars<T>>;
}

/// The Willmore flow `∂_t f = −(ΔH + ½H(H² − 4K)) N` restricted to tori of revolution.
///
/// `ΔH` is the Laplace–Beltrami operator of the torus applied to the rotation-invariant
/// function `H`, which reduces to `(1/(|γ'| y)) ∂_u((y/|γ'|) ∂_u H)`. Along this field
/// `dW/dt = −½ ∫ V² dμ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct WillmoreVelocity;

impl<T: Real> VelocityField<T> for WillmoreVelocity {
    fn evaluate(&self, x: &[T], y: &[T], ws: &mut Workspace<T>) -> Option<FieldScalars<T>> {
        ws.willmore(x, y)
    }
}

/// Normal speed `V` at every node, along `N = (y', −x') / |γ'|`.
///
/// Non-finite values are returned as computed.
pub fn normal_velocity<T: Real>(curve: &ProfileCurve<T>) -> Vec<T> {
    let mut ws = Workspace::new(curve.len());
    let _ = ws.willmore(curve.x(), curve.y());
    ws.speed
}

/// Velocity together with its scalars, for analysis outside a run.
#[derive(Clone, Debug)]
pub struct VelocitySample<T> {
    pub speed: Vec<T>,
    /// `V N` per node.
    pub velocity: Vec<[T; 2]>,
    pub scalars: FieldScalars<T>,
}

pub fn sample_velocity<T: Real>(
    field: &dyn VelocityField<T>,
    curve: &ProfileCurve<T>,
) -> Option<VelocitySample<T>> {
    let mut ws = Workspace::new(curve.len());
    let scalars = field.evaluate(curve.x(), curve.y(), &mut ws)?;
    Some(VelocitySample {
        velocity: ws.vx.iter().zip(&ws.vy).map(|(&a, &b)| [a, b]).collect(),
        speed: ws.speed,
        scalars,
    })
}
