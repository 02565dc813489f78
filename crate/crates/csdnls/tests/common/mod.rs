use csdnls::{Complex64, HardyState};
use rand::Rng;

/// Random state with geometrically decaying coefficients |û(n)| ≲ decayⁿ,
/// rescaled to the requested L² norm.
pub fn smooth_random(rng: &mut impl Rng, trunc: usize, norm: f64, decay: f64) -> HardyState {
    let mut u = HardyState::zeros(trunc);
    let mut envelope = 1.0;
    for c in u.coeffs_mut() {
        *c = Complex64::new(
            envelope * rng.random_range(-1.0..1.0),
            envelope * rng.random_range(-1.0..1.0),
        );
        envelope *= decay;
    }
    let actual = u.l2_norm();
    if actual == 0.0 {
        return HardyState::constant(trunc, Complex64::new(norm, 0.0));
    }
    u.scale(Complex64::new(norm / actual, 0.0))
}

/// Random state with flat spectrum on modes 0..=support, zero above.
pub fn rough_random(rng: &mut impl Rng, trunc: usize, support: usize, norm: f64) -> HardyState {
    let mut u = HardyState::zeros(trunc);
    for c in u.coeffs_mut().iter_mut().take(support + 1) {
        *c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    let actual = u.l2_norm();
    if actual == 0.0 {
        return HardyState::constant(trunc, Complex64::new(norm, 0.0));
    }
    u.scale(Complex64::new(norm / actual, 0.0))
}
