//! Smooth cutoff and the radius profiles of surfaces of revolution.

use std::fmt::Debug;

use crate::scalar::Real;

/// `exp(-1/s)` for `s > 0`, zero otherwise. Smooth, flat at the origin.
#[inline]
fn bump<T: Real>(s: T) -> T {
    if s > T::zero() {
        (-s.recip()).exp()
    } else {
        T::zero()
    }
}

/// Smooth monotone step from `-1` (for `s <= -1`) to `+1` (for `s >= 1`).
///
/// Written as `(g(1+s) - g(1-s)) / (g(1+s) + g(1-s))`, which is exactly odd in
/// floating point and saturates to `±1` exactly outside `(-1, 1)`.
pub fn beta<T: Real>(s: T) -> T {
    if s >= T::one() {
        return T::one();
    }
    if s <= -T::one() {
        return -T::one();
    }
    let up = bump(T::one() + s);
    let down = bump(T::one() - s);
    (up - down) / (up + down)
}

/// Derivative of [`beta`]; vanishes identically outside `(-1, 1)`.
pub fn beta_derivative<T: Real>(s: T) -> T {
    if s >= T::one() || s <= -T::one() {
        return T::zero();
    }
    let one = T::one();
    let up = bump(one + s);
    let down = bump(one - s);
    let sum = up + down;
    let two = T::lit(2.0);
    let dp = one + s;
    let dm = one - s;
    two * up * down * ((dp * dp).recip() + (dm * dm).recip()) / (sum * sum)
}

/// Radius profile `z ↦ f(z) > 0` of a surface of revolution `x² + y² = f(z)²`.
pub trait Profile<T: Real>: Debug + Send + Sync {
    fn radius(&self, z: T) -> T;
    fn slope(&self, z: T) -> T;
    /// Name used when the surface is serialized.
    fn name(&self) -> &str {
        "custom"
    }
}

/// The stepped hyperboloid profile `f(z) = β(z)z + sin(β(z)z) + 1`.
///
/// Critical points sit at `z = 0` (global minimum, radius 1) and at the odd
/// multiples of π, where `f'` touches zero without changing sign.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SteppedProfile;

impl SteppedProfile {
    fn warped<T: Real>(z: T) -> (T, T) {
        let w = beta(z) * z;
        let dw = beta_derivative(z) * z + beta(z);
        (w, dw)
    }
}

impl<T: Real> Profile<T> for SteppedProfile {
    fn radius(&self, z: T) -> T {
        let (w, _) = Self::warped(z);
        w + w.sin() + T::one()
    }

    fn slope(&self, z: T) -> T {
        let (w, dw) = Self::warped(z);
        (T::one() + w.cos()) * dw
    }

    fn name(&self) -> &str {
        "stepped"
    }
}

/// Constant radius, a cylinder. Every latitude circle is a geodesic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantProfile<T>(pub T);

impl<T: Real> Profile<T> for ConstantProfile<T> {
    fn radius(&self, _z: T) -> T {
        self.0
    }

    fn slope(&self, _z: T) -> T {
        T::zero()
    }

    fn name(&self) -> &str {
        "cylinder"
    }
}
