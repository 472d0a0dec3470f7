//! Surface catalog and the primitives every other module consumes: level
//! function, normal, point projection, tangent projection and the seam-aware
//! displacement between two surface points.

mod profile;
mod spec;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::Real;
use crate::vec3::Vec3;

pub use profile::{beta, beta_derivative, ConstantProfile, Profile, SteppedProfile};
pub use spec::{ProfileSpec, SurfaceSpec};

/// Gradient norms below this are treated as singular.
pub const DEGENERATE_GRADIENT: f64 = 1e-12;
/// Squared distance to the axis below which a surface of revolution is rejected.
pub const AXIS_EXCLUSION: f64 = 1e-8;
/// Iteration cap of the projection Newton loop.
pub const PROJECTION_MAX_ITERATIONS: usize = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("degenerate surface gradient at ({x}, {y}, {z})")]
    DegenerateGradient { x: f64, y: f64, z: f64 },
    #[error("projection did not converge in {iterations} iterations (residual {residual:e}); step too large?")]
    ProjectionDiverged { iterations: usize, residual: f64 },
    #[error("invalid surface parameters: {0}")]
    InvalidParameters(String),
}

impl GeometryError {
    fn degenerate<T: Real>(p: Vec3<T>) -> Self {
        let [x, y, z] = p.to_f64_array();
        GeometryError::DegenerateGradient { x, y, z }
    }
}

/// Broad classification of a [`Surface`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Plane,
    FlatTorus,
    Implicit,
}

/// Level-set surfaces `F(p) = 0` in R³.
#[derive(Clone, Debug)]
pub enum Implicit<T: Real> {
    /// `a x² + b y² + c z² = 1`.
    Ellipsoid { a: T, b: T, c: T },
    /// `(√(x²+y²) − R)² + z² = (r + a x)²`: a torus whose tube radius varies linearly in `x`.
    SkewedTorus { major: T, minor: T, skew: T },
    /// `x² + y² = f(z)²`.
    Revolution(Arc<dyn Profile<T>>),
}

/// A two-dimensional surface the flow runs on.
#[derive(Clone)]
pub enum Surface<T: Real> {
    /// The Euclidean plane; points carry `z = 0`.
    Plane,
    /// `R²/Z²` with the flat metric. Points are stored wrapped into `[0, 1)²`.
    FlatTorus,
    Implicit(Implicit<T>),
}

impl<T: Real> fmt::Debug for Surface<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Plane => write!(f, "Plane"),
            Surface::FlatTorus => write!(f, "FlatTorus"),
            Surface::Implicit(Implicit::Ellipsoid { a, b, c }) => write!(f, "Ellipsoid({a}, {b}, {c})"),
            Surface::Implicit(Implicit::SkewedTorus { major, minor, skew }) => {
                write!(f, "SkewedTorus(R={major}, r={minor}, a={skew})")
            }
            Surface::Implicit(Implicit::Revolution(p)) => write!(f, "Revolution({})", p.name()),
        }
    }
}

impl<T: Real> Surface<T> {
    pub fn ellipsoid(a: T, b: T, c: T) -> Result<Self, GeometryError> {
        if !(a > T::zero() && b > T::zero() && c > T::zero()) {
            return Err(GeometryError::InvalidParameters(format!(
                "ellipsoid coefficients must be positive, got ({a}, {b}, {c})"
            )));
        }
        Ok(Surface::Implicit(Implicit::Ellipsoid { a, b, c }))
    }

    /// Unit sphere, `Ellipsoid(1, 1, 1)`.
    pub fn sphere() -> Self {
        Surface::Implicit(Implicit::Ellipsoid { a: T::one(), b: T::one(), c: T::one() })
    }

    pub fn skewed_torus(major: T, minor: T, skew: T) -> Result<Self, GeometryError> {
        if !(major > minor && minor > T::zero()) {
            return Err(GeometryError::InvalidParameters(format!(
                "skewed torus needs R > r > 0, got R = {major}, r = {minor}"
            )));
        }
        // Tube radius r + a x must stay positive over the whole extent |x| <= R + r.
        if minor - skew.abs() * (major + minor) <= T::zero() {
            return Err(GeometryError::InvalidParameters(format!(
                "skew {skew} makes the tube radius vanish (needs |a| < r / (R + r))"
            )));
        }
        Ok(Surface::Implicit(Implicit::SkewedTorus { major, minor, skew }))
    }

    pub fn revolution(profile: impl Profile<T> + 'static) -> Self {
        Surface::Implicit(Implicit::Revolution(Arc::new(profile)))
    }

    /// Surface of revolution of the built-in stepped profile.
    pub fn stepped_revolution() -> Self {
        Self::revolution(SteppedProfile)
    }

    pub fn kind(&self) -> SurfaceKind {
        match self {
            Surface::Plane => SurfaceKind::Plane,
            Surface::FlatTorus => SurfaceKind::FlatTorus,
            Surface::Implicit(_) => SurfaceKind::Implicit,
        }
    }

    pub fn is_flat(&self) -> bool {
        !matches!(self, Surface::Implicit(_))
    }

    /// Level function `F`; identically zero on the intrinsic surfaces.
    pub fn level(&self, p: Vec3<T>) -> T {
        match self {
            Surface::Plane | Surface::FlatTorus => T::zero(),
            Surface::Implicit(Implicit::Ellipsoid { a, b, c }) => {
                *a * p.x * p.x + *b * p.y * p.y + *c * p.z * p.z - T::one()
            }
            Surface::Implicit(Implicit::SkewedTorus { major, minor, skew }) => {
                let rho = (p.x * p.x + p.y * p.y).sqrt();
                let tube = *minor + *skew * p.x;
                (rho - *major) * (rho - *major) + p.z * p.z - tube * tube
            }
            Surface::Implicit(Implicit::Revolution(f)) => {
                let r = f.radius(p.z);
                p.x * p.x + p.y * p.y - r * r
            }
        }
    }

    /// `∇F(p)`. Fails on the singular set of the level function.
    pub fn gradient(&self, p: Vec3<T>) -> Result<Vec3<T>, GeometryError> {
        let two = T::lit(2.0);
        let g = match self {
            Surface::Plane | Surface::FlatTorus => return Ok(Vec3::new(T::zero(), T::zero(), T::one())),
            Surface::Implicit(Implicit::Ellipsoid { a, b, c }) => {
                Vec3::new(two * *a * p.x, two * *b * p.y, two * *c * p.z)
            }
            Surface::Implicit(Implicit::SkewedTorus { major, minor, skew }) => {
                let rho2 = p.x * p.x + p.y * p.y;
                if rho2 < T::lit(AXIS_EXCLUSION) {
                    return Err(GeometryError::degenerate(p));
                }
                let rho = rho2.sqrt();
                let radial = two * (rho - *major) / rho;
                let tube = *minor + *skew * p.x;
                Vec3::new(radial * p.x - two * *skew * tube, radial * p.y, two * p.z)
            }
            Surface::Implicit(Implicit::Revolution(f)) => {
                if p.x * p.x + p.y * p.y < T::lit(AXIS_EXCLUSION) {
                    return Err(GeometryError::degenerate(p));
                }
                Vec3::new(two * p.x, two * p.y, -two * f.radius(p.z) * f.slope(p.z))
            }
        };
        let norm = g.norm();
        if norm < T::lit(DEGENERATE_GRADIENT) || norm.is_nan() {
            return Err(GeometryError::degenerate(p));
        }
        Ok(g)
    }

    /// Unit normal `∇F/‖∇F‖`; `e_z` for the intrinsic surfaces.
    pub fn normal(&self, p: Vec3<T>) -> Result<Vec3<T>, GeometryError> {
        let g = self.gradient(p)?;
        Ok(g / g.norm())
    }

    /// Removes the surface-normal component of `v` at `p`.
    pub fn tangent_project(&self, p: Vec3<T>, v: Vec3<T>) -> Result<Vec3<T>, GeometryError> {
        if self.is_flat() {
            return Ok(v);
        }
        let n = self.normal(p)?;
        Ok(v - n * v.dot(n))
    }

    /// Maps an ambient point back onto the surface.
    ///
    /// Implicit surfaces use a damped Newton iteration on the scalar `λ` in
    /// `q = p − λ g`, with the search direction `g = ∇F` re-evaluated at each
    /// iterate, so at convergence `q − p` is parallel to `∇F(q)`.
    pub fn project(&self, p: Vec3<T>) -> Result<Vec3<T>, GeometryError> {
        match self {
            Surface::Plane => Ok(Vec3::planar(p.x, p.y)),
            Surface::FlatTorus => Ok(Vec3::planar(wrap_unit(p.x), wrap_unit(p.y))),
            Surface::Implicit(_) => self.project_implicit(p),
        }
    }

    fn project_implicit(&self, p: Vec3<T>) -> Result<Vec3<T>, GeometryError> {
        let tol = T::lit(T::PROJECTION_TOL);
        let settle = T::epsilon() * T::lit(8.0);
        let mut q = p;
        let mut lambda = T::zero();
        let mut residual = self.level(q);
        for _ in 0..PROJECTION_MAX_ITERATIONS {
            let g = self.gradient(q)?;
            // Newton on φ(λ) = F(p − λ g) from the current multiplier.
            let base = p - g * lambda;
            let phi = self.level(base);
            let slope = self.gradient(base)?.dot(g);
            if slope == T::zero() || slope.is_nan() {
                break;
            }
            let full = phi / slope;
            let mut damping = T::one();
            let mut next = p - g * (lambda + full);
            let mut next_residual = self.level(next);
            while (next_residual.abs() > phi.abs() || next_residual.is_nan()) && damping > T::lit(1e-4) {
                damping = damping * T::lit(0.5);
                next = p - g * (lambda + full * damping);
                next_residual = self.level(next);
            }
            if !next.is_finite() {
                break;
            }
            lambda = lambda + full * damping;
            let moved = (next - q).norm();
            q = next;
            residual = next_residual;
            if residual.abs() <= tol && moved <= settle * (T::one() + q.norm()) {
                return Ok(q);
            }
        }
        if residual.abs() <= tol && q.is_finite() {
            return Ok(q);
        }
        Err(GeometryError::ProjectionDiverged { iterations: PROJECTION_MAX_ITERATIONS, residual: residual.as_f64() })
    }

    /// A global parametrization hitting every catalog surface exactly:
    ///
    /// * plane / flat torus: `(u, v)` are the coordinates (wrapped on the torus);
    /// * ellipsoid: `u` azimuth, `v` polar angle of the ray from the centre;
    /// * skewed torus: `u` angle around the tube, `v` angle around the `z` axis;
    /// * revolution: `u` angle around the axis, `v` height.
    pub fn chart(&self, u: T, v: T) -> Vec3<T> {
        match self {
            Surface::Plane => Vec3::planar(u, v),
            Surface::FlatTorus => Vec3::planar(wrap_unit(u), wrap_unit(v)),
            Surface::Implicit(Implicit::Ellipsoid { a, b, c }) => {
                let d = Vec3::new(v.sin() * u.cos(), v.sin() * u.sin(), v.cos());
                let q = *a * d.x * d.x + *b * d.y * d.y + *c * d.z * d.z;
                d / q.sqrt()
            }
            Surface::Implicit(Implicit::SkewedTorus { major, minor, skew }) => {
                // Ray from the tube centre in the meridian plane at angle v:
                // s = r + a x with x = (R + s cos u) cos v, solved for s.
                let (cu, su) = (u.cos(), u.sin());
                let cv = v.cos();
                let s = (*minor + *skew * *major * cv) / (T::one() - *skew * cv * cu);
                let rho = *major + s * cu;
                Vec3::new(rho * cv, rho * v.sin(), s * su)
            }
            Surface::Implicit(Implicit::Revolution(f)) => {
                let r = f.radius(v);
                Vec3::new(r * u.cos(), r * u.sin(), v)
            }
        }
    }

    /// Displacement from `from` to `to`. On the flat torus this is the shortest
    /// representative, each coordinate mapped into `[−½, ½)`.
    #[inline]
    pub fn displacement(&self, from: Vec3<T>, to: Vec3<T>) -> Vec3<T> {
        let d = to - from;
        match self {
            Surface::FlatTorus => Vec3::planar(wrap_half(d.x), wrap_half(d.y)),
            _ => d,
        }
    }
}

/// Fractional part in `[0, 1)`.
#[inline]
pub fn wrap_unit<T: Real>(x: T) -> T {
    let w = x - x.floor();
    // x slightly below an integer can round up to exactly 1.
    if w >= T::one() {
        T::zero()
    } else {
        w
    }
}

/// Representative of `x mod 1` in `[−½, ½)`.
#[inline]
pub fn wrap_half<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let w = x - (x + half).floor();
    if w >= half {
        w - T::one()
    } else {
        w
    }
}

#[cfg(test)]
mod tests;
