//! Curve-shortening flow of closed embedded curves on surfaces.
//!
//! The flow `∂u/∂t = k N` moves every point of a closed curve along the
//! surface, normal to the curve, at a speed equal to its geodesic curvature.
//! It is the downward gradient flow of arc length, so lengths decrease and
//! curves either shrink to a point or settle on an embedded closed geodesic.
//!
//! * [`geometry`]: surface catalog and projection primitives.
//! * [`curve`]: cyclic polylines on a surface, curvature, resampling, embeddedness.
//! * [`flow`]: the explicit stepper, run loop and terminal classification.
//! * [`experiments`]: scenario catalog, plateau detection and data export.
//! * [`cli`]: the `curveflow` command line.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`, which is what the experiment layer uses.

pub mod cli;
pub mod curve;
pub mod experiments;
pub mod flow;
pub mod geometry;
pub mod io;
mod scalar;
mod vec3;

pub use scalar::Real;
pub use vec3::Vec3;

pub type Point = Vec3<f64>;
pub type Surface64 = geometry::Surface<f64>;
pub type Curve64 = curve::DiscreteCurve<f64>;
pub type FlowConfig64 = flow::FlowConfig<f64>;
pub type FlowState64 = flow::FlowState<f64>;
pub type FlowTrace64 = flow::FlowTrace<f64>;
pub type FlowResult64 = flow::FlowResult<f64>;
