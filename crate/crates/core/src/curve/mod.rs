//! Closed polylines constrained to a surface: the discrete stand-in for an
//! unparametrized embedded loop.

mod intersect;

use thiserror::Error;

use crate::geometry::{GeometryError, Surface, SurfaceKind};
use crate::scalar::Real;
use crate::vec3::Vec3;

pub use intersect::{segment_distance, segments_intersect_2d};

/// Smallest admissible vertex count.
pub const MIN_VERTICES: usize = 8;
/// Largest `|F(p)|` a vertex may carry (`f64`).
pub const SURFACE_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("a closed curve needs at least {MIN_VERTICES} vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {index} is off the surface (|F| = {residual:e})")]
    OffSurface { index: usize, residual: f64 },
    #[error("edge {0} has zero length")]
    ZeroEdge(usize),
    #[error("vertex {0} is not finite")]
    NonFinite(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Per-vertex discrete geometry of a curve.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveGeometry<T> {
    /// `‖p_{i+1} − p_i‖`.
    pub edge_lengths: Vec<T>,
    /// `h_i`, the mean of the two edges meeting at vertex `i`.
    pub spacing: Vec<T>,
    /// Geodesic curvature vectors `K_i`, tangent to the surface.
    pub curvature: Vec<Vec3<T>>,
    pub length: T,
    /// `max_i ‖K_i‖`.
    pub max_k: T,
    /// `Σ ‖K_i‖² h_i`.
    pub int_k2: T,
}

impl<T: Real> CurveGeometry<T> {
    pub fn min_spacing(&self) -> T {
        self.spacing.iter().copied().fold(T::infinity(), T::min)
    }
}

/// Cyclic polyline on a surface. Vertex `N − 1` connects back to vertex 0;
/// the closing vertex is not duplicated.
#[derive(Clone, Debug)]
pub struct DiscreteCurve<T: Real> {
    surface: Surface<T>,
    vertices: Vec<Vec3<T>>,
}

impl<T: Real> DiscreteCurve<T> {
    /// Validates vertex count, the surface constraint and positive edges.
    pub fn new(surface: Surface<T>, vertices: Vec<Vec3<T>>) -> Result<Self, CurveError> {
        if vertices.len() < MIN_VERTICES {
            return Err(CurveError::TooFewVertices(vertices.len()));
        }
        let tol = T::lit(SURFACE_TOL.max(10.0 * T::PROJECTION_TOL));
        for (index, p) in vertices.iter().enumerate() {
            if !p.is_finite() {
                return Err(CurveError::NonFinite(index));
            }
            let residual = surface.level(*p);
            if residual.abs() > tol || residual.is_nan() {
                return Err(CurveError::OffSurface { index, residual: residual.as_f64() });
            }
        }
        let curve = Self { surface, vertices };
        if let Some(i) = curve.edge_lengths().iter().position(|l| *l <= T::zero() || l.is_nan()) {
            return Err(CurveError::ZeroEdge(i));
        }
        Ok(curve)
    }

    /// Projects every point onto the surface first.
    pub fn from_points(surface: Surface<T>, points: Vec<Vec3<T>>) -> Result<Self, CurveError> {
        let projected = points.into_iter().map(|p| surface.project(p)).collect::<Result<Vec<_>, _>>()?;
        Self::new(surface, projected)
    }

    pub fn surface(&self) -> &Surface<T> {
        &self.surface
    }

    pub fn vertices(&self) -> &[Vec3<T>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vec3<T>> {
        self.vertices
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Displacement along edge `i`, from vertex `i` to vertex `i + 1`.
    #[inline]
    pub fn edge(&self, i: usize) -> Vec3<T> {
        let n = self.vertices.len();
        self.surface.displacement(self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> Vec<Vec3<T>> {
        (0..self.len()).map(|i| self.edge(i)).collect()
    }

    pub fn edge_lengths(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.edge(i).norm()).collect()
    }

    pub fn min_edge_length(&self) -> T {
        self.edge_lengths().into_iter().fold(T::infinity(), T::min)
    }

    /// Cyclic chord-length sum `Σ ‖p_{i+1} − p_i‖`.
    pub fn length(&self) -> T {
        self.edge_lengths().into_iter().sum()
    }

    /// Vertices with the flat-torus wraparound undone, so consecutive entries
    /// differ by the edge displacements. Identical to the vertices elsewhere.
    pub fn lifted(&self) -> Vec<Vec3<T>> {
        if self.surface.kind() != SurfaceKind::FlatTorus {
            return self.vertices.clone();
        }
        let mut out = Vec::with_capacity(self.len());
        let mut q = self.vertices[0];
        out.push(q);
        for i in 0..self.len() - 1 {
            q += self.edge(i);
            out.push(q);
        }
        out
    }

    /// Homotopy class `(p, q)` on the flat torus: the total coordinate
    /// displacement around the loop. `None` on other surfaces.
    pub fn winding(&self) -> Option<(i64, i64)> {
        if self.surface.kind() != SurfaceKind::FlatTorus {
            return None;
        }
        let total = (0..self.len()).fold(Vec3::zero(), |acc, i| acc + self.edge(i));
        Some((total.x.round().to_i64()?, total.y.round().to_i64()?))
    }

    /// Discrete geometry: spacing, curvature vectors and the two curvature
    /// functionals.
    ///
    /// `K_i` is the central second difference `(p_{i−1} − 2p_i + p_{i+1}) / h_i²`
    /// projected onto the tangent plane of the surface at `p_i`, with its
    /// component along the chord `p_{i+1} − p_{i−1}` removed. The stencil is
    /// exact for regular polygons and second order on uniform samples, so call
    /// it on (near) uniform-arclength curves.
    pub fn geometry(&self) -> Result<CurveGeometry<T>, CurveError> {
        let n = self.len();
        let edges = self.edges();
        let edge_lengths: Vec<T> = edges.iter().map(|e| e.norm()).collect();
        let half = T::lit(0.5);
        let mut spacing = Vec::with_capacity(n);
        let mut curvature = Vec::with_capacity(n);
        let mut max_k = T::zero();
        let mut int_k2 = T::zero();
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let h = (edge_lengths[prev] + edge_lengths[i]) * half;
            let second = (edges[i] - edges[prev]) / (h * h);
            let k = self.surface.tangent_project(self.vertices[i], second)?;
            let chord = self.surface.tangent_project(self.vertices[i], edges[prev] + edges[i])?;
            let k = k - chord * (k.dot(chord) / chord.norm_squared());
            let k2 = k.norm_squared();
            max_k = max_k.max(k2.sqrt());
            int_k2 = int_k2 + k2 * h;
            spacing.push(h);
            curvature.push(k);
        }
        Ok(CurveGeometry {
            length: edge_lengths.iter().copied().sum(),
            edge_lengths,
            spacing,
            curvature,
            max_k,
            int_k2,
        })
    }

    pub fn curvature_vectors(&self) -> Result<Vec<Vec3<T>>, CurveError> {
        Ok(self.geometry()?.curvature)
    }

    /// Midpoint quadrature `Σ ‖K_i‖² h_i` of `∫ k² ds`.
    pub fn integral_k_squared(&self) -> Result<T, CurveError> {
        Ok(self.geometry()?.int_k2)
    }

    /// Places `target` vertices at equal arclength along the polyline, starting
    /// at vertex 0, and projects them back onto the surface.
    pub fn resample_uniform(&self, target: usize) -> Result<Self, CurveError> {
        if target < MIN_VERTICES {
            return Err(CurveError::TooFewVertices(target));
        }
        let points = self.uniform_arclength_points(target);
        let projected = points.into_iter().map(|p| self.surface.project(p)).collect::<Result<Vec<_>, _>>()?;
        Self::new(self.surface.clone(), projected)
    }

    /// The equal-arclength points of [`resample_uniform`](Self::resample_uniform)
    /// before projection, in lifted coordinates.
    pub fn uniform_arclength_points(&self, target: usize) -> Vec<Vec3<T>> {
        let lifted = self.lifted();
        let edges = self.edges();
        let lengths: Vec<T> = edges.iter().map(|e| e.norm()).collect();
        let total: T = lengths.iter().copied().sum();
        let n = self.len();
        let mut out = Vec::with_capacity(target);
        let mut seg = 0usize;
        let mut seg_start = T::zero();
        let count = T::from_usize_lossy(target);
        for k in 0..target {
            let s = total * T::from_usize_lossy(k) / count;
            while seg + 1 < n && seg_start + lengths[seg] <= s {
                seg_start = seg_start + lengths[seg];
                seg += 1;
            }
            let frac = ((s - seg_start) / lengths[seg]).max(T::zero()).min(T::one());
            out.push(lifted[seg] + edges[seg] * frac);
        }
        out
    }

    /// Embeddedness monitor.
    ///
    /// Plane and flat torus: exact segment intersection between non-adjacent
    /// edges (the torus over the nine translated copies of the fundamental
    /// domain). Implicit surfaces: any two non-adjacent edges closer than a
    /// quarter of the shortest edge in R³.
    pub fn self_intersects(&self) -> bool {
        let n = self.len();
        let starts = self.lifted();
        let edges = self.edges();
        match self.surface.kind() {
            SurfaceKind::Plane => {
                let segs: Vec<_> = (0..n).map(|i| (i, starts[i], starts[i] + edges[i])).collect();
                intersect::any_planar_crossing(n, &segs, &segs)
            }
            SurfaceKind::FlatTorus => {
                // Put every edge start inside the unit square, then test the
                // originals against all nine translates.
                let originals: Vec<_> = (0..n)
                    .map(|i| {
                        let a = self.vertices[i];
                        (i, a, a + edges[i])
                    })
                    .collect();
                let mut copies = Vec::with_capacity(9 * n);
                for dx in [-1.0, 0.0, 1.0] {
                    for dy in [-1.0, 0.0, 1.0] {
                        let shift = Vec3::planar(T::lit(dx), T::lit(dy));
                        copies.extend(originals.iter().map(|&(i, a, b)| (i, a + shift, b + shift)));
                    }
                }
                intersect::any_planar_crossing(n, &originals, &copies)
            }
            SurfaceKind::Implicit => {
                let eps = self.min_edge_length() * T::lit(0.25);
                let segs: Vec<_> = (0..n).map(|i| (i, starts[i], starts[i] + edges[i])).collect();
                intersect::any_close_pair(n, &segs, eps)
            }
        }
    }
}
