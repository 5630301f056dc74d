//! Grid construction for Cartesian and logically rectangular mapped grids.
//!
//! Grids are built from ruled cells: the physical location of a point inside
//! a cell is the bilinear (2D) / trilinear (3D) interpolant of the cell's
//! vertices. All metric quantities (cell volumes, centroids, face normals,
//! area weights, quadrature nodes) are precomputed once at build time and
//! immutable afterwards.
//!
//! Index convention: all arrays cover the *extended* lattice including
//! `NG = 2` ghost layers per side. Interior cells are `NG..NG+n` in each
//! direction. Faces of direction d at extended index i sit between cells
//! i-1 and i; their normals point from the lower-index cell to the
//! higher-index cell.

mod grid2;
mod grid3;

pub use grid2::{Cell2, Face2, Grid2};
pub use grid3::{Cell3, Face3, FaceNode3, Grid3};

use thiserror::Error;

/// Number of ghost cell layers on every side.
pub const NG: usize = 2;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("folded grid: non-positive Jacobian in cell ({i}, {j}{})", k.map(|k| format!(", {k}")).unwrap_or_default())]
    FoldedGrid { i: isize, j: isize, k: Option<isize> },
    #[error("degenerate face at ({i}, {j}{}) in direction {dir}", k.map(|k| format!(", {k}")).unwrap_or_default())]
    DegenerateFace {
        i: isize,
        j: isize,
        k: Option<isize>,
        dir: usize,
    },
}

/// Gauss-Legendre rule on [0,1]; weights sum to 1.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// n-point Gauss-Legendre rule mapped from [-1,1] to [0,1].
    /// Exact for polynomials of degree <= 2n-1.
    pub fn gauss(n: usize) -> Self {
        // abscissae/weights on [-1,1]
        let (x, w): (Vec<f64>, Vec<f64>) = match n {
            1 => (vec![0.0], vec![2.0]),
            2 => {
                let a = 1.0 / 3f64.sqrt();
                (vec![-a, a], vec![1.0, 1.0])
            }
            3 => {
                let a = (3f64 / 5.0).sqrt();
                (vec![-a, 0.0, a], vec![5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])
            }
            4 => {
                let a = (3.0 / 7.0 - 2.0 / 7.0 * (6f64 / 5.0).sqrt()).sqrt();
                let b = (3.0 / 7.0 + 2.0 / 7.0 * (6f64 / 5.0).sqrt()).sqrt();
                let wa = (18.0 + 30f64.sqrt()) / 36.0;
                let wb = (18.0 - 30f64.sqrt()) / 36.0;
                (vec![-b, -a, a, b], vec![wb, wa, wa, wb])
            }
            5 => {
                let a = (5.0 - 2.0 * (10f64 / 7.0).sqrt()).sqrt() / 3.0;
                let b = (5.0 + 2.0 * (10f64 / 7.0).sqrt()).sqrt() / 3.0;
                let wa = (322.0 + 13.0 * 70f64.sqrt()) / 900.0;
                let wb = (322.0 - 13.0 * 70f64.sqrt()) / 900.0;
                (
                    vec![-b, -a, 0.0, a, b],
                    vec![wb, wa, 128.0 / 225.0, wa, wb],
                )
            }
            _ => panic!("unsupported quadrature order {n}"),
        };
        QuadratureRule {
            nodes: x.iter().map(|t| 0.5 * (t + 1.0)).collect(),
            weights: w.iter().map(|t| 0.5 * t).collect(),
        }
    }
}

/// The grid mapping T: computational coordinates -> physical coordinates.
///
/// Computational coordinates coincide with the physical domain extents, so
/// `Cartesian` is the identity map.
#[derive(Debug, Clone, PartialEq)]
pub enum GridKind {
    Cartesian,
    /// Sinusoidal perturbation T(x,y) = (x,y) + beta sin(2 pi x / l) sin(2 pi y / m) (1,1).
    Colella { beta: f64, l: f64, m: f64 },
    /// Same perturbation with l = m = 1.2, restricted to [-0.6, 0.6]^2 and
    /// identity outside (the perturbation vanishes on the seam).
    ShocktubeBlend { beta: f64 },
    /// Radial blend around a circular inclusion: points are pushed outward
    /// from the center by a Gaussian bump in radius,
    /// r -> r (1 + amp exp(-(r/r0)^2)). Documented stand-in; smooth, with
    /// strictly positive Jacobian for amp <= 0.15.
    CloudInclusion { amp: f64, r0: f64, cx: f64, cy: f64 },
    /// 3D sinusoidal perturbation with (1,1,1) direction.
    Colella3 { beta: f64, l: f64, m: f64, n: f64 },
}

impl GridKind {
    pub fn map2(&self, x: f64, y: f64) -> [f64; 2] {
        use std::f64::consts::TAU;
        match *self {
            GridKind::Cartesian | GridKind::Colella3 { .. } => [x, y],
            GridKind::Colella { beta, l, m } => {
                let s = beta * (TAU * x / l).sin() * (TAU * y / m).sin();
                [x + s, y + s]
            }
            GridKind::ShocktubeBlend { beta } => {
                let inside = |t: f64| -> f64 {
                    if t.abs() <= 0.6 {
                        (TAU * t / 1.2).sin()
                    } else {
                        0.0
                    }
                };
                let s = beta * inside(x) * inside(y);
                [x + s, y + s]
            }
            GridKind::CloudInclusion { amp, r0, cx, cy } => {
                let (dx, dy) = (x - cx, y - cy);
                let r2 = dx * dx + dy * dy;
                let s = 1.0 + amp * (-r2 / (r0 * r0)).exp();
                [cx + dx * s, cy + dy * s]
            }
        }
    }

    pub fn map3(&self, x: f64, y: f64, z: f64) -> [f64; 3] {
        use std::f64::consts::TAU;
        match *self {
            GridKind::Colella3 { beta, l, m, n } => {
                let s =
                    beta * (TAU * x / l).sin() * (TAU * y / m).sin() * (TAU * z / n).sin();
                [x + s, y + s, z + s]
            }
            GridKind::Cartesian => [x, y, z],
            // planar maps extended trivially in z
            _ => {
                let [px, py] = self.map2(x, y);
                [px, py, z]
            }
        }
    }
}

/// Build descriptor for a 2D grid.
#[derive(Debug, Clone)]
pub struct GridSpec2 {
    pub nx: usize,
    pub ny: usize,
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub kind: GridKind,
    /// Gauss points per direction for faces and cell volume terms (default 2).
    pub nq: usize,
}

impl GridSpec2 {
    pub fn new(nx: usize, ny: usize, lo: [f64; 2], hi: [f64; 2], kind: GridKind) -> Self {
        GridSpec2 {
            nx,
            ny,
            lo,
            hi,
            kind,
            nq: 2,
        }
    }
}

/// Build descriptor for a 3D grid.
#[derive(Debug, Clone)]
pub struct GridSpec3 {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub kind: GridKind,
    pub nq: usize,
}

impl GridSpec3 {
    pub fn new(
        nx: usize,
        ny: usize,
        nz: usize,
        lo: [f64; 3],
        hi: [f64; 3],
        kind: GridKind,
    ) -> Self {
        GridSpec3 {
            nx,
            ny,
            nz,
            lo,
            hi,
            kind,
            nq: 2,
        }
    }
}

#[inline]
pub(crate) fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}
