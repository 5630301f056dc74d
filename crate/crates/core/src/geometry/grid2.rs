//! 2D logically rectangular grid with bilinear ruled cells.

use super::{cross2, GeometryError, GridKind, GridSpec2, QuadratureRule, NG};

/// Metric data of one cell.
#[derive(Debug, Clone)]
pub struct Cell2 {
    /// Physical area |C|.
    pub vol: f64,
    /// Physical centroid (1/|C|) integral of x.
    pub centroid: [f64; 2],
    /// Characteristic length: smallest edge.
    pub ds: f64,
    /// Bilinear coefficients: X(xi,eta) = c00 + c10 xi + c01 eta + c11 xi eta.
    pub coeff: [[f64; 2]; 4],
    /// Volume quadrature: (physical point, weight); weights sum to |C|.
    pub vq: Vec<([f64; 2], f64)>,
}

impl Cell2 {
    #[inline]
    pub fn point(&self, xi: f64, eta: f64) -> [f64; 2] {
        let c = &self.coeff;
        [
            c[0][0] + c[1][0] * xi + c[2][0] * eta + c[3][0] * xi * eta,
            c[0][1] + c[1][1] * xi + c[2][1] * eta + c[3][1] * xi * eta,
        ]
    }

    /// Jacobian determinant at unit-cell coordinates; bilinear cells have
    /// J linear in each coordinate, so corner values bound it.
    #[inline]
    pub fn jac(&self, xi: f64, eta: f64) -> f64 {
        let c = &self.coeff;
        let tx = [c[1][0] + c[3][0] * eta, c[1][1] + c[3][1] * eta];
        let te = [c[2][0] + c[3][0] * xi, c[2][1] + c[3][1] * xi];
        cross2(tx, te)
    }
}

/// Metric data of one face. 2D faces are straight segments, so the unit
/// normal is constant along the face.
#[derive(Debug, Clone)]
pub struct Face2 {
    /// Unit normal pointing from the lower-index cell to the higher-index cell.
    pub normal: [f64; 2],
    /// Face length.
    pub len: f64,
    /// Quadrature nodes: (physical point, weight); weights sum to len.
    pub nodes: Vec<([f64; 2], f64)>,
}

/// A 2D grid with `NG` ghost layers on each side. Cell (i,j) in extended
/// indices occupies `cells[j*nxt + i]`; interior cells are
/// `NG <= i < NG+nx`, `NG <= j < NG+ny`.
#[derive(Debug, Clone)]
pub struct Grid2 {
    pub nx: usize,
    pub ny: usize,
    /// Extended cell counts: nx + 2 NG, ny + 2 NG.
    pub nxt: usize,
    pub nyt: usize,
    /// Computational cell spacings.
    pub dxc: f64,
    pub dyc: f64,
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub kind: GridKind,
    pub cells: Vec<Cell2>,
    /// x-faces: (nxt+1) x nyt, face (i,j) between cells (i-1,j) and (i,j).
    pub xfaces: Vec<Face2>,
    /// y-faces: nxt x (nyt+1), face (i,j) between cells (i,j-1) and (i,j).
    pub yfaces: Vec<Face2>,
    pub quad: QuadratureRule,
}

impl Grid2 {
    pub fn build(spec: &GridSpec2) -> Result<Grid2, GeometryError> {
        let (nx, ny) = (spec.nx, spec.ny);
        assert!(nx > 0 && ny > 0, "positive cell counts required");
        let (nxt, nyt) = (nx + 2 * NG, ny + 2 * NG);
        let dxc = (spec.hi[0] - spec.lo[0]) / nx as f64;
        let dyc = (spec.hi[1] - spec.lo[1]) / ny as f64;
        let quad = QuadratureRule::gauss(spec.nq);

        // vertex lattice, (nxt+1) x (nyt+1)
        let vid = |i: usize, j: usize| j * (nxt + 1) + i;
        let mut verts = vec![[0.0f64; 2]; (nxt + 1) * (nyt + 1)];
        for j in 0..=nyt {
            for i in 0..=nxt {
                let xc = spec.lo[0] + (i as f64 - NG as f64) * dxc;
                let yc = spec.lo[1] + (j as f64 - NG as f64) * dyc;
                verts[vid(i, j)] = spec.kind.map2(xc, yc);
            }
        }

        let mut cells = Vec::with_capacity(nxt * nyt);
        for j in 0..nyt {
            for i in 0..nxt {
                let v00 = verts[vid(i, j)];
                let v10 = verts[vid(i + 1, j)];
                let v01 = verts[vid(i, j + 1)];
                let v11 = verts[vid(i + 1, j + 1)];
                let coeff = [
                    v00,
                    [v10[0] - v00[0], v10[1] - v00[1]],
                    [v01[0] - v00[0], v01[1] - v00[1]],
                    [
                        v11[0] - v10[0] - v01[0] + v00[0],
                        v11[1] - v10[1] - v01[1] + v00[1],
                    ],
                ];
                let mut cell = Cell2 {
                    vol: 0.0,
                    centroid: [0.0; 2],
                    ds: 0.0,
                    coeff,
                    vq: Vec::new(),
                };
                // J is bilinear without the xi*eta term -> extrema at corners
                for &(xi, eta) in &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
                    if cell.jac(xi, eta) <= 0.0 {
                        return Err(GeometryError::FoldedGrid {
                            i: i as isize - NG as isize,
                            j: j as isize - NG as isize,
                            k: None,
                        });
                    }
                }
                let mut vol = 0.0;
                let mut cen = [0.0; 2];
                for (a, &xi) in quad.nodes.iter().enumerate() {
                    for (b, &eta) in quad.nodes.iter().enumerate() {
                        let w = quad.weights[a] * quad.weights[b] * cell.jac(xi, eta);
                        let p = cell.point(xi, eta);
                        vol += w;
                        cen[0] += w * p[0];
                        cen[1] += w * p[1];
                        cell.vq.push((p, w));
                    }
                }
                cell.vol = vol;
                cell.centroid = [cen[0] / vol, cen[1] / vol];
                let edge = |a: [f64; 2], b: [f64; 2]| ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
                cell.ds = edge(v00, v10)
                    .min(edge(v01, v11))
                    .min(edge(v00, v01))
                    .min(edge(v10, v11));
                cells.push(cell);
            }
        }

        // straight-segment face from v0 to v1 with normal = rot(-90 deg) of the tangent
        let make_face = |v0: [f64; 2], v1: [f64; 2], flip: bool| -> Face2 {
            let e = [v1[0] - v0[0], v1[1] - v0[1]];
            let len = (e[0] * e[0] + e[1] * e[1]).sqrt();
            let normal = if flip {
                [-e[1] / len, e[0] / len]
            } else {
                [e[1] / len, -e[0] / len]
            };
            let nodes = quad
                .nodes
                .iter()
                .zip(&quad.weights)
                .map(|(&s, &w)| ([v0[0] + s * e[0], v0[1] + s * e[1]], w * len))
                .collect();
            Face2 { normal, len, nodes }
        };

        let mut xfaces = Vec::with_capacity((nxt + 1) * nyt);
        for j in 0..nyt {
            for i in 0..=nxt {
                // segment from (i,j) to (i,j+1); normal points +x-ward
                let f = make_face(verts[vid(i, j)], verts[vid(i, j + 1)], false);
                if !(f.len > 0.0) {
                    return Err(GeometryError::DegenerateFace {
                        i: i as isize - NG as isize,
                        j: j as isize - NG as isize,
                        k: None,
                        dir: 0,
                    });
                }
                xfaces.push(f);
            }
        }
        let mut yfaces = Vec::with_capacity(nxt * (nyt + 1));
        for j in 0..=nyt {
            for i in 0..nxt {
                // segment from (i,j) to (i+1,j); normal points +y-ward
                let f = make_face(verts[vid(i, j)], verts[vid(i + 1, j)], true);
                if !(f.len > 0.0) {
                    return Err(GeometryError::DegenerateFace {
                        i: i as isize - NG as isize,
                        j: j as isize - NG as isize,
                        k: None,
                        dir: 1,
                    });
                }
                yfaces.push(f);
            }
        }

        Ok(Grid2 {
            nx,
            ny,
            nxt,
            nyt,
            dxc,
            dyc,
            lo: spec.lo,
            hi: spec.hi,
            kind: spec.kind.clone(),
            cells,
            xfaces,
            yfaces,
            quad,
        })
    }

    /// Extended cell index.
    #[inline]
    pub fn cid(&self, i: usize, j: usize) -> usize {
        j * self.nxt + i
    }

    /// x-face between cells (i-1,j) and (i,j).
    #[inline]
    pub fn xfid(&self, i: usize, j: usize) -> usize {
        j * (self.nxt + 1) + i
    }

    /// y-face between cells (i,j-1) and (i,j).
    #[inline]
    pub fn yfid(&self, i: usize, j: usize) -> usize {
        j * self.nxt + i
    }

    #[inline]
    pub fn cell(&self, i: usize, j: usize) -> &Cell2 {
        &self.cells[self.cid(i, j)]
    }

    #[inline]
    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        i >= NG && i < NG + self.nx && j >= NG && j < NG + self.ny
    }

    /// Smallest interior characteristic length.
    pub fn min_ds(&self) -> f64 {
        let mut ds = f64::INFINITY;
        for j in NG..NG + self.ny {
            for i in NG..NG + self.nx {
                ds = ds.min(self.cell(i, j).ds);
            }
        }
        ds
    }
}
