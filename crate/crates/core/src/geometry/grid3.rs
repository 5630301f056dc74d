//! 3D logically rectangular grid with trilinear ruled cells.

use super::{cross3, norm3, GeometryError, GridKind, GridSpec3, QuadratureRule, NG};

/// Trilinear coefficient order:
/// X = c000 + c100 xi + c010 eta + c001 zeta + c110 xi eta + c101 xi zeta
///     + c011 eta zeta + c111 xi eta zeta.
#[derive(Debug, Clone)]
pub struct Cell3 {
    pub vol: f64,
    pub centroid: [f64; 3],
    pub ds: f64,
    pub coeff: [[f64; 3]; 8],
    /// Volume quadrature: (physical point, weight); weights sum to |C|.
    pub vq: Vec<([f64; 3], f64)>,
}

impl Cell3 {
    #[inline]
    pub fn point(&self, xi: f64, eta: f64, zeta: f64) -> [f64; 3] {
        let c = &self.coeff;
        let mut p = [0.0; 3];
        for d in 0..3 {
            p[d] = c[0][d]
                + c[1][d] * xi
                + c[2][d] * eta
                + c[3][d] * zeta
                + c[4][d] * xi * eta
                + c[5][d] * xi * zeta
                + c[6][d] * eta * zeta
                + c[7][d] * xi * eta * zeta;
        }
        p
    }

    #[inline]
    pub fn jac(&self, xi: f64, eta: f64, zeta: f64) -> f64 {
        let c = &self.coeff;
        let mut tx = [0.0; 3];
        let mut te = [0.0; 3];
        let mut tz = [0.0; 3];
        for d in 0..3 {
            tx[d] = c[1][d] + c[4][d] * eta + c[5][d] * zeta + c[7][d] * eta * zeta;
            te[d] = c[2][d] + c[4][d] * xi + c[6][d] * zeta + c[7][d] * xi * zeta;
            tz[d] = c[3][d] + c[5][d] * xi + c[6][d] * eta + c[7][d] * xi * eta;
        }
        let cx = cross3(te, tz);
        tx[0] * cx[0] + tx[1] * cx[1] + tx[2] * cx[2]
    }
}

/// One quadrature node of a bilinear face.
#[derive(Debug, Clone, Copy)]
pub struct FaceNode3 {
    pub point: [f64; 3],
    /// Unit normal at this node, oriented low-index -> high-index cell.
    pub normal: [f64; 3],
    /// Quadrature weight including the area element sqrt(a); sums to area.
    pub w: f64,
}

#[derive(Debug, Clone)]
pub struct Face3 {
    pub area: f64,
    pub nodes: Vec<FaceNode3>,
}

/// A 3D grid with `NG` ghost layers per side; extended-index layout as Grid2.
#[derive(Debug, Clone)]
pub struct Grid3 {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub nxt: usize,
    pub nyt: usize,
    pub nzt: usize,
    pub dxc: f64,
    pub dyc: f64,
    pub dzc: f64,
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub kind: GridKind,
    pub cells: Vec<Cell3>,
    /// x-faces: (nxt+1) x nyt x nzt.
    pub xfaces: Vec<Face3>,
    /// y-faces: nxt x (nyt+1) x nzt.
    pub yfaces: Vec<Face3>,
    /// z-faces: nxt x nyt x (nzt+1).
    pub zfaces: Vec<Face3>,
    pub quad: QuadratureRule,
}

impl Grid3 {
    pub fn build(spec: &GridSpec3) -> Result<Grid3, GeometryError> {
        let (nx, ny, nz) = (spec.nx, spec.ny, spec.nz);
        assert!(nx > 0 && ny > 0 && nz > 0, "positive cell counts required");
        let (nxt, nyt, nzt) = (nx + 2 * NG, ny + 2 * NG, nz + 2 * NG);
        let dxc = (spec.hi[0] - spec.lo[0]) / nx as f64;
        let dyc = (spec.hi[1] - spec.lo[1]) / ny as f64;
        let dzc = (spec.hi[2] - spec.lo[2]) / nz as f64;
        let quad = QuadratureRule::gauss(spec.nq);

        let vid = |i: usize, j: usize, k: usize| (k * (nyt + 1) + j) * (nxt + 1) + i;
        let mut verts = vec![[0.0f64; 3]; (nxt + 1) * (nyt + 1) * (nzt + 1)];
        for k in 0..=nzt {
            for j in 0..=nyt {
                for i in 0..=nxt {
                    let xc = spec.lo[0] + (i as f64 - NG as f64) * dxc;
                    let yc = spec.lo[1] + (j as f64 - NG as f64) * dyc;
                    let zc = spec.lo[2] + (k as f64 - NG as f64) * dzc;
                    verts[vid(i, j, k)] = spec.kind.map3(xc, yc, zc);
                }
            }
        }

        let sub3 = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        let dist = |a: [f64; 3], b: [f64; 3]| norm3(sub3(a, b));

        let mut cells = Vec::with_capacity(nxt * nyt * nzt);
        for k in 0..nzt {
            for j in 0..nyt {
                for i in 0..nxt {
                    let v = |di: usize, dj: usize, dk: usize| verts[vid(i + di, j + dj, k + dk)];
                    let v000 = v(0, 0, 0);
                    let v100 = v(1, 0, 0);
                    let v010 = v(0, 1, 0);
                    let v001 = v(0, 0, 1);
                    let v110 = v(1, 1, 0);
                    let v101 = v(1, 0, 1);
                    let v011 = v(0, 1, 1);
                    let v111 = v(1, 1, 1);
                    let mut coeff = [[0.0f64; 3]; 8];
                    for d in 0..3 {
                        coeff[0][d] = v000[d];
                        coeff[1][d] = v100[d] - v000[d];
                        coeff[2][d] = v010[d] - v000[d];
                        coeff[3][d] = v001[d] - v000[d];
                        coeff[4][d] = v110[d] - v100[d] - v010[d] + v000[d];
                        coeff[5][d] = v101[d] - v100[d] - v001[d] + v000[d];
                        coeff[6][d] = v011[d] - v010[d] - v001[d] + v000[d];
                        coeff[7][d] = v111[d] - v110[d] - v101[d] - v011[d]
                            + v100[d]
                            + v010[d]
                            + v001[d]
                            - v000[d];
                    }
                    let mut cell = Cell3 {
                        vol: 0.0,
                        centroid: [0.0; 3],
                        ds: 0.0,
                        coeff,
                        vq: Vec::new(),
                    };
                    // check corners and quadrature points for folding
                    let mut probes: Vec<(f64, f64, f64)> = Vec::new();
                    for &a in &[0.0, 1.0] {
                        for &b in &[0.0, 1.0] {
                            for &c in &[0.0, 1.0] {
                                probes.push((a, b, c));
                            }
                        }
                    }
                    for &xi in &quad.nodes {
                        for &eta in &quad.nodes {
                            for &zeta in &quad.nodes {
                                probes.push((xi, eta, zeta));
                            }
                        }
                    }
                    for &(a, b, c) in &probes {
                        if cell.jac(a, b, c) <= 0.0 {
                            return Err(GeometryError::FoldedGrid {
                                i: i as isize - NG as isize,
                                j: j as isize - NG as isize,
                                k: Some(k as isize - NG as isize),
                            });
                        }
                    }
                    let mut vol = 0.0;
                    let mut cen = [0.0; 3];
                    for (a, &xi) in quad.nodes.iter().enumerate() {
                        for (b, &eta) in quad.nodes.iter().enumerate() {
                            for (c, &zeta) in quad.nodes.iter().enumerate() {
                                let w = quad.weights[a]
                                    * quad.weights[b]
                                    * quad.weights[c]
                                    * cell.jac(xi, eta, zeta);
                                let p = cell.point(xi, eta, zeta);
                                vol += w;
                                for d in 0..3 {
                                    cen[d] += w * p[d];
                                }
                                cell.vq.push((p, w));
                            }
                        }
                    }
                    cell.vol = vol;
                    cell.centroid = [cen[0] / vol, cen[1] / vol, cen[2] / vol];
                    let edges = [
                        (v000, v100),
                        (v010, v110),
                        (v001, v101),
                        (v011, v111),
                        (v000, v010),
                        (v100, v110),
                        (v001, v011),
                        (v101, v111),
                        (v000, v001),
                        (v100, v101),
                        (v010, v011),
                        (v110, v111),
                    ];
                    cell.ds = edges
                        .iter()
                        .map(|&(a, b)| dist(a, b))
                        .fold(f64::INFINITY, f64::min);
                    cells.push(cell);
                }
            }
        }

        // Bilinear face from corners s00, s10 (s-dir), s01 (t-dir), s11;
        // normal = (dS/ds) x (dS/dt) / |...|. Parameter directions are chosen
        // per face orientation so the normal points toward increasing index.
        let make_face = |s00: [f64; 3], s10: [f64; 3], s01: [f64; 3], s11: [f64; 3]| -> Option<Face3> {
            let d10 = sub3(s10, s00);
            let d01 = sub3(s01, s00);
            let d11 = [
                s11[0] - s10[0] - s01[0] + s00[0],
                s11[1] - s10[1] - s01[1] + s00[1],
                s11[2] - s10[2] - s01[2] + s00[2],
            ];
            let mut nodes = Vec::with_capacity(quad.nodes.len() * quad.nodes.len());
            let mut area = 0.0;
            for (a, &s) in quad.nodes.iter().enumerate() {
                for (b, &t) in quad.nodes.iter().enumerate() {
                    let ts = [
                        d10[0] + d11[0] * t,
                        d10[1] + d11[1] * t,
                        d10[2] + d11[2] * t,
                    ];
                    let tt = [
                        d01[0] + d11[0] * s,
                        d01[1] + d11[1] * s,
                        d01[2] + d11[2] * s,
                    ];
                    let nv = cross3(ts, tt);
                    let sa = norm3(nv);
                    if !(sa > 0.0) {
                        return None;
                    }
                    let w = quad.weights[a] * quad.weights[b] * sa;
                    let point = [
                        s00[0] + d10[0] * s + d01[0] * t + d11[0] * s * t,
                        s00[1] + d10[1] * s + d01[1] * t + d11[1] * s * t,
                        s00[2] + d10[2] * s + d01[2] * t + d11[2] * s * t,
                    ];
                    nodes.push(FaceNode3 {
                        point,
                        normal: [nv[0] / sa, nv[1] / sa, nv[2] / sa],
                        w,
                    });
                    area += w;
                }
            }
            Some(Face3 { area, nodes })
        };

        // x-faces: parametrized by (eta, zeta); eta x zeta -> +xi
        let mut xfaces = Vec::with_capacity((nxt + 1) * nyt * nzt);
        for k in 0..nzt {
            for j in 0..nyt {
                for i in 0..=nxt {
                    let f = make_face(
                        verts[vid(i, j, k)],
                        verts[vid(i, j + 1, k)],
                        verts[vid(i, j, k + 1)],
                        verts[vid(i, j + 1, k + 1)],
                    )
                    .ok_or(GeometryError::DegenerateFace {
                        i: i as isize - NG as isize,
                        j: j as isize - NG as isize,
                        k: Some(k as isize - NG as isize),
                        dir: 0,
                    })?;
                    xfaces.push(f);
                }
            }
        }
        // y-faces: parametrized by (zeta, xi); zeta x xi -> +eta
        let mut yfaces = Vec::with_capacity(nxt * (nyt + 1) * nzt);
        for k in 0..nzt {
            for j in 0..=nyt {
                for i in 0..nxt {
                    let f = make_face(
                        verts[vid(i, j, k)],
                        verts[vid(i, j, k + 1)],
                        verts[vid(i + 1, j, k)],
                        verts[vid(i + 1, j, k + 1)],
                    )
                    .ok_or(GeometryError::DegenerateFace {
                        i: i as isize - NG as isize,
                        j: j as isize - NG as isize,
                        k: Some(k as isize - NG as isize),
                        dir: 1,
                    })?;
                    yfaces.push(f);
                }
            }
        }
        // z-faces: parametrized by (xi, eta); xi x eta -> +zeta
        let mut zfaces = Vec::with_capacity(nxt * nyt * (nzt + 1));
        for k in 0..=nzt {
            for j in 0..nyt {
                for i in 0..nxt {
                    let f = make_face(
                        verts[vid(i, j, k)],
                        verts[vid(i + 1, j, k)],
                        verts[vid(i, j + 1, k)],
                        verts[vid(i + 1, j + 1, k)],
                    )
                    .ok_or(GeometryError::DegenerateFace {
                        i: i as isize - NG as isize,
                        j: j as isize - NG as isize,
                        k: Some(k as isize - NG as isize),
                        dir: 2,
                    })?;
                    zfaces.push(f);
                }
            }
        }

        Ok(Grid3 {
            nx,
            ny,
            nz,
            nxt,
            nyt,
            nzt,
            dxc,
            dyc,
            dzc,
            lo: spec.lo,
            hi: spec.hi,
            kind: spec.kind.clone(),
            cells,
            xfaces,
            yfaces,
            zfaces,
            quad,
        })
    }

    #[inline]
    pub fn cid(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.nyt + j) * self.nxt + i
    }

    #[inline]
    pub fn xfid(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.nyt + j) * (self.nxt + 1) + i
    }

    #[inline]
    pub fn yfid(&self, i: usize, j: usize, k: usize) -> usize {
        (k * (self.nyt + 1) + j) * self.nxt + i
    }

    #[inline]
    pub fn zfid(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.nyt + j) * self.nxt + i
    }

    #[inline]
    pub fn cell(&self, i: usize, j: usize, k: usize) -> &Cell3 {
        &self.cells[self.cid(i, j, k)]
    }

    #[inline]
    pub fn is_interior(&self, i: usize, j: usize, k: usize) -> bool {
        i >= NG
            && i < NG + self.nx
            && j >= NG
            && j < NG + self.ny
            && k >= NG
            && k < NG + self.nz
    }

    pub fn min_ds(&self) -> f64 {
        let mut ds = f64::INFINITY;
        for k in NG..NG + self.nz {
            for j in NG..NG + self.ny {
                for i in NG..NG + self.nx {
                    ds = ds.min(self.cell(i, j, k).ds);
                }
            }
        }
        ds
    }
}
