//! 3D reconstruction operator.
//!
//! Same construction as `Recon2` with a 26-neighbor full stencil, 9
//! non-constant basis functions, and 8 octant candidates. On Cartesian
//! grids all cells are congruent, so the fit pseudo-inverses are computed
//! once and shared (they would otherwise dominate memory on large grids).

use super::{weno_weights, CENTRAL_WEIGHT};
use crate::geometry::{Grid3, GridKind, QuadratureRule};
use nalgebra::{DMatrix, SMatrix};

/// All face/edge/corner neighbor offsets, k-major order.
pub fn nbr26() -> Vec<(isize, isize, isize)> {
    let mut v = Vec::with_capacity(26);
    for dk in -1..=1isize {
        for dj in -1..=1isize {
            for di in -1..=1isize {
                if (di, dj, dk) != (0, 0, 0) {
                    v.push((di, dj, dk));
                }
            }
        }
    }
    v
}

const OCTS: [(isize, isize, isize); 8] = [
    (-1, -1, -1),
    (1, -1, -1),
    (-1, 1, -1),
    (1, 1, -1),
    (-1, -1, 1),
    (1, -1, 1),
    (-1, 1, 1),
    (1, 1, 1),
];

fn oct_offsets(s: (isize, isize, isize)) -> [(isize, isize, isize); 7] {
    let (sx, sy, sz) = s;
    [
        (sx, 0, 0),
        (0, sy, 0),
        (0, 0, sz),
        (sx, sy, 0),
        (sx, 0, sz),
        (0, sy, sz),
        (sx, sy, sz),
    ]
}

pub struct Recon3 {
    pub nxt: usize,
    pub nyt: usize,
    pub nzt: usize,
    pub cen: Vec<[f64; 3]>,
    /// h = |C|^(1/3).
    pub h: Vec<f64>,
    /// (m200, m020, m002, m110, m101, m011).
    pub mom: Vec<[f64; 6]>,
    nbrs: Vec<(isize, isize, isize)>,
    /// 9x26 row-major; single entry when the grid is uniform.
    pinv_full: Vec<Vec<f64>>,
    /// per octant 3x7 row-major.
    pinv_oct: Vec<[[f64; 21]; 8]>,
    uniform: bool,
}

impl Recon3 {
    pub fn build(grid: &Grid3) -> Recon3 {
        let (nxt, nyt, nzt) = (grid.nxt, grid.nyt, grid.nzt);
        let n = nxt * nyt * nzt;
        let uniform = grid.kind == GridKind::Cartesian;

        // 3-point tensor quadrature per cell: exact for the degree-2 basis
        // against the trilinear Jacobian (the built-in 2-point rule is not).
        let q3 = QuadratureRule::gauss(3);
        let cell_q3 = |c: usize| -> Vec<([f64; 3], f64)> {
            let cell = &grid.cells[c];
            let mut pts = Vec::with_capacity(27);
            for (a, &xi) in q3.nodes.iter().enumerate() {
                for (b, &eta) in q3.nodes.iter().enumerate() {
                    for (d, &zeta) in q3.nodes.iter().enumerate() {
                        let w = q3.weights[a]
                            * q3.weights[b]
                            * q3.weights[d]
                            * cell.jac(xi, eta, zeta);
                        pts.push((cell.point(xi, eta, zeta), w));
                    }
                }
            }
            pts
        };

        let mut cen = vec![[0.0; 3]; n];
        let mut h = vec![0.0; n];
        let mut mom = vec![[0.0; 6]; n];
        for c in 0..n {
            let cell = &grid.cells[c];
            cen[c] = cell.centroid;
            h[c] = cell.vol.cbrt();
            let mut m = [0.0; 6];
            for (p, w) in cell_q3(c) {
                let xi = (p[0] - cen[c][0]) / h[c];
                let eta = (p[1] - cen[c][1]) / h[c];
                let zeta = (p[2] - cen[c][2]) / h[c];
                m[0] += w * xi * xi;
                m[1] += w * eta * eta;
                m[2] += w * zeta * zeta;
                m[3] += w * xi * eta;
                m[4] += w * xi * zeta;
                m[5] += w * eta * zeta;
            }
            for v in m.iter_mut() {
                *v /= cell.vol;
            }
            mom[c] = m;
        }

        let nbrs = nbr26();

        let basis_avg = |c: usize, o: usize| -> [f64; 9] {
            let mut b = [0.0; 9];
            let vol = grid.cells[o].vol;
            for (p, w) in cell_q3(o) {
                let xi = (p[0] - cen[c][0]) / h[c];
                let eta = (p[1] - cen[c][1]) / h[c];
                let zeta = (p[2] - cen[c][2]) / h[c];
                let m = &mom[c];
                b[0] += w * xi;
                b[1] += w * eta;
                b[2] += w * zeta;
                b[3] += w * (xi * xi - m[0]);
                b[4] += w * (eta * eta - m[1]);
                b[5] += w * (zeta * zeta - m[2]);
                b[6] += w * (xi * eta - m[3]);
                b[7] += w * (xi * zeta - m[4]);
                b[8] += w * (eta * zeta - m[5]);
            }
            for v in b.iter_mut() {
                *v /= vol;
            }
            b
        };

        let cid = |i: usize, j: usize, k: usize| (k * nyt + j) * nxt + i;

        let build_cell = |i: usize, j: usize, k: usize| -> (Vec<f64>, [[f64; 21]; 8]) {
            let c = cid(i, j, k);
            let mut g = DMatrix::<f64>::zeros(26, 9);
            let mut w = vec![0.0; 26];
            for (r, &(di, dj, dk)) in nbrs.iter().enumerate() {
                let o = cid(
                    (i as isize + di) as usize,
                    (j as isize + dj) as usize,
                    (k as isize + dk) as usize,
                );
                let b = basis_avg(c, o);
                for col in 0..9 {
                    g[(r, col)] = b[col];
                }
                let d = ((cen[o][0] - cen[c][0]).powi(2)
                    + (cen[o][1] - cen[c][1]).powi(2)
                    + (cen[o][2] - cen[c][2]).powi(2))
                .sqrt();
                w[r] = 1.0 / d;
            }
            let mut gtw = DMatrix::<f64>::zeros(9, 26);
            for r in 0..26 {
                for col in 0..9 {
                    gtw[(col, r)] = g[(r, col)] * w[r];
                }
            }
            let m = &gtw * &g;
            let minv = m
                .try_inverse()
                .expect("rank-deficient reconstruction stencil");
            let p = minv * gtw;
            let mut full = vec![0.0; 9 * 26];
            for r in 0..9 {
                for col in 0..26 {
                    full[r * 26 + col] = p[(r, col)];
                }
            }

            let mut octs = [[0.0; 21]; 8];
            for (qi, &s) in OCTS.iter().enumerate() {
                let offs = oct_offsets(s);
                let mut gq = SMatrix::<f64, 7, 3>::zeros();
                for (r, &(di, dj, dk)) in offs.iter().enumerate() {
                    let o = cid(
                        (i as isize + di) as usize,
                        (j as isize + dj) as usize,
                        (k as isize + dk) as usize,
                    );
                    let b = basis_avg(c, o);
                    for col in 0..3 {
                        gq[(r, col)] = b[col];
                    }
                }
                let mq = gq.transpose() * gq;
                let p = mq.try_inverse().expect("degenerate one-sided stencil")
                    * gq.transpose();
                for r in 0..3 {
                    for col in 0..7 {
                        octs[qi][r * 7 + col] = p[(r, col)];
                    }
                }
            }
            (full, octs)
        };

        let (pinv_full, pinv_oct) = if uniform {
            let (f, o) = build_cell(1, 1, 1);
            (vec![f], vec![o])
        } else {
            let mut pf = Vec::with_capacity(n);
            let mut po = Vec::with_capacity(n);
            for k in 0..nzt {
                for j in 0..nyt {
                    for i in 0..nxt {
                        let interior = i >= 1
                            && i < nxt - 1
                            && j >= 1
                            && j < nyt - 1
                            && k >= 1
                            && k < nzt - 1;
                        if interior {
                            let (f, o) = build_cell(i, j, k);
                            pf.push(f);
                            po.push(o);
                        } else {
                            pf.push(Vec::new());
                            po.push([[0.0; 21]; 8]);
                        }
                    }
                }
            }
            (pf, po)
        };

        Recon3 {
            nxt,
            nyt,
            nzt,
            cen,
            h,
            mom,
            nbrs,
            pinv_full,
            pinv_oct,
            uniform,
        }
    }

    #[inline]
    pub fn cid(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.nyt + j) * self.nxt + i
    }

    #[inline]
    fn pidx(&self, c: usize) -> usize {
        if self.uniform {
            0
        } else {
            c
        }
    }

    /// Coefficient layout per variable:
    /// [avg, xi, eta, zeta, xi^2-m, eta^2-m, zeta^2-m, xi eta-m, xi zeta-m, eta zeta-m].
    pub fn reconstruct<const N: usize>(
        &self,
        field: &[[f64; N]],
        limit: bool,
    ) -> Vec<[[f64; 10]; N]> {
        let n = self.nxt * self.nyt * self.nzt;
        let mut out = vec![[[0.0; 10]; N]; n];
        let lam = {
            let tot = CENTRAL_WEIGHT + 8.0;
            let mut l = [1.0 / tot; 9];
            l[0] = CENTRAL_WEIGHT / tot;
            l
        };
        for k in 0..self.nzt {
            for j in 0..self.nyt {
                for i in 0..self.nxt {
                    let c = self.cid(i, j, k);
                    let interior = i >= 1
                        && i < self.nxt - 1
                        && j >= 1
                        && j < self.nyt - 1
                        && k >= 1
                        && k < self.nzt - 1;
                    if !interior {
                        for v in 0..N {
                            out[c][v][0] = field[c][v];
                        }
                        continue;
                    }
                    let mut r = [[0.0; N]; 26];
                    for (m, &(di, dj, dk)) in self.nbrs.iter().enumerate() {
                        let o = self.cid(
                            (i as isize + di) as usize,
                            (j as isize + dj) as usize,
                            (k as isize + dk) as usize,
                        );
                        for v in 0..N {
                            r[m][v] = field[o][v] - field[c][v];
                        }
                    }
                    let pf = &self.pinv_full[self.pidx(c)];
                    let po = &self.pinv_oct[self.pidx(c)];
                    for v in 0..N {
                        let mut full = [0.0; 9];
                        for row in 0..9 {
                            let mut s = 0.0;
                            for col in 0..26 {
                                s += pf[row * 26 + col] * r[col][v];
                            }
                            full[row] = s;
                        }
                        let coeffs = if !limit {
                            full
                        } else {
                            let mut cand = [[0.0; 9]; 9];
                            for (qi, &sgn) in OCTS.iter().enumerate() {
                                let offs = oct_offsets(sgn);
                                let mut rq = [0.0; 7];
                                for (m, &(di, dj, dk)) in offs.iter().enumerate() {
                                    let o = self.cid(
                                        (i as isize + di) as usize,
                                        (j as isize + dj) as usize,
                                        (k as isize + dk) as usize,
                                    );
                                    rq[m] = field[o][v] - field[c][v];
                                }
                                for row in 0..3 {
                                    let mut s = 0.0;
                                    for col in 0..7 {
                                        s += po[qi][row * 7 + col] * rq[col];
                                    }
                                    cand[qi + 1][row] = s;
                                }
                            }
                            for row in 0..9 {
                                let mut s = full[row];
                                for m in 1..9 {
                                    s -= lam[m] * cand[m][row];
                                }
                                cand[0][row] = s / lam[0];
                            }
                            let mut oi = [0.0; 9];
                            for m in 0..9 {
                                oi[m] = cand[m].iter().map(|a| a * a).sum();
                            }
                            let mut w = [0.0; 9];
                            // same floor as the 2D operator: see Recon2
                            weno_weights(&lam, &oi, (self.h[c] * field[c][v]).powi(2), &mut w);
                            let mut lim = [0.0; 9];
                            for m in 0..9 {
                                for row in 0..9 {
                                    lim[row] += w[m] * cand[m][row];
                                }
                            }
                            lim
                        };
                        out[c][v][0] = field[c][v];
                        out[c][v][1..10].copy_from_slice(&coeffs);
                    }
                }
            }
        }
        out
    }

    #[inline]
    fn basis(&self, cid: usize, p: [f64; 3]) -> [f64; 10] {
        let xi = (p[0] - self.cen[cid][0]) / self.h[cid];
        let eta = (p[1] - self.cen[cid][1]) / self.h[cid];
        let zeta = (p[2] - self.cen[cid][2]) / self.h[cid];
        let m = &self.mom[cid];
        [
            1.0,
            xi,
            eta,
            zeta,
            xi * xi - m[0],
            eta * eta - m[1],
            zeta * zeta - m[2],
            xi * eta - m[3],
            xi * zeta - m[4],
            eta * zeta - m[5],
        ]
    }

    #[inline]
    pub fn eval1(&self, cid: usize, c: &[f64; 10], p: [f64; 3]) -> f64 {
        let b = self.basis(cid, p);
        let mut s = 0.0;
        for k in 0..10 {
            s += c[k] * b[k];
        }
        s
    }

    #[inline]
    pub fn eval<const N: usize>(&self, cid: usize, c: &[[f64; 10]; N], p: [f64; 3]) -> [f64; N] {
        let b = self.basis(cid, p);
        let mut out = [0.0; N];
        for v in 0..N {
            let mut s = 0.0;
            for k in 0..10 {
                s += c[v][k] * b[k];
            }
            out[v] = s;
        }
        out
    }

    #[inline]
    pub fn grad1(&self, cid: usize, c: &[f64; 10], p: [f64; 3]) -> [f64; 3] {
        let h = self.h[cid];
        let xi = (p[0] - self.cen[cid][0]) / h;
        let eta = (p[1] - self.cen[cid][1]) / h;
        let zeta = (p[2] - self.cen[cid][2]) / h;
        [
            (c[1] + 2.0 * c[4] * xi + c[7] * eta + c[8] * zeta) / h,
            (c[2] + 2.0 * c[5] * eta + c[7] * xi + c[9] * zeta) / h,
            (c[3] + 2.0 * c[6] * zeta + c[8] * xi + c[9] * eta) / h,
        ]
    }

    /// Laplacian of the polynomial (constant).
    #[inline]
    pub fn laplacian1(&self, cid: usize, c: &[f64; 10]) -> f64 {
        let h2 = self.h[cid] * self.h[cid];
        2.0 * (c[4] + c[5] + c[6]) / h2
    }
}
