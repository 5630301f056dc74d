//! 2D reconstruction operator with cached least-squares pseudo-inverses.

use super::{weno_weights, CENTRAL_WEIGHT};
use crate::geometry::Grid2;
use nalgebra::{SMatrix, SVector};

/// Full-stencil neighbor offsets (all face/edge/corner neighbors).
pub const NBR8: [(isize, isize); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

/// Quadrant signs for the one-sided candidates.
const QUADS: [(isize, isize); 4] = [(-1, -1), (1, -1), (-1, 1), (1, 1)];

/// Per-cell reconstruction machinery for a `Grid2`. Valid for cells with a
/// complete 3x3 neighborhood, i.e. extended indices `1..nxt-1` per
/// direction; the outermost ring gets constant polynomials.
pub struct Recon2 {
    pub nxt: usize,
    pub nyt: usize,
    /// Centroid of each cell (basis origin).
    pub cen: Vec<[f64; 2]>,
    /// Length scale of each cell, h = sqrt(|C|).
    pub h: Vec<f64>,
    /// Scaled second moments (m20, m11, m02) of each cell.
    pub mom: Vec<[f64; 3]>,
    /// 5x8 pseudo-inverse of the weighted full fit, row-major.
    pinv_full: Vec<[f64; 40]>,
    /// Per quadrant: 2x3 pseudo-inverse of the one-sided linear fit.
    pinv_quad: Vec<[[f64; 6]; 4]>,
}

impl Recon2 {
    pub fn build(grid: &Grid2) -> Recon2 {
        let (nxt, nyt) = (grid.nxt, grid.nyt);
        let n = nxt * nyt;
        let mut cen = vec![[0.0; 2]; n];
        let mut h = vec![0.0; n];
        let mut mom = vec![[0.0; 3]; n];
        for c in 0..n {
            let cell = &grid.cells[c];
            cen[c] = cell.centroid;
            h[c] = cell.vol.sqrt();
            let mut m = [0.0; 3];
            for &(p, w) in &cell.vq {
                let xi = (p[0] - cell.centroid[0]) / h[c];
                let eta = (p[1] - cell.centroid[1]) / h[c];
                m[0] += w * xi * xi;
                m[1] += w * xi * eta;
                m[2] += w * eta * eta;
            }
            mom[c] = [m[0] / cell.vol, m[1] / cell.vol, m[2] / cell.vol];
        }

        // average of cell c's non-constant basis functions over cell o
        let basis_avg = |c: usize, o: usize| -> [f64; 5] {
            let cell = &grid.cells[o];
            let mut b = [0.0; 5];
            for &(p, w) in &cell.vq {
                let xi = (p[0] - cen[c][0]) / h[c];
                let eta = (p[1] - cen[c][1]) / h[c];
                b[0] += w * xi;
                b[1] += w * eta;
                b[2] += w * (xi * xi - mom[c][0]);
                b[3] += w * (xi * eta - mom[c][1]);
                b[4] += w * (eta * eta - mom[c][2]);
            }
            for v in b.iter_mut() {
                *v /= cell.vol;
            }
            b
        };

        let mut pinv_full = vec![[0.0; 40]; n];
        let mut pinv_quad = vec![[[0.0; 6]; 4]; n];
        let mut warned = false;
        for j in 1..nyt - 1 {
            for i in 1..nxt - 1 {
                let c = grid.cid(i, j);

                if !warned {
                    let mut hmin = f64::INFINITY;
                    let mut hmax = 0.0f64;
                    for &(di, dj) in NBR8.iter() {
                        let o = grid.cid((i as isize + di) as usize, (j as isize + dj) as usize);
                        let cell = &grid.cells[o];
                        hmin = hmin.min(cell.ds);
                        let corners = [
                            cell.point(0.0, 0.0),
                            cell.point(1.0, 0.0),
                            cell.point(0.0, 1.0),
                            cell.point(1.0, 1.0),
                        ];
                        for e in 0..4 {
                            for f in e + 1..4 {
                                let d = ((corners[e][0] - corners[f][0]).powi(2)
                                    + (corners[e][1] - corners[f][1]).powi(2))
                                .sqrt();
                                hmax = hmax.max(d);
                            }
                        }
                    }
                    if hmax / hmin > 10.0 {
                        eprintln!(
                            "warning: highly stretched cells near ({}, {}) (edge ratio {:.1}); formal order may degrade",
                            i, j, hmax / hmin
                        );
                        warned = true;
                    }
                }

                // full fit: 8 neighbor-average conditions, weight 1/centroid distance
                let mut g = SMatrix::<f64, 8, 5>::zeros();
                let mut w = SVector::<f64, 8>::zeros();
                for (r, &(di, dj)) in NBR8.iter().enumerate() {
                    let o = grid.cid((i as isize + di) as usize, (j as isize + dj) as usize);
                    let b = basis_avg(c, o);
                    for col in 0..5 {
                        g[(r, col)] = b[col];
                    }
                    let d = ((cen[o][0] - cen[c][0]).powi(2) + (cen[o][1] - cen[c][1]).powi(2))
                        .sqrt();
                    w[r] = 1.0 / d;
                }
                let mut gtw = SMatrix::<f64, 5, 8>::zeros();
                for r in 0..8 {
                    for col in 0..5 {
                        gtw[(col, r)] = g[(r, col)] * w[r];
                    }
                }
                let m = gtw * g;
                let minv = m
                    .try_inverse()
                    .expect("rank-deficient reconstruction stencil");
                let p = minv * gtw;
                for r in 0..5 {
                    for col in 0..8 {
                        pinv_full[c][r * 8 + col] = p[(r, col)];
                    }
                }

                // one-sided linear fits per quadrant
                for (qi, &(sx, sy)) in QUADS.iter().enumerate() {
                    let offs = [(sx, 0), (0, sy), (sx, sy)];
                    let mut gq = SMatrix::<f64, 3, 2>::zeros();
                    for (r, &(di, dj)) in offs.iter().enumerate() {
                        let o =
                            grid.cid((i as isize + di) as usize, (j as isize + dj) as usize);
                        let b = basis_avg(c, o);
                        gq[(r, 0)] = b[0];
                        gq[(r, 1)] = b[1];
                    }
                    let mq = gq.transpose() * gq;
                    let p = mq
                        .try_inverse()
                        .expect("degenerate one-sided stencil")
                        * gq.transpose();
                    for r in 0..2 {
                        for col in 0..3 {
                            pinv_quad[c][qi][r * 3 + col] = p[(r, col)];
                        }
                    }
                }
            }
        }

        Recon2 {
            nxt,
            nyt,
            cen,
            h,
            mom,
            pinv_full,
            pinv_quad,
        }
    }

    #[inline]
    fn cid(&self, i: usize, j: usize) -> usize {
        j * self.nxt + i
    }

    /// Reconstruct all N components. `limit = false` returns the plain
    /// central least-squares fit. Coefficient layout per variable:
    /// [avg, xi, eta, xi^2-m20, xi*eta-m11, eta^2-m02].
    pub fn reconstruct<const N: usize>(
        &self,
        field: &[[f64; N]],
        limit: bool,
    ) -> Vec<[[f64; 6]; N]> {
        let n = self.nxt * self.nyt;
        let mut out = vec![[[0.0; 6]; N]; n];
        // linear weights: central + 4 quadrants
        let lam = {
            let tot = CENTRAL_WEIGHT + 4.0;
            [
                CENTRAL_WEIGHT / tot,
                1.0 / tot,
                1.0 / tot,
                1.0 / tot,
                1.0 / tot,
            ]
        };
        for j in 0..self.nyt {
            for i in 0..self.nxt {
                let c = self.cid(i, j);
                let interior =
                    i >= 1 && i < self.nxt - 1 && j >= 1 && j < self.nyt - 1;
                if !interior {
                    for v in 0..N {
                        out[c][v][0] = field[c][v];
                    }
                    continue;
                }
                let mut r = [[0.0; N]; 8];
                for (k, &(di, dj)) in NBR8.iter().enumerate() {
                    let o = self.cid((i as isize + di) as usize, (j as isize + dj) as usize);
                    for v in 0..N {
                        r[k][v] = field[o][v] - field[c][v];
                    }
                }
                for v in 0..N {
                    let mut full = [0.0; 5];
                    for row in 0..5 {
                        let mut s = 0.0;
                        for col in 0..8 {
                            s += self.pinv_full[c][row * 8 + col] * r[col][v];
                        }
                        full[row] = s;
                    }
                    let coeffs = if !limit {
                        full
                    } else {
                        // candidates 1..4: one-sided linear fits
                        let mut cand = [[0.0; 5]; 5];
                        for (qi, &(sx, sy)) in QUADS.iter().enumerate() {
                            let offs = [(sx, 0), (0, sy), (sx, sy)];
                            let mut rq = [0.0; 3];
                            for (k, &(di, dj)) in offs.iter().enumerate() {
                                let o = self.cid(
                                    (i as isize + di) as usize,
                                    (j as isize + dj) as usize,
                                );
                                rq[k] = field[o][v] - field[c][v];
                            }
                            for row in 0..2 {
                                cand[qi + 1][row] = self.pinv_quad[c][qi][row * 3] * rq[0]
                                    + self.pinv_quad[c][qi][row * 3 + 1] * rq[1]
                                    + self.pinv_quad[c][qi][row * 3 + 2] * rq[2];
                            }
                        }
                        // central candidate: subtraction so that the linear
                        // combination with weights lam reproduces the full fit
                        for row in 0..5 {
                            let mut s = full[row];
                            for k in 1..5 {
                                s -= lam[k] * cand[k][row];
                            }
                            cand[0][row] = s / lam[0];
                        }
                        let mut oi = [0.0; 5];
                        for k in 0..5 {
                            oi[k] = cand[k].iter().map(|a| a * a).sum();
                        }
                        let mut w = [0.0; 5];
                        // O(h^2) floor at the generic smooth indicator size:
                        // uniform third order including critical points.
                        weno_weights(&lam, &oi, (self.h[c] * field[c][v]).powi(2), &mut w);
                        let mut lim = [0.0; 5];
                        for k in 0..5 {
                            for row in 0..5 {
                                lim[row] += w[k] * cand[k][row];
                            }
                        }
                        lim
                    };
                    out[c][v][0] = field[c][v];
                    out[c][v][1..6].copy_from_slice(&coeffs);
                }
            }
        }
        out
    }

    /// Evaluate the polynomial of cell `cid` at physical point `p`.
    #[inline]
    pub fn eval1(&self, cid: usize, c: &[f64; 6], p: [f64; 2]) -> f64 {
        let xi = (p[0] - self.cen[cid][0]) / self.h[cid];
        let eta = (p[1] - self.cen[cid][1]) / self.h[cid];
        let m = self.mom[cid];
        c[0] + c[1] * xi
            + c[2] * eta
            + c[3] * (xi * xi - m[0])
            + c[4] * (xi * eta - m[1])
            + c[5] * (eta * eta - m[2])
    }

    #[inline]
    pub fn eval<const N: usize>(&self, cid: usize, c: &[[f64; 6]; N], p: [f64; 2]) -> [f64; N] {
        let xi = (p[0] - self.cen[cid][0]) / self.h[cid];
        let eta = (p[1] - self.cen[cid][1]) / self.h[cid];
        let m = self.mom[cid];
        let b = [
            1.0,
            xi,
            eta,
            xi * xi - m[0],
            xi * eta - m[1],
            eta * eta - m[2],
        ];
        let mut out = [0.0; N];
        for v in 0..N {
            let mut s = 0.0;
            for k in 0..6 {
                s += c[v][k] * b[k];
            }
            out[v] = s;
        }
        out
    }

    /// Gradient of the polynomial at physical point `p`.
    #[inline]
    pub fn grad1(&self, cid: usize, c: &[f64; 6], p: [f64; 2]) -> [f64; 2] {
        let h = self.h[cid];
        let xi = (p[0] - self.cen[cid][0]) / h;
        let eta = (p[1] - self.cen[cid][1]) / h;
        [
            (c[1] + 2.0 * c[3] * xi + c[4] * eta) / h,
            (c[2] + c[4] * xi + 2.0 * c[5] * eta) / h,
        ]
    }

    /// Constant second derivatives (q_xx, q_xy, q_yy) of the polynomial.
    #[inline]
    pub fn second1(&self, cid: usize, c: &[f64; 6]) -> [f64; 3] {
        let h2 = self.h[cid] * self.h[cid];
        [2.0 * c[3] / h2, c[4] / h2, 2.0 * c[5] / h2]
    }
}
