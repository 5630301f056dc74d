//! Path-conservative semi-discrete operator L2 for the magnetic vector
//! potential under the Weyl gauge:
//!
//!   A_t + N1(u) A_x + N2(u) A_y + N3(u) A_z = 0.
//!
//! The system is only weakly hyperbolic (the directional matrix M(n,u) has
//! real eigenvalues {0, u.n, u.n} but an incomplete eigenvector basis in
//! degenerate directions), so interface coupling uses straight-line-path
//! fluctuations with either a generalized Rusanov or a generalized FORCE
//! splitting instead of a characteristic decomposition.
//!
//! In the 2.5D reduction the third component decouples into the scalar
//! transport equation A3_t + u1 A3_x + u2 A3_y = 0; `rhs_scalar` evolves
//! only A3 while `rhs_full` evolves all three components.

use crate::geometry::{Grid2, Grid3, NG};
use crate::reconstruction::{Recon2, Recon3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialSolver {
    Rusanov,
    Force,
}

type Mat3 = [[f64; 3]; 3];

/// Quasilinear coefficient matrices (N1, N2, N3).
pub fn coefficient_matrices(u: [f64; 3]) -> [Mat3; 3] {
    let (u1, u2, u3) = (u[0], u[1], u[2]);
    [
        [[0.0, -u2, -u3], [0.0, u1, 0.0], [0.0, 0.0, u1]],
        [[u2, 0.0, 0.0], [-u1, 0.0, -u3], [0.0, 0.0, u2]],
        [[u3, 0.0, 0.0], [0.0, u3, 0.0], [-u1, -u2, 0.0]],
    ]
}

/// M(n,u) = n1 N1 + n2 N2 + n3 N3.
pub fn directional_matrix(n: [f64; 3], u: [f64; 3]) -> Mat3 {
    let nn = coefficient_matrices(u);
    let mut m = [[0.0; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = n[0] * nn[0][r][c] + n[1] * nn[1][r][c] + n[2] * nn[2][r][c];
        }
    }
    m
}

/// Straight-line-path interface matrix and wave speed bound (without the
/// positivity floor, which depends on the local mesh and time step).
pub fn path_matrix(n: [f64; 3], um: [f64; 3], up: [f64; 3]) -> (Mat3, f64) {
    let mm = directional_matrix(n, um);
    let mp = directional_matrix(n, up);
    let mut m = [[0.0; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = 0.5 * (mm[r][c] + mp[r][c]);
        }
    }
    let alpha = (um[0] * n[0] + um[1] * n[1] + um[2] * n[2])
        .abs()
        .max((up[0] * n[0] + up[1] * n[1] + up[2] * n[2]).abs());
    (m, alpha)
}

#[inline]
fn matvec(m: &Mat3, v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Generalized Rusanov fluctuations: A-+dq = 1/2 [A_psi -+ alpha I] dq.
pub fn rusanov_fluctuations(m: &Mat3, alpha: f64, dq: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let mv = matvec(m, dq);
    let mut am = [0.0; 3];
    let mut ap = [0.0; 3];
    for r in 0..3 {
        am[r] = 0.5 * (mv[r] - alpha * dq[r]);
        ap[r] = 0.5 * (mv[r] + alpha * dq[r]);
    }
    (am, ap)
}

/// Generalized FORCE fluctuations:
/// A-+dq = 1/4 [2 A_psi -+ (dx/dt) I -+ (dt/dx) A_psi^2] dq.
pub fn force_fluctuations(
    m: &Mat3,
    dq: [f64; 3],
    dx: f64,
    dt: f64,
) -> ([f64; 3], [f64; 3]) {
    let mv = matvec(m, dq);
    let m2v = matvec(m, mv);
    let r1 = dx / dt;
    let r2 = dt / dx;
    let mut am = [0.0; 3];
    let mut ap = [0.0; 3];
    for r in 0..3 {
        am[r] = 0.25 * (2.0 * mv[r] - r1 * dq[r] - r2 * m2v[r]);
        ap[r] = 0.25 * (2.0 * mv[r] + r1 * dq[r] + r2 * m2v[r]);
    }
    (am, ap)
}

/// Scalar (2.5D A3) versions.
pub fn rusanov_fluctuations_scalar(un: f64, alpha: f64, dq: f64) -> (f64, f64) {
    (0.5 * (un - alpha) * dq, 0.5 * (un + alpha) * dq)
}

pub fn force_fluctuations_scalar(un: f64, dq: f64, dx: f64, dt: f64) -> (f64, f64) {
    let r1 = dx / dt;
    let r2 = dt / dx;
    (
        0.25 * (2.0 * un - r1 - r2 * un * un) * dq,
        0.25 * (2.0 * un + r1 + r2 * un * un) * dq,
    )
}

const ALPHA_FLOOR: f64 = 1e-10;

/// Pointwise velocity from the reconstructed conserved MHD polynomials:
/// u(x) = (rho u)(x) / rho(x), falling back to the cell-average ratio when
/// the reconstructed density is not positive.
#[inline]
pub fn velocity_at2(
    recon: &Recon2,
    cid: usize,
    qpolys: &[[[f64; 6]; 8]],
    q: &[[f64; 8]],
    p: [f64; 2],
) -> [f64; 3] {
    let xi = (p[0] - recon.cen[cid][0]) / recon.h[cid];
    let eta = (p[1] - recon.cen[cid][1]) / recon.h[cid];
    let m = recon.mom[cid];
    let b = [
        1.0,
        xi,
        eta,
        xi * xi - m[0],
        xi * eta - m[1],
        eta * eta - m[2],
    ];
    let mut vals = [0.0f64; 4];
    for v in 0..4 {
        let c = &qpolys[cid][v];
        let mut s = 0.0;
        for k in 0..6 {
            s += c[k] * b[k];
        }
        vals[v] = s;
    }
    if vals[0] > 0.0 {
        [vals[1] / vals[0], vals[2] / vals[0], vals[3] / vals[0]]
    } else {
        let r = q[cid][0];
        [q[cid][1] / r, q[cid][2] / r, q[cid][3] / r]
    }
}

#[inline]
pub fn velocity_at3(
    recon: &Recon3,
    cid: usize,
    qpolys: &[[[f64; 10]; 8]],
    q: &[[f64; 8]],
    p: [f64; 3],
) -> [f64; 3] {
    let mut vals = [0.0f64; 4];
    for v in 0..4 {
        vals[v] = recon.eval1(cid, &qpolys[cid][v], p);
    }
    if vals[0] > 0.0 {
        [vals[1] / vals[0], vals[2] / vals[0], vals[3] / vals[0]]
    } else {
        let r = q[cid][0];
        [q[cid][1] / r, q[cid][2] / r, q[cid][3] / r]
    }
}

pub struct PotentialRhs2;

impl PotentialRhs2 {
    /// L2 on a 2D grid. `full = false` evolves only A3 (scalar transport);
    /// `full = true` evolves all three components with N1, N2.
    /// `apolys` are the (limited) reconstructions of the A averages and
    /// `qpolys`/`q` supply the stage velocity.
    #[allow(clippy::too_many_arguments)]
    pub fn rhs(
        grid: &Grid2,
        recon: &Recon2,
        a: &[[f64; 3]],
        apolys: &[[[f64; 6]; 3]],
        qpolys: &[[[f64; 6]; 8]],
        q: &[[f64; 8]],
        solver: PotentialSolver,
        dt: f64,
        full: bool,
    ) -> Vec<[f64; 3]> {
        let (nxt, nyt) = (grid.nxt, grid.nyt);
        let (nx, ny) = (grid.nx, grid.ny);
        let mut rhs = vec![[0.0f64; 3]; nxt * nyt];
        let _ = a;

        // face pass: accumulate fluctuations into both neighbors
        let do_face = |fid_normal: [f64; 3],
                           nodes: &[([f64; 2], f64)],
                           cm: usize,
                           cp: usize,
                           rhs: &mut Vec<[f64; 3]>| {
            let n = fid_normal;
            let dcen = {
                let a = recon.cen[cm];
                let b = recon.cen[cp];
                ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
            };
            let dsmin = recon.h[cm].min(recon.h[cp]);
            for &(p, w) in nodes {
                let um = velocity_at2(recon, cm, qpolys, q, p);
                let up = velocity_at2(recon, cp, qpolys, q, p);
                let aqm = recon.eval(cm, &apolys[cm], p);
                let aqp = recon.eval(cp, &apolys[cp], p);
                let dq = [aqp[0] - aqm[0], aqp[1] - aqm[1], aqp[2] - aqm[2]];
                let (fm, fp) = if full {
                    let (m, alpha0) = path_matrix(n, um, up);
                    match solver {
                        PotentialSolver::Rusanov => {
                            let alpha = alpha0 + ALPHA_FLOOR * dsmin / dt;
                            rusanov_fluctuations(&m, alpha, dq)
                        }
                        PotentialSolver::Force => force_fluctuations(&m, dq, dcen, dt),
                    }
                } else {
                    let unm = um[0] * n[0] + um[1] * n[1];
                    let unp = up[0] * n[0] + up[1] * n[1];
                    let un = 0.5 * (unm + unp);
                    let (sm, sp) = match solver {
                        PotentialSolver::Rusanov => {
                            let alpha =
                                unm.abs().max(unp.abs()) + ALPHA_FLOOR * dsmin / dt;
                            rusanov_fluctuations_scalar(un, alpha, dq[2])
                        }
                        PotentialSolver::Force => {
                            force_fluctuations_scalar(un, dq[2], dcen, dt)
                        }
                    };
                    ([0.0, 0.0, sm], [0.0, 0.0, sp])
                };
                // left-going part updates the lower cell, right-going the upper
                for r in 0..3 {
                    rhs[cm][r] -= w * fm[r] / grid.cells[cm].vol;
                    rhs[cp][r] -= w * fp[r] / grid.cells[cp].vol;
                }
            }
        };

        for j in NG..NG + ny {
            for i in NG..=NG + nx {
                let f = &grid.xfaces[grid.xfid(i, j)];
                do_face(
                    [f.normal[0], f.normal[1], 0.0],
                    &f.nodes,
                    grid.cid(i - 1, j),
                    grid.cid(i, j),
                    &mut rhs,
                );
            }
        }
        for j in NG..=NG + ny {
            for i in NG..NG + nx {
                let f = &grid.yfaces[grid.yfid(i, j)];
                do_face(
                    [f.normal[0], f.normal[1], 0.0],
                    &f.nodes,
                    grid.cid(i, j - 1),
                    grid.cid(i, j),
                    &mut rhs,
                );
            }
        }

        // volume pass: interior smooth part of the non-conservative product
        for j in NG..NG + ny {
            for i in NG..NG + nx {
                let c = grid.cid(i, j);
                let vol = grid.cells[c].vol;
                let mut acc = [0.0f64; 3];
                for &(p, w) in &grid.cells[c].vq {
                    let u = velocity_at2(recon, c, qpolys, q, p);
                    if full {
                        let nn = coefficient_matrices(u);
                        let gx = [
                            recon.grad1(c, &apolys[c][0], p),
                            recon.grad1(c, &apolys[c][1], p),
                            recon.grad1(c, &apolys[c][2], p),
                        ];
                        let ax = [gx[0][0], gx[1][0], gx[2][0]];
                        let ay = [gx[0][1], gx[1][1], gx[2][1]];
                        let t1 = matvec(&nn[0], ax);
                        let t2 = matvec(&nn[1], ay);
                        for r in 0..3 {
                            acc[r] += w * (t1[r] + t2[r]);
                        }
                    } else {
                        let g = recon.grad1(c, &apolys[c][2], p);
                        acc[2] += w * (u[0] * g[0] + u[1] * g[1]);
                    }
                }
                for r in 0..3 {
                    rhs[c][r] -= acc[r] / vol;
                }
            }
        }

        // zero out untouched components in scalar mode (kept explicit)
        if !full {
            for v in rhs.iter_mut() {
                v[0] = 0.0;
                v[1] = 0.0;
            }
        }
        rhs
    }
}

pub struct PotentialRhs3;

impl PotentialRhs3 {
    #[allow(clippy::too_many_arguments)]
    pub fn rhs(
        grid: &Grid3,
        recon: &Recon3,
        apolys: &[[[f64; 10]; 3]],
        qpolys: &[[[f64; 10]; 8]],
        q: &[[f64; 8]],
        solver: PotentialSolver,
        dt: f64,
    ) -> Vec<[f64; 3]> {
        let (nxt, nyt, nzt) = (grid.nxt, grid.nyt, grid.nzt);
        let (nx, ny, nz) = (grid.nx, grid.ny, grid.nz);
        let mut rhs = vec![[0.0f64; 3]; nxt * nyt * nzt];

        let do_face = |face: &crate::geometry::Face3,
                       cm: usize,
                       cp: usize,
                       rhs: &mut Vec<[f64; 3]>| {
            let dcen = {
                let a = recon.cen[cm];
                let b = recon.cen[cp];
                ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2) + (b[2] - a[2]).powi(2))
                    .sqrt()
            };
            let dsmin = recon.h[cm].min(recon.h[cp]);
            for node in &face.nodes {
                let p = node.point;
                let n = node.normal;
                let um = velocity_at3(recon, cm, qpolys, q, p);
                let up = velocity_at3(recon, cp, qpolys, q, p);
                let aqm = recon.eval(cm, &apolys[cm], p);
                let aqp = recon.eval(cp, &apolys[cp], p);
                let dq = [aqp[0] - aqm[0], aqp[1] - aqm[1], aqp[2] - aqm[2]];
                let (m, alpha0) = path_matrix(n, um, up);
                let (fm, fp) = match solver {
                    PotentialSolver::Rusanov => {
                        let alpha = alpha0 + ALPHA_FLOOR * dsmin / dt;
                        rusanov_fluctuations(&m, alpha, dq)
                    }
                    PotentialSolver::Force => force_fluctuations(&m, dq, dcen, dt),
                };
                for r in 0..3 {
                    rhs[cm][r] -= node.w * fm[r] / grid.cells[cm].vol;
                    rhs[cp][r] -= node.w * fp[r] / grid.cells[cp].vol;
                }
            }
        };

        for k in NG..NG + nz {
            for j in NG..NG + ny {
                for i in NG..=NG + nx {
                    do_face(
                        &grid.xfaces[grid.xfid(i, j, k)],
                        grid.cid(i - 1, j, k),
                        grid.cid(i, j, k),
                        &mut rhs,
                    );
                }
            }
        }
        for k in NG..NG + nz {
            for j in NG..=NG + ny {
                for i in NG..NG + nx {
                    do_face(
                        &grid.yfaces[grid.yfid(i, j, k)],
                        grid.cid(i, j - 1, k),
                        grid.cid(i, j, k),
                        &mut rhs,
                    );
                }
            }
        }
        for k in NG..=NG + nz {
            for j in NG..NG + ny {
                for i in NG..NG + nx {
                    do_face(
                        &grid.zfaces[grid.zfid(i, j, k)],
                        grid.cid(i, j, k - 1),
                        grid.cid(i, j, k),
                        &mut rhs,
                    );
                }
            }
        }

        for k in NG..NG + nz {
            for j in NG..NG + ny {
                for i in NG..NG + nx {
                    let c = grid.cid(i, j, k);
                    let vol = grid.cells[c].vol;
                    let mut acc = [0.0f64; 3];
                    for &(p, w) in &grid.cells[c].vq {
                        let u = velocity_at3(recon, c, qpolys, q, p);
                        let nn = coefficient_matrices(u);
                        let g = [
                            recon.grad1(c, &apolys[c][0], p),
                            recon.grad1(c, &apolys[c][1], p),
                            recon.grad1(c, &apolys[c][2], p),
                        ];
                        let ax = [g[0][0], g[1][0], g[2][0]];
                        let ay = [g[0][1], g[1][1], g[2][1]];
                        let az = [g[0][2], g[1][2], g[2][2]];
                        let t1 = matvec(&nn[0], ax);
                        let t2 = matvec(&nn[1], ay);
                        let t3 = matvec(&nn[2], az);
                        for r in 0..3 {
                            acc[r] += w * (t1[r] + t2[r] + t3[r]);
                        }
                    }
                    for r in 0..3 {
                        rhs[c][r] -= acc[r] / vol;
                    }
                }
            }
        }
        rhs
    }
}
