//! Discrete curl of the vector potential via divergence-theorem surface
//! integrals, producing corrected cell-average magnetic fields.
//!
//!   B1 = (1/|C|) surf_int (A3 nu2 - A2 nu3),  and cyclic,
//!
//! with nu the outward unit normal. The value of A on a face is
//! single-valued: the average of the reconstructed traces from the two
//! adjacent cells at each quadrature node. Because both neighbors consume
//! identical face data with opposite orientation, the total of |C| B over a
//! periodic domain telescopes and is conserved exactly by every corrector
//! application; the integrals are also exact for polynomial A of degree 1
//! on arbitrary ruled cells.

use crate::geometry::{Grid2, Grid3, NG};
use crate::reconstruction::{Recon2, Recon3};

/// Single-valued A traces on 2D faces: one `[f64;3]` per quadrature node,
/// faces indexed as in `Grid2`, `nq` nodes per face.
pub struct FaceTraces2 {
    pub x: Vec<[f64; 3]>,
    pub y: Vec<[f64; 3]>,
    pub nq: usize,
}

pub fn face_potential_values2(
    grid: &Grid2,
    recon: &Recon2,
    apolys: &[[[f64; 6]; 3]],
) -> FaceTraces2 {
    let nq = grid.quad.nodes.len();
    let mut x = vec![[0.0f64; 3]; (grid.nxt + 1) * grid.nyt * nq];
    let mut y = vec![[0.0f64; 3]; grid.nxt * (grid.nyt + 1) * nq];
    for j in NG..NG + grid.ny {
        for i in NG..=NG + grid.nx {
            let fid = grid.xfid(i, j);
            let cm = grid.cid(i - 1, j);
            let cp = grid.cid(i, j);
            for (kn, &(p, _)) in grid.xfaces[fid].nodes.iter().enumerate() {
                let am = recon.eval(cm, &apolys[cm], p);
                let ap = recon.eval(cp, &apolys[cp], p);
                for v in 0..3 {
                    x[fid * nq + kn][v] = 0.5 * (am[v] + ap[v]);
                }
            }
        }
    }
    for j in NG..=NG + grid.ny {
        for i in NG..NG + grid.nx {
            let fid = grid.yfid(i, j);
            let cm = grid.cid(i, j - 1);
            let cp = grid.cid(i, j);
            for (kn, &(p, _)) in grid.yfaces[fid].nodes.iter().enumerate() {
                let am = recon.eval(cm, &apolys[cm], p);
                let ap = recon.eval(cp, &apolys[cp], p);
                for v in 0..3 {
                    y[fid * nq + kn][v] = 0.5 * (am[v] + ap[v]);
                }
            }
        }
    }
    FaceTraces2 { x, y, nq }
}

/// Cell-average B from the single-valued traces. Always fills (B1, B2) from
/// A3; fills B3 from (A1, A2) when `full` (otherwise B3 is left zero and
/// the caller keeps the conservatively updated value).
pub fn curl_cell_averages2(
    grid: &Grid2,
    traces: &FaceTraces2,
    full: bool,
) -> Vec<[f64; 3]> {
    let nq = traces.nq;
    let mut b = vec![[0.0f64; 3]; grid.nxt * grid.nyt];
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            let vol = grid.cells[c].vol;
            let mut acc = [0.0f64; 3];
            // (face id, outward sign) for the four faces
            let faces = [
                (true, grid.xfid(i, j), -1.0),
                (true, grid.xfid(i + 1, j), 1.0),
                (false, grid.yfid(i, j), -1.0),
                (false, grid.yfid(i, j + 1), 1.0),
            ];
            for &(isx, fid, sgn) in &faces {
                let (face, tr) = if isx {
                    (&grid.xfaces[fid], &traces.x[fid * nq..fid * nq + nq])
                } else {
                    (&grid.yfaces[fid], &traces.y[fid * nq..fid * nq + nq])
                };
                let nu = [sgn * face.normal[0], sgn * face.normal[1]];
                for (kn, &(_, w)) in face.nodes.iter().enumerate() {
                    let a = tr[kn];
                    acc[0] += w * a[2] * nu[1];
                    acc[1] -= w * a[2] * nu[0];
                    if full {
                        acc[2] += w * (a[1] * nu[0] - a[0] * nu[1]);
                    }
                }
            }
            b[c] = [acc[0] / vol, acc[1] / vol, acc[2] / vol];
        }
    }
    b
}

/// One-call 2D corrector: B averages from the A polynomials.
pub fn curl2(
    grid: &Grid2,
    recon: &Recon2,
    apolys: &[[[f64; 6]; 3]],
    full: bool,
) -> Vec<[f64; 3]> {
    let tr = face_potential_values2(grid, recon, apolys);
    curl_cell_averages2(grid, &tr, full)
}

/// 3D single-valued traces, then surface integrals for all three components.
pub fn curl3(grid: &Grid3, recon: &Recon3, apolys: &[[[f64; 10]; 3]]) -> Vec<[f64; 3]> {
    let nq = grid.quad.nodes.len() * grid.quad.nodes.len();
    let ntx = (grid.nxt + 1) * grid.nyt * grid.nzt;
    let nty = grid.nxt * (grid.nyt + 1) * grid.nzt;
    let ntz = grid.nxt * grid.nyt * (grid.nzt + 1);
    let mut trx = vec![[0.0f64; 3]; ntx * nq];
    let mut try_ = vec![[0.0f64; 3]; nty * nq];
    let mut trz = vec![[0.0f64; 3]; ntz * nq];

    let fill = |face: &crate::geometry::Face3,
                cm: usize,
                cp: usize,
                out: &mut [[f64; 3]]| {
        let recon = recon;
        for (kn, node) in face.nodes.iter().enumerate() {
            let am = recon.eval(cm, &apolys[cm], node.point);
            let ap = recon.eval(cp, &apolys[cp], node.point);
            for v in 0..3 {
                out[kn][v] = 0.5 * (am[v] + ap[v]);
            }
        }
    };

    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..=NG + grid.nx {
                let fid = grid.xfid(i, j, k);
                fill(
                    &grid.xfaces[fid],
                    grid.cid(i - 1, j, k),
                    grid.cid(i, j, k),
                    &mut trx[fid * nq..fid * nq + nq],
                );
            }
        }
    }
    for k in NG..NG + grid.nz {
        for j in NG..=NG + grid.ny {
            for i in NG..NG + grid.nx {
                let fid = grid.yfid(i, j, k);
                fill(
                    &grid.yfaces[fid],
                    grid.cid(i, j - 1, k),
                    grid.cid(i, j, k),
                    &mut try_[fid * nq..fid * nq + nq],
                );
            }
        }
    }
    for k in NG..=NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let fid = grid.zfid(i, j, k);
                fill(
                    &grid.zfaces[fid],
                    grid.cid(i, j, k - 1),
                    grid.cid(i, j, k),
                    &mut trz[fid * nq..fid * nq + nq],
                );
            }
        }
    }

    let mut b = vec![[0.0f64; 3]; grid.nxt * grid.nyt * grid.nzt];
    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j, k);
                let vol = grid.cells[c].vol;
                let mut acc = [0.0f64; 3];
                let mut add = |face: &crate::geometry::Face3, tr: &[[f64; 3]], sgn: f64| {
                    for (kn, node) in face.nodes.iter().enumerate() {
                        let nu = [
                            sgn * node.normal[0],
                            sgn * node.normal[1],
                            sgn * node.normal[2],
                        ];
                        let a = tr[kn];
                        let w = node.w;
                        acc[0] += w * (a[2] * nu[1] - a[1] * nu[2]);
                        acc[1] += w * (a[0] * nu[2] - a[2] * nu[0]);
                        acc[2] += w * (a[1] * nu[0] - a[0] * nu[1]);
                    }
                };
                let fxm = grid.xfid(i, j, k);
                let fxp = grid.xfid(i + 1, j, k);
                let fym = grid.yfid(i, j, k);
                let fyp = grid.yfid(i, j + 1, k);
                let fzm = grid.zfid(i, j, k);
                let fzp = grid.zfid(i, j, k + 1);
                add(&grid.xfaces[fxm], &trx[fxm * nq..fxm * nq + nq], -1.0);
                add(&grid.xfaces[fxp], &trx[fxp * nq..fxp * nq + nq], 1.0);
                add(&grid.yfaces[fym], &try_[fym * nq..fym * nq + nq], -1.0);
                add(&grid.yfaces[fyp], &try_[fyp * nq..fyp * nq + nq], 1.0);
                add(&grid.zfaces[fzm], &trz[fzm * nq..fzm * nq + nq], -1.0);
                add(&grid.zfaces[fzp], &trz[fzp * nq..fzp * nq + nq], 1.0);
                b[c] = [acc[0] / vol, acc[1] / vol, acc[2] / vol];
            }
        }
    }
    b
}

/// Centered-difference divergence diagnostic of the cell-average field.
/// Reported only; never fed back. Returns (max, L1).
pub fn divergence_diagnostic2(grid: &Grid2, b: &[[f64; 3]]) -> (f64, f64) {
    let mut vmax = 0.0f64;
    let mut l1 = 0.0;
    let mut volsum = 0.0;
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            let ce = grid.cid(i + 1, j);
            let cw = grid.cid(i - 1, j);
            let cn = grid.cid(i, j + 1);
            let cs = grid.cid(i, j - 1);
            let dx = grid.cells[ce].centroid[0] - grid.cells[cw].centroid[0];
            let dy = grid.cells[cn].centroid[1] - grid.cells[cs].centroid[1];
            let div = (b[ce][0] - b[cw][0]) / dx + (b[cn][1] - b[cs][1]) / dy;
            vmax = vmax.max(div.abs());
            l1 += grid.cells[c].vol * div.abs();
            volsum += grid.cells[c].vol;
        }
    }
    (vmax, l1 / volsum)
}

pub fn divergence_diagnostic3(grid: &Grid3, b: &[[f64; 3]]) -> (f64, f64) {
    let mut vmax = 0.0f64;
    let mut l1 = 0.0;
    let mut volsum = 0.0;
    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j, k);
                let xp = grid.cid(i + 1, j, k);
                let xm = grid.cid(i - 1, j, k);
                let yp = grid.cid(i, j + 1, k);
                let ym = grid.cid(i, j - 1, k);
                let zp = grid.cid(i, j, k + 1);
                let zm = grid.cid(i, j, k - 1);
                let div = (b[xp][0] - b[xm][0])
                    / (grid.cells[xp].centroid[0] - grid.cells[xm].centroid[0])
                    + (b[yp][1] - b[ym][1])
                        / (grid.cells[yp].centroid[1] - grid.cells[ym].centroid[1])
                    + (b[zp][2] - b[zm][2])
                        / (grid.cells[zp].centroid[2] - grid.cells[zm].centroid[2]);
                vmax = vmax.max(div.abs());
                l1 += grid.cells[c].vol * div.abs();
                volsum += grid.cells[c].vol;
            }
        }
    }
    (vmax, l1 / volsum)
}

/// Componentwise change of the volume-weighted B total between two states.
pub fn total_field_budget2(grid: &Grid2, before: &[[f64; 3]], after: &[[f64; 3]]) -> [f64; 3] {
    let mut d = [0.0; 3];
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            for v in 0..3 {
                d[v] += grid.cells[c].vol * (after[c][v] - before[c][v]);
            }
        }
    }
    d
}

pub fn total_field_budget3(grid: &Grid3, before: &[[f64; 3]], after: &[[f64; 3]]) -> [f64; 3] {
    let mut d = [0.0; 3];
    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j, k);
                for v in 0..3 {
                    d[v] += grid.cells[c].vol * (after[c][v] - before[c][v]);
                }
            }
        }
    }
    d
}
