//! Ghost-layer boundary rules.
//!
//! Periodic fills wrap the interior; the potential may pick up a per-period
//! affine offset (A is periodic only up to a linear-in-x part for the
//! traveling-wave problems). Outflow is zeroth-order extrapolation for the
//! MHD state with linear extrapolation for the potential; inflow freezes the
//! ghost cells at their initial values.

use crate::geometry::{Grid2, Grid3, NG};
use crate::timestepper::{Bc2, Bc3};

/// Periodic in both directions; `aoff[d]` is added to A when wrapping one
/// full period in +d.
pub struct PeriodicBc2 {
    pub aoff: [[f64; 3]; 2],
}

impl Bc2 for PeriodicBc2 {
    fn fill(&self, grid: &Grid2, q: &mut [[f64; 8]], a: &mut [[f64; 3]]) {
        let (nx, ny) = (grid.nx, grid.ny);
        let wrap = |i: usize, n: usize| -> (usize, f64) {
            if i < NG {
                (i + n, -1.0)
            } else if i >= NG + n {
                (i - n, 1.0)
            } else {
                (i, 0.0)
            }
        };
        for j in 0..grid.nyt {
            for i in 0..grid.nxt {
                if grid.is_interior(i, j) {
                    continue;
                }
                let (si, wx) = wrap(i, nx);
                let (sj, wy) = wrap(j, ny);
                let c = grid.cid(i, j);
                let s = grid.cid(si, sj);
                q[c] = q[s];
                for v in 0..3 {
                    a[c][v] = a[s][v] + wx * self.aoff[0][v] + wy * self.aoff[1][v];
                }
            }
        }
    }
}

pub struct PeriodicBc3 {
    pub aoff: [[f64; 3]; 3],
}

impl Bc3 for PeriodicBc3 {
    fn fill(&self, grid: &Grid3, q: &mut [[f64; 8]], a: &mut [[f64; 3]]) {
        let wrap = |i: usize, n: usize| -> (usize, f64) {
            if i < NG {
                (i + n, -1.0)
            } else if i >= NG + n {
                (i - n, 1.0)
            } else {
                (i, 0.0)
            }
        };
        for k in 0..grid.nzt {
            for j in 0..grid.nyt {
                for i in 0..grid.nxt {
                    if grid.is_interior(i, j, k) {
                        continue;
                    }
                    let (si, wx) = wrap(i, grid.nx);
                    let (sj, wy) = wrap(j, grid.ny);
                    let (sk, wz) = wrap(k, grid.nz);
                    let c = grid.cid(i, j, k);
                    let s = grid.cid(si, sj, sk);
                    q[c] = q[s];
                    for v in 0..3 {
                        a[c][v] = a[s][v]
                            + wx * self.aoff[0][v]
                            + wy * self.aoff[1][v]
                            + wz * self.aoff[2][v];
                    }
                }
            }
        }
    }
}

/// Zeroth-order (q) / linear (A: g1 = 2 q0 - q1, g2 = 2 g1 - q0)
/// extrapolation on all four sides.
pub struct ExtrapBc2;

impl ExtrapBc2 {
    pub fn fill_impl(grid: &Grid2, q: &mut [[f64; 8]], a: &mut [[f64; 3]]) {
        let nxt = grid.nxt;
        let lin = |a0: [f64; 3], a1: [f64; 3]| -> [f64; 3] {
            [
                2.0 * a0[0] - a1[0],
                2.0 * a0[1] - a1[1],
                2.0 * a0[2] - a1[2],
            ]
        };
        // x sides for the rows that already hold interior data
        for j in NG..NG + grid.ny {
            let (l0, l1) = (grid.cid(NG, j), grid.cid(NG + 1, j));
            let (r0, r1) = (grid.cid(NG + grid.nx - 1, j), grid.cid(NG + grid.nx - 2, j));
            let (gl1, gl2) = (grid.cid(NG - 1, j), grid.cid(NG - 2, j));
            let (gr1, gr2) = (grid.cid(NG + grid.nx, j), grid.cid(NG + grid.nx + 1, j));
            q[gl1] = q[l0];
            q[gl2] = q[l0];
            q[gr1] = q[r0];
            q[gr2] = q[r0];
            a[gl1] = lin(a[l0], a[l1]);
            a[gl2] = lin(a[gl1], a[l0]);
            a[gr1] = lin(a[r0], a[r1]);
            a[gr2] = lin(a[gr1], a[r0]);
        }
        // y sides for every column (corners extrapolate from the x fill)
        for i in 0..nxt {
            let (b0, b1) = (grid.cid(i, NG), grid.cid(i, NG + 1));
            let (t0, t1) = (grid.cid(i, NG + grid.ny - 1), grid.cid(i, NG + grid.ny - 2));
            let (gb1, gb2) = (grid.cid(i, NG - 1), grid.cid(i, NG - 2));
            let (gt1, gt2) = (grid.cid(i, NG + grid.ny), grid.cid(i, NG + grid.ny + 1));
            q[gb1] = q[b0];
            q[gb2] = q[b0];
            q[gt1] = q[t0];
            q[gt2] = q[t0];
            a[gb1] = lin(a[b0], a[b1]);
            a[gb2] = lin(a[gb1], a[b0]);
            a[gt1] = lin(a[t0], a[t1]);
            a[gt2] = lin(a[gt1], a[t0]);
        }
    }
}

impl Bc2 for ExtrapBc2 {
    fn fill(&self, grid: &Grid2, q: &mut [[f64; 8]], a: &mut [[f64; 3]]) {
        Self::fill_impl(grid, q, a);
    }
}

/// Extrapolation everywhere, then the low-x ghost layers are overwritten with
/// frozen initial values (inflow).
pub struct InflowLeftBc2 {
    pub frozen_q: Vec<[f64; 8]>,
    pub frozen_a: Vec<[f64; 3]>,
}

impl InflowLeftBc2 {
    /// Capture the left ghost strip from the initial averages.
    pub fn new(grid: &Grid2, q0: &[[f64; 8]], a0: &[[f64; 3]]) -> Self {
        let mut frozen_q = Vec::new();
        let mut frozen_a = Vec::new();
        for j in 0..grid.nyt {
            for i in 0..NG {
                let c = grid.cid(i, j);
                frozen_q.push(q0[c]);
                frozen_a.push(a0[c]);
            }
        }
        InflowLeftBc2 { frozen_q, frozen_a }
    }
}

impl Bc2 for InflowLeftBc2 {
    fn fill(&self, grid: &Grid2, q: &mut [[f64; 8]], a: &mut [[f64; 3]]) {
        ExtrapBc2::fill_impl(grid, q, a);
        let mut idx = 0;
        for j in 0..grid.nyt {
            for i in 0..NG {
                let c = grid.cid(i, j);
                q[c] = self.frozen_q[idx];
                a[c] = self.frozen_a[idx];
                idx += 1;
            }
        }
    }
}

pub struct ExtrapBc3;

impl ExtrapBc3 {
    pub fn fill_impl(grid: &Grid3, q: &mut [[f64; 8]], a: &mut [[f64; 3]]) {
        let lin = |a0: [f64; 3], a1: [f64; 3]| -> [f64; 3] {
            [
                2.0 * a0[0] - a1[0],
                2.0 * a0[1] - a1[1],
                2.0 * a0[2] - a1[2],
            ]
        };
        // x sides on interior rows/planes
        for k in NG..NG + grid.nz {
            for j in NG..NG + grid.ny {
                let (l0, l1) = (grid.cid(NG, j, k), grid.cid(NG + 1, j, k));
                let (r0, r1) = (
                    grid.cid(NG + grid.nx - 1, j, k),
                    grid.cid(NG + grid.nx - 2, j, k),
                );
                let (gl1, gl2) = (grid.cid(NG - 1, j, k), grid.cid(NG - 2, j, k));
                let (gr1, gr2) = (
                    grid.cid(NG + grid.nx, j, k),
                    grid.cid(NG + grid.nx + 1, j, k),
                );
                q[gl1] = q[l0];
                q[gl2] = q[l0];
                q[gr1] = q[r0];
                q[gr2] = q[r0];
                a[gl1] = lin(a[l0], a[l1]);
                a[gl2] = lin(a[gl1], a[l0]);
                a[gr1] = lin(a[r0], a[r1]);
                a[gr2] = lin(a[gr1], a[r0]);
            }
        }
        // y sides for all x columns on interior z planes
        for k in NG..NG + grid.nz {
            for i in 0..grid.nxt {
                let (b0, b1) = (grid.cid(i, NG, k), grid.cid(i, NG + 1, k));
                let (t0, t1) = (
                    grid.cid(i, NG + grid.ny - 1, k),
                    grid.cid(i, NG + grid.ny - 2, k),
                );
                let (gb1, gb2) = (grid.cid(i, NG - 1, k), grid.cid(i, NG - 2, k));
                let (gt1, gt2) = (
                    grid.cid(i, NG + grid.ny, k),
                    grid.cid(i, NG + grid.ny + 1, k),
                );
                q[gb1] = q[b0];
                q[gb2] = q[b0];
                q[gt1] = q[t0];
                q[gt2] = q[t0];
                a[gb1] = lin(a[b0], a[b1]);
                a[gb2] = lin(a[gb1], a[b0]);
                a[gt1] = lin(a[t0], a[t1]);
                a[gt2] = lin(a[gt1], a[t0]);
            }
        }
        // z sides for every column
        for j in 0..grid.nyt {
            for i in 0..grid.nxt {
                let (b0, b1) = (grid.cid(i, j, NG), grid.cid(i, j, NG + 1));
                let (t0, t1) = (
                    grid.cid(i, j, NG + grid.nz - 1),
                    grid.cid(i, j, NG + grid.nz - 2),
                );
                let (gb1, gb2) = (grid.cid(i, j, NG - 1), grid.cid(i, j, NG - 2));
                let (gt1, gt2) = (
                    grid.cid(i, j, NG + grid.nz),
                    grid.cid(i, j, NG + grid.nz + 1),
                );
                q[gb1] = q[b0];
                q[gb2] = q[b0];
                q[gt1] = q[t0];
                q[gt2] = q[t0];
                a[gb1] = lin(a[b0], a[b1]);
                a[gb2] = lin(a[gb1], a[b0]);
                a[gt1] = lin(a[t0], a[t1]);
                a[gt2] = lin(a[gt1], a[t0]);
            }
        }
    }
}

impl Bc3 for ExtrapBc3 {
    fn fill(&self, grid: &Grid3, q: &mut [[f64; 8]], a: &mut [[f64; 3]]) {
        Self::fill_impl(grid, q, a);
    }
}

pub struct InflowLeftBc3 {
    pub frozen_q: Vec<[f64; 8]>,
    pub frozen_a: Vec<[f64; 3]>,
}

impl InflowLeftBc3 {
    pub fn new(grid: &Grid3, q0: &[[f64; 8]], a0: &[[f64; 3]]) -> Self {
        let mut frozen_q = Vec::new();
        let mut frozen_a = Vec::new();
        for k in 0..grid.nzt {
            for j in 0..grid.nyt {
                for i in 0..NG {
                    let c = grid.cid(i, j, k);
                    frozen_q.push(q0[c]);
                    frozen_a.push(a0[c]);
                }
            }
        }
        InflowLeftBc3 { frozen_q, frozen_a }
    }
}

impl Bc3 for InflowLeftBc3 {
    fn fill(&self, grid: &Grid3, q: &mut [[f64; 8]], a: &mut [[f64; 3]]) {
        ExtrapBc3::fill_impl(grid, q, a);
        let mut idx = 0;
        for k in 0..grid.nzt {
            for j in 0..grid.nyt {
                for i in 0..NG {
                    let c = grid.cid(i, j, k);
                    q[c] = self.frozen_q[idx];
                    a[c] = self.frozen_a[idx];
                    idx += 1;
                }
            }
        }
    }
}
