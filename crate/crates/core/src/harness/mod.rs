//! Problem setups, drivers, error norms, I/O, and the CLI plumbing.

pub mod advect1d;
pub mod bc;
pub mod config;
pub mod mhd1d;
pub mod output;
pub mod problems;

use crate::curl;
use crate::geometry::{GeometryError, Grid2, Grid3, QuadratureRule, NG};
use crate::mhd::MhdError;
use crate::timestepper::{Sim2, Sim3};
use thiserror::Error;

pub use problems::{setup2, setup3, Problem2, Problem3};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Solver(#[from] MhdError),
    #[error("{0}: {1}")]
    Io(std::path::PathBuf, std::io::Error),
}

/// Cell averages of a pointwise function by 5x5 Gauss quadrature, on every
/// cell of the extended lattice (ghosts included).
pub fn cell_averages2<const K: usize>(
    grid: &Grid2,
    f: &dyn Fn([f64; 2]) -> [f64; K],
) -> Vec<[f64; K]> {
    let quad = QuadratureRule::gauss(5);
    let mut out = vec![[0.0; K]; grid.nxt * grid.nyt];
    for (c, cell) in grid.cells.iter().enumerate() {
        let mut acc = [0.0; K];
        for (a, &xi) in quad.nodes.iter().enumerate() {
            for (b, &eta) in quad.nodes.iter().enumerate() {
                let w = quad.weights[a] * quad.weights[b] * cell.jac(xi, eta);
                let v = f(cell.point(xi, eta));
                for k in 0..K {
                    acc[k] += w * v[k];
                }
            }
        }
        for k in 0..K {
            out[c][k] = acc[k] / cell.vol;
        }
    }
    out
}

pub fn cell_averages3<const K: usize>(
    grid: &Grid3,
    f: &dyn Fn([f64; 3]) -> [f64; K],
) -> Vec<[f64; K]> {
    let quad = QuadratureRule::gauss(5);
    let mut out = vec![[0.0; K]; grid.nxt * grid.nyt * grid.nzt];
    for (c, cell) in grid.cells.iter().enumerate() {
        let mut acc = [0.0; K];
        for (a, &xi) in quad.nodes.iter().enumerate() {
            for (b, &eta) in quad.nodes.iter().enumerate() {
                for (d, &zeta) in quad.nodes.iter().enumerate() {
                    let w = quad.weights[a]
                        * quad.weights[b]
                        * quad.weights[d]
                        * cell.jac(xi, eta, zeta);
                    let v = f(cell.point(xi, eta, zeta));
                    for k in 0..K {
                        acc[k] += w * v[k];
                    }
                }
            }
        }
        for k in 0..K {
            out[c][k] = acc[k] / cell.vol;
        }
    }
    out
}

/// Volume-normalized interior L1 errors, per component.
pub fn l1_errors2<const K: usize>(
    grid: &Grid2,
    num: &[[f64; K]],
    exact: &[[f64; K]],
) -> [f64; K] {
    let mut err = [0.0; K];
    let mut volsum = 0.0;
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            let vol = grid.cells[c].vol;
            volsum += vol;
            for k in 0..K {
                err[k] += vol * (num[c][k] - exact[c][k]).abs();
            }
        }
    }
    for e in err.iter_mut() {
        *e /= volsum;
    }
    err
}

pub fn l1_errors3<const K: usize>(
    grid: &Grid3,
    num: &[[f64; K]],
    exact: &[[f64; K]],
) -> [f64; K] {
    let mut err = [0.0; K];
    let mut volsum = 0.0;
    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j, k);
                let vol = grid.cells[c].vol;
                volsum += vol;
                for v in 0..K {
                    err[v] += vol * (num[c][v] - exact[c][v]).abs();
                }
            }
        }
    }
    for e in err.iter_mut() {
        *e /= volsum;
    }
    err
}

/// Experimental orders of convergence for a 2:1 refinement error sequence.
pub fn eoc(errors: &[f64]) -> Vec<f64> {
    errors
        .windows(2)
        .map(|w| (w[0] / w[1]).log2())
        .collect()
}

/// Names of the tabulated quantities: 8 conserved + 3 potential components.
pub const VAR_NAMES: [&str; 11] = [
    "rho", "mx", "my", "mz", "E", "B1", "B2", "B3", "A1", "A2", "A3",
];

/// Per-variable L1 errors over a refinement sweep, plus the EOC table.
pub struct ConvergenceReport {
    /// (nx, ny, nz) per level; nz = 1 marks 2D.
    pub sizes: Vec<(usize, usize, usize)>,
    pub errors: Vec<[f64; 11]>,
}

impl ConvergenceReport {
    pub fn eoc_table(&self) -> Vec<[f64; 11]> {
        let mut rows = Vec::new();
        for w in self.errors.windows(2) {
            let mut r = [0.0; 11];
            for v in 0..11 {
                r[v] = (w[0][v] / w[1][v]).log2();
            }
            rows.push(r);
        }
        rows
    }
}

impl std::fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:>12}", "grid")?;
        for n in VAR_NAMES {
            write!(f, " {:>10}", n)?;
        }
        writeln!(f)?;
        let eocs = self.eoc_table();
        for (lev, (&(nx, ny, nz), err)) in self.sizes.iter().zip(&self.errors).enumerate() {
            let label = if nz <= 1 {
                format!("{}x{}", nx, ny)
            } else {
                format!("{}x{}x{}", nx, ny, nz)
            };
            write!(f, "{:>12}", label)?;
            for v in 0..11 {
                write!(f, " {:>10.3e}", err[v])?;
            }
            writeln!(f)?;
            if lev > 0 {
                write!(f, "{:>12}", "EOC")?;
                for v in 0..11 {
                    write!(f, " {:>10.2}", eocs[lev - 1][v])?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Replace the magnetic-field averages by the discrete curl of the current
/// potential, exactly as the per-stage corrector does. Used once after
/// initialization so that B starts consistent with A.
pub fn apply_corrector2(sim: &mut Sim2) {
    let g = sim.grid;
    sim.bc.fill(g, &mut sim.q, &mut sim.a);
    let apolys = sim.recon.reconstruct(&sim.a, sim.cfg.weno);
    let b = curl::curl2(g, &sim.recon, &apolys, sim.cfg.ct25d_full);
    for j in NG..NG + g.ny {
        for i in NG..NG + g.nx {
            let c = g.cid(i, j);
            sim.q[c][5] = b[c][0];
            sim.q[c][6] = b[c][1];
            if sim.cfg.ct25d_full {
                sim.q[c][7] = b[c][2];
            }
        }
    }
}

pub fn apply_corrector3(sim: &mut Sim3) {
    let g = sim.grid;
    sim.bc.fill(g, &mut sim.q, &mut sim.a);
    let apolys = sim.recon.reconstruct(&sim.a, sim.cfg.weno);
    let b = curl::curl3(g, &sim.recon, &apolys);
    for k in NG..NG + g.nz {
        for j in NG..NG + g.ny {
            for i in NG..NG + g.nx {
                let c = g.cid(i, j, k);
                sim.q[c][5] = b[c][0];
                sim.q[c][6] = b[c][1];
                sim.q[c][7] = b[c][2];
            }
        }
    }
}
