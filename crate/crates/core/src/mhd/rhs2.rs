//! Conservative semi-discrete MHD operator in 2D (Cartesian and mapped).
//!
//! Faces are integrated with the grid's Gauss nodes; the interface flux is
//! single-valued per node, so the scheme is conservative by construction.
//! A Cartesian grid is simply a mapped grid with the identity map, so one
//! code path serves both; `mhd_rhs_cartesian` and `mhd_rhs_mapped` are thin
//! wrappers kept for API symmetry.

use super::{interface_flux, primitive, MhdError};
use crate::geometry::{Grid2, NG};
use crate::reconstruction::Recon2;

pub struct MhdRhs2;

/// Reconstructed trace at a face node, falling back to the cell average when
/// the reconstructed state loses admissibility (can happen at strong shocks;
/// the averages themselves are still checked and abort on failure).
#[inline]
fn trace_primitive(
    recon: &Recon2,
    cid: usize,
    polys: &[[[f64; 6]; 8]],
    q: &[[f64; 8]],
    p: [f64; 2],
    loc: (isize, isize),
) -> Result<[f64; 8], MhdError> {
    let qr = recon.eval(cid, &polys[cid], p);
    if let Some(w) = primitive(&qr) {
        return Ok(w);
    }
    primitive(&q[cid]).ok_or(MhdError::Positivity {
        i: loc.0,
        j: loc.1,
        k: None,
        rho: q[cid][0],
        p: f64::NAN,
    })
}

impl MhdRhs2 {
    /// L1 operator: per-cell time derivative of the conserved averages.
    pub fn rhs(
        grid: &Grid2,
        recon: &Recon2,
        q: &[[f64; 8]],
        limit: bool,
    ) -> Result<Vec<[f64; 8]>, MhdError> {
        let polys = recon.reconstruct(q, limit);
        Self::rhs_with_polys(grid, recon, q, &polys)
    }

    pub fn rhs_with_polys(
        grid: &Grid2,
        recon: &Recon2,
        q: &[[f64; 8]],
        polys: &[[[f64; 6]; 8]],
    ) -> Result<Vec<[f64; 8]>, MhdError> {
        let (nxt, nyt) = (grid.nxt, grid.nyt);
        let (nx, ny) = (grid.nx, grid.ny);
        let mut fx = vec![[0.0f64; 8]; (nxt + 1) * nyt];
        let mut fy = vec![[0.0f64; 8]; nxt * (nyt + 1)];

        // x-faces bounding interior cells
        for j in NG..NG + ny {
            for i in NG..=NG + nx {
                let face = &grid.xfaces[grid.xfid(i, j)];
                let n = [face.normal[0], face.normal[1], 0.0];
                let cm = grid.cid(i - 1, j);
                let cp = grid.cid(i, j);
                let loc = (i as isize - NG as isize, j as isize - NG as isize);
                let mut acc = [0.0; 8];
                for &(p, w) in &face.nodes {
                    let wm = trace_primitive(recon, cm, polys, q, p, loc)?;
                    let wp = trace_primitive(recon, cp, polys, q, p, loc)?;
                    let f = interface_flux(&wm, &wp, &n);
                    for v in 0..8 {
                        acc[v] += w * f[v];
                    }
                }
                fx[grid.xfid(i, j)] = acc;
            }
        }
        // y-faces
        for j in NG..=NG + ny {
            for i in NG..NG + nx {
                let face = &grid.yfaces[grid.yfid(i, j)];
                let n = [face.normal[0], face.normal[1], 0.0];
                let cm = grid.cid(i, j - 1);
                let cp = grid.cid(i, j);
                let loc = (i as isize - NG as isize, j as isize - NG as isize);
                let mut acc = [0.0; 8];
                for &(p, w) in &face.nodes {
                    let wm = trace_primitive(recon, cm, polys, q, p, loc)?;
                    let wp = trace_primitive(recon, cp, polys, q, p, loc)?;
                    let f = interface_flux(&wm, &wp, &n);
                    for v in 0..8 {
                        acc[v] += w * f[v];
                    }
                }
                fy[grid.yfid(i, j)] = acc;
            }
        }

        let mut rhs = vec![[0.0f64; 8]; nxt * nyt];
        for j in NG..NG + ny {
            for i in NG..NG + nx {
                let c = grid.cid(i, j);
                let vol = grid.cells[c].vol;
                let fe = &fx[grid.xfid(i + 1, j)];
                let fw = &fx[grid.xfid(i, j)];
                let fn_ = &fy[grid.yfid(i, j + 1)];
                let fs = &fy[grid.yfid(i, j)];
                for v in 0..8 {
                    rhs[c][v] = -(fe[v] - fw[v] + fn_[v] - fs[v]) / vol;
                }
            }
        }
        Ok(rhs)
    }
}

/// Cartesian-grid wrapper (identity map).
pub fn mhd_rhs_cartesian(
    grid: &Grid2,
    recon: &Recon2,
    q: &[[f64; 8]],
    limit: bool,
) -> Result<Vec<[f64; 8]>, MhdError> {
    MhdRhs2::rhs(grid, recon, q, limit)
}

/// Mapped-grid wrapper; identical code path.
pub fn mhd_rhs_mapped(
    grid: &Grid2,
    recon: &Recon2,
    q: &[[f64; 8]],
    limit: bool,
) -> Result<Vec<[f64; 8]>, MhdError> {
    MhdRhs2::rhs(grid, recon, q, limit)
}
