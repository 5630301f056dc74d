//! Conservative semi-discrete MHD operator in 3D. Face normals vary over
//! bilinear faces, so the flux is assembled node by node with the cached
//! per-node normals and sqrt(a)-weighted quadrature weights.

use super::{interface_flux, primitive, MhdError};
use crate::geometry::{Grid3, NG};
use crate::reconstruction::Recon3;

pub struct MhdRhs3;

#[inline]
fn trace_primitive(
    recon: &Recon3,
    cid: usize,
    polys: &[[[f64; 10]; 8]],
    q: &[[f64; 8]],
    p: [f64; 3],
    loc: (isize, isize, isize),
) -> Result<[f64; 8], MhdError> {
    let qr = recon.eval(cid, &polys[cid], p);
    if let Some(w) = primitive(&qr) {
        return Ok(w);
    }
    primitive(&q[cid]).ok_or(MhdError::Positivity {
        i: loc.0,
        j: loc.1,
        k: Some(loc.2),
        rho: q[cid][0],
        p: f64::NAN,
    })
}

impl MhdRhs3 {
    pub fn rhs(
        grid: &Grid3,
        recon: &Recon3,
        q: &[[f64; 8]],
        limit: bool,
    ) -> Result<Vec<[f64; 8]>, MhdError> {
        let polys = recon.reconstruct(q, limit);
        Self::rhs_with_polys(grid, recon, q, &polys)
    }

    pub fn rhs_with_polys(
        grid: &Grid3,
        recon: &Recon3,
        q: &[[f64; 8]],
        polys: &[[[f64; 10]; 8]],
    ) -> Result<Vec<[f64; 8]>, MhdError> {
        let (nxt, nyt, nzt) = (grid.nxt, grid.nyt, grid.nzt);
        let (nx, ny, nz) = (grid.nx, grid.ny, grid.nz);
        let mut fx = vec![[0.0f64; 8]; (nxt + 1) * nyt * nzt];
        let mut fy = vec![[0.0f64; 8]; nxt * (nyt + 1) * nzt];
        let mut fz = vec![[0.0f64; 8]; nxt * nyt * (nzt + 1)];

        let face_flux = |face: &crate::geometry::Face3,
                             cm: usize,
                             cp: usize,
                             loc: (isize, isize, isize)|
         -> Result<[f64; 8], MhdError> {
            let mut acc = [0.0; 8];
            for node in &face.nodes {
                let wm = trace_primitive(recon, cm, polys, q, node.point, loc)?;
                let wp = trace_primitive(recon, cp, polys, q, node.point, loc)?;
                let f = interface_flux(&wm, &wp, &node.normal);
                for v in 0..8 {
                    acc[v] += node.w * f[v];
                }
            }
            Ok(acc)
        };

        for k in NG..NG + nz {
            for j in NG..NG + ny {
                for i in NG..=NG + nx {
                    let id = grid.xfid(i, j, k);
                    fx[id] = face_flux(
                        &grid.xfaces[id],
                        grid.cid(i - 1, j, k),
                        grid.cid(i, j, k),
                        (
                            i as isize - NG as isize,
                            j as isize - NG as isize,
                            k as isize - NG as isize,
                        ),
                    )?;
                }
            }
        }
        for k in NG..NG + nz {
            for j in NG..=NG + ny {
                for i in NG..NG + nx {
                    let id = grid.yfid(i, j, k);
                    fy[id] = face_flux(
                        &grid.yfaces[id],
                        grid.cid(i, j - 1, k),
                        grid.cid(i, j, k),
                        (
                            i as isize - NG as isize,
                            j as isize - NG as isize,
                            k as isize - NG as isize,
                        ),
                    )?;
                }
            }
        }
        for k in NG..=NG + nz {
            for j in NG..NG + ny {
                for i in NG..NG + nx {
                    let id = grid.zfid(i, j, k);
                    fz[id] = face_flux(
                        &grid.zfaces[id],
                        grid.cid(i, j, k - 1),
                        grid.cid(i, j, k),
                        (
                            i as isize - NG as isize,
                            j as isize - NG as isize,
                            k as isize - NG as isize,
                        ),
                    )?;
                }
            }
        }

        let mut rhs = vec![[0.0f64; 8]; nxt * nyt * nzt];
        for k in NG..NG + nz {
            for j in NG..NG + ny {
                for i in NG..NG + nx {
                    let c = grid.cid(i, j, k);
                    let vol = grid.cells[c].vol;
                    for v in 0..8 {
                        rhs[c][v] = -(fx[grid.xfid(i + 1, j, k)][v] - fx[grid.xfid(i, j, k)][v]
                            + fy[grid.yfid(i, j + 1, k)][v]
                            - fy[grid.yfid(i, j, k)][v]
                            + fz[grid.zfid(i, j, k + 1)][v]
                            - fz[grid.zfid(i, j, k)][v])
                            / vol;
                    }
                }
            }
        }
        Ok(rhs)
    }
}
