//! Artificial resistivity limiter for the potential update.
//!
//! The vector potential is one derivative smoother than the fields the MHD
//! solver limits, so plain WENO limiting of A still lets oscillations into
//! B = curl A. The cure is a small amount of resistivity eps(x) = eta *
//! alpha(x) applied only where a kink detector fires:
//!
//!   sigma_ik = lambda_ik / ((ds)^4 + Sigma_k)^e,
//!   Sigma_k  = (second derivative measure of cell k)^2,
//!   S = max over all face/edge/corner neighbors k of sigma_ik,
//!   alpha = 0 if S <= sigma_ii, else 1/2 [1 + sin(pi dS - pi/2)],
//!   dS = (S - sigma_ii)/S  (relative gap, see `alpha_indicator`).
//!
//! In 1D the measure is q_xx dx^2; in multi-D the Laplacian times |C|.
//! eta = 0.2 dx^2/dt for the advection study, 0.5 ds for MHD. An explicit
//! diffusion stability clamp eps <= dx^2/(2 dt) is always enforced.

use crate::geometry::{Grid2, Grid3, NG};
use crate::reconstruction::{nbr26, Recon1, Recon2, Recon3, NBR8};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaMode {
    Advection,
    Mhd,
}

#[derive(Debug, Clone)]
pub struct LimiterParams {
    pub lambda_self: f64,
    pub lambda_nbr: f64,
    pub e: f64,
    pub eta_mode: EtaMode,
    /// Extra multiplier on eta (1.0 = paper values).
    pub eta_scale: f64,
    /// Disable the limiter entirely (eps = 0).
    pub enabled: bool,
}

impl Default for LimiterParams {
    fn default() -> Self {
        LimiterParams {
            lambda_self: 1000.0,
            lambda_nbr: 1.0,
            e: 4.0,
            eta_mode: EtaMode::Mhd,
            eta_scale: 1.0,
            enabled: true,
        }
    }
}

/// alpha in [0,1] from the neighbor max S and the cell's own sigma.
///
/// The ramp argument is the relative gap dS = (S - sigma_ii)/S in [0,1).
/// The sigmas span many orders of magnitude (lambda over a fourth power of
/// tiny measures), so an absolute difference would jump straight past the
/// sine ramp and make alpha an on/off switch; that discontinuity turns
/// roundoff-level noise in the data into O(eta) noise in eps at every cell
/// sitting on the firing threshold. The relative gap keeps eps a continuous
/// function of the data: alpha -> 0 as the gate closes, -> 1 as S >> sigma_ii.
pub fn alpha_indicator(s: f64, sigma_ii: f64) -> f64 {
    if s <= sigma_ii {
        return 0.0;
    }
    let ds = (s - sigma_ii) / s;
    if ds >= 1.0 {
        1.0
    } else {
        0.5 * (1.0 + (std::f64::consts::PI * ds - std::f64::consts::FRAC_PI_2).sin())
    }
}

#[inline]
fn sigma(lambda: f64, ds4: f64, ss: f64, e: f64) -> f64 {
    lambda / (ds4 + ss).powf(e)
}

fn eta(params: &LimiterParams, ds: f64, dt: f64) -> f64 {
    let base = match params.eta_mode {
        EtaMode::Advection => 0.2 * ds * ds / dt,
        EtaMode::Mhd => 0.5 * ds,
    };
    // explicit-diffusion stability bound
    (params.eta_scale * base).min(0.5 * ds * ds / dt)
}

/// 1D epsilon field from the cell averages (component 0).
///
/// The kink measure uses the *unlimited* central second difference: the WENO
/// weights collapse onto a one-sided linear candidate exactly at a kink, so a
/// limited polynomial's second derivative vanishes where the detector must
/// fire.
pub fn epsilon_field1(
    recon: &Recon1,
    field: &[[f64; 1]],
    dt: f64,
    params: &LimiterParams,
) -> Vec<f64> {
    let nt = recon.nt;
    let mut eps = vec![0.0; nt];
    if !params.enabled {
        return eps;
    }
    let dx = recon.dx;
    let ds4 = dx.powi(4);
    // (q_xx dx^2)^2 with q_xx from the plain central difference
    let mut meas = vec![0.0f64; nt];
    for i in 1..nt - 1 {
        let m = field[i + 1][0] - 2.0 * field[i][0] + field[i - 1][0];
        meas[i] = m * m;
    }
    meas[0] = meas[1];
    meas[nt - 1] = meas[nt - 2];
    let et = eta(params, dx, dt);
    // interior cells only: the outermost cells carry constant (degenerate)
    // reconstructions whose zero kink measure would spuriously fire sigma
    for i in NG..nt - NG {
        let sii = sigma(params.lambda_self, ds4, meas[i], params.e);
        let s = sigma(params.lambda_nbr, ds4, meas[i - 1], params.e)
            .max(sigma(params.lambda_nbr, ds4, meas[i + 1], params.e));
        eps[i] = et * alpha_indicator(s, sii);
    }
    // continue eps into the ghost layers so boundary-face means see the same
    // value from both sides (zero net diffusion on data the BC extends)
    for i in 0..NG {
        eps[i] = eps[NG];
        eps[nt - 1 - i] = eps[nt - 1 - NG];
    }
    eps
}

/// 2D epsilon field; the kink measure is the Laplacian of each component in
/// `comps`, and the cell alpha is the max over those components. `araw` must
/// be the *unlimited* central reconstruction (see the 1D operator for why
/// the limited polynomials cannot be used).
pub fn epsilon_field2(
    grid: &Grid2,
    recon: &Recon2,
    araw: &[[[f64; 6]; 3]],
    comps: &[usize],
    dt: f64,
    params: &LimiterParams,
) -> Vec<f64> {
    let n = grid.nxt * grid.nyt;
    let mut eps = vec![0.0; n];
    if !params.enabled {
        return eps;
    }
    // per-cell squared measure per component
    let mut meas = vec![[0.0f64; 3]; n];
    for c in 0..n {
        for &v in comps {
            let sec = recon.second1(c, &araw[c][v]);
            let lap = sec[0] + sec[2];
            let m = lap * grid.cells[c].vol;
            meas[c][v] = m * m;
        }
    }
    // interior cells only: the outermost ring carries constant (degenerate)
    // reconstructions whose zero kink measure would spuriously fire sigma
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            let ds = grid.cells[c].ds;
            let ds4 = ds.powi(4);
            let et = eta(params, ds, dt);
            let mut alpha: f64 = 0.0;
            for &v in comps {
                let sii = sigma(params.lambda_self, ds4, meas[c][v], params.e);
                let mut s = 0.0f64;
                for &(di, dj) in NBR8.iter() {
                    let o = grid.cid((i as isize + di) as usize, (j as isize + dj) as usize);
                    s = s.max(sigma(params.lambda_nbr, ds4, meas[o][v], params.e));
                }
                alpha = alpha.max(alpha_indicator(s, sii));
            }
            eps[c] = et * alpha;
        }
    }
    // continue eps into the ghost layers so boundary-face means see the same
    // value from both sides (zero net diffusion on data the BC extends)
    let clamp = |i: usize, n: usize| i.max(NG).min(NG + n - 1);
    for j in 0..grid.nyt {
        for i in 0..grid.nxt {
            if !grid.is_interior(i, j) {
                eps[grid.cid(i, j)] = eps[grid.cid(clamp(i, grid.nx), clamp(j, grid.ny))];
            }
        }
    }
    eps
}

pub fn epsilon_field3(
    grid: &Grid3,
    recon: &Recon3,
    araw: &[[[f64; 10]; 3]],
    comps: &[usize],
    dt: f64,
    params: &LimiterParams,
) -> Vec<f64> {
    let n = grid.nxt * grid.nyt * grid.nzt;
    let mut eps = vec![0.0; n];
    if !params.enabled {
        return eps;
    }
    let nbrs = nbr26();
    let mut meas = vec![[0.0f64; 3]; n];
    for c in 0..n {
        for &v in comps {
            let lap = recon.laplacian1(c, &araw[c][v]);
            let m = lap * grid.cells[c].vol;
            meas[c][v] = m * m;
        }
    }
    // interior cells only (see the 2D operator)
    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j, k);
                let ds = grid.cells[c].ds;
                let ds4 = ds.powi(4);
                let et = eta(params, ds, dt);
                let mut alpha: f64 = 0.0;
                for &v in comps {
                    let sii = sigma(params.lambda_self, ds4, meas[c][v], params.e);
                    let mut s = 0.0f64;
                    for &(di, dj, dk) in nbrs.iter() {
                        let o = grid.cid(
                            (i as isize + di) as usize,
                            (j as isize + dj) as usize,
                            (k as isize + dk) as usize,
                        );
                        s = s.max(sigma(params.lambda_nbr, ds4, meas[o][v], params.e));
                    }
                    alpha = alpha.max(alpha_indicator(s, sii));
                }
                eps[c] = et * alpha;
            }
        }
    }
    let clamp = |i: usize, n: usize| i.max(NG).min(NG + n - 1);
    for k in 0..grid.nzt {
        for j in 0..grid.nyt {
            for i in 0..grid.nxt {
                if !grid.is_interior(i, j, k) {
                    eps[grid.cid(i, j, k)] = eps[grid.cid(
                        clamp(i, grid.nx),
                        clamp(j, grid.ny),
                        clamp(k, grid.nz),
                    )];
                }
            }
        }
    }
    eps
}

/// Pointwise diffusion term for the 2D A update: eps(c) * Laplacian of the
/// *unlimited* central reconstruction.
///
/// Two deliberate choices. The Laplacian annihilates the linear-in-space
/// gauge part of A, so the term acts only on the curvature that carries the
/// oscillations; a divergence-form flux eps grad(A) would add a spurious
/// grad(eps).grad(A) advection that couples indicator noise to the large
/// background gradient of A (the constant-B gauge slope) and feeds it back
/// through the corrector — an observable boundary-row instability. And the
/// unlimited fit is used because the WENO weights collapse to one-sided
/// linear candidates exactly at a kink, zeroing the limited second
/// derivative where the viscosity has to act.
pub fn apply_resistivity2(
    grid: &Grid2,
    recon: &Recon2,
    araw: &[[[f64; 6]; 3]],
    eps: &[f64],
    comps: &[usize],
) -> Vec<[f64; 3]> {
    let (nxt, nyt) = (grid.nxt, grid.nyt);
    let mut out = vec![[0.0f64; 3]; nxt * nyt];
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            if eps[c] == 0.0 {
                continue;
            }
            for &v in comps {
                let sec = recon.second1(c, &araw[c][v]);
                out[c][v] = eps[c] * (sec[0] + sec[2]);
            }
        }
    }
    out
}

/// Pointwise eps * Laplacian of the unlimited reconstruction (see the 2D
/// operator for the rationale).
pub fn apply_resistivity3(
    grid: &Grid3,
    recon: &Recon3,
    araw: &[[[f64; 10]; 3]],
    eps: &[f64],
    comps: &[usize],
) -> Vec<[f64; 3]> {
    let n = grid.nxt * grid.nyt * grid.nzt;
    let mut out = vec![[0.0f64; 3]; n];
    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j, k);
                if eps[c] == 0.0 {
                    continue;
                }
                for &v in comps {
                    out[c][v] = eps[c] * recon.laplacian1(c, &araw[c][v]);
                }
            }
        }
    }
    out
}

/// 1D pointwise diffusion eps_i q_xx(i) with the plain central second
/// difference (see the 2D operator for the rationale).
pub fn apply_resistivity1(recon: &Recon1, field: &[[f64; 1]], eps: &[f64]) -> Vec<f64> {
    let nt = recon.nt;
    let dx2 = recon.dx * recon.dx;
    let mut out = vec![0.0; nt];
    for i in 1..nt - 1 {
        if eps[i] == 0.0 {
            continue;
        }
        out[i] = eps[i] * (field[i + 1][0] - 2.0 * field[i][0] + field[i - 1][0]) / dx2;
    }
    out
}
