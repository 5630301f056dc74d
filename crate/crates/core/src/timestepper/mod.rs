//! SSP-RK3 driver with the per-stage predictor/corrector constrained
//! transport sequence.
//!
//! Each stage k computes the convex-combination Euler update
//!
//!   Q(k*) = alpha Q(n) + (1-alpha) Q(k-1) + beta dt L1(Q(k-1)),
//!   A(k)  = alpha A(n) + (1-alpha) A(k-1) + beta dt L2(Q(k-1), A(k-1)),
//!
//! with stage weights (1,1), (3/4,1/4), (1/3,2/3), then corrects the
//! predicted magnetic field by B(k) = curl A(k). Density, momentum, and
//! energy pass through the corrector untouched. The velocity driving L2 is
//! taken from Q(k-1) (the pre-update stage state), dt is frozen across the
//! three stages, and the resistivity field is recomputed every stage.

use crate::curl;
use crate::geometry::{Grid2, Grid3, NG};
use crate::mhd::{self, MhdError, MhdRhs2, MhdRhs3};
use crate::potential::{PotentialRhs2, PotentialRhs3, PotentialSolver};
use crate::reconstruction::{Recon2, Recon3};
use crate::resistivity::{self, LimiterParams};

/// (alpha, beta) per stage.
pub const STAGES: [(f64, f64); 3] = [(1.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0)];

#[derive(Debug, Clone)]
pub struct SchemeConfig {
    pub cfl: f64,
    pub dt_max: f64,
    pub max_steps: usize,
    /// Constrained-transport corrector on/off (off = plain RK3 FV scheme).
    pub corrector: bool,
    pub solver: PotentialSolver,
    /// 2.5D only: evolve all three A components instead of just A3.
    pub ct25d_full: bool,
    /// WENO limiting of the reconstructions (off = raw central fits).
    pub weno: bool,
    pub limiter: LimiterParams,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            cfl: 0.5,
            dt_max: f64::INFINITY,
            max_steps: usize::MAX,
            corrector: true,
            solver: PotentialSolver::Rusanov,
            ct25d_full: false,
            weno: true,
            limiter: LimiterParams::default(),
        }
    }
}

/// Per-step diagnostics emitted by `advance`.
#[derive(Debug, Clone)]
pub struct StepDiag {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
    pub div_max: f64,
    pub div_l1: f64,
    pub min_rho: f64,
    pub min_p: f64,
    /// Volume-weighted totals of (rho, mx, my, mz, E).
    pub totals: [f64; 5],
}

/// Ghost-layer boundary fill; the harness provides problem-specific rules.
pub trait Bc2 {
    fn fill(&self, grid: &Grid2, q: &mut [[f64; 8]], a: &mut [[f64; 3]]);
}

pub trait Bc3 {
    fn fill(&self, grid: &Grid3, q: &mut [[f64; 8]], a: &mut [[f64; 3]]);
}

pub struct Sim2<'g> {
    pub grid: &'g Grid2,
    pub recon: Recon2,
    pub cfg: SchemeConfig,
    pub bc: Box<dyn Bc2>,
    pub q: Vec<[f64; 8]>,
    pub a: Vec<[f64; 3]>,
    pub t: f64,
    pub step: usize,
}

impl<'g> Sim2<'g> {
    pub fn new(
        grid: &'g Grid2,
        cfg: SchemeConfig,
        bc: Box<dyn Bc2>,
        q: Vec<[f64; 8]>,
        a: Vec<[f64; 3]>,
    ) -> Self {
        let recon = Recon2::build(grid);
        Sim2 {
            grid,
            recon,
            cfg,
            bc,
            q,
            a,
            t: 0.0,
            step: 0,
        }
    }

    /// CFL time step from the cell averages.
    pub fn compute_dt(&self, cfl: f64) -> Result<f64, MhdError> {
        let g = self.grid;
        let mut dt = f64::INFINITY;
        for j in NG..NG + g.ny {
            for i in NG..NG + g.nx {
                let c = g.cid(i, j);
                let w = mhd::primitive(&self.q[c]).ok_or(MhdError::Positivity {
                    i: i as isize - NG as isize,
                    j: j as isize - NG as isize,
                    k: None,
                    rho: self.q[c][0],
                    p: f64::NAN,
                })?;
                let mut smax = 0.0f64;
                for fnorm in [
                    g.xfaces[g.xfid(i, j)].normal,
                    g.xfaces[g.xfid(i + 1, j)].normal,
                    g.yfaces[g.yfid(i, j)].normal,
                    g.yfaces[g.yfid(i, j + 1)].normal,
                ] {
                    let n = [fnorm[0], fnorm[1], 0.0];
                    let un = w[1] * n[0] + w[2] * n[1];
                    let (_, _, _, cf) = mhd::wave_speeds(&w, &n);
                    smax = smax.max(un.abs() + cf);
                }
                if smax > 0.0 {
                    dt = dt.min(g.cells[c].ds / smax);
                }
            }
        }
        let dt = if dt.is_finite() {
            cfl * dt
        } else {
            self.cfg.dt_max
        };
        Ok(dt.min(self.cfg.dt_max))
    }

    /// One CT stage; `qn`/`an` are the step-start states, `self.q`/`self.a`
    /// hold Q(k-1) on entry and Q(k) on exit.
    pub fn ct_stage(
        &mut self,
        qn: &[[f64; 8]],
        an: &[[f64; 3]],
        alpha: f64,
        beta: f64,
        dt: f64,
    ) -> Result<(), MhdError> {
        let g = self.grid;
        self.bc.fill(g, &mut self.q, &mut self.a);
        let qpolys = self.recon.reconstruct(&self.q, self.cfg.weno);
        let l1 = MhdRhs2::rhs_with_polys(g, &self.recon, &self.q, &qpolys)?;
        let apolys = self.recon.reconstruct(&self.a, self.cfg.weno);
        let comps: &[usize] = if self.cfg.ct25d_full {
            &[0, 1, 2]
        } else {
            &[2]
        };
        let mut l2 = PotentialRhs2::rhs(
            g,
            &self.recon,
            &self.a,
            &apolys,
            &qpolys,
            &self.q,
            self.cfg.solver,
            dt,
            self.cfg.ct25d_full,
        );
        if self.cfg.limiter.enabled {
            // the limiter works on the unlimited reconstruction throughout
            let araw = if self.cfg.weno {
                self.recon.reconstruct(&self.a, false)
            } else {
                Vec::new()
            };
            let araw = if araw.is_empty() { &apolys } else { &araw };
            let eps =
                resistivity::epsilon_field2(g, &self.recon, araw, comps, dt, &self.cfg.limiter);
            let diff = resistivity::apply_resistivity2(g, &self.recon, araw, &eps, comps);
            for c in 0..l2.len() {
                for &v in comps {
                    l2[c][v] += diff[c][v];
                }
            }
        }

        for j in NG..NG + g.ny {
            for i in NG..NG + g.nx {
                let c = g.cid(i, j);
                for v in 0..8 {
                    self.q[c][v] =
                        alpha * qn[c][v] + (1.0 - alpha) * self.q[c][v] + beta * dt * l1[c][v];
                }
                for v in 0..3 {
                    self.a[c][v] =
                        alpha * an[c][v] + (1.0 - alpha) * self.a[c][v] + beta * dt * l2[c][v];
                }
            }
        }

        if self.cfg.corrector {
            self.bc.fill(g, &mut self.q, &mut self.a);
            let apolys = self.recon.reconstruct(&self.a, self.cfg.weno);
            let b = curl::curl2(g, &self.recon, &apolys, self.cfg.ct25d_full);
            for j in NG..NG + g.ny {
                for i in NG..NG + g.nx {
                    let c = g.cid(i, j);
                    self.q[c][5] = b[c][0];
                    self.q[c][6] = b[c][1];
                    if self.cfg.ct25d_full {
                        self.q[c][7] = b[c][2];
                    }
                }
            }
        }
        Ok(())
    }

    /// One full SSP-RK3 step of size dt.
    pub fn step_dt(&mut self, dt: f64) -> Result<(), MhdError> {
        let qn = self.q.clone();
        let an = self.a.clone();
        for &(alpha, beta) in STAGES.iter() {
            self.ct_stage(&qn, &an, alpha, beta, dt)?;
        }
        self.t += dt;
        self.step += 1;
        Ok(())
    }

    fn diagnostics(&mut self, dt: f64) -> StepDiag {
        let g = self.grid;
        let mut bfield = vec![[0.0f64; 3]; g.nxt * g.nyt];
        let mut min_rho = f64::INFINITY;
        let mut min_p = f64::INFINITY;
        let mut totals = [0.0f64; 5];
        for j in NG..NG + g.ny {
            for i in NG..NG + g.nx {
                let c = g.cid(i, j);
                bfield[c] = [self.q[c][5], self.q[c][6], self.q[c][7]];
                min_rho = min_rho.min(self.q[c][0]);
                if let Some(w) = mhd::primitive(&self.q[c]) {
                    min_p = min_p.min(w[4]);
                } else {
                    min_p = f64::NEG_INFINITY;
                }
                for v in 0..5 {
                    totals[v] += g.cells[c].vol * self.q[c][v];
                }
            }
        }
        // ghost B for the centered divergence stencil
        self.bc.fill(g, &mut self.q, &mut self.a);
        for c in 0..g.nxt * g.nyt {
            bfield[c] = [self.q[c][5], self.q[c][6], self.q[c][7]];
        }
        let (div_max, div_l1) = curl::divergence_diagnostic2(g, &bfield);
        StepDiag {
            step: self.step,
            t: self.t,
            dt,
            div_max,
            div_l1,
            min_rho,
            min_p,
            totals,
        }
    }

    /// Advance to t_final; returns per-step diagnostics.
    pub fn advance(&mut self, t_final: f64) -> Result<Vec<StepDiag>, MhdError> {
        let mut diags = Vec::new();
        while self.t < t_final - 1e-14 && self.step < self.cfg.max_steps {
            let mut dt = self.compute_dt(self.cfg.cfl)?;
            if self.t + dt > t_final {
                dt = t_final - self.t;
            }
            self.step_dt(dt)?;
            diags.push(self.diagnostics(dt));
        }
        Ok(diags)
    }

    /// Advance to t_final with a fixed dt (temporal convergence studies);
    /// the final step is truncated to land on t_final.
    pub fn advance_fixed_dt(&mut self, t_final: f64, dt0: f64) -> Result<(), MhdError> {
        while self.t < t_final - 1e-14 {
            let dt = dt0.min(t_final - self.t);
            self.step_dt(dt)?;
        }
        Ok(())
    }
}

pub struct Sim3<'g> {
    pub grid: &'g Grid3,
    pub recon: Recon3,
    pub cfg: SchemeConfig,
    pub bc: Box<dyn Bc3>,
    pub q: Vec<[f64; 8]>,
    pub a: Vec<[f64; 3]>,
    pub t: f64,
    pub step: usize,
}

impl<'g> Sim3<'g> {
    pub fn new(
        grid: &'g Grid3,
        cfg: SchemeConfig,
        bc: Box<dyn Bc3>,
        q: Vec<[f64; 8]>,
        a: Vec<[f64; 3]>,
    ) -> Self {
        let recon = Recon3::build(grid);
        Sim3 {
            grid,
            recon,
            cfg,
            bc,
            q,
            a,
            t: 0.0,
            step: 0,
        }
    }

    pub fn compute_dt(&self, cfl: f64) -> Result<f64, MhdError> {
        let g = self.grid;
        let mut dt = f64::INFINITY;
        for k in NG..NG + g.nz {
            for j in NG..NG + g.ny {
                for i in NG..NG + g.nx {
                    let c = g.cid(i, j, k);
                    let w = mhd::primitive(&self.q[c]).ok_or(MhdError::Positivity {
                        i: i as isize - NG as isize,
                        j: j as isize - NG as isize,
                        k: Some(k as isize - NG as isize),
                        rho: self.q[c][0],
                        p: f64::NAN,
                    })?;
                    let mut smax = 0.0f64;
                    for fid in [
                        &g.xfaces[g.xfid(i, j, k)],
                        &g.xfaces[g.xfid(i + 1, j, k)],
                        &g.yfaces[g.yfid(i, j, k)],
                        &g.yfaces[g.yfid(i, j + 1, k)],
                        &g.zfaces[g.zfid(i, j, k)],
                        &g.zfaces[g.zfid(i, j, k + 1)],
                    ] {
                        let n = fid.nodes[0].normal;
                        let un = w[1] * n[0] + w[2] * n[1] + w[3] * n[2];
                        let (_, _, _, cf) = mhd::wave_speeds(&w, &n);
                        smax = smax.max(un.abs() + cf);
                    }
                    if smax > 0.0 {
                        dt = dt.min(g.cells[c].ds / smax);
                    }
                }
            }
        }
        let dt = if dt.is_finite() {
            cfl * dt
        } else {
            self.cfg.dt_max
        };
        Ok(dt.min(self.cfg.dt_max))
    }

    pub fn ct_stage(
        &mut self,
        qn: &[[f64; 8]],
        an: &[[f64; 3]],
        alpha: f64,
        beta: f64,
        dt: f64,
    ) -> Result<(), MhdError> {
        let g = self.grid;
        self.bc.fill(g, &mut self.q, &mut self.a);
        let qpolys = self.recon.reconstruct(&self.q, self.cfg.weno);
        let l1 = MhdRhs3::rhs_with_polys(g, &self.recon, &self.q, &qpolys)?;
        let apolys = self.recon.reconstruct(&self.a, self.cfg.weno);
        let comps: &[usize] = &[0, 1, 2];
        let mut l2 = PotentialRhs3::rhs(
            g,
            &self.recon,
            &apolys,
            &qpolys,
            &self.q,
            self.cfg.solver,
            dt,
        );
        if self.cfg.limiter.enabled {
            let araw = if self.cfg.weno {
                self.recon.reconstruct(&self.a, false)
            } else {
                Vec::new()
            };
            let araw = if araw.is_empty() { &apolys } else { &araw };
            let eps =
                resistivity::epsilon_field3(g, &self.recon, araw, comps, dt, &self.cfg.limiter);
            let diff = resistivity::apply_resistivity3(g, &self.recon, araw, &eps, comps);
            for c in 0..l2.len() {
                for v in 0..3 {
                    l2[c][v] += diff[c][v];
                }
            }
        }

        for k in NG..NG + g.nz {
            for j in NG..NG + g.ny {
                for i in NG..NG + g.nx {
                    let c = g.cid(i, j, k);
                    for v in 0..8 {
                        self.q[c][v] = alpha * qn[c][v]
                            + (1.0 - alpha) * self.q[c][v]
                            + beta * dt * l1[c][v];
                    }
                    for v in 0..3 {
                        self.a[c][v] = alpha * an[c][v]
                            + (1.0 - alpha) * self.a[c][v]
                            + beta * dt * l2[c][v];
                    }
                }
            }
        }

        if self.cfg.corrector {
            self.bc.fill(g, &mut self.q, &mut self.a);
            let apolys = self.recon.reconstruct(&self.a, self.cfg.weno);
            let b = curl::curl3(g, &self.recon, &apolys);
            for k in NG..NG + g.nz {
                for j in NG..NG + g.ny {
                    for i in NG..NG + g.nx {
                        let c = g.cid(i, j, k);
                        self.q[c][5] = b[c][0];
                        self.q[c][6] = b[c][1];
                        self.q[c][7] = b[c][2];
                    }
                }
            }
        }
        Ok(())
    }

    pub fn step_dt(&mut self, dt: f64) -> Result<(), MhdError> {
        let qn = self.q.clone();
        let an = self.a.clone();
        for &(alpha, beta) in STAGES.iter() {
            self.ct_stage(&qn, &an, alpha, beta, dt)?;
        }
        self.t += dt;
        self.step += 1;
        Ok(())
    }

    pub fn advance(&mut self, t_final: f64) -> Result<Vec<StepDiag>, MhdError> {
        let mut diags = Vec::new();
        while self.t < t_final - 1e-14 && self.step < self.cfg.max_steps {
            let mut dt = self.compute_dt(self.cfg.cfl)?;
            if self.t + dt > t_final {
                dt = t_final - self.t;
            }
            self.step_dt(dt)?;
            let g = self.grid;
            self.bc.fill(g, &mut self.q, &mut self.a);
            let mut bfield = vec![[0.0f64; 3]; g.nxt * g.nyt * g.nzt];
            let mut min_rho = f64::INFINITY;
            let mut min_p = f64::INFINITY;
            let mut totals = [0.0f64; 5];
            for c in 0..bfield.len() {
                bfield[c] = [self.q[c][5], self.q[c][6], self.q[c][7]];
            }
            for k in NG..NG + g.nz {
                for j in NG..NG + g.ny {
                    for i in NG..NG + g.nx {
                        let c = g.cid(i, j, k);
                        min_rho = min_rho.min(self.q[c][0]);
                        if let Some(w) = mhd::primitive(&self.q[c]) {
                            min_p = min_p.min(w[4]);
                        } else {
                            min_p = f64::NEG_INFINITY;
                        }
                        for v in 0..5 {
                            totals[v] += g.cells[c].vol * self.q[c][v];
                        }
                    }
                }
            }
            let (div_max, div_l1) = curl::divergence_diagnostic3(g, &bfield);
            diags.push(StepDiag {
                step: self.step,
                t: self.t,
                dt,
                div_max,
                div_l1,
                min_rho,
                min_p,
                totals,
            });
        }
        Ok(diags)
    }

    pub fn advance_fixed_dt(&mut self, t_final: f64, dt0: f64) -> Result<(), MhdError> {
        while self.t < t_final - 1e-14 {
            let dt = dt0.min(t_final - self.t);
            self.step_dt(dt)?;
        }
        Ok(())
    }
}
