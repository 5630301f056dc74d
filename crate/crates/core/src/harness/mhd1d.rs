//! 1D MHD driver on a uniform line: the same reconstruction + f-wave flux +
//! SSP-RK3 machinery reduced to one dimension. Used to compute fine-grid
//! reference profiles for the planar Riemann problem (B1 is exactly
//! preserved in 1D since its x-flux vanishes identically).

use super::problems::shocktube_point;
use crate::geometry::{QuadratureRule, NG};
use crate::mhd::{interface_flux, primitive, wave_speeds, MhdError};
use crate::reconstruction::Recon1;
use crate::timestepper::STAGES;

pub struct Mhd1d {
    pub n: usize,
    pub dx: f64,
    pub x0: f64,
    pub recon: Recon1,
    pub q: Vec<[f64; 8]>,
    pub t: f64,
    pub weno: bool,
}

impl Mhd1d {
    /// Riemann initial data of the planar problem on [-0.7, 0.7].
    pub fn shocktube(n: usize) -> Mhd1d {
        let (x0, x1) = (-0.7, 0.7);
        let dx = (x1 - x0) / n as f64;
        let nt = n + 2 * NG;
        let quad = QuadratureRule::gauss(5);
        let mut q = vec![[0.0; 8]; nt];
        for (i, qi) in q.iter_mut().enumerate() {
            let xl = x0 + (i as f64 - NG as f64) * dx;
            for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
                let (qc, _) = shocktube_point([xl + s * dx, 0.0]);
                for v in 0..8 {
                    qi[v] += w * qc[v];
                }
            }
        }
        Mhd1d {
            n,
            dx,
            x0,
            recon: Recon1::new(nt, dx),
            q,
            t: 0.0,
            weno: true,
        }
    }

    fn fill(&mut self) {
        for g in 0..NG {
            self.q[g] = self.q[NG];
            self.q[NG + self.n + g] = self.q[NG + self.n - 1];
        }
    }

    pub fn compute_dt(&self, cfl: f64) -> Result<f64, MhdError> {
        let mut smax = 0.0f64;
        for i in NG..NG + self.n {
            let w = primitive(&self.q[i]).ok_or(MhdError::Positivity {
                i: i as isize - NG as isize,
                j: 0,
                k: None,
                rho: self.q[i][0],
                p: f64::NAN,
            })?;
            let (_, _, _, cf) = wave_speeds(&w, &[1.0, 0.0, 0.0]);
            smax = smax.max(w[1].abs() + cf);
        }
        Ok(cfl * self.dx / smax)
    }

    fn rhs(&self) -> Result<Vec<[f64; 8]>, MhdError> {
        let nt = self.n + 2 * NG;
        let polys = self.recon.reconstruct(&self.q, self.weno);
        let trace = |i: usize, xi: f64| -> Result<[f64; 8], MhdError> {
            let mut qv = [0.0; 8];
            for v in 0..8 {
                qv[v] = self.recon.eval1(&polys[i][v], xi);
            }
            if let Some(w) = primitive(&qv) {
                return Ok(w);
            }
            primitive(&self.q[i]).ok_or(MhdError::Positivity {
                i: i as isize - NG as isize,
                j: 0,
                k: None,
                rho: self.q[i][0],
                p: f64::NAN,
            })
        };
        let mut flux = vec![[0.0; 8]; nt + 1];
        for i in NG - 1..NG + self.n {
            let wm = trace(i, 0.5)?;
            let wp = trace(i + 1, -0.5)?;
            flux[i + 1] = interface_flux(&wm, &wp, &[1.0, 0.0, 0.0]);
        }
        let mut rhs = vec![[0.0; 8]; nt];
        for i in NG..NG + self.n {
            for v in 0..8 {
                rhs[i][v] = -(flux[i + 1][v] - flux[i][v]) / self.dx;
            }
        }
        Ok(rhs)
    }

    pub fn step_dt(&mut self, dt: f64) -> Result<(), MhdError> {
        let qn = self.q.clone();
        for &(alpha, beta) in STAGES.iter() {
            self.fill();
            let rhs = self.rhs()?;
            for i in NG..NG + self.n {
                for v in 0..8 {
                    self.q[i][v] =
                        alpha * qn[i][v] + (1.0 - alpha) * self.q[i][v] + beta * dt * rhs[i][v];
                }
            }
        }
        self.t += dt;
        Ok(())
    }

    pub fn advance(&mut self, t_final: f64, cfl: f64) -> Result<(), MhdError> {
        while self.t < t_final - 1e-14 {
            let dt = self.compute_dt(cfl)?.min(t_final - self.t);
            self.step_dt(dt)?;
        }
        Ok(())
    }

    /// Interior centers plus (rho, p, B1, B2, B3) profiles.
    pub fn profiles(&self) -> (Vec<f64>, Vec<[f64; 5]>) {
        let mut xs = Vec::with_capacity(self.n);
        let mut vs = Vec::with_capacity(self.n);
        for i in NG..NG + self.n {
            xs.push(self.x0 + (i as f64 - NG as f64 + 0.5) * self.dx);
            let q = &self.q[i];
            let w = primitive(q).unwrap_or([q[0], 0.0, 0.0, 0.0, f64::NAN, q[5], q[6], q[7]]);
            vs.push([q[0], w[4], q[5], q[6], q[7]]);
        }
        (xs, vs)
    }

    /// Piecewise-constant sample of column `col` of `profiles` at physical x.
    pub fn sample(&self, col: usize, x: f64) -> f64 {
        let i = (((x - self.x0) / self.dx).floor() as isize)
            .clamp(0, self.n as isize - 1) as usize;
        let q = &self.q[NG + i];
        match col {
            0 => q[0],
            1 => primitive(q).map(|w| w[4]).unwrap_or(f64::NAN),
            2 => q[5],
            3 => q[6],
            _ => q[7],
        }
    }
}
