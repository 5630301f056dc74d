//! 1D scalar advection driver: the potential transport machinery reduced to
//! one dimension, used to exercise the derivative limiter on the classic
//! piecewise-linear hat profile.
//!
//! q_t + u q_x = eps(x) q_xx on [0,1], periodic, u = 1. The spatial operator
//! is the fluctuation form (interface Rusanov splitting plus the cell-volume
//! transport term), which for constant u > 0 is algebraically identical to
//! upwind flux differencing on the reconstructed traces.

use crate::geometry::{QuadratureRule, NG};
use crate::potential::rusanov_fluctuations_scalar;
use crate::reconstruction::Recon1;
use crate::resistivity::{apply_resistivity1, epsilon_field1, EtaMode, LimiterParams};
use crate::timestepper::STAGES;

/// The hat profile: continuous, piecewise linear, kinks at 0.25/0.4/0.6/0.75.
pub fn hat(x: f64) -> f64 {
    let x = x.rem_euclid(1.0);
    if x <= 0.25 {
        0.0
    } else if x <= 0.4 {
        (x - 0.25) / 0.075
    } else if x <= 0.6 {
        2.0
    } else if x <= 0.75 {
        (0.75 - x) / 0.075
    } else {
        0.0
    }
}

pub struct Advect1d {
    pub n: usize,
    pub dx: f64,
    pub u: f64,
    pub recon: Recon1,
    /// Extended cell averages, `n + 2 NG` entries.
    pub q: Vec<[f64; 1]>,
    pub t: f64,
    pub weno: bool,
    pub limiter: LimiterParams,
}

impl Advect1d {
    /// Hat initial data on `n` cells, exact 5-point Gauss cell averages.
    pub fn new(n: usize) -> Advect1d {
        let dx = 1.0 / n as f64;
        let nt = n + 2 * NG;
        let quad = QuadratureRule::gauss(5);
        let mut q = vec![[0.0]; nt];
        for (i, qi) in q.iter_mut().enumerate() {
            let x0 = (i as f64 - NG as f64) * dx;
            let mut acc = 0.0;
            for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
                acc += w * hat(x0 + s * dx);
            }
            qi[0] = acc;
        }
        let mut limiter = LimiterParams::default();
        limiter.eta_mode = EtaMode::Advection;
        Advect1d {
            n,
            dx,
            u: 1.0,
            recon: Recon1::new(nt, dx),
            q,
            t: 0.0,
            weno: true,
            limiter,
        }
    }

    fn fill(&mut self) {
        let n = self.n;
        for g in 0..NG {
            self.q[g] = self.q[g + n];
            self.q[NG + n + g] = self.q[NG + g];
        }
    }

    /// Semi-discrete right-hand side including the resistive term.
    pub fn rhs(&self, dt: f64) -> Vec<f64> {
        let nt = self.n + 2 * NG;
        let polys = self.recon.reconstruct(&self.q, self.weno);
        let mut rhs = vec![0.0; nt];
        let alpha = self.u.abs();
        for i in NG - 1..NG + self.n {
            let qm = self.recon.eval1(&polys[i][0], 0.5);
            let qp = self.recon.eval1(&polys[i + 1][0], -0.5);
            let (fm, fp) = rusanov_fluctuations_scalar(self.u, alpha, qp - qm);
            rhs[i] -= fm / self.dx;
            rhs[i + 1] -= fp / self.dx;
        }
        for (i, r) in rhs.iter_mut().enumerate().take(NG + self.n).skip(NG) {
            let c = &polys[i][0];
            *r -= self.u * (self.recon.eval1(c, 0.5) - self.recon.eval1(c, -0.5)) / self.dx;
        }
        if self.limiter.enabled {
            let eps = epsilon_field1(&self.recon, &self.q, dt, &self.limiter);
            let diff = apply_resistivity1(&self.recon, &self.q, &eps);
            for i in NG..NG + self.n {
                rhs[i] += diff[i];
            }
        }
        rhs
    }

    pub fn step_dt(&mut self, dt: f64) {
        let qn = self.q.clone();
        for &(alpha, beta) in STAGES.iter() {
            self.fill();
            let rhs = self.rhs(dt);
            for i in NG..NG + self.n {
                self.q[i][0] =
                    alpha * qn[i][0] + (1.0 - alpha) * self.q[i][0] + beta * dt * rhs[i];
            }
        }
        self.t += dt;
    }

    pub fn advance(&mut self, t_final: f64, cfl: f64) {
        let dt0 = cfl * self.dx / self.u.abs();
        while self.t < t_final - 1e-14 {
            let dt = dt0.min(t_final - self.t);
            self.step_dt(dt);
        }
    }

    /// Interior cell centers and averages.
    pub fn solution(&self) -> (Vec<f64>, Vec<f64>) {
        let xs = (0..self.n).map(|i| (i as f64 + 0.5) * self.dx).collect();
        let vs = self.q[NG..NG + self.n].iter().map(|q| q[0]).collect();
        (xs, vs)
    }

    /// Third-order cell averages of q_x from the trace-average values,
    /// (1/dx) [ (q- + q+)/2 |_{i+1/2} - (q- + q+)/2 |_{i-1/2} ].
    pub fn derivative_averages(&mut self) -> Vec<f64> {
        self.fill();
        let polys = self.recon.reconstruct(&self.q, self.weno);
        let trace = |i: usize| -> f64 {
            // face between cells i and i+1
            0.5 * (self.recon.eval1(&polys[i][0], 0.5)
                + self.recon.eval1(&polys[i + 1][0], -0.5))
        };
        (NG..NG + self.n)
            .map(|i| (trace(i) - trace(i - 1)) / self.dx)
            .collect()
    }
}
