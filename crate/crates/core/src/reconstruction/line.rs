//! 1D reconstruction on a uniform line of cells.
//!
//! Basis {1, xi, xi^2 - 1/12} with xi = (x - xc)/dx; the central candidate
//! is the exact 3-cell quadratic, the one-sided candidates are the exact
//! 2-cell linears.

use super::{weno_weights, CENTRAL_WEIGHT};

pub struct Recon1 {
    /// Extended cell count (including ghosts).
    pub nt: usize,
    pub dx: f64,
}

impl Recon1 {
    pub fn new(nt: usize, dx: f64) -> Recon1 {
        Recon1 { nt, dx }
    }

    /// Coefficients [avg, a1, a2] per variable per cell; cells 0 and nt-1
    /// get constant polynomials.
    pub fn reconstruct<const N: usize>(
        &self,
        field: &[[f64; N]],
        limit: bool,
    ) -> Vec<[[f64; 3]; N]> {
        let mut out = vec![[[0.0; 3]; N]; self.nt];
        let tot = CENTRAL_WEIGHT + 2.0;
        let lam = [CENTRAL_WEIGHT / tot, 1.0 / tot, 1.0 / tot];
        for i in 0..self.nt {
            for v in 0..N {
                out[i][v][0] = field[i][v];
            }
            if i == 0 || i == self.nt - 1 {
                continue;
            }
            for v in 0..N {
                let dm = field[i][v] - field[i - 1][v];
                let dp = field[i + 1][v] - field[i][v];
                let full = [(dp + dm) / 2.0, (dp - dm) / 2.0];
                let c = if !limit {
                    full
                } else {
                    // candidates: central (by subtraction), left, right
                    let cl = [dm, 0.0];
                    let cr = [dp, 0.0];
                    let c0 = [
                        (full[0] - lam[1] * cl[0] - lam[2] * cr[0]) / lam[0],
                        full[1] / lam[0],
                    ];
                    let cand = [c0, cl, cr];
                    let oi: Vec<f64> = cand
                        .iter()
                        .map(|a| a[0] * a[0] + a[1] * a[1])
                        .collect();
                    let mut w = [0.0; 3];
                    // O(h^3) floor: one power of h below the generic smooth
                    // indicator so the weights still react to the small
                    // traveling wiggles the 1D resistivity study relies on.
                    weno_weights(&lam, &oi, self.dx * (self.dx * field[i][v]).powi(2), &mut w);
                    [
                        w[0] * c0[0] + w[1] * cl[0] + w[2] * cr[0],
                        w[0] * c0[1] + w[1] * cl[1] + w[2] * cr[1],
                    ]
                };
                out[i][v][1] = c[0];
                out[i][v][2] = c[1];
            }
        }
        out
    }

    /// Evaluate at local coordinate xi = (x - xc)/dx.
    #[inline]
    pub fn eval1(&self, c: &[f64; 3], xi: f64) -> f64 {
        c[0] + c[1] * xi + c[2] * (xi * xi - 1.0 / 12.0)
    }

    #[inline]
    pub fn deriv1(&self, c: &[f64; 3], xi: f64) -> f64 {
        (c[1] + 2.0 * c[2] * xi) / self.dx
    }

    #[inline]
    pub fn second1(&self, c: &[f64; 3]) -> f64 {
        2.0 * c[2] / (self.dx * self.dx)
    }
}
