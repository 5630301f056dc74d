//! Mean-preserving limited piecewise-polynomial reconstruction.
//!
//! Each cell carries a degree-2 polynomial per variable, written in a
//! mean-zero scaled basis about the cell centroid:
//!
//! 2D: {1, xi, eta, xi^2 - m20, xi*eta - m11, eta^2 - m02},
//! xi = (x - xc)/h, h = sqrt(|C|), m_ab the cell averages of xi^a eta^b.
//!
//! The mean-zero property makes conservation automatic: the coefficient of
//! the constant basis function *is* the cell average, untouched by fitting
//! or limiting.
//!
//! The unlimited fit is a weighted least-squares fit of the 5 (2D) / 9 (3D)
//! non-constant coefficients to the averages of all face/edge/corner
//! neighbors, weighted by inverse centroid distance. Limiting is of central
//! WENO type: one-sided degree-1 candidates per quadrant/octant plus a
//! central candidate defined so that the linearly weighted combination
//! reproduces the full fit; nonlinear weights come from Jiang-Shu style
//! oscillation indicators on the scaled coefficients.

mod line;
mod recon2;
mod recon3;

pub use line::Recon1;
pub use recon2::{Recon2, NBR8};
pub use recon3::{nbr26, Recon3};

/// Linear weight of the central candidate (one-sided candidates weigh 1).
pub const CENTRAL_WEIGHT: f64 = 100.0;

/// Nonlinear WENO weights from oscillation indicators.
///
/// `lam` are the linear weights, `oi` the indicators, `floor` the absolute
/// part of the epsilon regularization, supplied by the caller in units of
/// (h * data scale)^2. In the scaled basis a smooth field of magnitude M
/// has indicators of size O((h M)^2) generically but only O(h^4) at
/// critical points, where indicator *ratios* stay O(1) and a too-small
/// epsilon costs an order of accuracy; a floor comparable to the generic
/// smooth indicator size keeps the weights within O(h) of the linear ones
/// on smooth data, while a discontinuity of relative size O(1) produces an
/// O(M^2) indicator that dwarfs it.
pub(crate) fn weno_weights(lam: &[f64], oi: &[f64], floor: f64, out: &mut [f64]) {
    let tot: f64 = oi.iter().sum();
    let eps = 1e-40 + 1e-12 * tot + floor;
    let mut sum = 0.0;
    for k in 0..lam.len() {
        let a = lam[k] / ((eps + oi[k]) * (eps + oi[k]));
        out[k] = a;
        sum += a;
    }
    for w in out.iter_mut() {
        *w /= sum;
    }
}
