//! Third-order unstaggered constrained-transport (CT) finite volume solver
//! for the ideal MHD equations on Cartesian and logically rectangular
//! mapped grids.
//!
//! The scheme is a method of lines: a third-order least-squares WENO
//! reconstruction in space, SSP-RK3 in time, with a per-stage
//! predictor/corrector update of the magnetic field. The magnetic vector
//! potential is evolved with a path-conservative non-conservative finite
//! volume method (the potential equation under the Weyl gauge is only
//! weakly hyperbolic), and the corrected magnetic field is obtained from
//! a discrete curl built from divergence-theorem surface integrals.

pub mod curl;
pub mod geometry;
pub mod harness;
pub mod mhd;
pub mod potential;
pub mod reconstruction;
pub mod resistivity;
pub mod timestepper;

pub use geometry::{Grid2, Grid3, GridKind, GridSpec2, GridSpec3};
pub use mhd::{ConservedState, PrimitiveState, GAMMA};
