//! Python bindings: thin wrappers around the problem setups, the SSP-RK3
//! constrained-transport driver, and the error norms.

use ctmhd::harness::advect1d::Advect1d;
use ctmhd::harness::problems::setup2_with_kind;
use ctmhd::harness::{apply_corrector2, eoc as eoc_rs, l1_errors2, HarnessError};
use ctmhd::timestepper::{SchemeConfig, Sim2};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn harness_err(e: HarnessError) -> PyErr {
    match e {
        HarnessError::UnknownProblem(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// Run a traveling-wave problem to its final time and return the 11
/// volume-normalized L1 errors (8 conserved variables, then A1..A3).
#[pyfunction]
fn wave_errors(name: &str, nx: usize, ny: usize) -> PyResult<Vec<f64>> {
    let prob = setup2_with_kind(name, nx, ny, None).map_err(harness_err)?;
    let exact = prob
        .exact
        .ok_or_else(|| PyValueError::new_err(format!("`{name}` has no exact solution")))?;
    let grid = prob.grid;
    let cfg = SchemeConfig {
        cfl: prob.cfl,
        ct25d_full: prob.ct25d_full,
        ..SchemeConfig::default()
    };
    let mut sim = Sim2::new(&grid, cfg, prob.bc, prob.q, prob.a);
    apply_corrector2(&mut sim);
    sim.advance(prob.t_final)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let (qe, ae) = exact(&grid, prob.t_final);
    let eq = l1_errors2::<8>(&grid, &sim.q, &qe);
    let ea = l1_errors2::<3>(&grid, &sim.a, &ae);
    Ok(eq.iter().chain(ea.iter()).copied().collect())
}

/// Run any 2D problem and return per-step diagnostics as
/// (steps, final_t, min_rho, min_p, final_div_max).
#[pyfunction]
#[pyo3(signature = (name, nx, ny, t_final=None, corrector=true))]
fn run2(
    name: &str,
    nx: usize,
    ny: usize,
    t_final: Option<f64>,
    corrector: bool,
) -> PyResult<(usize, f64, f64, f64, f64)> {
    let prob = setup2_with_kind(name, nx, ny, None).map_err(harness_err)?;
    let grid = prob.grid;
    let cfg = SchemeConfig {
        cfl: prob.cfl,
        ct25d_full: prob.ct25d_full,
        corrector,
        ..SchemeConfig::default()
    };
    let mut sim = Sim2::new(&grid, cfg, prob.bc, prob.q, prob.a);
    apply_corrector2(&mut sim);
    let diags = sim
        .advance(t_final.unwrap_or(prob.t_final))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let min_rho = diags.iter().map(|d| d.min_rho).fold(f64::INFINITY, f64::min);
    let min_p = diags.iter().map(|d| d.min_p).fold(f64::INFINITY, f64::min);
    let div = diags.last().map(|d| d.div_max).unwrap_or(0.0);
    Ok((sim.step, sim.t, min_rho, min_p, div))
}

/// Advect the 1D hat profile; returns (x, q, q_x) after `t_final`.
#[pyfunction]
#[pyo3(signature = (n=200, t_final=1.0, cfl=0.7, limiter=true))]
fn advect_hat(
    n: usize,
    t_final: f64,
    cfl: f64,
    limiter: bool,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    if n < 10 {
        return Err(PyValueError::new_err("need at least 10 cells"));
    }
    let mut drv = Advect1d::new(n);
    drv.limiter.enabled = limiter;
    drv.advance(t_final, cfl);
    let (xs, qs) = drv.solution();
    let dqs = drv.derivative_averages();
    Ok((xs, qs, dqs))
}

/// Experimental orders of convergence of a 2:1 refinement error sequence.
#[pyfunction]
fn eoc(errors: Vec<f64>) -> PyResult<Vec<f64>> {
    if errors.len() < 2 {
        return Err(PyValueError::new_err("need at least two error levels"));
    }
    Ok(eoc_rs(&errors))
}

#[pymodule]
fn _native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(wave_errors, m)?)?;
    m.add_function(wrap_pyfunction!(run2, m)?)?;
    m.add_function(wrap_pyfunction!(advect_hat, m)?)?;
    m.add_function(wrap_pyfunction!(eoc, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
