//! CWENO reconstruction: exactness on polynomials, mean preservation,
//! limiter behavior on smooth and discontinuous data, and order of the
//! interface traces.

use ctmhd::geometry::{Grid2, Grid3, GridKind, GridSpec2, GridSpec3, QuadratureRule, NG};
use ctmhd::harness::{cell_averages2, cell_averages3};
use ctmhd::reconstruction::{Recon1, Recon2, Recon3};
use proptest::prelude::*;
use std::f64::consts::TAU;

fn grid2(n: usize, kind: GridKind) -> Grid2 {
    Grid2::build(&GridSpec2::new(n, n, [0.0, 0.0], [1.0, 1.0], kind)).unwrap()
}

#[test]
fn constant_identity() {
    let grid = grid2(8, GridKind::Cartesian);
    let recon = Recon2::build(&grid);
    let q = vec![[7.5]; grid.nxt * grid.nyt];
    for weno in [false, true] {
        let polys = recon.reconstruct(&q, weno);
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j);
                let cen = grid.cells[c].centroid;
                for p in [cen, [cen[0] + 0.03, cen[1] - 0.04]] {
                    let v = recon.eval1(c, &polys[c][0], p);
                    assert!((v - 7.5).abs() < 1e-13, "weno={weno}: {v}");
                }
            }
        }
    }
}

/// The central fit reproduces q = x^2 - y exactly from exact cell averages,
/// on Cartesian and on mapped grids.
#[test]
fn quadratic_exactness() {
    for kind in [
        GridKind::Cartesian,
        GridKind::Colella {
            beta: 0.1,
            l: 1.0,
            m: 1.0,
        },
    ] {
        let grid = grid2(8, kind);
        let recon = Recon2::build(&grid);
        let f = |p: [f64; 2]| p[0] * p[0] - p[1];
        let q = cell_averages2::<1>(&grid, &|p| [f(p)]);
        let polys = recon.reconstruct(&q, false);
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j);
                let cen = grid.cells[c].centroid;
                for p in [
                    cen,
                    grid.cells[c].point(0.1, 0.9),
                    grid.cells[c].point(1.0, 0.0),
                ] {
                    let v = recon.eval1(c, &polys[c][0], p);
                    assert!(
                        (v - f(p)).abs() < 1e-10,
                        "cell ({i},{j}) at {p:?}: {v} vs {}",
                        f(p)
                    );
                }
                // derivatives of the fit match the exact ones
                let g = recon.grad1(c, &polys[c][0], cen);
                assert!((g[0] - 2.0 * cen[0]).abs() < 1e-9);
                assert!((g[1] + 1.0).abs() < 1e-9);
                let sec = recon.second1(c, &polys[c][0]);
                assert!((sec[0] - 2.0).abs() < 1e-8); // q_xx
                assert!(sec[1].abs() < 1e-8); // q_xy
                assert!(sec[2].abs() < 1e-8); // q_yy
            }
        }
    }
}

/// The limited polynomial keeps the cell mean: integrating it over its own
/// cell returns the input average.
#[test]
fn mean_preservation() {
    use rand::{Rng, SeedableRng};
    let grid = grid2(
        8,
        GridKind::Colella {
            beta: 0.08,
            l: 1.0,
            m: 1.0,
        },
    );
    let recon = Recon2::build(&grid);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let q: Vec<[f64; 1]> = (0..grid.nxt * grid.nyt)
        .map(|_| [rng.gen_range(-10.0..10.0)])
        .collect();
    let quad = QuadratureRule::gauss(3);
    for weno in [false, true] {
        let polys = recon.reconstruct(&q, weno);
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j);
                let cell = &grid.cells[c];
                let mut acc = 0.0;
                for (a, &xi) in quad.nodes.iter().enumerate() {
                    for (b, &eta) in quad.nodes.iter().enumerate() {
                        let w = quad.weights[a] * quad.weights[b] * cell.jac(xi, eta);
                        acc += w * recon.eval1(c, &polys[c][0], cell.point(xi, eta));
                    }
                }
                let avg = acc / cell.vol;
                assert!(
                    (avg - q[c][0]).abs() < 1e-12,
                    "weno={weno} cell ({i},{j}): {avg} vs {}",
                    q[c][0]
                );
            }
        }
    }
}

/// On smooth data the limited reconstruction stays within a relative 1e-3
/// of the unlimited central fit.
#[test]
fn smooth_limited_matches_central() {
    let gap = |n: usize| -> f64 {
        let grid = grid2(n, GridKind::Cartesian);
        let recon = Recon2::build(&grid);
        let q = cell_averages2::<1>(&grid, &|p| [(TAU * p[0]).sin() * (TAU * p[1]).cos()]);
        let raw = recon.reconstruct(&q, false);
        let lim = recon.reconstruct(&q, true);
        let mut worst = 0.0f64;
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j);
                for (xi, eta) in [(0.0, 0.5), (1.0, 0.5), (0.5, 0.0), (0.5, 1.0), (0.5, 0.5)] {
                    let p = grid.cells[c].point(xi, eta);
                    let d = recon.eval1(c, &raw[c][0], p) - recon.eval1(c, &lim[c][0], p);
                    worst = worst.max(d.abs());
                }
            }
        }
        worst
    };
    let (g64, g128) = (gap(64), gap(128));
    assert!(g128 < 1e-3, "limited deviates by {g128}");
    // the gap itself vanishes under refinement (no O(1) limiting on smooth data)
    assert!(g64 / g128 > 3.0, "gap does not shrink: {g64} -> {g128}");
}

/// Traces of a 0/1 step stay within [-0.01, 1.01] under the limiter.
#[test]
fn step_traces_bounded() {
    let grid = grid2(20, GridKind::Cartesian);
    let recon = Recon2::build(&grid);
    let q = cell_averages2::<1>(&grid, &|p| [if p[0] < 0.5 { 0.0 } else { 1.0 }]);
    let polys = recon.reconstruct(&q, true);
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            for (xi, eta) in [(0.0, 0.5), (1.0, 0.5), (0.5, 0.0), (0.5, 1.0)] {
                let p = grid.cells[c].point(xi, eta);
                let v = recon.eval1(c, &polys[c][0], p);
                assert!(
                    (-0.01..=1.01).contains(&v),
                    "trace {v} out of bounds at cell ({i},{j})"
                );
            }
        }
    }
}

/// 1D: exact quadratic reproduction, including derivative and curvature.
#[test]
fn line_quadratic_exactness() {
    let n = 20;
    let dx = 1.0 / n as f64;
    let recon = Recon1::new(n + 2 * NG, dx);
    // averages of q = x^2 over [x_l, x_r]
    let q: Vec<[f64; 1]> = (0..n + 2 * NG)
        .map(|i| {
            let xl = (i as f64 - NG as f64) * dx;
            let xr = xl + dx;
            [(xr.powi(3) - xl.powi(3)) / (3.0 * dx)]
        })
        .collect();
    let polys = recon.reconstruct(&q, false);
    for i in NG..NG + n {
        let xc = (i as f64 - NG as f64 + 0.5) * dx;
        let (xl, xr) = (xc - 0.5 * dx, xc + 0.5 * dx);
        assert!((recon.eval1(&polys[i][0], -0.5) - xl * xl).abs() < 1e-12);
        assert!((recon.eval1(&polys[i][0], 0.5) - xr * xr).abs() < 1e-12);
        assert!((recon.deriv1(&polys[i][0], 0.0) - 2.0 * xc).abs() < 1e-11);
        assert!((recon.second1(&polys[i][0]) - 2.0).abs() < 1e-10);
    }
}

/// Interface traces of a smooth profile converge at third order: halving h
/// cuts the worst trace error by about 8.
#[test]
fn trace_third_order() {
    let trace_err = |n: usize| -> f64 {
        let dx = 1.0 / n as f64;
        let recon = Recon1::new(n + 2 * NG, dx);
        // exact averages of sin(2 pi x)
        let q: Vec<[f64; 1]> = (0..n + 2 * NG)
            .map(|i| {
                let xl = (i as f64 - NG as f64) * dx;
                [((TAU * xl).cos() - (TAU * (xl + dx)).cos()) / (TAU * dx)]
            })
            .collect();
        let polys = recon.reconstruct(&q, false);
        let mut worst = 0.0f64;
        for i in NG..NG + n {
            let xr = (i as f64 - NG as f64 + 1.0) * dx;
            worst = worst.max((recon.eval1(&polys[i][0], 0.5) - (TAU * xr).sin()).abs());
        }
        worst
    };
    let (e1, e2) = (trace_err(32), trace_err(64));
    let ratio = e1 / e2;
    assert!(
        (6.0..=10.0).contains(&ratio),
        "trace error ratio {ratio} (errors {e1}, {e2})"
    );
}

/// 3D: quadratic exactness and the Laplacian oracle.
#[test]
fn recon3_quadratic_exactness() {
    let grid = Grid3::build(&GridSpec3::new(
        6,
        6,
        6,
        [0.0; 3],
        [1.0; 3],
        GridKind::Cartesian,
    ))
    .unwrap();
    let recon = Recon3::build(&grid);
    let f = |p: [f64; 3]| p[0] * p[0] + 2.0 * p[1] * p[1] + 3.0 * p[2] * p[2];
    let q = cell_averages3::<1>(&grid, &|p| [f(p)]);
    let polys = recon.reconstruct(&q, false);
    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j, k);
                let p = grid.cells[c].point(0.25, 0.5, 0.75);
                let v = recon.eval1(c, &polys[c][0], p);
                assert!((v - f(p)).abs() < 1e-10, "cell ({i},{j},{k}): {v}");
                let g = recon.grad1(c, &polys[c][0], p);
                assert!((g[0] - 2.0 * p[0]).abs() < 1e-9);
                assert!((g[1] - 4.0 * p[1]).abs() < 1e-9);
                assert!((g[2] - 6.0 * p[2]).abs() < 1e-9);
                let lap = recon.laplacian1(c, &polys[c][0]);
                assert!((lap - 12.0).abs() < 1e-8, "laplacian {lap}");
            }
        }
    }
}

proptest! {
    /// The 1D limited reconstruction preserves the cell mean for arbitrary
    /// bounded data (the polynomial basis is mean-zero beyond the constant).
    #[test]
    fn line_mean_preserved(vals in proptest::collection::vec(-10.0f64..10.0, 12)) {
        let n = vals.len() - 2 * NG;
        let dx = 1.0 / n as f64;
        let recon = Recon1::new(vals.len(), dx);
        let q: Vec<[f64; 1]> = vals.iter().map(|&v| [v]).collect();
        let polys = recon.reconstruct(&q, true);
        // 3-point Gauss integrates the quadratic exactly
        let quad = QuadratureRule::gauss(3);
        for i in NG..NG + n {
            let mut acc = 0.0;
            for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
                acc += w * recon.eval1(&polys[i][0], s - 0.5);
            }
            prop_assert!((acc - q[i][0]).abs() < 1e-12);
        }
    }
}
