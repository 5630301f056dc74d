//! Discrete curl operator, divergence diagnostic, and the global magnetic
//! field budget.

use ctmhd::curl::{curl2, curl3, divergence_diagnostic2, total_field_budget2};
use ctmhd::geometry::{Grid2, Grid3, GridKind, GridSpec2, GridSpec3, NG};
use ctmhd::harness::{cell_averages2, cell_averages3, setup2};
use ctmhd::reconstruction::{Recon2, Recon3};
use std::f64::consts::TAU;

#[test]
fn constant_potential_zero_curl() {
    let grid =
        Grid2::build(&GridSpec2::new(8, 8, [0.0, 0.0], [1.0, 1.0], GridKind::Cartesian))
            .unwrap();
    let recon = Recon2::build(&grid);
    let a = vec![[0.3, -0.7, 1.1]; grid.nxt * grid.nyt];
    let apolys = recon.reconstruct(&a, false);
    let b = curl2(&grid, &recon, &apolys, true);
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            for v in 0..3 {
                assert!(b[c][v].abs() < 1e-14);
            }
        }
    }
}

/// curl of A = (0,0,x) is B = (0,-1,0), exactly, on Cartesian and mapped
/// grids (the face quadrature integrates the linear trace exactly).
#[test]
fn linear_potential_exact_curl() {
    for kind in [
        GridKind::Cartesian,
        GridKind::Colella {
            beta: 0.1,
            l: 1.0,
            m: 1.0,
        },
    ] {
        let grid = Grid2::build(&GridSpec2::new(8, 8, [0.0, 0.0], [1.0, 1.0], kind)).unwrap();
        let recon = Recon2::build(&grid);
        let a = cell_averages2::<3>(&grid, &|p| [0.0, 0.0, p[0]]);
        let apolys = recon.reconstruct(&a, false);
        let b = curl2(&grid, &recon, &apolys, true);
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j);
                assert!(b[c][0].abs() < 1e-13, "B1 = {}", b[c][0]);
                assert!((b[c][1] + 1.0).abs() < 1e-13, "B2 = {}", b[c][1]);
                assert!(b[c][2].abs() < 1e-13, "B3 = {}", b[c][2]);
            }
        }
        // general linear A: B = (g32 - g23, g13 - g31, g21 - g12)
        let g = [[0.3, -0.2, 0.5], [0.7, 0.1, -0.4], [-0.6, 0.9, 0.2]];
        let a = cell_averages2::<3>(&grid, &|p| {
            [
                g[0][0] * p[0] + g[0][1] * p[1],
                g[1][0] * p[0] + g[1][1] * p[1],
                g[2][0] * p[0] + g[2][1] * p[1],
            ]
        });
        let apolys = recon.reconstruct(&a, false);
        let b = curl2(&grid, &recon, &apolys, true);
        let expect = [g[2][1], -g[2][0], g[1][0] - g[0][1]];
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j);
                for v in 0..3 {
                    assert!(
                        (b[c][v] - expect[v]).abs() < 1e-13,
                        "var {v}: {} vs {}",
                        b[c][v],
                        expect[v]
                    );
                }
            }
        }
    }
}

/// Third-order convergence of the curl averages on a smooth potential.
#[test]
fn smooth_curl_third_order() {
    let curl_err = |n: usize| -> f64 {
        let grid =
            Grid2::build(&GridSpec2::new(n, n, [0.0, 0.0], [1.0, 1.0], GridKind::Cartesian))
                .unwrap();
        let recon = Recon2::build(&grid);
        let f = |p: [f64; 2]| (TAU * p[0]).sin() * (TAU * p[1]).sin() / TAU;
        let a = cell_averages2::<3>(&grid, &|p| [0.0, 0.0, f(p)]);
        let apolys = recon.reconstruct(&a, false);
        let b = curl2(&grid, &recon, &apolys, true);
        let exact = cell_averages2::<3>(&grid, &|p| {
            [
                (TAU * p[0]).sin() * (TAU * p[1]).cos(),
                -(TAU * p[0]).cos() * (TAU * p[1]).sin(),
                0.0,
            ]
        });
        let mut err = 0.0;
        let mut vol = 0.0;
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j);
                let v = grid.cells[c].vol;
                vol += v;
                err += v * ((b[c][0] - exact[c][0]).abs() + (b[c][1] - exact[c][1]).abs());
            }
        }
        err / vol
    };
    let (e1, e2) = (curl_err(16), curl_err(32));
    let ratio = e1 / e2;
    // symmetric Cartesian stencils superconverge (ratio near 16), so only
    // the lower bound is meaningful
    assert!(
        ratio >= 5.5,
        "curl error ratio {ratio} (errors {e1}, {e2})"
    );
}

/// The divergence diagnostic reports ~1 for B = (x, 0, 0) and ~0 for a
/// divergence-free linear field.
#[test]
fn divergence_diagnostic_oracles() {
    let grid =
        Grid2::build(&GridSpec2::new(16, 16, [0.0, 0.0], [1.0, 1.0], GridKind::Cartesian))
            .unwrap();
    let b = cell_averages2::<3>(&grid, &|p| [p[0], 0.0, 0.0]);
    let (div_max, div_l1) = divergence_diagnostic2(&grid, &b);
    assert!((div_max - 1.0).abs() < 1e-11, "div max {div_max}");
    assert!((div_l1 - 1.0).abs() < 1e-11, "div l1 {div_l1}");
    // divergence-free linear field: diagnostic vanishes to roundoff
    let b = cell_averages2::<3>(&grid, &|p| [0.4 * p[0] + p[1], 2.0 * p[0] - 0.4 * p[1], 0.0]);
    let (div_max, _) = divergence_diagnostic2(&grid, &b);
    assert!(div_max < 1e-11, "div max {div_max}");
}

/// Away from the initial jump the shock-tube potential is linear, so the
/// quadrature-initialized B equals the discrete curl of A there.
#[test]
fn shocktube_init_consistency() {
    let mut prob = setup2("shocktube", 50, 50).unwrap();
    let grid = &prob.grid;
    let recon = Recon2::build(grid);
    let mut q = prob.q.clone();
    prob.bc.fill(grid, &mut q, &mut prob.a);
    let apolys = recon.reconstruct(&prob.a, false);
    let b = curl2(grid, &recon, &apolys, true);
    let dx = (grid.hi[0] - grid.lo[0]) / grid.nx as f64;
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            if grid.cells[c].centroid[0].abs() < 4.0 * dx {
                continue;
            }
            for v in 0..3 {
                assert!(
                    (b[c][v] - q[c][5 + v]).abs() < 1e-12,
                    "cell ({i},{j}) B{}: curl {} vs init {}",
                    v + 1,
                    b[c][v],
                    q[c][5 + v]
                );
            }
        }
    }
}

#[test]
fn budget_of_identical_fields_zero() {
    let grid =
        Grid2::build(&GridSpec2::new(8, 8, [0.0, 0.0], [1.0, 1.0], GridKind::Cartesian))
            .unwrap();
    let b = cell_averages2::<3>(&grid, &|p| [(TAU * p[0]).sin(), p[1], 0.3]);
    let budget = total_field_budget2(&grid, &b, &b);
    assert_eq!(budget, [0.0, 0.0, 0.0]);
}

/// 3D: linear potential gives the exact constant curl on Cartesian and
/// warped grids.
#[test]
fn linear_potential_exact_curl_3d() {
    for kind in [
        GridKind::Cartesian,
        GridKind::Colella3 {
            beta: 0.03,
            l: 1.0,
            m: 1.0,
            n: 1.0,
        },
    ] {
        let grid = Grid3::build(&GridSpec3::new(6, 6, 6, [0.0; 3], [1.0; 3], kind.clone())).unwrap();
        let recon = Recon3::build(&grid);
        // A = 1/2 w x X has curl w
        let w = [0.4, -0.8, 1.2];
        let a = cell_averages3::<3>(&grid, &|p| {
            [
                0.5 * (w[1] * p[2] - w[2] * p[1]),
                0.5 * (w[2] * p[0] - w[0] * p[2]),
                0.5 * (w[0] * p[1] - w[1] * p[0]),
            ]
        });
        let apolys = recon.reconstruct(&a, false);
        let b = curl3(&grid, &recon, &apolys);
        for k in NG..NG + grid.nz {
            for j in NG..NG + grid.ny {
                for i in NG..NG + grid.nx {
                    let c = grid.cid(i, j, k);
                    for v in 0..3 {
                        assert!(
                            (b[c][v] - w[v]).abs() < 1e-12,
                            "kind {kind:?} cell ({i},{j},{k}) var {v}: {} vs {}",
                            b[c][v],
                            w[v]
                        );
                    }
                }
            }
        }
    }
}
