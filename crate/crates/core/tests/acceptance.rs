//! Acceptance gate: the eight headline criteria for the solver, one test
//! (and one pass/fail line) per criterion.
//!
//! The first three criteria reproduce the smooth traveling-wave convergence
//! studies (2.5D Cartesian, 2.5D mapped, 3D) and check both the measured
//! orders and the absolute error levels against tabulated reference values
//! (within 3x). The remaining criteria exercise the derivative limiter, the
//! shock-tube field behavior on mapped grids, robustness on the cloud
//! problem, structural invariants of the discrete operators, and the
//! temporal order of the time stepper.

use ctmhd::curl::{curl2, total_field_budget2};
use ctmhd::geometry::{Grid2, GridKind, GridSpec2, QuadratureRule, NG};
use ctmhd::harness::advect1d::Advect1d;
use ctmhd::harness::mhd1d::Mhd1d;
use ctmhd::harness::problems::setup3;
use ctmhd::harness::{
    apply_corrector2, apply_corrector3, cell_averages2, l1_errors2, l1_errors3, setup2,
    Problem2, Problem3,
};
use ctmhd::mhd::{
    conserved, eigen_decomposition, eigen_right, flux, primitive, MhdRhs2,
};
use ctmhd::potential::{
    force_fluctuations, path_matrix, rusanov_fluctuations,
};
use ctmhd::reconstruction::Recon2;
use ctmhd::timestepper::{SchemeConfig, Sim2, Sim3};
use rand::{Rng, SeedableRng};

const SQRT_4PI: f64 = 3.544_907_701_811_032;
const VAR_NAMES: [&str; 11] = [
    "rho", "mx", "my", "mz", "E", "B1", "B2", "B3", "A1", "A2", "A3",
];

/// Print the verdict line and fail with the collected violations.
fn verdict(name: &str, violations: Vec<String>) {
    if violations.is_empty() {
        println!("{name}: PASS");
    } else {
        println!("{name}: FAIL");
        for v in &violations {
            println!("  - {v}");
        }
        panic!("{name} failed with {} violation(s)", violations.len());
    }
}

fn check_eoc(
    violations: &mut Vec<String>,
    label: &str,
    coarse: &[f64; 11],
    fine: &[f64; 11],
    lo: f64,
    hi: f64,
) {
    for v in 0..11 {
        let r = (coarse[v] / fine[v]).log2();
        if !(lo..=hi).contains(&r) {
            violations.push(format!(
                "{label}: EOC({}) = {r:.3} outside [{lo}, {hi}]",
                VAR_NAMES[v]
            ));
        }
    }
}

fn check_ref(
    violations: &mut Vec<String>,
    label: &str,
    errors: &[f64; 11],
    refs: &[(usize, f64)],
) {
    for &(v, want) in refs {
        if errors[v] > 3.0 * want {
            violations.push(format!(
                "{label}: L1({}) = {:.4e} exceeds 3x reference {want:.4e}",
                VAR_NAMES[v], errors[v]
            ));
        }
    }
}

/// Run a 2.5D wave problem to its final time and return the 11 L1 errors.
fn wave_errors2(name: &str, nx: usize, ny: usize) -> [f64; 11] {
    let Problem2 {
        grid,
        q,
        a,
        bc,
        cfl,
        t_final,
        ct25d_full,
        exact,
    } = setup2(name, nx, ny).unwrap();
    let cfg = SchemeConfig {
        cfl,
        ct25d_full,
        ..SchemeConfig::default()
    };
    let mut sim = Sim2::new(&grid, cfg, bc, q, a);
    apply_corrector2(&mut sim);
    sim.advance(t_final).unwrap();
    let (qe, ae) = (exact.unwrap())(&grid, t_final);
    let eq = l1_errors2::<8>(&grid, &sim.q, &qe);
    let ea = l1_errors2::<3>(&grid, &sim.a, &ae);
    let mut out = [0.0; 11];
    out[..8].copy_from_slice(&eq);
    out[8..].copy_from_slice(&ea);
    out
}

fn wave_errors3(nx: usize, ny: usize, nz: usize) -> [f64; 11] {
    let Problem3 {
        grid,
        q,
        a,
        bc,
        cfl,
        t_final,
        exact,
    } = setup3("alfven3d", nx, ny, nz).unwrap();
    let cfg = SchemeConfig {
        cfl,
        ..SchemeConfig::default()
    };
    let mut sim = Sim3::new(&grid, cfg, bc, q, a);
    apply_corrector3(&mut sim);
    sim.advance(t_final).unwrap();
    let (qe, ae) = (exact.unwrap())(&grid, t_final);
    let eq = l1_errors3::<8>(&grid, &sim.q, &qe);
    let ea = l1_errors3::<3>(&grid, &sim.a, &ae);
    let mut out = [0.0; 11];
    out[..8].copy_from_slice(&eq);
    out[8..].copy_from_slice(&ea);
    out
}

/// 1: third-order convergence of the 2.5D wave on Cartesian grids, with
/// error levels at the tabulated reference values.
#[test]
fn c1_wave_convergence_cartesian() {
    let e32 = wave_errors2("alfven2.5d", 32, 64);
    let e64 = wave_errors2("alfven2.5d", 64, 128);
    let e128 = wave_errors2("alfven2.5d", 128, 256);
    for (n, e) in [(32, &e32), (64, &e64), (128, &e128)] {
        println!("  {n}x{}: rho {:.3e}  B1 {:.3e}  A3 {:.3e}", 2 * n, e[0], e[5], e[10]);
    }
    let mut violations = Vec::new();
    check_eoc(&mut violations, "32->64", &e32, &e64, 2.7, 3.3);
    check_eoc(&mut violations, "64->128", &e64, &e128, 2.7, 3.3);
    check_ref(&mut violations, "32x64", &e32, &[(0, 5.128e-4), (5, 2.877e-4)]);
    check_ref(
        &mut violations,
        "64x128",
        &e64,
        &[
            (0, 6.495e-5),
            (1, 3.097e-5),
            (2, 7.548e-5),
            (3, 6.469e-5),
            (4, 1.653e-5),
            (5, 3.583e-5),
            (6, 7.166e-5),
            (7, 6.437e-5),
            (8, 4.489e-6),
            (9, 8.628e-6),
            (10, 1.327e-5),
        ],
    );
    check_ref(&mut violations, "128x256", &e128, &[(0, 8.150e-6), (5, 4.464e-6)]);
    verdict("criterion 1 (2.5D wave, Cartesian)", violations);
}

/// 2: the same study on the smoothly mapped grid keeps third order and the
/// mapped error levels.
#[test]
fn c2_wave_convergence_mapped() {
    let e32 = wave_errors2("alfven2.5d-mapped", 32, 64);
    let e64 = wave_errors2("alfven2.5d-mapped", 64, 128);
    let e128 = wave_errors2("alfven2.5d-mapped", 128, 256);
    for (n, e) in [(32, &e32), (64, &e64), (128, &e128)] {
        println!("  {n}x{}: rho {:.3e}  B1 {:.3e}", 2 * n, e[0], e[5]);
    }
    let mut violations = Vec::new();
    // the coarsest mapped level is pre-asymptotic for a couple of variables
    // (the warped metric costs accuracy before it converges away), so the
    // strict order band applies to the finest pair and the coarse pair only
    // gets a clearly-third-order-trending lower bound
    check_eoc(&mut violations, "32->64", &e32, &e64, 2.4, 3.6);
    check_eoc(&mut violations, "64->128", &e64, &e128, 2.7, 3.3);
    check_ref(&mut violations, "32x64", &e32, &[(0, 1.975e-3)]);
    check_ref(&mut violations, "64x128", &e64, &[(0, 2.631e-4), (5, 6.014e-5)]);
    check_ref(&mut violations, "128x256", &e128, &[(0, 3.333e-5), (5, 7.511e-6)]);
    // the mapping costs accuracy but stays within one order of Cartesian
    let cart = wave_errors2("alfven2.5d", 64, 128);
    for v in 0..11 {
        if e64[v] > 10.0 * cart[v] {
            violations.push(format!(
                "mapped L1({}) = {:.3e} more than 10x Cartesian {:.3e}",
                VAR_NAMES[v], e64[v], cart[v]
            ));
        }
    }
    verdict("criterion 2 (2.5D wave, mapped)", violations);
}

/// 3: third order for the genuinely 3D wave.
#[test]
fn c3_wave_convergence_3d() {
    let e16 = wave_errors3(16, 32, 32);
    let e32 = wave_errors3(32, 64, 64);
    println!("  16x32x32: rho {:.3e}  B1 {:.3e}", e16[0], e16[5]);
    println!("  32x64x64: rho {:.3e}  B1 {:.3e}", e32[0], e32[5]);
    let mut violations = Vec::new();
    check_eoc(&mut violations, "16->32", &e16, &e32, 2.6, 3.4);
    check_ref(&mut violations, "16x32x32", &e16, &[(0, 2.055e-3), (5, 1.231e-3)]);
    check_ref(
        &mut violations,
        "32x64x64",
        &e32,
        &[
            (0, 2.684e-4),
            (1, 1.343e-4),
            (2, 2.213e-4),
            (3, 2.532e-4),
            (4, 6.611e-5),
            (5, 1.581e-4),
            (6, 2.304e-4),
            (7, 2.296e-4),
            (8, 2.340e-5),
            (9, 3.642e-5),
            (10, 3.671e-5),
        ],
    );
    verdict("criterion 3 (3D wave)", violations);
}

/// 4: the derivative limiter keeps the advected hat non-oscillatory and its
/// derivative averages inside the exact band; without the limiter the band
/// is violated.
#[test]
fn c4_advection_limiter() {
    let mut violations = Vec::new();
    let slope = 1.0 / 0.075;
    let band = slope + 0.05 * slope; // 5% of the derivative jump

    let mut drv = Advect1d::new(200);
    drv.advance(1.0, 0.7);
    let (_, vs) = drv.solution();
    let (lo, hi) = vs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| {
            (l.min(v), h.max(v))
        });
    // overshoot below 1% of the profile range (range = 2)
    if !(hi <= 2.02 && lo >= -0.02) {
        violations.push(format!("profile range [{lo:.4}, {hi:.4}] overshoots [-0.02, 2.02]"));
    }
    let d = drv.derivative_averages();
    let dmax = d.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if dmax > band {
        violations.push(format!(
            "limited derivative averages reach {dmax:.3} outside the band +-{band:.3}"
        ));
    }
    println!("  limited: range [{lo:.4}, {hi:.4}], |q_x| max {dmax:.3} (band {band:.3})");

    // the band check is only meaningful if the unlimited scheme violates it
    let mut raw = Advect1d::new(200);
    raw.limiter.enabled = false;
    raw.advance(1.0, 0.7);
    let d = raw.derivative_averages();
    let rawmax = d.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    println!("  unlimited: |q_x| max {rawmax:.3}");
    if rawmax <= band {
        violations.push(format!(
            "unlimited derivative averages stay at {rawmax:.3}, inside the band"
        ));
    }
    verdict("criterion 4 (1D advection limiter)", violations);
}

fn shocktube_b1_error(name: &str, n: usize, b1_ref: f64) -> ([f64; 11], f64, Grid2) {
    let Problem2 {
        grid,
        q,
        a,
        bc,
        cfl,
        t_final,
        ct25d_full,
        ..
    } = setup2(name, n, n).unwrap();
    let cfg = SchemeConfig {
        cfl,
        ct25d_full,
        ..SchemeConfig::default()
    };
    let mut sim = Sim2::new(&grid, cfg, bc, q, a);
    apply_corrector2(&mut sim);
    sim.advance(t_final).unwrap();
    let mut err = 0.0;
    let mut vmax = 0.0f64;
    let mut volsum = 0.0;
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            let d = (sim.q[c][5] - b1_ref).abs();
            err += grid.cells[c].vol * d;
            vmax = vmax.max(d);
            volsum += grid.cells[c].vol;
        }
    }
    let mut dummy = [0.0; 11];
    dummy[5] = err / volsum;
    (dummy, vmax, grid)
}

/// 5: in the planar Riemann problem the normal field component is exactly
/// constant in the 1D reference solution, so its 2D error isolates what the
/// transport/corrector pair does across the shocks. On the mapped grid it
/// converges at the expected fractional order; on the Cartesian grid it
/// stays locked to the constant up to small bounded oscillations.
#[test]
fn c5_shocktube_normal_field() {
    let mut violations = Vec::new();
    // the 1D reference: B1's x-flux vanishes identically, so the evolved
    // reference B1 equals its (constant) initial value on every cell
    let line = Mhd1d::shocktube(10_000);
    let b1_ref = line.sample(2, 0.0);
    assert!((b1_ref - 2.0 / SQRT_4PI).abs() < 1e-15);

    let mut errs = Vec::new();
    for n in [100, 200, 400] {
        let (e, _, _) = shocktube_b1_error("shocktube-mapped", n, b1_ref);
        println!("  mapped {n}x{n}: L1(B1) {:.4e}", e[5]);
        errs.push(e[5]);
    }
    for w in errs.windows(2) {
        let r = (w[0] / w[1]).log2();
        if !(0.1833..=0.4833).contains(&r) {
            violations.push(format!(
                "mapped B1 order {r:.3} outside 1/3 +- 0.15 (errors {:.3e} -> {:.3e})",
                w[0], w[1]
            ));
        }
    }

    // Cartesian: B1 oscillation bounded by 2% of the transverse field jump
    let jump = 0.4 / SQRT_4PI;
    let (_, vmax, _) = shocktube_b1_error("shocktube", 200, b1_ref);
    println!("  cartesian 200x200: max|B1 - const| {vmax:.4e} (bound {:.4e})", 0.02 * jump);
    if vmax > 0.02 * jump {
        violations.push(format!(
            "Cartesian B1 oscillation {vmax:.4e} exceeds 2% of the B2 jump {:.4e}",
            0.02 * jump
        ));
    }
    verdict("criterion 5 (shock tube normal field)", violations);
}

/// 6: the cloud interaction runs to t = 0.06 with positive density and
/// pressure and a bounded (non-secular) divergence diagnostic; switching the
/// corrector off visibly breaks the field.
#[test]
fn c6_cloudshock_robustness() {
    let mut violations = Vec::new();
    let run = |corrector: bool| -> (Result<Vec<ctmhd::timestepper::StepDiag>, _>, Vec<[f64; 8]>) {
        let Problem2 {
            grid,
            q,
            a,
            bc,
            cfl,
            ct25d_full,
            ..
        } = setup2("cloudshock2.5d", 128, 128).unwrap();
        let cfg = SchemeConfig {
            cfl,
            ct25d_full,
            corrector,
            ..SchemeConfig::default()
        };
        let mut sim = Sim2::new(&grid, cfg, bc, q, a);
        apply_corrector2(&mut sim);
        let r = sim.advance(0.06);
        (r, sim.q)
    };

    let (result, q) = run(true);
    let diags = match result {
        Ok(d) => d,
        Err(e) => {
            verdict(
                "criterion 6 (cloud robustness)",
                vec![format!("corrector-on run aborted: {e}")],
            );
            return;
        }
    };
    let min_rho = diags.iter().map(|d| d.min_rho).fold(f64::INFINITY, f64::min);
    let min_p = diags.iter().map(|d| d.min_p).fold(f64::INFINITY, f64::min);
    if !(min_rho > 0.0 && min_p > 0.0) {
        violations.push(format!("positivity lost: min rho {min_rho:.3e}, min p {min_p:.3e}"));
    }
    if q.iter().any(|c| c.iter().any(|v| !v.is_finite())) {
        violations.push("non-finite state values".to_string());
    }
    // non-secular divergence: the final diagnostic stays within 5x of the
    // running median over the whole history
    let mut divs: Vec<f64> = diags.iter().map(|d| d.div_max).collect();
    let finaldiv = *divs.last().unwrap();
    divs.sort_by(f64::total_cmp);
    let median = divs[divs.len() / 2];
    println!(
        "  corrector on: {} steps, min rho {min_rho:.3e}, min p {min_p:.3e}, div final {finaldiv:.3e} median {median:.3e}",
        diags.len()
    );
    if finaldiv > 5.0 * median {
        violations.push(format!(
            "divergence grows secularly: final {finaldiv:.3e} vs median {median:.3e}"
        ));
    }

    let (result, qoff) = run(false);
    let degraded = match result {
        Err(e) => {
            println!("  corrector off: aborted ({e})");
            true
        }
        Ok(doff) => {
            // degraded = the off-run violates the same non-secular bound the
            // corrected run satisfies (its divergence keeps growing), or the
            // state went bad outright
            let offdiv = doff.last().unwrap().div_max;
            let mut offs: Vec<f64> = doff.iter().map(|d| d.div_max).collect();
            offs.sort_by(f64::total_cmp);
            let offmedian = offs[offs.len() / 2];
            let nonfinite = qoff.iter().any(|c| c.iter().any(|v| !v.is_finite()));
            println!("  corrector off: div final {offdiv:.3e} median {offmedian:.3e}");
            nonfinite || offdiv > 5.0 * offmedian || offdiv > 5.0 * finaldiv
        }
    };
    if !degraded {
        violations.push("corrector-off run shows no degradation".to_string());
    }
    verdict("criterion 6 (cloud robustness)", violations);
}

/// 7: structural invariants of the building blocks.
#[test]
fn c7_structural_invariants() {
    let mut violations = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);

    // eigenvalue ordering and L = R^{-1} over 1e5 random states
    let mut worst_inv = 0.0f64;
    for it in 0..100_000 {
        let w = [
            rng.gen_range(0.1..5.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.05..5.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ];
        let mut n = [
            rng.gen_range(-1.0f64..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if len < 0.1 {
            continue;
        }
        for v in n.iter_mut() {
            *v /= len;
        }
        let (lam, _) = eigen_right(&w, &n);
        for k in 1..8 {
            if lam[k] < lam[k - 1] - 1e-12 {
                violations.push(format!("eigenvalues out of order at sample {it}"));
                break;
            }
        }
        // check the inverse on a subsample (it is the expensive part)
        if it % 1000 == 0 {
            let (_, r, l) = eigen_decomposition(&w, &n);
            let p = r * l;
            for a in 0..8 {
                for b in 0..8 {
                    let want = if a == b { 1.0 } else { 0.0 };
                    worst_inv = worst_inv.max((p[(a, b)] - want).abs());
                }
            }
        }
        if violations.len() > 3 {
            break;
        }
    }
    if worst_inv > 1e-9 {
        violations.push(format!("R L deviates from identity by {worst_inv:.3e}"));
    }

    // FD Jacobian agreement away from the Powell column
    let w = [1.3, 0.4, -0.3, 0.2, 0.9, 0.7, -0.5, 0.3];
    let n = [0.48, -0.6, 0.64];
    let q0 = conserved(&w);
    let (lam, r, l) = eigen_decomposition(&w, &n);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for col in 0..8 {
        let h = 1e-5 * (1.0 + q0[col].abs());
        let (mut qp, mut qm) = (q0, q0);
        qp[col] += h;
        qm[col] -= h;
        let fp = flux(&primitive(&qp).unwrap(), &n);
        let fm = flux(&primitive(&qm).unwrap(), &n);
        for row in 0..8 {
            let fd = (fp[row] - fm[row]) / (2.0 * h);
            scale = scale.max(fd.abs());
            if (5..8).contains(&col) {
                continue;
            }
            let mut a = 0.0;
            for k in 0..8 {
                a += r[(row, k)] * lam[k] * l[(k, col)];
            }
            worst = worst.max((a - fd).abs());
        }
    }
    if worst > 1e-6 * scale {
        violations.push(format!("quasilinear matrix vs FD Jacobian: {worst:.3e}"));
    }

    // fluctuation sum identity for both potential solvers
    for _ in 0..500 {
        let um = [rng.gen_range(-2.0f64..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let up = [rng.gen_range(-2.0f64..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let nv = [0.6, -0.8, 0.0];
        let dq = [rng.gen_range(-1.0f64..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let (m, alpha) = path_matrix(nv, um, up);
        let mv: Vec<f64> = (0..3)
            .map(|rr| (0..3).map(|cc| m[rr][cc] * dq[cc]).sum())
            .collect();
        let (am, ap) = rusanov_fluctuations(&m, alpha + 0.2, dq);
        for v in 0..3 {
            if (am[v] + ap[v] - mv[v]).abs() > 1e-13 {
                violations.push("rusanov fluctuation sum broken".to_string());
            }
        }
        let (am, ap) = force_fluctuations(&m, dq, 0.01, 0.002);
        for v in 0..3 {
            if (am[v] + ap[v] - mv[v]).abs() > 1e-13 {
                violations.push("force fluctuation sum broken".to_string());
            }
        }
        if violations.len() > 3 {
            break;
        }
    }

    // curl exactness on a linear potential over a mapped grid
    let grid = Grid2::build(&GridSpec2::new(
        8,
        8,
        [0.0, 0.0],
        [1.0, 1.0],
        GridKind::Colella { beta: 0.1, l: 1.0, m: 1.0 },
    ))
    .unwrap();
    let recon = Recon2::build(&grid);
    let g = [[0.3, -0.2], [0.7, 0.1], [-0.6, 0.9]];
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
                if (b[c][v] - expect[v]).abs() > 1e-12 {
                    violations.push(format!(
                        "curl of linear A wrong at ({i},{j}): {} vs {}",
                        b[c][v], expect[v]
                    ));
                }
            }
        }
    }

    // mean preservation of the limited reconstruction
    let q: Vec<[f64; 1]> = (0..grid.nxt * grid.nyt)
        .map(|_| [rng.gen_range(-10.0..10.0)])
        .collect();
    let quad = QuadratureRule::gauss(3);
    let polys = recon.reconstruct(&q, true);
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            let cell = &grid.cells[c];
            let mut acc = 0.0;
            for (ia, &xi) in quad.nodes.iter().enumerate() {
                for (ib, &eta) in quad.nodes.iter().enumerate() {
                    let w = quad.weights[ia] * quad.weights[ib] * cell.jac(xi, eta);
                    acc += w * recon.eval1(c, &polys[c][0], cell.point(xi, eta));
                }
            }
            if (acc / cell.vol - q[c][0]).abs() > 1e-12 {
                violations.push(format!("mean not preserved at ({i},{j})"));
            }
        }
    }

    // free stream on the mapped grid
    let q0 = conserved(&[1.3, 0.4, -0.2, 0.1, 0.8, 0.3, -0.2, 0.5]);
    let qf = vec![q0; grid.nxt * grid.nyt];
    let rhs = MhdRhs2::rhs(&grid, &recon, &qf, true).unwrap();
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            for v in 0..8 {
                if rhs[c][v].abs() > 1e-12 {
                    violations.push(format!(
                        "free stream violated at ({i},{j}) var {v}: {:.3e}",
                        rhs[c][v]
                    ));
                }
            }
        }
    }

    // per-step global field budget on the periodic wave (limiter weights off:
    // the floor in the nonlinear weights is gauge-sensitive and is tested at
    // its own looser level in the module suite)
    let Problem2 {
        grid: wgrid,
        q,
        a,
        bc,
        cfl,
        ct25d_full,
        ..
    } = setup2("alfven2.5d", 16, 32).unwrap();
    let cfg = SchemeConfig {
        cfl,
        ct25d_full,
        weno: false,
        ..SchemeConfig::default()
    };
    let mut sim = Sim2::new(&wgrid, cfg, bc, q, a);
    apply_corrector2(&mut sim);
    let dt = sim.compute_dt(sim.cfg.cfl).unwrap();
    let take_b = |sim: &Sim2| -> Vec<[f64; 3]> {
        sim.q.iter().map(|q| [q[5], q[6], q[7]]).collect()
    };
    let mut before = take_b(&sim);
    for _ in 0..3 {
        sim.step_dt(dt).unwrap();
        let after = take_b(&sim);
        let budget = total_field_budget2(&wgrid, &before, &after);
        for v in 0..3 {
            if budget[v].abs() > 1e-12 {
                violations.push(format!("B{} budget leaks {:.3e} per step", v + 1, budget[v]));
            }
        }
        before = after;
    }

    verdict("criterion 7 (structural invariants)", violations);
}

/// 8: temporal third order measured by Richardson self-differences on a
/// fixed grid.
#[test]
fn c8_temporal_order() {
    let run_fixed = |dt0: f64| -> (Vec<[f64; 8]>, Grid2) {
        let Problem2 {
            grid,
            q,
            a,
            bc,
            cfl,
            ct25d_full,
            ..
        } = setup2("alfven2.5d", 32, 64).unwrap();
        let cfg = SchemeConfig {
            cfl,
            ct25d_full,
            ..SchemeConfig::default()
        };
        let mut sim = Sim2::new(&grid, cfg, bc, q, a);
        apply_corrector2(&mut sim);
        sim.advance_fixed_dt(0.25, dt0).unwrap();
        (sim.q, grid)
    };
    // a CFL-stable base step that divides the final time exactly
    let t_end = 0.25f64;
    let dt_cfl = {
        let Problem2 {
            grid, q, a, bc, cfl, ..
        } = setup2("alfven2.5d", 32, 64).unwrap();
        let sim = Sim2::new(&grid, SchemeConfig::default(), bc, q, a);
        sim.compute_dt(cfl).unwrap()
    };
    let dt0 = t_end / (t_end / (0.8 * dt_cfl)).ceil();

    let (q1, grid) = run_fixed(dt0);
    let (q2, _) = run_fixed(dt0 / 2.0);
    let (q4, _) = run_fixed(dt0 / 4.0);
    let diff = |a: &[[f64; 8]], b: &[[f64; 8]]| -> f64 {
        let mut acc = 0.0;
        let mut vol = 0.0;
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j);
                vol += grid.cells[c].vol;
                for v in 0..8 {
                    acc += grid.cells[c].vol * (a[c][v] - b[c][v]).abs();
                }
            }
        }
        acc / vol
    };
    let d1 = diff(&q1, &q2);
    let d2 = diff(&q2, &q4);
    let order = (d1 / d2).log2();
    println!("  dt0 {dt0:.4e}: self-differences {d1:.4e} -> {d2:.4e}, order {order:.3}");
    let mut violations = Vec::new();
    if !(2.7..=3.3).contains(&order) {
        violations.push(format!("temporal order {order:.3} outside [2.7, 3.3]"));
    }
    verdict("criterion 8 (temporal order)", violations);
}
