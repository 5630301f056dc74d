//! Simulation CLI: `mhdct <run|converge|reference> <config>`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 solver abort
//! (positivity failure), 1 I/O failure.

use ctmhd::curl::{divergence_diagnostic2, divergence_diagnostic3};
use ctmhd::geometry::GridKind;
use ctmhd::harness::advect1d::Advect1d;
use ctmhd::harness::config::{Config, ConfigError};
use ctmhd::harness::mhd1d::Mhd1d;
use ctmhd::harness::output;
use ctmhd::harness::problems::{default_dims, setup2_with_kind, setup3};
use ctmhd::harness::{
    apply_corrector2, apply_corrector3, l1_errors2, l1_errors3, ConvergenceReport,
    HarnessError,
};
use ctmhd::timestepper::{SchemeConfig, Sim2, Sim3};
use std::path::{Path, PathBuf};

fn main() {
    std::process::exit(real_main());
}

enum CliError {
    Config(ConfigError),
    Harness(HarnessError),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        CliError::Harness(e)
    }
}

impl From<ctmhd::mhd::MhdError> for CliError {
    fn from(e: ctmhd::mhd::MhdError) -> Self {
        CliError::Harness(HarnessError::Solver(e))
    }
}

fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Config(_) => 2,
        CliError::Harness(HarnessError::UnknownProblem(_)) => 2,
        CliError::Harness(HarnessError::Geometry(_)) => 2,
        CliError::Harness(HarnessError::Solver(_)) => 3,
        CliError::Harness(HarnessError::Io(_, _)) => 1,
    }
}

fn real_main() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 3 {
        eprintln!("usage: mhdct <run|converge|reference> <config>");
        return 2;
    }
    let cfg = match Config::from_file(Path::new(&args[2])) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let result = match args[1].as_str() {
        "run" => cmd_run(&cfg),
        "converge" => cmd_converge(&cfg),
        "reference" => cmd_reference(&cfg),
        other => {
            eprintln!("error: unknown subcommand `{other}`");
            return 2;
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                CliError::Config(c) => eprintln!("error: {c}"),
                CliError::Harness(h) => eprintln!("error: {h}"),
            }
            exit_code(&e)
        }
    }
}

fn out_dir(cfg: &Config) -> PathBuf {
    PathBuf::from(cfg.raw("output_dir").unwrap_or("out"))
}

fn kind_override(cfg: &Config) -> Result<Option<GridKind>, ConfigError> {
    match cfg.raw("kind") {
        None => Ok(None),
        Some("cartesian") => Ok(Some(GridKind::Cartesian)),
        Some("colella") => Ok(Some(GridKind::Colella {
            beta: cfg.get_or("beta", 0.1)?,
            l: cfg.get_or("l", 1.0)?,
            m: cfg.get_or("m", 1.0)?,
        })),
        Some("shocktube-blend") => Ok(Some(GridKind::ShocktubeBlend {
            beta: cfg.get_or("beta", 1.0 / 15.0)?,
        })),
        Some("cloud-inclusion") => Ok(Some(GridKind::CloudInclusion {
            amp: cfg.get_or("beta", 0.1)?,
            r0: 0.15,
            cx: 0.25,
            cy: 0.5,
        })),
        Some(v) => Err(ConfigError::Bad {
            key: "kind".to_string(),
            val: v.to_string(),
        }),
    }
}

fn cmd_run(cfg: &Config) -> Result<(), CliError> {
    let problem = cfg.require("problem")?.to_string();
    match problem.as_str() {
        "advect1d" => run_advect(cfg),
        "alfven3d" | "cloudshock3d" => run3(cfg, &problem),
        _ => run2(cfg, &problem),
    }
}

fn run_advect(cfg: &Config) -> Result<(), CliError> {
    let n: usize = cfg.get_or("nx", 200)?;
    let mut drv = Advect1d::new(n);
    drv.weno = cfg.flag_or("weno", true)?;
    drv.limiter = cfg.limiter(drv.limiter.clone())?;
    let t_final = cfg.get_or("t_final", 1.0)?;
    let cfl = cfg.get_or("cfl", 0.7)?;
    drv.advance(t_final, cfl);
    let dir = out_dir(cfg);
    let (xs, vs) = drv.solution();
    output::write_curve(&dir.join("q.curve"), &xs, &vs)?;
    let dq = drv.derivative_averages();
    output::write_curve(&dir.join("dq.curve"), &xs, &dq)?;
    println!("advect1d n={} t={:.6}: wrote q.curve, dq.curve", n, drv.t);
    Ok(())
}

fn run2(cfg: &Config, problem: &str) -> Result<(), CliError> {
    let nx: usize = cfg
        .get::<usize>("nx")?
        .ok_or_else(|| ConfigError::Missing("nx".to_string()))?;
    let (_, dny, _) = default_dims(problem, nx);
    let ny = cfg.get_or("ny", dny)?;
    let prob = setup2_with_kind(problem, nx, ny, kind_override(cfg)?)?;
    let mut base = SchemeConfig {
        cfl: prob.cfl,
        ct25d_full: prob.ct25d_full,
        ..SchemeConfig::default()
    };
    base = cfg.scheme(base)?;
    let t_final: f64 = cfg.get_or("t_final", prob.t_final)?;
    let output_every: usize = cfg.get_or("output_every", 0)?;
    let dir = out_dir(cfg);

    let grid = prob.grid;
    let mut sim = Sim2::new(&grid, base, prob.bc, prob.q, prob.a);
    apply_corrector2(&mut sim);
    let result = (|| -> Result<(), CliError> {
        while sim.t < t_final - 1e-14 && sim.step < sim.cfg.max_steps {
            let mut dt = sim.compute_dt(sim.cfg.cfl)?;
            if sim.t + dt > t_final {
                dt = t_final - sim.t;
            }
            sim.step_dt(dt)?;
            sim.bc.fill(sim.grid, &mut sim.q, &mut sim.a);
            let b: Vec<[f64; 3]> = sim.q.iter().map(|q| [q[5], q[6], q[7]]).collect();
            let (dmax, dl1) = divergence_diagnostic2(&grid, &b);
            println!(
                "step {:6} t {:.6e} dt {:.3e} div_max {:.3e} div_l1 {:.3e}",
                sim.step, sim.t, dt, dmax, dl1
            );
            if output_every > 0 && sim.step % output_every == 0 {
                let tag = format!("step_{:06}", sim.step);
                output::write_csv2(&dir.join(format!("{tag}.csv")), &grid, &sim.q, &sim.a)?;
                output::write_vtk2(&dir.join(format!("{tag}.vtk")), &grid, &sim.q, &sim.a)?;
            }
        }
        Ok(())
    })();
    // flush state even on abort
    output::write_csv2(&dir.join("final.csv"), &grid, &sim.q, &sim.a)?;
    output::write_vtk2(&dir.join("final.vtk"), &grid, &sim.q, &sim.a)?;
    result?;
    println!("{} {}x{} done at t={:.6}", problem, nx, ny, sim.t);
    Ok(())
}

fn run3(cfg: &Config, problem: &str) -> Result<(), CliError> {
    let nx: usize = cfg
        .get::<usize>("nx")?
        .ok_or_else(|| ConfigError::Missing("nx".to_string()))?;
    let (_, dny, dnz) = default_dims(problem, nx);
    let ny = cfg.get_or("ny", dny)?;
    let nz = cfg.get_or("nz", dnz)?;
    let prob = setup3(problem, nx, ny, nz)?;
    let mut base = SchemeConfig {
        cfl: prob.cfl,
        ..SchemeConfig::default()
    };
    base = cfg.scheme(base)?;
    let t_final: f64 = cfg.get_or("t_final", prob.t_final)?;
    let output_every: usize = cfg.get_or("output_every", 0)?;
    let dir = out_dir(cfg);

    let grid = prob.grid;
    let mut sim = Sim3::new(&grid, base, prob.bc, prob.q, prob.a);
    apply_corrector3(&mut sim);
    let result = (|| -> Result<(), CliError> {
        while sim.t < t_final - 1e-14 && sim.step < sim.cfg.max_steps {
            let mut dt = sim.compute_dt(sim.cfg.cfl)?;
            if sim.t + dt > t_final {
                dt = t_final - sim.t;
            }
            sim.step_dt(dt)?;
            sim.bc.fill(sim.grid, &mut sim.q, &mut sim.a);
            let b: Vec<[f64; 3]> = sim.q.iter().map(|q| [q[5], q[6], q[7]]).collect();
            let (dmax, dl1) = divergence_diagnostic3(&grid, &b);
            println!(
                "step {:6} t {:.6e} dt {:.3e} div_max {:.3e} div_l1 {:.3e}",
                sim.step, sim.t, dt, dmax, dl1
            );
            if output_every > 0 && sim.step % output_every == 0 {
                let tag = format!("step_{:06}", sim.step);
                output::write_csv3(&dir.join(format!("{tag}.csv")), &grid, &sim.q, &sim.a)?;
                output::write_vtk3(&dir.join(format!("{tag}.vtk")), &grid, &sim.q, &sim.a)?;
            }
        }
        Ok(())
    })();
    output::write_csv3(&dir.join("final.csv"), &grid, &sim.q, &sim.a)?;
    output::write_vtk3(&dir.join("final.vtk"), &grid, &sim.q, &sim.a)?;
    result?;
    println!("{} {}x{}x{} done at t={:.6}", problem, nx, ny, nz, sim.t);
    Ok(())
}

fn cmd_converge(cfg: &Config) -> Result<(), CliError> {
    let problem = cfg.require("problem")?.to_string();
    let nx0: usize = cfg
        .get::<usize>("nx")?
        .ok_or_else(|| ConfigError::Missing("nx".to_string()))?;
    let levels: usize = cfg.get_or("levels", 3)?;
    let mut sizes = Vec::new();
    let mut errors = Vec::new();
    for lev in 0..levels {
        let nx = nx0 << lev;
        let (_, dny, dnz) = default_dims(&problem, nx);
        if problem == "alfven3d" {
            let prob = setup3(&problem, nx, dny, dnz)?;
            let mut base = SchemeConfig {
                cfl: prob.cfl,
                ..SchemeConfig::default()
            };
            base = cfg.scheme(base)?;
            let t_final: f64 = cfg.get_or("t_final", prob.t_final)?;
            let exact = prob
                .exact
                .ok_or_else(|| HarnessError::UnknownProblem(problem.clone()))?;
            let grid = prob.grid;
            let mut sim = Sim3::new(&grid, base, prob.bc, prob.q, prob.a);
            apply_corrector3(&mut sim);
            sim.advance(t_final).map_err(HarnessError::Solver)?;
            let (qe, ae) = exact(&grid, t_final);
            let eq = l1_errors3(&grid, &sim.q, &qe);
            let ea = l1_errors3(&grid, &sim.a, &ae);
            let mut row = [0.0; 11];
            row[..8].copy_from_slice(&eq);
            row[8..].copy_from_slice(&ea);
            sizes.push((nx, dny, dnz));
            errors.push(row);
        } else {
            let prob = setup2_with_kind(&problem, nx, dny, kind_override(cfg)?)?;
            let mut base = SchemeConfig {
                cfl: prob.cfl,
                ct25d_full: prob.ct25d_full,
                ..SchemeConfig::default()
            };
            base = cfg.scheme(base)?;
            let t_final: f64 = cfg.get_or("t_final", prob.t_final)?;
            let exact = prob
                .exact
                .ok_or_else(|| HarnessError::UnknownProblem(problem.clone()))?;
            let grid = prob.grid;
            let mut sim = Sim2::new(&grid, base, prob.bc, prob.q, prob.a);
            apply_corrector2(&mut sim);
            sim.advance(t_final).map_err(HarnessError::Solver)?;
            let (qe, ae) = exact(&grid, t_final);
            let eq = l1_errors2(&grid, &sim.q, &qe);
            let ea = l1_errors2(&grid, &sim.a, &ae);
            let mut row = [0.0; 11];
            row[..8].copy_from_slice(&eq);
            row[8..].copy_from_slice(&ea);
            sizes.push((nx, dny, 1));
            errors.push(row);
        }
        eprintln!("level {lev} done");
    }
    let report = ConvergenceReport { sizes, errors };
    print!("{report}");
    Ok(())
}

fn cmd_reference(cfg: &Config) -> Result<(), CliError> {
    let n: usize = cfg.get_or("nx", 10_000)?;
    let t_final: f64 = cfg.get_or("t_final", 0.2)?;
    let cfl: f64 = cfg.get_or("cfl", 0.5)?;
    let mut drv = Mhd1d::shocktube(n);
    drv.weno = cfg.flag_or("weno", true)?;
    drv.advance(t_final, cfl).map_err(HarnessError::Solver)?;
    let (xs, vs) = drv.profiles();
    let dir = out_dir(cfg);
    for (col, name) in ["rho", "p", "B1", "B2", "B3"].iter().enumerate() {
        let col_vals: Vec<f64> = vs.iter().map(|r| r[col]).collect();
        output::write_curve(&dir.join(format!("{name}.curve")), &xs, &col_vals)?;
    }
    println!("reference n={} t={:.6}: wrote rho/p/B1/B2/B3 curves", n, drv.t);
    Ok(())
}
