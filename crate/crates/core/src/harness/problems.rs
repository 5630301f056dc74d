//! Built-in problem setups: traveling circularly polarized wave problems
//! with exact solutions (2.5D and 3D, Cartesian and mapped), the planar
//! Riemann problem on distorted grids, and the cloud interaction problem.
//!
//! All states are initialized by 5-point Gauss cell-average quadrature of
//! the pointwise initial functions, on ghost cells too; the magnetic field
//! should afterwards be replaced by the discrete curl of the initialized
//! potential (`apply_corrector2/3`) so that B and A start consistent.

use super::bc::{ExtrapBc2, InflowLeftBc2, InflowLeftBc3, PeriodicBc2, PeriodicBc3};
use super::{cell_averages2, cell_averages3, HarnessError};
use crate::geometry::{Grid2, Grid3, GridKind, GridSpec2, GridSpec3};
use crate::mhd::conserved;
use crate::timestepper::{Bc2, Bc3};
use std::f64::consts::TAU;

pub type Exact2 = Box<dyn Fn(&Grid2, f64) -> (Vec<[f64; 8]>, Vec<[f64; 3]>)>;
pub type Exact3 = Box<dyn Fn(&Grid3, f64) -> (Vec<[f64; 8]>, Vec<[f64; 3]>)>;

pub struct Problem2 {
    pub grid: Grid2,
    pub q: Vec<[f64; 8]>,
    pub a: Vec<[f64; 3]>,
    pub bc: Box<dyn Bc2>,
    pub cfl: f64,
    pub t_final: f64,
    pub ct25d_full: bool,
    pub exact: Option<Exact2>,
}

pub struct Problem3 {
    pub grid: Grid3,
    pub q: Vec<[f64; 8]>,
    pub a: Vec<[f64; 3]>,
    pub bc: Box<dyn Bc3>,
    pub cfl: f64,
    pub t_final: f64,
    pub exact: Option<Exact3>,
}

fn prim(rho: f64, u: [f64; 3], p: f64, b: [f64; 3]) -> [f64; 8] {
    conserved(&[rho, u[0], u[1], u[2], p, b[0], b[1], b[2]])
}

fn averages_qa2(
    grid: &Grid2,
    f: &dyn Fn([f64; 2]) -> ([f64; 8], [f64; 3]),
) -> (Vec<[f64; 8]>, Vec<[f64; 3]>) {
    let joint = cell_averages2::<11>(grid, &|x| {
        let (q, a) = f(x);
        [
            q[0], q[1], q[2], q[3], q[4], q[5], q[6], q[7], a[0], a[1], a[2],
        ]
    });
    split_qa(joint)
}

fn averages_qa3(
    grid: &Grid3,
    f: &dyn Fn([f64; 3]) -> ([f64; 8], [f64; 3]),
) -> (Vec<[f64; 8]>, Vec<[f64; 3]>) {
    let joint = cell_averages3::<11>(grid, &|x| {
        let (q, a) = f(x);
        [
            q[0], q[1], q[2], q[3], q[4], q[5], q[6], q[7], a[0], a[1], a[2],
        ]
    });
    split_qa(joint)
}

fn split_qa(joint: Vec<[f64; 11]>) -> (Vec<[f64; 8]>, Vec<[f64; 3]>) {
    let mut q = Vec::with_capacity(joint.len());
    let mut a = Vec::with_capacity(joint.len());
    for v in joint {
        q.push([v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]]);
        a.push([v[8], v[9], v[10]]);
    }
    (q, a)
}

// ---------------------------------------------------------------- traveling
// circularly polarized wave, 2.5D: propagation direction n at angle
// phi = arctan(1/2) to the x-axis, amplitude 0.1, one wavelength per domain
// diagonal; the exact solution is translation of the initial data by t n.

const A2_COS: f64 = 0.894_427_190_999_915_9; // 2/sqrt(5)
const A2_SIN: f64 = 0.447_213_595_499_957_94; // 1/sqrt(5)

/// Pointwise 2.5D wave state: (conserved, potential).
pub fn alfven2_point(x: [f64; 2]) -> ([f64; 8], [f64; 3]) {
    let (c, s) = (A2_COS, A2_SIN);
    let xi = c * x[0] + s * x[1];
    let (s2, c2) = ((TAU * xi).sin(), (TAU * xi).cos());
    let b = [c - 0.1 * s2 * s, s + 0.1 * s2 * c, 0.1 * c2];
    let u = [0.1 * s2 * s, -0.1 * s2 * c, -0.1 * c2];
    let g = 0.1 * s2 / TAU;
    let fint = 0.1 * c2 / TAU;
    let a = [-g * s, g * c, -s * x[0] + c * x[1] + fint];
    (prim(1.0, u, 0.1, b), a)
}

fn alfven2(nx: usize, ny: usize, kind: GridKind) -> Result<Problem2, HarnessError> {
    let lx = 1.0 / A2_COS; // sqrt(5)/2
    let ly = 1.0 / A2_SIN; // sqrt(5)
    let grid = Grid2::build(&GridSpec2::new(nx, ny, [0.0, 0.0], [lx, ly], kind))?;
    let (q, a) = averages_qa2(&grid, &alfven2_point);
    // A is periodic up to its affine part tau . x
    let aoff = [[0.0, 0.0, -A2_SIN * lx], [0.0, 0.0, A2_COS * ly]];
    let exact: Exact2 = Box::new(|grid, t| {
        averages_qa2(grid, &move |x| {
            alfven2_point([x[0] - t * A2_COS, x[1] - t * A2_SIN])
        })
    });
    Ok(Problem2 {
        grid,
        q,
        a,
        bc: Box::new(PeriodicBc2 { aoff }),
        cfl: 0.5,
        t_final: 1.0,
        ct25d_full: true,
        exact: Some(exact),
    })
}

// ------------------------------------------------------------------- 3D wave:
// n = (2,1,1)/sqrt(6) with the orthonormal transverse pair
// t1 = (1,-2,0)/sqrt(5), t2 = (2,1,-5)/sqrt(30) (n x t1 = t2, n x t2 = -t1).

const A3_N: [f64; 3] = [
    0.816_496_580_927_726,  // 2/sqrt(6)
    0.408_248_290_463_863,  // 1/sqrt(6)
    0.408_248_290_463_863,
];
const A3_T1: [f64; 3] = [
    0.447_213_595_499_957_94, // 1/sqrt(5)
    -0.894_427_190_999_915_9, // -2/sqrt(5)
    0.0,
];
const A3_T2: [f64; 3] = [
    0.365_148_371_670_110_9,  // 2/sqrt(30)
    0.182_574_185_835_055_45, // 1/sqrt(30)
    -0.912_870_929_175_277_2, // -5/sqrt(30)
];

pub fn alfven3_point(x: [f64; 3]) -> ([f64; 8], [f64; 3]) {
    let (n, t1, t2) = (A3_N, A3_T1, A3_T2);
    let xi = n[0] * x[0] + n[1] * x[1] + n[2] * x[2];
    let (s2, c2) = ((TAU * xi).sin(), (TAU * xi).cos());
    let mut b = [0.0; 3];
    let mut u = [0.0; 3];
    let mut a = [0.0; 3];
    // A = 1/2 n x X + (0.1 sin /tau) t1 + (0.1 cos /tau) t2
    let nxx = [
        n[1] * x[2] - n[2] * x[1],
        n[2] * x[0] - n[0] * x[2],
        n[0] * x[1] - n[1] * x[0],
    ];
    for v in 0..3 {
        b[v] = n[v] + 0.1 * s2 * t1[v] + 0.1 * c2 * t2[v];
        u[v] = -0.1 * s2 * t1[v] - 0.1 * c2 * t2[v];
        a[v] = 0.5 * nxx[v] + 0.1 * s2 / TAU * t1[v] + 0.1 * c2 / TAU * t2[v];
    }
    (prim(1.0, u, 0.1, b), a)
}

fn alfven3(nx: usize, ny: usize, nz: usize, kind: GridKind) -> Result<Problem3, HarnessError> {
    let n = A3_N;
    let ext = [1.0 / n[0], 1.0 / n[1], 1.0 / n[2]];
    let grid = Grid3::build(&GridSpec3::new(
        nx,
        ny,
        nz,
        [0.0; 3],
        ext,
        kind,
    ))?;
    let (q, a) = averages_qa3(&grid, &alfven3_point);
    // wrapping one period in +d offsets A by 1/2 n x (L_d e_d)
    let mut aoff = [[0.0; 3]; 3];
    for d in 0..3 {
        let mut shift = [0.0; 3];
        shift[d] = ext[d];
        aoff[d] = [
            0.5 * (n[1] * shift[2] - n[2] * shift[1]),
            0.5 * (n[2] * shift[0] - n[0] * shift[2]),
            0.5 * (n[0] * shift[1] - n[1] * shift[0]),
        ];
    }
    let exact: Exact3 = Box::new(move |grid, t| {
        averages_qa3(grid, &move |x| {
            alfven3_point([x[0] - t * n[0], x[1] - t * n[1], x[2] - t * n[2]])
        })
    });
    Ok(Problem3 {
        grid,
        q,
        a,
        bc: Box::new(PeriodicBc3 { aoff }),
        cfl: 0.6,
        t_final: 1.0,
        exact: Some(exact),
    })
}

// ------------------------------------------------------------- planar Riemann
// problem on [-0.7, 0.7]^2, jump at x = 0.

const SQRT_4PI: f64 = 3.544_907_701_811_032;

pub fn shocktube_point(x: [f64; 2]) -> ([f64; 8], [f64; 3]) {
    let b3 = 2.0 / SQRT_4PI;
    let b1 = 2.0 / SQRT_4PI;
    let (q, b2) = if x[0] < 0.0 {
        (
            prim(
                1.08,
                [1.2, 0.01, 0.5],
                0.95,
                [b1, 3.6 / SQRT_4PI, b3],
            ),
            3.6 / SQRT_4PI,
        )
    } else {
        (
            prim(1.0, [0.0, 0.0, 0.0], 1.0, [b1, 4.0 / SQRT_4PI, b3]),
            4.0 / SQRT_4PI,
        )
    };
    let a = [0.0, x[0] * b3, x[1] * b1 - x[0] * b2];
    (q, a)
}

fn shocktube(nx: usize, ny: usize, kind: GridKind) -> Result<Problem2, HarnessError> {
    let grid = Grid2::build(&GridSpec2::new(
        nx,
        ny,
        [-0.7, -0.7],
        [0.7, 0.7],
        kind,
    ))?;
    let (q, a) = averages_qa2(&grid, &shocktube_point);
    Ok(Problem2 {
        grid,
        q,
        a,
        bc: Box::new(ExtrapBc2),
        cfl: 0.5,
        t_final: 0.2,
        ct25d_full: true,
        exact: None,
    })
}

// -------------------------------------------------------------- cloud problem:
// strong planar shock at x = 0.05 running into a dense spherical/circular
// region in hydrostatic balance with the pre-shock fluid.

const CS_BL: f64 = 2.182_618_2;
const CS_BR: f64 = 0.564_189_58;
const CS_R: f64 = 0.15;

pub fn cloudshock_point2(x: [f64; 2]) -> ([f64; 8], [f64; 3]) {
    cloudshock_point(
        x[0],
        x[1],
        (x[0] - 0.25).powi(2) + (x[1] - 0.5).powi(2),
    )
}

pub fn cloudshock_point3(x: [f64; 3]) -> ([f64; 8], [f64; 3]) {
    cloudshock_point(
        x[0],
        x[1],
        (x[0] - 0.25).powi(2) + (x[1] - 0.5).powi(2) + (x[2] - 0.5).powi(2),
    )
}

/// B = (0, B2, B3) with A = (A1(y), 0, A3(x)): B2 = -A3_x, B3 = -A1_y.
fn cloudshock_point(x: f64, y: f64, r2: f64) -> ([f64; 8], [f64; 3]) {
    if x < 0.05 {
        let q = prim(
            3.86859,
            [11.2536, 0.0, 0.0],
            167.345,
            [0.0, CS_BL, -CS_BL],
        );
        (q, [CS_BL * y, 0.0, -CS_BL * (x - 0.05)])
    } else {
        let rho = if r2 < CS_R * CS_R { 10.0 } else { 1.0 };
        let q = prim(rho, [0.0, 0.0, 0.0], 1.0, [0.0, CS_BR, CS_BR]);
        (q, [-CS_BR * y, 0.0, -CS_BR * (x - 0.05)])
    }
}

fn cloudshock2(nx: usize, ny: usize, kind: GridKind) -> Result<Problem2, HarnessError> {
    let grid = Grid2::build(&GridSpec2::new(nx, ny, [0.0, 0.0], [1.0, 1.0], kind))?;
    let (q, a) = averages_qa2(&grid, &cloudshock_point2);
    let bc = InflowLeftBc2::new(&grid, &q, &a);
    Ok(Problem2 {
        grid,
        q,
        a,
        bc: Box::new(bc),
        cfl: 0.4,
        t_final: 0.06,
        ct25d_full: true,
        exact: None,
    })
}

fn cloudshock3(nx: usize, ny: usize, nz: usize) -> Result<Problem3, HarnessError> {
    let grid = Grid3::build(&GridSpec3::new(
        nx,
        ny,
        nz,
        [0.0; 3],
        [1.0; 3],
        GridKind::Cartesian,
    ))?;
    let (q, a) = averages_qa3(&grid, &cloudshock_point3);
    let bc = InflowLeftBc3::new(&grid, &q, &a);
    Ok(Problem3 {
        grid,
        q,
        a,
        bc: Box::new(bc),
        cfl: 0.4,
        t_final: 0.06,
        exact: None,
    })
}

/// 2D problem by name; `kind` overrides the problem's default grid mapping.
pub fn setup2_with_kind(
    name: &str,
    nx: usize,
    ny: usize,
    kind: Option<GridKind>,
) -> Result<Problem2, HarnessError> {
    let or = |def: GridKind| kind.clone().unwrap_or(def);
    match name {
        "alfven2.5d" => alfven2(nx, ny, or(GridKind::Cartesian)),
        "alfven2.5d-mapped" => alfven2(
            nx,
            ny,
            or(GridKind::Colella {
                beta: 0.1,
                l: 1.0 / A2_COS,
                m: 1.0 / A2_SIN,
            }),
        ),
        "shocktube" => shocktube(nx, ny, or(GridKind::Cartesian)),
        "shocktube-mapped" => shocktube(
            nx,
            ny,
            or(GridKind::ShocktubeBlend { beta: 1.0 / 15.0 }),
        ),
        "cloudshock2.5d" => cloudshock2(nx, ny, or(GridKind::Cartesian)),
        "cloudshock2.5d-mapped" => cloudshock2(
            nx,
            ny,
            or(GridKind::CloudInclusion {
                amp: 0.1,
                r0: CS_R,
                cx: 0.25,
                cy: 0.5,
            }),
        ),
        other => Err(HarnessError::UnknownProblem(other.to_string())),
    }
}

pub fn setup2(name: &str, nx: usize, ny: usize) -> Result<Problem2, HarnessError> {
    setup2_with_kind(name, nx, ny, None)
}

pub fn setup3(name: &str, nx: usize, ny: usize, nz: usize) -> Result<Problem3, HarnessError> {
    match name {
        "alfven3d" => alfven3(nx, ny, nz, GridKind::Cartesian),
        "cloudshock3d" => cloudshock3(nx, ny, nz),
        other => Err(HarnessError::UnknownProblem(other.to_string())),
    }
}

/// Per-problem default aspect: cells in y (and z) per cell in x.
pub fn default_dims(name: &str, nx: usize) -> (usize, usize, usize) {
    match name {
        "alfven2.5d" | "alfven2.5d-mapped" => (nx, 2 * nx, 1),
        "alfven3d" => (nx, 2 * nx, 2 * nx),
        "cloudshock3d" => (nx, nx, nx),
        _ => (nx, nx, 1),
    }
}
