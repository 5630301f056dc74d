//! Ideal MHD physics: equation of state, fluxes, characteristic speeds,
//! eigendecomposition, and the f-wave interface solver.
//!
//! Conserved layout: [rho, rho u1, rho u2, rho u3, E, B1, B2, B3].
//! Primitive layout: [rho, u1, u2, u3, p, B1, B2, B3].
//!
//! The eigensystem is the 8-wave (Godunov-Powell) system including the
//! divergence wave at speed u.n. Right eigenvectors are built in primitive
//! variables in the frame (n, t1, t2) with the usual entropy-respecting
//! scaling (alpha_f/alpha_s normalization), which stays regular through the
//! B.n -> 0 and triple-umbilic degeneracies, then pushed to conservative
//! variables and rotated to the lab frame. Left eigenvectors come from a
//! dense LU inversion of R.

mod rhs2;
mod rhs3;

pub use rhs2::{mhd_rhs_cartesian, mhd_rhs_mapped, MhdRhs2};
pub use rhs3::MhdRhs3;

use nalgebra::{SMatrix, SVector};
use thiserror::Error;

pub const GAMMA: f64 = 5.0 / 3.0;

pub type ConservedState = [f64; 8];
pub type PrimitiveState = [f64; 8];

#[derive(Debug, Error)]
pub enum MhdError {
    #[error("positivity failure at cell ({i}, {j}{}): rho = {rho:.6e}, p = {p:.6e}", k.map(|k| format!(", {k}")).unwrap_or_default())]
    Positivity {
        i: isize,
        j: isize,
        k: Option<isize>,
        rho: f64,
        p: f64,
    },
}

#[inline]
pub fn dot3(a: &[f64], b: &[f64]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// EOS: p = (gamma-1)(E - |B|^2/2 - rho |u|^2 / 2).
/// Returns None on non-positive density or pressure.
#[inline]
pub fn primitive(q: &ConservedState) -> Option<PrimitiveState> {
    let rho = q[0];
    if !(rho > 0.0) {
        return None;
    }
    let u = [q[1] / rho, q[2] / rho, q[3] / rho];
    let b2 = dot3(&q[5..8], &q[5..8]);
    let ke = 0.5 * rho * dot3(&u, &u);
    let p = (GAMMA - 1.0) * (q[4] - 0.5 * b2 - ke);
    if !(p > 0.0) {
        return None;
    }
    Some([rho, u[0], u[1], u[2], p, q[5], q[6], q[7]])
}

#[inline]
pub fn conserved(w: &PrimitiveState) -> ConservedState {
    let rho = w[0];
    let u = [w[1], w[2], w[3]];
    let b = [w[5], w[6], w[7]];
    let e = w[4] / (GAMMA - 1.0) + 0.5 * rho * dot3(&u, &u) + 0.5 * dot3(&b, &b);
    [
        rho,
        rho * u[0],
        rho * u[1],
        rho * u[2],
        e,
        b[0],
        b[1],
        b[2],
    ]
}

/// F(q).n for unit direction n.
#[inline]
pub fn flux(w: &PrimitiveState, n: &[f64; 3]) -> [f64; 8] {
    let rho = w[0];
    let u = [w[1], w[2], w[3]];
    let p = w[4];
    let b = [w[5], w[6], w[7]];
    let un = dot3(&u, n);
    let bn = dot3(&b, n);
    let ptot = p + 0.5 * dot3(&b, &b);
    let e = p / (GAMMA - 1.0) + 0.5 * rho * dot3(&u, &u) + 0.5 * dot3(&b, &b);
    let ub = dot3(&u, &b);
    [
        rho * un,
        rho * u[0] * un + ptot * n[0] - bn * b[0],
        rho * u[1] * un + ptot * n[1] - bn * b[1],
        rho * u[2] * un + ptot * n[2] - bn * b[2],
        (e + ptot) * un - bn * ub,
        un * b[0] - bn * u[0],
        un * b[1] - bn * u[1],
        un * b[2] - bn * u[2],
    ]
}

/// Characteristic speeds (a, c_a, c_s, c_f) in direction n, with the
/// ordering c_s <= c_a <= c_f and c_s <= a <= c_f enforced against roundoff.
#[inline]
pub fn wave_speeds(w: &PrimitiveState, n: &[f64; 3]) -> (f64, f64, f64, f64) {
    let rho = w[0];
    let p = w[4];
    let b = [w[5], w[6], w[7]];
    let a2 = GAMMA * p / rho;
    let bn = dot3(&b, n);
    let ca2 = bn * bn / rho;
    let bb = dot3(&b, &b) / rho;
    let term = a2 + bb;
    let disc = (term * term - 4.0 * a2 * ca2).max(0.0).sqrt();
    let cf2 = 0.5 * (term + disc);
    let cs2 = 0.5 * (term - disc).max(0.0);
    let a = a2.sqrt();
    let ca = ca2.sqrt();
    let mut cf = cf2.sqrt();
    let mut cs = cs2.sqrt();
    cf = cf.max(ca).max(a);
    cs = cs.min(ca);
    (a, ca, cs, cf)
}

/// An orthonormal pair completing n to a right-handed frame (n, t1, t2).
#[inline]
pub fn tangent_frame(n: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    // axis least aligned with n
    let ax = if n[0].abs() <= n[1].abs() && n[0].abs() <= n[2].abs() {
        [1.0, 0.0, 0.0]
    } else if n[1].abs() <= n[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let mut t1 = [
        n[1] * ax[2] - n[2] * ax[1],
        n[2] * ax[0] - n[0] * ax[2],
        n[0] * ax[1] - n[1] * ax[0],
    ];
    let len = (dot3(&t1, &t1)).sqrt();
    for v in t1.iter_mut() {
        *v /= len;
    }
    let t2 = [
        n[1] * t1[2] - n[2] * t1[1],
        n[2] * t1[0] - n[0] * t1[2],
        n[0] * t1[1] - n[1] * t1[0],
    ];
    (t1, t2)
}

/// Eigenvalues and right eigenvectors (conservative variables, lab frame)
/// in nondecreasing order:
/// u-cf, u-ca, u-cs, u (entropy), u (divergence), u+cs, u+ca, u+cf.
pub fn eigen_right(w: &PrimitiveState, n: &[f64; 3]) -> ([f64; 8], SMatrix<f64, 8, 8>) {
    let (t1, t2) = tangent_frame(n);
    let rho = w[0];
    let u = [w[1], w[2], w[3]];
    let b = [w[5], w[6], w[7]];
    let un = dot3(&u, n);
    let ut1 = dot3(&u, &t1);
    let ut2 = dot3(&u, &t2);
    let bn = dot3(&b, n);
    let bt1 = dot3(&b, &t1);
    let bt2 = dot3(&b, &t2);
    let (a, ca, cs, cf) = wave_speeds(w, n);
    let a2 = a * a;
    let s = if bn >= 0.0 { 1.0 } else { -1.0 };
    let bperp = (bt1 * bt1 + bt2 * bt2).sqrt();
    let (beta1, beta2) = if bperp > 1e-12 * (bn.abs() + (rho * a2).sqrt()) {
        (bt1 / bperp, bt2 / bperp)
    } else {
        (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
    };
    let d2 = cf * cf - cs * cs;
    let (alf, als) = if d2 > 1e-12 * a2 {
        let af2 = ((a2 - cs * cs) / d2).clamp(0.0, 1.0);
        (af2.sqrt(), (1.0 - af2).max(0.0).sqrt())
    } else {
        (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
    };
    let sq = rho.sqrt();

    // primitive-variable eigenvectors in the rotated frame
    // rows: rho, un, ut1, ut2, p, Bn, Bt1, Bt2
    let mut rp = [[0.0f64; 8]; 8];
    let set = |rp: &mut [[f64; 8]; 8], col: usize, v: [f64; 8]| {
        for r in 0..8 {
            rp[r][col] = v[r];
        }
    };
    // fast (-) and fast (+)
    set(
        &mut rp,
        0,
        [
            rho * alf,
            -alf * cf,
            s * als * cs * beta1,
            s * als * cs * beta2,
            rho * alf * a2,
            0.0,
            sq * a * als * beta1,
            sq * a * als * beta2,
        ],
    );
    set(
        &mut rp,
        7,
        [
            rho * alf,
            alf * cf,
            -s * als * cs * beta1,
            -s * als * cs * beta2,
            rho * alf * a2,
            0.0,
            sq * a * als * beta1,
            sq * a * als * beta2,
        ],
    );
    // Alfven (-): delta(ut) = (-beta2, beta1), delta(Bt) = +s sqrt(rho) (-beta2, beta1)
    set(
        &mut rp,
        1,
        [
            0.0, 0.0, -beta2, beta1, 0.0, 0.0, -s * sq * beta2, s * sq * beta1,
        ],
    );
    set(
        &mut rp,
        6,
        [
            0.0, 0.0, -beta2, beta1, 0.0, 0.0, s * sq * beta2, -s * sq * beta1,
        ],
    );
    // slow (-) and slow (+)
    set(
        &mut rp,
        2,
        [
            rho * als,
            -als * cs,
            -s * alf * cf * beta1,
            -s * alf * cf * beta2,
            rho * als * a2,
            0.0,
            -sq * a * alf * beta1,
            -sq * a * alf * beta2,
        ],
    );
    set(
        &mut rp,
        5,
        [
            rho * als,
            als * cs,
            s * alf * cf * beta1,
            s * alf * cf * beta2,
            rho * als * a2,
            0.0,
            -sq * a * alf * beta1,
            -sq * a * alf * beta2,
        ],
    );
    // entropy and divergence waves
    set(&mut rp, 3, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    set(&mut rp, 4, [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);

    // conservative variables, rotated frame: dq/dw applied columnwise
    // then rotate momentum/B blocks to the lab frame.
    let uu = [un, ut1, ut2];
    let bb = [bn, bt1, bt2];
    let ke = 0.5 * dot3(&uu, &uu);
    let mut r = SMatrix::<f64, 8, 8>::zeros();
    for col in 0..8 {
        let drho = rp[0][col];
        let du = [rp[1][col], rp[2][col], rp[3][col]];
        let dp = rp[4][col];
        let db = [rp[5][col], rp[6][col], rp[7][col]];
        // rotated conservative increments
        let dmom = [
            uu[0] * drho + rho * du[0],
            uu[1] * drho + rho * du[1],
            uu[2] * drho + rho * du[2],
        ];
        let de = ke * drho
            + rho * dot3(&uu, &du)
            + dp / (GAMMA - 1.0)
            + dot3(&bb, &db);
        // lab frame
        for d in 0..3 {
            r[(1 + d, col)] = dmom[0] * n[d] + dmom[1] * t1[d] + dmom[2] * t2[d];
            r[(5 + d, col)] = db[0] * n[d] + db[1] * t1[d] + db[2] * t2[d];
        }
        r[(0, col)] = drho;
        r[(4, col)] = de;
    }
    let lam = [
        un - cf,
        un - ca,
        un - cs,
        un,
        un,
        un + cs,
        un + ca,
        un + cf,
    ];
    (lam, r)
}

/// Full eigendecomposition with explicit left eigenvectors (L = R^-1).
pub fn eigen_decomposition(
    w: &PrimitiveState,
    n: &[f64; 3],
) -> ([f64; 8], SMatrix<f64, 8, 8>, SMatrix<f64, 8, 8>) {
    let (lam, r) = eigen_right(w, n);
    let l = r
        .lu()
        .try_inverse()
        .expect("singular eigenvector matrix");
    (lam, r, l)
}

/// f-wave interface fluctuations at the arithmetic-average primitive state.
/// Returns (A-dq, A+dq) with A-dq + A+dq = F(q+).n - F(q-).n.
pub fn riemann_fluctuations(
    wm: &PrimitiveState,
    wp: &PrimitiveState,
    n: &[f64; 3],
) -> ([f64; 8], [f64; 8]) {
    let mut wavg = [0.0; 8];
    for v in 0..8 {
        wavg[v] = 0.5 * (wm[v] + wp[v]);
    }
    let (lam, r) = eigen_right(&wavg, n);
    let fm = flux(wm, n);
    let fp = flux(wp, n);
    let mut df = SVector::<f64, 8>::zeros();
    for v in 0..8 {
        df[v] = fp[v] - fm[v];
    }
    let beta = r.lu().solve(&df).expect("singular eigenvector matrix");
    let mut am = [0.0; 8];
    let mut ap = [0.0; 8];
    for k in 0..8 {
        let (cm, cp) = if lam[k] < 0.0 {
            (1.0, 0.0)
        } else if lam[k] > 0.0 {
            (0.0, 1.0)
        } else {
            (0.5, 0.5)
        };
        for v in 0..8 {
            let z = beta[k] * r[(v, k)];
            am[v] += cm * z;
            ap[v] += cp * z;
        }
    }
    (am, ap)
}

/// Single-valued interface flux F(q-).n + A-dq used by the conservative
/// flux-difference update.
pub fn interface_flux(
    wm: &PrimitiveState,
    wp: &PrimitiveState,
    n: &[f64; 3],
) -> [f64; 8] {
    let (am, _) = riemann_fluctuations(wm, wp, n);
    let fm = flux(wm, n);
    let mut f = [0.0; 8];
    for v in 0..8 {
        f[v] = fm[v] + am[v];
    }
    f
}
