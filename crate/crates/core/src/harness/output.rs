//! Plot-ready file output: CSV state dumps, legacy-VTK structured grids
//! with cell data, and two-column gnuplot curve files.

use crate::geometry::{Grid2, Grid3, NG};
use crate::mhd::primitive;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::HarnessError;

fn create(path: &Path) -> Result<BufWriter<std::fs::File>, HarnessError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)
                .map_err(|e| HarnessError::Io(path.to_path_buf(), e))?;
        }
    }
    std::fs::File::create(path)
        .map(BufWriter::new)
        .map_err(|e| HarnessError::Io(path.to_path_buf(), e))
}

fn finish<W: Write>(mut w: W, path: &Path) -> Result<(), HarnessError> {
    w.flush().map_err(|e| HarnessError::Io(path.to_path_buf(), e))
}

macro_rules! emit {
    ($w:expr, $path:expr, $($arg:tt)*) => {
        write!($w, $($arg)*).map_err(|e| HarnessError::Io($path.to_path_buf(), e))?
    };
}

fn row_values(q: &[f64; 8], a: &[f64; 3]) -> [f64; 12] {
    let w = primitive(q).unwrap_or([q[0], 0.0, 0.0, 0.0, f64::NAN, q[5], q[6], q[7]]);
    [
        q[0], w[1], w[2], w[3], q[4], q[5], q[6], q[7], w[4], a[0], a[1], a[2],
    ]
}

pub fn write_csv2(
    path: &Path,
    grid: &Grid2,
    q: &[[f64; 8]],
    a: &[[f64; 3]],
) -> Result<(), HarnessError> {
    let mut w = create(path)?;
    emit!(w, path, "i,j,x,y,rho,ux,uy,uz,E,Bx,By,Bz,p,A1,A2,A3\n");
    for j in NG..NG + grid.ny {
        for i in NG..NG + grid.nx {
            let c = grid.cid(i, j);
            let cen = grid.cells[c].centroid;
            let v = row_values(&q[c], &a[c]);
            emit!(w, path, "{},{},{:.16e},{:.16e}", i - NG, j - NG, cen[0], cen[1]);
            for x in v.iter() {
                emit!(w, path, ",{:.16e}", x);
            }
            emit!(w, path, "\n");
        }
    }
    finish(w, path)
}

pub fn write_csv3(
    path: &Path,
    grid: &Grid3,
    q: &[[f64; 8]],
    a: &[[f64; 3]],
) -> Result<(), HarnessError> {
    let mut w = create(path)?;
    emit!(w, path, "i,j,k,x,y,z,rho,ux,uy,uz,E,Bx,By,Bz,p,A1,A2,A3\n");
    for k in NG..NG + grid.nz {
        for j in NG..NG + grid.ny {
            for i in NG..NG + grid.nx {
                let c = grid.cid(i, j, k);
                let cen = grid.cells[c].centroid;
                let v = row_values(&q[c], &a[c]);
                emit!(
                    w,
                    path,
                    "{},{},{},{:.16e},{:.16e},{:.16e}",
                    i - NG,
                    j - NG,
                    k - NG,
                    cen[0],
                    cen[1],
                    cen[2]
                );
                for x in v.iter() {
                    emit!(w, path, ",{:.16e}", x);
                }
                emit!(w, path, "\n");
            }
        }
    }
    finish(w, path)
}

fn vtk_cell_data<W: Write>(
    w: &mut W,
    path: &Path,
    n: usize,
    rows: &mut dyn Iterator<Item = [f64; 12]>,
) -> Result<(), HarnessError> {
    let vals: Vec<[f64; 12]> = rows.collect();
    let scalar = |w: &mut W, name: &str, idx: usize| -> Result<(), HarnessError> {
        emit!(w, path, "SCALARS {} double 1\nLOOKUP_TABLE default\n", name);
        for v in &vals {
            emit!(w, path, "{:.16e}\n", v[idx]);
        }
        Ok(())
    };
    let vector = |w: &mut W, name: &str, idx: usize| -> Result<(), HarnessError> {
        emit!(w, path, "VECTORS {} double\n", name);
        for v in &vals {
            emit!(w, path, "{:.16e} {:.16e} {:.16e}\n", v[idx], v[idx + 1], v[idx + 2]);
        }
        Ok(())
    };
    emit!(w, path, "CELL_DATA {}\n", n);
    scalar(w, "rho", 0)?;
    scalar(w, "E", 4)?;
    scalar(w, "p", 8)?;
    vector(w, "u", 1)?;
    vector(w, "B", 5)?;
    vector(w, "A", 9)?;
    Ok(())
}

/// Legacy-VTK structured grid of the interior cells.
pub fn write_vtk2(
    path: &Path,
    grid: &Grid2,
    q: &[[f64; 8]],
    a: &[[f64; 3]],
) -> Result<(), HarnessError> {
    let mut w = create(path)?;
    let (nx, ny) = (grid.nx, grid.ny);
    emit!(w, path, "# vtk DataFile Version 3.0\nstate\nASCII\n");
    emit!(w, path, "DATASET STRUCTURED_GRID\n");
    emit!(w, path, "DIMENSIONS {} {} 1\n", nx + 1, ny + 1);
    emit!(w, path, "POINTS {} double\n", (nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            let xc = grid.lo[0] + i as f64 * grid.dxc;
            let yc = grid.lo[1] + j as f64 * grid.dyc;
            let p = grid.kind.map2(xc, yc);
            emit!(w, path, "{:.16e} {:.16e} 0\n", p[0], p[1]);
        }
    }
    let mut rows = (0..nx * ny).map(|t| {
        let c = grid.cid(NG + t % nx, NG + t / nx);
        row_values(&q[c], &a[c])
    });
    vtk_cell_data(&mut w, path, nx * ny, &mut rows)?;
    finish(w, path)
}

pub fn write_vtk3(
    path: &Path,
    grid: &Grid3,
    q: &[[f64; 8]],
    a: &[[f64; 3]],
) -> Result<(), HarnessError> {
    let mut w = create(path)?;
    let (nx, ny, nz) = (grid.nx, grid.ny, grid.nz);
    emit!(w, path, "# vtk DataFile Version 3.0\nstate\nASCII\n");
    emit!(w, path, "DATASET STRUCTURED_GRID\n");
    emit!(w, path, "DIMENSIONS {} {} {}\n", nx + 1, ny + 1, nz + 1);
    emit!(w, path, "POINTS {} double\n", (nx + 1) * (ny + 1) * (nz + 1));
    for k in 0..=nz {
        for j in 0..=ny {
            for i in 0..=nx {
                let p = grid.kind.map3(
                    grid.lo[0] + i as f64 * grid.dxc,
                    grid.lo[1] + j as f64 * grid.dyc,
                    grid.lo[2] + k as f64 * grid.dzc,
                );
                emit!(w, path, "{:.16e} {:.16e} {:.16e}\n", p[0], p[1], p[2]);
            }
        }
    }
    let n = nx * ny * nz;
    let mut rows = (0..n).map(|t| {
        let (i, j, k) = (t % nx, (t / nx) % ny, t / (nx * ny));
        let c = grid.cid(NG + i, NG + j, NG + k);
        row_values(&q[c], &a[c])
    });
    vtk_cell_data(&mut w, path, n, &mut rows)?;
    finish(w, path)
}

/// Two-column `x value` curve file.
pub fn write_curve(path: &Path, xs: &[f64], vs: &[f64]) -> Result<(), HarnessError> {
    let mut w = create(path)?;
    for (x, v) in xs.iter().zip(vs) {
        emit!(w, path, "{:.16e} {:.16e}\n", x, v);
    }
    finish(w, path)
}

/// Mid-row x slice of a 2D field: (centroid x, value) pairs.
pub fn midline_slice2(
    grid: &Grid2,
    field: &dyn Fn(usize) -> f64,
) -> (Vec<f64>, Vec<f64>) {
    let j = NG + grid.ny / 2;
    let mut xs = Vec::with_capacity(grid.nx);
    let mut vs = Vec::with_capacity(grid.nx);
    for i in NG..NG + grid.nx {
        let c = grid.cid(i, j);
        xs.push(grid.cells[c].centroid[0]);
        vs.push(field(c));
    }
    (xs, vs)
}
