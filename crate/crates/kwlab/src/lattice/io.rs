//! Flat little-endian binary layout for matrix-valued lattice fields.
//!
//! ```text
//! magic  "KWLF"          4 bytes
//! version u32             currently 1
//! ndim    u32
//! shape   ndim × u64
//! periodic ndim × u8
//! spacing ndim × f64
//! origin  ndim × f64
//! degree  u32
//! n       u32             matrix size
//! ncomp   u32
//! tag     u8              0 = su(n), 1 = sl(n,C)
//! data    ncomp × sites × n × n × (re f64, im f64), row-major
//! ```

use super::grid::{Axis, Grid};
use super::field::LatticeField;
use crate::lie::{Algebra, LieElement};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::io::{self, Read, Write};

const MAGIC: &[u8; 4] = b"KWLF";
const VERSION: u32 = 1;

pub fn write_field<W: Write>(w: &mut W, f: &LatticeField<LieElement>) -> io::Result<()> {
    let grid = &f.grid;
    let first = f
        .comps
        .first()
        .and_then(|c| c.first())
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "empty field"))?;
    let n = first.dim();
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(grid.dim() as u32).to_le_bytes())?;
    for a in grid.axes() {
        w.write_all(&(a.n as u64).to_le_bytes())?;
    }
    for a in grid.axes() {
        w.write_all(&[a.periodic as u8])?;
    }
    for a in grid.axes() {
        w.write_all(&a.h.to_le_bytes())?;
    }
    for a in grid.axes() {
        w.write_all(&a.origin.to_le_bytes())?;
    }
    w.write_all(&(f.degree as u32).to_le_bytes())?;
    w.write_all(&(n as u32).to_le_bytes())?;
    w.write_all(&(f.comps.len() as u32).to_le_bytes())?;
    w.write_all(&[match first.tag() {
        Algebra::SuN => 0u8,
        Algebra::SlNC => 1u8,
    }])?;
    for comp in &f.comps {
        for x in comp {
            if x.dim() != n {
                return Err(io::Error::new(io::ErrorKind::InvalidInput, "mixed matrix sizes"));
            }
            for i in 0..n {
                for j in 0..n {
                    let z = x.matrix()[(i, j)];
                    w.write_all(&z.re.to_le_bytes())?;
                    w.write_all(&z.im.to_le_bytes())?;
                }
            }
        }
    }
    Ok(())
}

fn bad(msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.to_string())
}

fn read_u32<R: Read>(r: &mut R) -> io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}
fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}
fn read_f64<R: Read>(r: &mut R) -> io::Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}
fn read_u8<R: Read>(r: &mut R) -> io::Result<u8> {
    let mut b = [0u8; 1];
    r.read_exact(&mut b)?;
    Ok(b[0])
}

pub fn read_field<R: Read>(r: &mut R) -> io::Result<LatticeField<LieElement>> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(bad("bad magic"));
    }
    if read_u32(r)? != VERSION {
        return Err(bad("unsupported version"));
    }
    let ndim = read_u32(r)? as usize;
    if ndim == 0 || ndim > 4 {
        return Err(bad("bad dimension"));
    }
    let mut shape = Vec::with_capacity(ndim);
    for _ in 0..ndim {
        shape.push(read_u64(r)? as usize);
    }
    let mut periodic = Vec::with_capacity(ndim);
    for _ in 0..ndim {
        periodic.push(read_u8(r)? != 0);
    }
    let mut h = Vec::with_capacity(ndim);
    for _ in 0..ndim {
        h.push(read_f64(r)?);
    }
    let mut origin = Vec::with_capacity(ndim);
    for _ in 0..ndim {
        origin.push(read_f64(r)?);
    }
    let axes = (0..ndim)
        .map(|i| Axis { n: shape[i], h: h[i], origin: origin[i], periodic: periodic[i] })
        .collect();
    let grid = Grid::new(axes).map_err(|e| bad(&e.to_string()))?;
    let degree = read_u32(r)? as usize;
    let n = read_u32(r)? as usize;
    let ncomp = read_u32(r)? as usize;
    let tag = match read_u8(r)? {
        0 => Algebra::SuN,
        1 => Algebra::SlNC,
        _ => return Err(bad("bad algebra tag")),
    };
    if ncomp != super::forms::binomial(ndim, degree) {
        return Err(bad("component count does not match degree"));
    }
    let mut comps = Vec::with_capacity(ncomp);
    for _ in 0..ncomp {
        let mut comp = Vec::with_capacity(grid.len());
        for _ in 0..grid.len() {
            let mut m = DMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let re = read_f64(r)?;
                    let im = read_f64(r)?;
                    m[(i, j)] = Complex64::new(re, im);
                }
            }
            comp.push(LieElement::from_matrix_unchecked(m, tag));
        }
        comps.push(comp);
    }
    Ok(LatticeField { grid, degree, comps })
}
