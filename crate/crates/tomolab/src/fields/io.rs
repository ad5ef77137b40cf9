//! Field serialization: the TOMF1 binary layout and CSV export.
//!
//! Binary layout, little-endian throughout:
//!   magic "TOMF1" | rank u8 | rank × (label u8, mode u8, start f64, step f64,
//!   count u64, periodic u8) | values row-major as (re f64, im f64) pairs.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::{Axis, AxisLabel};
use crate::fields::field::{Field, MAX_RANK};

const MAGIC: &[u8; 5] = b"TOMF1";

pub fn write_field<W: Write>(w: &mut W, f: &Field) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&[f.rank() as u8])?;
    for ax in f.axes() {
        w.write_all(&[ax.label.code(), ax.mode])?;
        w.write_all(&ax.start.to_le_bytes())?;
        w.write_all(&ax.step.to_le_bytes())?;
        w.write_all(&(ax.count as u64).to_le_bytes())?;
        w.write_all(&[ax.periodic as u8])?;
    }
    for v in f.values() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_field<R: Read>(r: &mut R) -> Result<Field> {
    let mut magic = [0u8; 5];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("not a TOMF1 field file".to_string()));
    }
    let mut rank = [0u8; 1];
    r.read_exact(&mut rank)?;
    let rank = rank[0] as usize;
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::Format(format!("unsupported rank {rank}")));
    }
    let mut axes = Vec::with_capacity(rank);
    for _ in 0..rank {
        let mut head = [0u8; 2];
        r.read_exact(&mut head)?;
        let label = AxisLabel::from_code(head[0])?;
        let mode = head[1];
        let mut f8 = [0u8; 8];
        r.read_exact(&mut f8)?;
        let start = f64::from_le_bytes(f8);
        r.read_exact(&mut f8)?;
        let step = f64::from_le_bytes(f8);
        r.read_exact(&mut f8)?;
        let count = u64::from_le_bytes(f8) as usize;
        let mut per = [0u8; 1];
        r.read_exact(&mut per)?;
        let ax = Axis { label, mode, start, step, count, periodic: per[0] != 0 };
        ax.validate().map_err(|e| Error::Format(e.to_string()))?;
        axes.push(ax);
    }
    let n: usize = axes.iter().map(|a| a.count).product();
    if n > (1 << 30) {
        return Err(Error::Format(format!("grid size {n} too large")));
    }
    let mut values = Vec::with_capacity(n);
    let mut f8 = [0u8; 8];
    for _ in 0..n {
        r.read_exact(&mut f8)?;
        let re = f64::from_le_bytes(f8);
        r.read_exact(&mut f8)?;
        let im = f64::from_le_bytes(f8);
        values.push(C64::new(re, im));
    }
    Field::new(axes, values).map_err(|e| Error::Format(e.to_string()))
}

pub fn save_field(path: &Path, f: &Field) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_field(&mut file, f)
}

pub fn load_field(path: &Path) -> Result<Field> {
    let mut file = std::io::BufReader::new(std::fs::File::open(path)?);
    read_field(&mut file)
}

/// CSV export: one row per grid node, coordinate columns then re/im.
pub fn write_csv<W: Write>(w: &mut W, f: &Field) -> Result<()> {
    let mut header: Vec<String> = f
        .axes()
        .iter()
        .map(|a| {
            if a.mode == 0 {
                a.label.name().to_string()
            } else {
                format!("{}{}", a.label.name(), a.mode)
            }
        })
        .collect();
    header.push("re".to_string());
    header.push("im".to_string());
    writeln!(w, "{}", header.join(","))?;
    let rank = f.rank();
    let mut idx = vec![0usize; rank];
    for flat in 0..f.len() {
        f.unravel(flat, &mut idx);
        for (d, &i) in idx.iter().enumerate() {
            write!(w, "{:.17e},", f.axes()[d].at(i))?;
        }
        let v = f.values()[flat];
        writeln!(w, "{:.17e},{:.17e}", v.re, v.im)?;
    }
    Ok(())
}

pub fn save_csv(path: &Path, f: &Field) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_csv(&mut file, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::axis::{default_theta_axis, default_x_axis};

    #[test]
    fn binary_roundtrip_is_exact() {
        let f = Field::from_fn(vec![default_x_axis(), default_theta_axis()], |c| {
            C64::new((-c[0] * c[0]).exp() * c[1].cos(), 0.25 * c[1].sin())
        })
        .unwrap();
        let mut buf = Vec::new();
        write_field(&mut buf, &f).unwrap();
        let g = read_field(&mut buf.as_slice()).unwrap();
        assert_eq!(f.axes(), g.axes());
        assert_eq!(f.values(), g.values());
    }

    #[test]
    fn rejects_bad_magic() {
        let buf = b"NOPE!\x01".to_vec();
        assert!(read_field(&mut buf.as_slice()).is_err());
    }
}
