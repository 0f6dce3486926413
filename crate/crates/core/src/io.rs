//! Text formats for point sets and complex-valued functions.
//!
//! Set files: one point per line, comma-separated decimal coordinates,
//! `#` starts a comment, dimension inferred from the first data line.
//! Function files: coordinates then real and imaginary part per line.

use crate::field::{FPoint, PointSet};
use crate::spectral::{ParaboloidFunction, SpatialFunction};
use num_complex::Complex64;
use serde::Serialize;
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: expected {expected} coordinates, got {got}")]
    MixedDimensions {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("no data lines: empty sets are rejected at ingestion")]
    Empty,
    #[error("dimension {0} out of range (1..=4)")]
    BadDimension(usize),
    #[error(transparent)]
    Read(#[from] std::io::Error),
}

/// Ingestion side effects worth reporting: duplicate lines collapsed and
/// coordinates reduced mod p.
#[derive(Debug, Default, Clone, Copy, Serialize)]
pub struct ParseWarnings {
    pub duplicates: u64,
    pub reduced: u64,
}

fn split_numbers(s: &str) -> Vec<&str> {
    s.split(',').map(|t| t.trim()).collect()
}

/// Parses a set file; coordinates are reduced mod p with a warning count.
pub fn parse_set<R: BufRead>(reader: R, p: u64) -> Result<(PointSet, ParseWarnings), IoError> {
    let mut dim: Option<usize> = None;
    let mut warnings = ParseWarnings::default();
    let mut enc: Vec<u64> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let data = match line.split('#').next() {
            Some(d) => d.trim(),
            None => "",
        };
        if data.is_empty() {
            continue;
        }
        let parts = split_numbers(data);
        let d = match dim {
            Some(d) => {
                if parts.len() != d {
                    return Err(IoError::MixedDimensions {
                        line: lineno,
                        expected: d,
                        got: parts.len(),
                    });
                }
                d
            }
            None => {
                if parts.is_empty() || parts.len() > 4 {
                    return Err(IoError::BadDimension(parts.len()));
                }
                dim = Some(parts.len());
                parts.len()
            }
        };
        let mut coords = Vec::with_capacity(d);
        for part in &parts {
            let v: i64 = part.parse().map_err(|_| IoError::Malformed {
                line: lineno,
                msg: format!("cannot parse coordinate `{part}`"),
            })?;
            if v < 0 || v as u64 >= p {
                warnings.reduced += 1;
            }
            coords.push(v.rem_euclid(p as i64) as u64);
        }
        let e = FPoint::new(&coords, p).encode(p);
        if !seen.insert(e) {
            warnings.duplicates += 1;
        } else {
            enc.push(e);
        }
    }
    let dim = dim.ok_or(IoError::Empty)?;
    if enc.is_empty() {
        return Err(IoError::Empty);
    }
    Ok((PointSet::from_encoded(enc, p, dim), warnings))
}

pub fn parse_set_file(path: &std::path::Path, p: u64) -> Result<(PointSet, ParseWarnings), IoError> {
    let file = std::fs::File::open(path)?;
    parse_set(std::io::BufReader::new(file), p)
}

/// Parses a function on V: each line `x1,..,xd,re,im`; unlisted points are 0.
pub fn parse_spatial_function<R: BufRead>(
    reader: R,
    p: u64,
) -> Result<SpatialFunction, IoError> {
    let entries = parse_function_entries(reader, p)?;
    let d = entries.0;
    let mut g = SpatialFunction::zeros(p, d).map_err(|e| IoError::Malformed {
        line: 0,
        msg: e.to_string(),
    })?;
    for (enc, v) in entries.1 {
        g.values_mut()[enc as usize] = v;
    }
    Ok(g)
}

/// Parses a function on the paraboloid given by base coordinates; the
/// ambient dimension is the base dimension plus one.
pub fn parse_paraboloid_function<R: BufRead>(
    reader: R,
    p: u64,
) -> Result<ParaboloidFunction, IoError> {
    let entries = parse_function_entries(reader, p)?;
    let base_dim = entries.0;
    let mut f = ParaboloidFunction::zeros(p, base_dim + 1).map_err(|e| IoError::Malformed {
        line: 0,
        msg: e.to_string(),
    })?;
    for (enc, v) in entries.1 {
        f.values_mut()[enc as usize] = v;
    }
    Ok(f)
}

fn parse_function_entries<R: BufRead>(
    reader: R,
    p: u64,
) -> Result<(usize, Vec<(u64, Complex64)>), IoError> {
    let mut dim: Option<usize> = None;
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let data = match line.split('#').next() {
            Some(d) => d.trim(),
            None => "",
        };
        if data.is_empty() {
            continue;
        }
        let parts = split_numbers(data);
        if parts.len() < 3 {
            return Err(IoError::Malformed {
                line: lineno,
                msg: "expected coordinates plus real and imaginary parts".into(),
            });
        }
        let d = parts.len() - 2;
        match dim {
            Some(prev) if prev != d => {
                return Err(IoError::MixedDimensions {
                    line: lineno,
                    expected: prev,
                    got: d,
                })
            }
            None => {
                if d > 4 {
                    return Err(IoError::BadDimension(d));
                }
                dim = Some(d);
            }
            _ => {}
        }
        let mut coords = Vec::with_capacity(d);
        for part in &parts[..d] {
            let v: i64 = part.parse().map_err(|_| IoError::Malformed {
                line: lineno,
                msg: format!("cannot parse coordinate `{part}`"),
            })?;
            coords.push(v.rem_euclid(p as i64) as u64);
        }
        let re: f64 = parts[d].parse().map_err(|_| IoError::Malformed {
            line: lineno,
            msg: format!("cannot parse real part `{}`", parts[d]),
        })?;
        let im: f64 = parts[d + 1].parse().map_err(|_| IoError::Malformed {
            line: lineno,
            msg: format!("cannot parse imaginary part `{}`", parts[d + 1]),
        })?;
        out.push((FPoint::new(&coords, p).encode(p), Complex64::new(re, im)));
    }
    match dim {
        Some(d) => Ok((d, out)),
        None => Err(IoError::Empty),
    }
}

/// Writes a function on V, skipping exact zeros; floats use 12 significant
/// digits.
pub fn write_spatial_function<W: Write>(mut w: W, g: &SpatialFunction) -> std::io::Result<()> {
    for (n, v) in g.values().iter().enumerate() {
        if v.norm_sqr() == 0.0 {
            continue;
        }
        let pt = FPoint::decode(n as u64, g.p(), g.d());
        let coords: Vec<String> = pt.coords().iter().map(|c| c.to_string()).collect();
        writeln!(w, "{},{:.12e},{:.12e}", coords.join(","), v.re, v.im)?;
    }
    Ok(())
}
