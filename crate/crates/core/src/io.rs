//! JSON files for modular data and solver artifacts. Every write goes to a
//! temporary file in the target directory and is renamed into place.

use crate::abelian::{cis_turn, Q};
use crate::error::{Error, Result};
use crate::modular::{CMat, ModularData, SimpleLabel};
use crate::quadratic::QuadIrr;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Meta {
    pub name: String,
    pub rank: usize,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TwistEntry {
    /// `"k/N"`, the twist `exp(2πi k/N)`
    Exact(String),
    Float([f64; 2]),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModularDataFile {
    pub meta: Meta,
    pub labels: Vec<SimpleLabel>,
    pub dims: Vec<f64>,
    pub dims_exact: Vec<Option<QuadIrr>>,
    /// row-major `[re, im]`
    #[serde(rename = "S")]
    pub s: Vec<[f64; 2]>,
    #[serde(rename = "T")]
    pub t: Vec<TwistEntry>,
}

impl From<&ModularData> for ModularDataFile {
    fn from(md: &ModularData) -> Self {
        let r = md.rank();
        let mut s = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let z = md.s[(i, j)];
                s.push([z.re, z.im]);
            }
        }
        let t =
            md.t.iter()
                .zip(&md.t_turns)
                .map(|(z, q)| match q {
                    Some(q) => TwistEntry::Exact(format!("{}/{}", q.numer(), q.denom())),
                    None => TwistEntry::Float([z.re, z.im]),
                })
                .collect();
        ModularDataFile {
            meta: Meta {
                name: md.name.clone(),
                rank: r,
                note: None,
            },
            labels: md.labels.clone(),
            dims: md.dims.clone(),
            dims_exact: md.dims_exact.clone(),
            s,
            t,
        }
    }
}

/// Parse `"a/b"` or an integer.
pub fn parse_fraction(s: &str) -> Result<Q> {
    let bad = || Error::InvalidInput(format!("bad fraction {s:?}"));
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if b == 0 {
        return Err(bad());
    }
    Ok(Q::new(a, b))
}

impl TryFrom<ModularDataFile> for ModularData {
    type Error = Error;
    fn try_from(f: ModularDataFile) -> Result<Self> {
        let r = f.labels.len();
        if f.meta.rank != r
            || f.dims.len() != r
            || f.dims_exact.len() != r
            || f.t.len() != r
            || f.s.len() != r * r
        {
            return Err(Error::InvalidInput(format!(
                "inconsistent sizes in modular data file (rank {})",
                f.meta.rank
            )));
        }
        let s = CMat::from_row_iterator(r, r, f.s.iter().map(|p| Complex64::new(p[0], p[1])));
        let mut t = Vec::with_capacity(r);
        let mut t_turns = Vec::with_capacity(r);
        for e in &f.t {
            match e {
                TwistEntry::Exact(s) => {
                    let q = parse_fraction(s)?;
                    t.push(cis_turn(q));
                    t_turns.push(Some(q));
                }
                TwistEntry::Float(p) => {
                    t.push(Complex64::new(p[0], p[1]));
                    t_turns.push(None);
                }
            }
        }
        Ok(ModularData {
            name: f.meta.name,
            labels: f.labels,
            dims: f.dims,
            dims_exact: f.dims_exact,
            s,
            t,
            t_turns,
        })
    }
}

/// Serialize `value` as pretty JSON and atomically replace `path`.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, value)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_modular_data(path: &Path, md: &ModularData) -> Result<()> {
    write_json_atomic(path, &ModularDataFile::from(md))
}

pub fn read_modular_data(path: &Path) -> Result<ModularData> {
    ModularData::try_from(read_json::<ModularDataFile>(path)?)
}
