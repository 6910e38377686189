//! Deterministic report assembly: CSV tables with stable float formatting,
//! config hashing, and the binary columnar path format.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::simulate::{PathGrid, PathSample, SchemeTag, SeedInfo};

/// FNV-1a 64-bit hash, used to fingerprint configs inside reports.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// CSV builder with shortest-round-trip float formatting; bodies are
/// byte-identical across runs and worker counts for identical inputs.
pub struct CsvTable {
    body: String,
    columns: usize,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            body: format!("{}\n", header.join(",")),
            columns: header.len(),
        }
    }

    pub fn row(&mut self, cells: &[CsvCell]) {
        assert_eq!(cells.len(), self.columns, "row width mismatch");
        let mut first = true;
        for c in cells {
            if !first {
                self.body.push(',');
            }
            first = false;
            match c {
                CsvCell::Int(v) => self.body.push_str(&v.to_string()),
                CsvCell::Float(v) => self.body.push_str(&format!("{v}")),
                CsvCell::Text(s) => self.body.push_str(s),
            }
        }
        self.body.push('\n');
    }

    pub fn finish(self) -> String {
        self.body
    }
}

pub enum CsvCell {
    Int(i64),
    Float(f64),
    Text(String),
}

/// A finished experiment: summary JSON plus named CSV tables.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config_hash: String,
    pub version: String,
    pub seed: u64,
    pub pass: bool,
    pub summary: serde_json::Value,
    pub tables: Vec<(String, String)>,
}

impl ExperimentReport {
    /// Write summary.json and the CSV tables into `dir`; returns the paths.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
        let mut written = Vec::new();
        let summary_path = dir.join("summary.json");
        let mut root = serde_json::Map::new();
        root.insert("experiment".into(), self.experiment.clone().into());
        root.insert("config_hash".into(), self.config_hash.clone().into());
        root.insert("version".into(), self.version.clone().into());
        root.insert(
            "modules".into(),
            serde_json::json!({
                "symbol": self.version, "indices": self.version,
                "potential": self.version, "simulate": self.version,
                "fractal": self.version,
            }),
        );
        root.insert("seed".into(), self.seed.into());
        root.insert("pass".into(), self.pass.into());
        root.insert("results".into(), self.summary.clone());
        let json = serde_json::to_string_pretty(&serde_json::Value::Object(root))
            .expect("summary serialises");
        std::fs::write(&summary_path, json)
            .map_err(|e| Error::Config(format!("write {}: {e}", summary_path.display())))?;
        written.push(summary_path);
        for (name, body) in &self.tables {
            let p = dir.join(name);
            std::fs::write(&p, body)
                .map_err(|e| Error::Config(format!("write {}: {e}", p.display())))?;
            written.push(p);
        }
        Ok(written)
    }
}

const PATH_MAGIC: &[u8; 4] = b"LVLB";
const PATH_FORMAT_VERSION: u32 = 1;

fn scheme_code(tag: SchemeTag) -> (u32, f64) {
    match tag {
        SchemeTag::StableSubordinator { gamma } => (1, gamma),
        SchemeTag::SymmetricStable { alpha } => (2, alpha),
        SchemeTag::LevyTypeEuler => (3, 0.0),
        SchemeTag::Subordinated => (4, 0.0),
    }
}

fn scheme_from_code(code: u32, param: f64) -> Result<SchemeTag> {
    Ok(match code {
        1 => SchemeTag::StableSubordinator { gamma: param },
        2 => SchemeTag::SymmetricStable { alpha: param },
        3 => SchemeTag::LevyTypeEuler,
        4 => SchemeTag::Subordinated,
        other => {
            return Err(Error::Config(format!(
                "unknown scheme code {other} in path file"
            )))
        }
    })
}

/// Binary columnar path format: magic "LVLB", format version, dimension,
/// grid step, node count, scheme tag and parameter, seed provenance, then
/// the node values as little-endian f64.
pub fn write_path_binary<W: Write>(path: &PathSample, mut w: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Config(format!("path write: {e}"));
    w.write_all(PATH_MAGIC).map_err(io)?;
    w.write_all(&PATH_FORMAT_VERSION.to_le_bytes()).map_err(io)?;
    w.write_all(&(path.dim() as u32).to_le_bytes()).map_err(io)?;
    w.write_all(&path.grid().dt.to_le_bytes()).map_err(io)?;
    w.write_all(&(path.len() as u64).to_le_bytes()).map_err(io)?;
    let (code, param) = scheme_code(path.scheme);
    w.write_all(&code.to_le_bytes()).map_err(io)?;
    w.write_all(&param.to_le_bytes()).map_err(io)?;
    w.write_all(&path.seed.master.to_le_bytes()).map_err(io)?;
    w.write_all(&path.seed.path_index.to_le_bytes()).map_err(io)?;
    for v in path.values() {
        w.write_all(&v.to_le_bytes()).map_err(io)?;
    }
    Ok(())
}

pub fn read_path_binary<R: Read>(mut r: R) -> Result<PathSample> {
    let io = |e: std::io::Error| Error::Config(format!("path read: {e}"));
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(io)?;
    if &magic != PATH_MAGIC {
        return Err(Error::Config("not a path file (bad magic)".into()));
    }
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4).map_err(io)?;
    let version = u32::from_le_bytes(b4);
    if version != PATH_FORMAT_VERSION {
        return Err(Error::Config(format!("unsupported path format v{version}")));
    }
    r.read_exact(&mut b4).map_err(io)?;
    let dim = u32::from_le_bytes(b4) as usize;
    r.read_exact(&mut b8).map_err(io)?;
    let dt = f64::from_le_bytes(b8);
    r.read_exact(&mut b8).map_err(io)?;
    let nodes = u64::from_le_bytes(b8) as usize;
    r.read_exact(&mut b4).map_err(io)?;
    let code = u32::from_le_bytes(b4);
    r.read_exact(&mut b8).map_err(io)?;
    let param = f64::from_le_bytes(b8);
    r.read_exact(&mut b8).map_err(io)?;
    let master = u64::from_le_bytes(b8);
    r.read_exact(&mut b8).map_err(io)?;
    let path_index = u64::from_le_bytes(b8);
    let mut values = Vec::with_capacity(nodes * dim);
    for _ in 0..nodes * dim {
        r.read_exact(&mut b8).map_err(io)?;
        values.push(f64::from_le_bytes(b8));
    }
    if nodes == 0 {
        return Err(Error::Config("empty path file".into()));
    }
    PathSample::new(
        PathGrid::new(dt, nodes - 1)?,
        dim,
        values,
        scheme_from_code(code, param)?,
        SeedInfo { master, path_index },
        None,
    )
}

/// CSV dump of a path: `t,x1[,x2]` rows.
pub fn path_to_csv(path: &PathSample) -> String {
    let mut header = vec!["t".to_string()];
    for i in 0..path.dim() {
        header.push(format!("x{}", i + 1));
    }
    let mut out = format!("{}\n", header.join(","));
    for k in 0..path.len() {
        out.push_str(&format!("{}", path.grid().time(k)));
        for v in path.value(k) {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}
