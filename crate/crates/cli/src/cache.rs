//! Persistent structure-constant cache: one JSON header line, then one
//! record per line.

use std::io::Write;
use std::path::{Path, PathBuf};

use hallforge::hallcore::CacheRecord;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_FORMAT: &str = "hallforge-cache";
pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    config: String,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Line {
    a: String,
    c: String,
    hom_dim: usize,
    middles: Vec<(String, String)>,
}

/// `HALLFORGE_CACHE_DIR`, else the user cache directory.
pub fn cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os("HALLFORGE_CACHE_DIR") {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("hallforge");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("hallforge"),
        None => std::env::temp_dir().join("hallforge"),
    }
}

/// Cache file for a backend description.
pub fn cache_path(dir: &Path, config: &str) -> PathBuf {
    let digest = Sha256::digest(config.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    dir.join(format!("{hex}.jsonl"))
}

/// Records stored for `config`; empty when the file is missing, from
/// another version, or for another configuration.
pub fn load(path: &Path, config: &str) -> Vec<CacheRecord> {
    let Ok(text) = std::fs::read_to_string(path) else {
        return Vec::new();
    };
    let mut lines = text.lines();
    let header: Option<Header> = lines.next().and_then(|l| serde_json::from_str(l).ok());
    let expected = Header {
        format: CACHE_FORMAT.into(),
        version: CACHE_VERSION,
        config: config.into(),
    };
    if header.as_ref() != Some(&expected) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for l in lines {
        let Ok(line) = serde_json::from_str::<Line>(l) else {
            return Vec::new();
        };
        let Ok(middles) = line
            .middles
            .into_iter()
            .map(|(e, n)| n.parse::<u128>().map(|n| (e, n)))
            .collect::<Result<Vec<_>, _>>()
        else {
            return Vec::new();
        };
        out.push(CacheRecord {
            a: line.a,
            c: line.c,
            hom_dim: line.hom_dim,
            middles,
        });
    }
    out
}

/// Write all records, replacing the file atomically.
pub fn save(path: &Path, config: &str, records: &[CacheRecord]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        let header = Header {
            format: CACHE_FORMAT.into(),
            version: CACHE_VERSION,
            config: config.into(),
        };
        writeln!(f, "{}", serde_json::to_string(&header)?)?;
        for r in records {
            let line = Line {
                a: r.a.clone(),
                c: r.c.clone(),
                hom_dim: r.hom_dim,
                middles: r
                    .middles
                    .iter()
                    .map(|(e, n)| (e.clone(), n.to_string()))
                    .collect(),
            };
            writeln!(f, "{}", serde_json::to_string(&line)?)?;
        }
        f.flush()?;
    }
    std::fs::rename(tmp, path)
}
