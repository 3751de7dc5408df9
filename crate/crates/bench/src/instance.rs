use std::path::Path;

use anyhow::{Context, Result};
use qaoa_core::graph::{parse_graph, Graph};
use sha2::{Digest, Sha256};

/// A graph file loaded for benchmarking.
#[derive(Debug, Clone)]
pub struct Instance {
    /// File stem, e.g. `MC_12`.
    pub name: String,
    pub graph: Graph,
    /// SHA-256 of the raw file contents, hex encoded.
    pub digest: String,
}

impl Instance {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let graph = parse_graph(&text).with_context(|| format!("parsing {}", path.display()))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Ok(Self {
            name,
            graph,
            digest: sha256_hex(text.as_bytes()),
        })
    }

    /// First 8 digest bytes; feeds the per-run seed derivation so seeds
    /// follow the instance contents rather than its position on the
    /// command line.
    pub fn seed_key(&self) -> u64 {
        u64::from_str_radix(&self.digest[..16], 16).expect("hex digest")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
