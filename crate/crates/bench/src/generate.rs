use std::path::{Path, PathBuf};

use anyhow::{ensure, Context, Result};
use qaoa_core::graph::{format_graph, generate_random_graph};
use qaoa_core::rng::hash64;

/// 15 sizes: 8, 10, 12, then 14 through 25.
pub const DEFAULT_SIZES: [usize; 15] = [8, 10, 12, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25];

/// Writes one `MC_<n>.txt` per size into `out_dir`. The graph for size `n`
/// uses seed `hash64(seed, n)`, so adding or removing sizes leaves the
/// other files unchanged.
pub fn cmd_generate(sizes: &[usize], density: f64, seed: u64, out_dir: &Path) -> Result<Vec<PathBuf>> {
    ensure!(!sizes.is_empty(), "no sizes given");
    std::fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let mut written = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let g = generate_random_graph(n, density, hash64(seed, n as u64))?;
        let path = out_dir.join(format!("MC_{n}.txt"));
        std::fs::write(&path, format_graph(&g)).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}
