//! Deterministic CSV writing: UTF-8, `\n` line endings, a header row, and a
//! leading `# config-hash:` comment so reruns are verifiable byte-for-byte.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// FNV-1a over the canonical text of a configuration.
pub fn fnv1a_hash(text: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.as_bytes() {
        hash ^= *byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Writes one CSV file with the config-hash comment and header.
pub fn write_csv<I>(path: &Path, config_hash: &str, header: &str, rows: I) -> Result<()>
where
    I: IntoIterator<Item = String>,
{
    let map_io = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(map_io)?;
        }
    }
    let mut out = BufWriter::new(File::create(path).map_err(map_io)?);
    write!(out, "# config-hash: {config_hash}\n{header}\n").map_err(map_io)?;
    for row in rows {
        writeln!(out, "{row}").map_err(map_io)?;
    }
    out.flush().map_err(map_io)
}

/// Formats a float for CSV output; shortest round-trip representation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
