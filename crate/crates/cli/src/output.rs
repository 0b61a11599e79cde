use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;

/// Write through a temporary file in the same directory and rename, so a
/// failed run never leaves a truncated report behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("temp file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// 17 significant digits, enough to round-trip any f64.
pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn json_bytes(value: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s.into_bytes()
}

pub fn csv_bytes<I, R>(header: &[String], rows: I) -> anyhow::Result<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn stem(config: &Path) -> String {
    config.file_stem().map_or_else(|| "run".into(), |s| s.to_string_lossy().into_owned())
}

pub fn resolve_dir(flag: Option<&PathBuf>, config_dir: Option<&PathBuf>) -> PathBuf {
    flag.or(config_dir).cloned().unwrap_or_else(|| PathBuf::from("."))
}
