//! Atomic file output with a manifest sidecar.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use tempfile::NamedTempFile;

use crate::format::Table;
use crate::manifest::RunManifest;
use crate::Format;

/// Writes via a temporary file in the destination directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("cannot write to {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// `<output>.manifest.json`
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = OsString::from(output.as_os_str());
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub enum Payload {
    Table(Table),
    /// Edge-list text; `--format` does not apply.
    EdgeList(Vec<u8>),
}

/// Writes `payload` to `output` (or stdout) and, for file output, the
/// timestamped manifest beside it.
pub fn emit(payload: Payload, format: Format, output: Option<&Path>, manifest: &RunManifest) -> anyhow::Result<()> {
    let bytes = match payload {
        Payload::Table(t) => match format {
            Format::Csv => t.to_csv()?,
            Format::Json => t.to_json(manifest.stable_json())?,
        },
        Payload::EdgeList(bytes) => bytes,
    };
    match output {
        Some(path) => {
            write_atomic(path, &bytes)?;
            write_atomic(&manifest_path(path), &manifest.stamped_json()?)
        }
        None => {
            std::io::stdout().lock().write_all(&bytes)?;
            Ok(())
        }
    }
}
