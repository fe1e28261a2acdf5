//! Memory files on disk.

use std::fs;
use std::path::Path;

use qamnet_core::Hologram;

use crate::error::{Error, Result};

pub fn save(memory: &Hologram, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, memory.to_bytes()).map_err(|e| Error::io(path, e))
}

/// Reads and validates a memory file (checksum, layout and invariants).
pub fn load(path: impl AsRef<Path>) -> Result<Hologram> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Hologram::from_bytes(&bytes).map_err(|source| Error::Memory {
        path: path.to_path_buf(),
        source,
    })
}
