//! Formula packs: explicit Kummer equations stored as data, parsed,
//! checksummed, validated over small prime fields and specialised to a curve.

pub mod backend;
pub mod cache;
pub mod format;
pub mod kappa;
pub mod model;
pub mod validate;

use std::path::Path;

use crate::error::{Error, Result};

pub use backend::{PackBackend, ValidatedPack};
pub use cache::TrustedCache;
pub use format::{pack_checksum, parse_pack, serialize_pack, Coeff, FormulaPack, PackPoly, PackTable, PackTerm, TableKind};
pub use model::specialize;
pub use validate::{validate_pack, CheckResult, ValidationReport};

/// Read and parse a pack file.
pub fn load_pack(path: impl AsRef<Path>) -> Result<FormulaPack> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse_pack(&text)
}

/// The first `*.pack` file of the given genus in `dir`, in name order.
pub fn find_pack(dir: impl AsRef<Path>, genus: usize) -> Result<Option<FormulaPack>> {
    let dir = dir.as_ref();
    let rd = match std::fs::read_dir(dir) {
        Ok(rd) => rd,
        Err(_) => return Ok(None),
    };
    let mut files: Vec<_> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "pack"))
        .collect();
    files.sort();
    for f in files {
        let pack = load_pack(&f)?;
        if pack.genus == genus {
            return Ok(Some(pack));
        }
    }
    Ok(None)
}
