//! Shared, immutable state for running curves: configuration and the
//! validated packs per genus.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use kummer_torsion::jacobian::HyperellipticCurveQ;
use kummer_torsion::pack::{find_pack, load_pack, pack_checksum, PackBackend, TrustedCache, ValidatedPack};
use kummer_torsion::torsion::{full_torsion, torsion_subgroup, TorsionConfig, TorsionReport};

use crate::error::{CliError, CliResult};

/// Default directory searched for `*.pack` files.
pub const PACK_DIR_VAR: &str = "KTORS_PACK_DIR";

#[derive(Clone, Debug)]
pub struct PackOptions {
    pub path: Option<PathBuf>,
    pub dir: Option<PathBuf>,
    pub trusted_cache: Option<PathBuf>,
    pub trials: usize,
    pub seed: u64,
}

impl PackOptions {
    /// Options with the pack directory taken from the environment.
    pub fn from_env(path: Option<PathBuf>, trusted_cache: Option<PathBuf>, trials: usize, seed: u64) -> Self {
        let dir = std::env::var_os(PACK_DIR_VAR).map(PathBuf::from);
        PackOptions { path, dir, trusted_cache, trials, seed }
    }
}

pub struct Engine {
    pub cfg: TorsionConfig,
    packs: BTreeMap<usize, ValidatedPack>,
}

fn load_cache(path: Option<&Path>) -> CliResult<Option<TrustedCache>> {
    path.map(|p| TrustedCache::load(p).map_err(CliError::from)).transpose()
}

impl Engine {
    pub fn new(cfg: TorsionConfig) -> Self {
        Engine { cfg, packs: BTreeMap::new() }
    }

    pub fn with_pack(mut self, pack: ValidatedPack) -> Self {
        self.packs.insert(pack.pack().genus, pack);
        self
    }

    /// Loads the explicit pack, then fills the remaining genera ≥ 2 in
    /// `genera` from the pack directory. Genus 1 uses a pack only when given
    /// explicitly.
    pub fn load_packs(mut self, opts: &PackOptions, genera: &[usize]) -> CliResult<Self> {
        let cache = load_cache(opts.trusted_cache.as_deref())?;
        if let Some(path) = &opts.path {
            let pack = load_pack(path)?;
            self = self.with_pack(ValidatedPack::new(pack, cache.as_ref(), opts.trials, opts.seed)?);
        }
        if let Some(dir) = &opts.dir {
            for &g in genera {
                if g >= 2 && !self.packs.contains_key(&g) {
                    if let Some(pack) = find_pack(dir, g)? {
                        self = self.with_pack(ValidatedPack::new(pack, cache.as_ref(), opts.trials, opts.seed)?);
                    }
                }
            }
        }
        Ok(self)
    }

    pub fn pack_checksum(&self, genus: usize) -> Option<String> {
        self.packs.get(&genus).map(|p| pack_checksum(p.pack()))
    }

    pub fn torsion(&self, curve: &HyperellipticCurveQ) -> CliResult<TorsionReport> {
        let report = match self.packs.get(&curve.genus) {
            Some(pack) => full_torsion(&PackBackend::new(curve, pack)?, &self.cfg)?,
            None => torsion_subgroup(curve, &self.cfg)?,
        };
        Ok(report)
    }
}
