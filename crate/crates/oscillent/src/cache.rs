//! Binary caches for the two expensive intermediates: torus sample sets
//! and reduced-density kernels. Entries are keyed by a hash of the
//! generating inputs, carry a JSON sidecar describing those inputs, and
//! are deleted and recomputed on any structural damage.

use crate::classical::SampleSet;
use crate::error::{OscillentError, Result};
use crate::model::StateSpec;
use crate::quantum::{Grid, ReducedDensityMatrix};
use nalgebra::DMatrix;
use sha2::{Digest, Sha256};
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

/// Environment variable overriding the cache directory.
pub const ENV_VAR: &str = "OSCILLENT_CACHE";
/// Default cache directory, relative to the working directory.
pub const DEFAULT_DIR: &str = ".oscillent-cache";

const SAMPLE_MAGIC: &[u8; 4] = b"OSCS";
const KERNEL_MAGIC: &[u8; 4] = b"OSCK";
const FORMAT_VERSION: u32 = 1;

/// A cache directory; nothing is created until the first store.
#[derive(Debug, Clone)]
pub struct CacheDir {
    root: PathBuf,
}

impl CacheDir {
    /// Resolution order: explicit path, then `OSCILLENT_CACHE`, then
    /// `./.oscillent-cache`.
    pub fn resolve(explicit: Option<PathBuf>) -> CacheDir {
        let root = explicit
            .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        CacheDir { root }
    }

    pub fn at(root: impl Into<PathBuf>) -> CacheDir {
        CacheDir { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn entry_paths(&self, key: &str, ext: &str) -> (PathBuf, PathBuf, [u8; 32]) {
        let digest: [u8; 32] = Sha256::digest(key.as_bytes()).into();
        let stem = hex::encode(&digest[..16]);
        let data = self.root.join(format!("{stem}.{ext}"));
        let sidecar = self.root.join(format!("{stem}.json"));
        (data, sidecar, digest)
    }

    fn write_entry(
        &self,
        data_path: &Path,
        sidecar_path: &Path,
        bytes: &[u8],
        key: &str,
        kind: &str,
    ) -> Result<()> {
        std::fs::create_dir_all(&self.root)?;
        let tmp = data_path.with_extension("tmp");
        std::fs::write(&tmp, bytes)?;
        std::fs::rename(&tmp, data_path)?;
        let sidecar = serde_json::json!({
            "kind": kind,
            "key": key,
            "version": FORMAT_VERSION,
        });
        std::fs::write(sidecar_path, format!("{sidecar:#}\n"))?;
        Ok(())
    }

    /// Reads an entry's bytes, or discards it. `Ok(None)` covers both a
    /// missing entry and a damaged one; damage also deletes the files so
    /// the next store starts clean.
    fn read_entry(&self, data_path: &Path, sidecar_path: &Path) -> Result<Option<Vec<u8>>> {
        match std::fs::read(data_path) {
            Ok(bytes) => Ok(Some(bytes)),
            Err(e) if e.kind() == ErrorKind::NotFound => Ok(None),
            Err(_) => {
                self.discard(data_path, sidecar_path);
                Ok(None)
            }
        }
    }

    fn discard(&self, data_path: &Path, sidecar_path: &Path) {
        let _ = std::fs::remove_file(data_path);
        let _ = std::fs::remove_file(sidecar_path);
    }

    /// Stores a torus/trajectory sample set under `key`.
    pub fn store_samples(&self, key: &str, set: &SampleSet) -> Result<PathBuf> {
        let (data_path, sidecar_path, digest) = self.entry_paths(key, "samples");
        let mut bytes = Vec::with_capacity(64 + 16 * set.x.len());
        bytes.extend_from_slice(SAMPLE_MAGIC);
        bytes.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        bytes.extend_from_slice(&digest);
        match set.seed {
            Some(seed) => {
                bytes.push(1);
                bytes.extend_from_slice(&seed.to_le_bytes());
            }
            None => {
                bytes.push(0);
                bytes.extend_from_slice(&0u64.to_le_bytes());
            }
        }
        bytes.extend_from_slice(&(set.x.len() as u64).to_le_bytes());
        for v in set.x.iter().chain(&set.px) {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        self.write_entry(&data_path, &sidecar_path, &bytes, key, "samples")?;
        Ok(data_path)
    }

    /// Loads the sample set stored under `key`; `Ok(None)` when absent
    /// or damaged (damage is discarded).
    pub fn load_samples(&self, key: &str) -> Result<Option<SampleSet>> {
        let (data_path, sidecar_path, digest) = self.entry_paths(key, "samples");
        let Some(bytes) = self.read_entry(&data_path, &sidecar_path)? else {
            return Ok(None);
        };
        let parsed = (|| {
            let mut r = Reader::new(&bytes);
            r.expect(SAMPLE_MAGIC)?;
            if r.u32()? != FORMAT_VERSION {
                return None;
            }
            if r.bytes32()? != digest {
                return None;
            }
            let has_seed = r.u8()? == 1;
            let seed_raw = r.u64()?;
            let n = r.u64()? as usize;
            let x = r.f64_vec(n)?;
            let px = r.f64_vec(n)?;
            r.end()?;
            Some(SampleSet {
                x,
                px,
                seed: has_seed.then_some(seed_raw),
            })
        })();
        match parsed {
            Some(set) => Ok(Some(set)),
            None => {
                self.discard(&data_path, &sidecar_path);
                Ok(None)
            }
        }
    }

    /// Stores a reduced-density kernel (grid and matrix) under `key`.
    pub fn store_kernel(&self, key: &str, rdm: &ReducedDensityMatrix) -> Result<PathBuf> {
        let n = rdm.grid.len();
        if rdm.kernel.nrows() != n || rdm.kernel.ncols() != n {
            return Err(OscillentError::Cache(format!(
                "kernel is {}x{} but the grid has {n} nodes",
                rdm.kernel.nrows(),
                rdm.kernel.ncols()
            )));
        }
        let (data_path, sidecar_path, digest) = self.entry_paths(key, "kernel");
        let mut bytes = Vec::with_capacity(64 + 8 * (2 * n + n * n));
        bytes.extend_from_slice(KERNEL_MAGIC);
        bytes.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        bytes.extend_from_slice(&digest);
        bytes.extend_from_slice(&rdm.grid.half_range.to_le_bytes());
        bytes.extend_from_slice(&(n as u64).to_le_bytes());
        for v in rdm.grid.nodes.iter().chain(&rdm.grid.weights) {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        for v in rdm.kernel.as_slice() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        self.write_entry(&data_path, &sidecar_path, &bytes, key, "kernel")?;
        Ok(data_path)
    }

    /// Loads the kernel stored under `key`, reattaching `state` (which
    /// the key must encode); `Ok(None)` when absent or damaged.
    pub fn load_kernel(&self, key: &str, state: &StateSpec) -> Result<Option<ReducedDensityMatrix>> {
        let (data_path, sidecar_path, digest) = self.entry_paths(key, "kernel");
        let Some(bytes) = self.read_entry(&data_path, &sidecar_path)? else {
            return Ok(None);
        };
        let parsed = (|| {
            let mut r = Reader::new(&bytes);
            r.expect(KERNEL_MAGIC)?;
            if r.u32()? != FORMAT_VERSION {
                return None;
            }
            if r.bytes32()? != digest {
                return None;
            }
            let half_range = r.f64()?;
            let n = r.u64()? as usize;
            let nodes = r.f64_vec(n)?;
            let weights = r.f64_vec(n)?;
            let entries = r.f64_vec(n * n)?;
            r.end()?;
            Some(ReducedDensityMatrix {
                kernel: DMatrix::from_column_slice(n, n, &entries),
                grid: Grid {
                    nodes,
                    weights,
                    half_range,
                },
                state: state.clone(),
            })
        })();
        match parsed {
            Some(rdm) => Ok(Some(rdm)),
            None => {
                self.discard(&data_path, &sidecar_path);
                Ok(None)
            }
        }
    }
}

/// Bounds-checked little-endian reader; any overrun means a damaged
/// entry, reported as `None`.
struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Reader { bytes, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let end = self.pos.checked_add(n)?;
        let slice = self.bytes.get(self.pos..end)?;
        self.pos = end;
        Some(slice)
    }

    fn expect(&mut self, magic: &[u8; 4]) -> Option<()> {
        (self.take(4)? == magic).then_some(())
    }

    fn u8(&mut self) -> Option<u8> {
        Some(self.take(1)?[0])
    }

    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().ok()?))
    }

    fn u64(&mut self) -> Option<u64> {
        Some(u64::from_le_bytes(self.take(8)?.try_into().ok()?))
    }

    fn f64(&mut self) -> Option<f64> {
        Some(f64::from_le_bytes(self.take(8)?.try_into().ok()?))
    }

    fn bytes32(&mut self) -> Option<[u8; 32]> {
        self.take(32)?.try_into().ok()
    }

    fn f64_vec(&mut self, n: usize) -> Option<Vec<f64>> {
        if n > self.bytes.len() / 8 {
            return None;
        }
        (0..n).map(|_| self.f64()).collect()
    }

    fn end(&mut self) -> Option<()> {
        (self.pos == self.bytes.len()).then_some(())
    }
}
