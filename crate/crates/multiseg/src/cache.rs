//! Persistent JSON cache for P-matrices and KL tables.
//!
//! Every file holds one envelope `{version, kind, key, payload}`. A file whose
//! version or key does not match, or that fails to parse, is ignored and the
//! value is recomputed. Writes go to a temporary file that is then renamed
//! over the target, so readers see either the old or the new entry.

use parking_lot::Mutex;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::engine::{Engine, LVec};
use crate::multiseg::{Multisegment, Weight};
use crate::quantum::PMatrix;
use crate::weyl::{Perm, QPoly};

/// Format version; bump to invalidate all existing entries.
pub const VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const ENV_VAR: &str = "MULTISEG_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    version: u32,
    kind: String,
    key: String,
    payload: T,
}

/// KL columns for one `n`: `y ↦ [(x, P_{x,y})]`.
type KlTable = BTreeMap<String, Vec<(String, QPoly)>>;

/// A cache directory.
pub struct DiskCache {
    dir: PathBuf,
    version: u32,
    loaded_kl: Mutex<HashSet<usize>>,
    loaded_weights: Mutex<HashSet<String>>,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> DiskCache {
        DiskCache::with_version(dir, VERSION)
    }

    /// A cache that reads and writes entries of an explicit format version.
    pub fn with_version(dir: impl Into<PathBuf>, version: u32) -> DiskCache {
        DiskCache {
            dir: dir.into(),
            version,
            loaded_kl: Mutex::new(HashSet::new()),
            loaded_weights: Mutex::new(HashSet::new()),
        }
    }

    pub fn from_env() -> Option<DiskCache> {
        std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(DiskCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, kind: &str, key: &str) -> PathBuf {
        let clean: String = key
            .chars()
            .map(|c| match c {
                ':' => '_',
                ',' => '.',
                c if c.is_ascii_alphanumeric() || c == '-' => c,
                _ => '~',
            })
            .collect();
        self.dir.join(format!("{}-{}.json", kind, clean))
    }

    /// Reads an entry; `None` on absence, version or key mismatch, or corruption.
    pub fn load<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Option<T> {
        let path = self.path(kind, key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Envelope<T>>(&text) {
            Ok(env) if env.version == self.version && env.kind == kind && env.key == key => Some(env.payload),
            Ok(_) => None,
            Err(e) => {
                eprintln!("warning: discarding corrupted cache entry {}: {}", path.display(), e);
                None
            }
        }
    }

    /// Writes an entry atomically.
    pub fn store<T: Serialize>(&self, kind: &str, key: &str, payload: &T) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let env = Envelope { version: self.version, kind: kind.to_string(), key: key.to_string(), payload };
        let text = serde_json::to_string(&env).map_err(std::io::Error::other)?;
        let tmp =
            self.dir.join(format!(".tmp-{}-{}.json", std::process::id(), TMP_COUNTER.fetch_add(1, Ordering::Relaxed)));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(kind, key))
    }

    /// Number of entries and their total size in bytes.
    pub fn stats(&self) -> (usize, u64) {
        let Ok(rd) = fs::read_dir(&self.dir) else { return (0, 0) };
        rd.filter_map(|e| e.ok())
            .filter(|e| {
                e.file_name().to_string_lossy().ends_with(".json") && !e.file_name().to_string_lossy().starts_with('.')
            })
            .fold((0, 0), |(n, b), e| (n + 1, b + e.metadata().map(|m| m.len()).unwrap_or(0)))
    }

    /// Removes all entries; returns how many were removed.
    pub fn clear(&self) -> std::io::Result<usize> {
        let Ok(rd) = fs::read_dir(&self.dir) else { return Ok(0) };
        let mut n = 0;
        for e in rd.filter_map(|e| e.ok()) {
            if e.file_name().to_string_lossy().ends_with(".json") {
                fs::remove_file(e.path())?;
                n += 1;
            }
        }
        self.loaded_kl.lock().clear();
        self.loaded_weights.lock().clear();
        Ok(n)
    }
}

fn warn(r: std::io::Result<()>) {
    if let Err(e) = r {
        eprintln!("warning: cache write failed: {}", e);
    }
}

impl Engine {
    pub(crate) fn kl_columns(&self) -> &crate::weyl::KlColumns {
        &self.tables.kl
    }

    /// Loads the persisted KL table for `y.n()` once, then looks up `y`.
    pub(crate) fn load_kl_column(&self, y: &Perm) -> Option<Arc<std::collections::HashMap<Perm, QPoly>>> {
        let disk = self.disk.as_ref()?;
        let n = y.n();
        if disk.loaded_kl.lock().insert(n) {
            if let Some(table) = disk.load::<KlTable>("kl", &format!("n{}", n)) {
                for (ys, col) in table {
                    let Ok(yy) = ys.parse::<Perm>() else { continue };
                    let col: Option<std::collections::HashMap<Perm, QPoly>> =
                        col.into_iter().map(|(x, p)| x.parse::<Perm>().ok().map(|x| (x, p))).collect();
                    if let Some(col) = col {
                        self.tables.kl.insert(yy, Arc::new(col));
                    }
                }
            }
        }
        self.tables.kl.get(y)
    }

    pub(crate) fn store_kl_column(&self, _y: &Perm, _col: &std::collections::HashMap<Perm, QPoly>) {
        // KL columns are persisted in bulk by `flush`.
    }

    /// Loads the persisted P-matrix rows of weight `phi` once; returns whether
    /// an entry was found.
    pub(crate) fn load_pmatrix(&self, phi: &Weight) -> bool {
        let Some(disk) = self.disk.as_ref() else { return false };
        let key = phi.key();
        if !disk.loaded_weights.lock().insert(key.clone()) {
            return false;
        }
        match disk.load::<PMatrix>("pmatrix", &key) {
            Some(m) if m.weight == *phi => {
                for (a, row) in m.rows {
                    self.tables.prow.insert(a, Arc::new(row));
                }
                true
            }
            _ => false,
        }
    }

    pub(crate) fn store_pmatrix(&self, m: &PMatrix) {
        if let Some(disk) = &self.disk {
            warn(disk.store("pmatrix", &m.weight.key(), m));
        }
    }

    /// Persists every P-matrix row and KL column held in memory, merged with
    /// what is already on disk.
    pub fn flush(&self) {
        let Some(disk) = &self.disk else { return };
        let mut by_weight: BTreeMap<Weight, BTreeMap<Multisegment, LVec>> = BTreeMap::new();
        for (a, row) in self.tables.prow.snapshot() {
            by_weight.entry(a.weight()).or_default().insert(a, (*row).clone());
        }
        for (w, rows) in by_weight {
            let mut merged = disk.load::<PMatrix>("pmatrix", &w.key()).map(|m| m.rows).unwrap_or_default();
            let before = merged.len();
            merged.extend(rows);
            if merged.len() != before || before == 0 {
                warn(disk.store("pmatrix", &w.key(), &PMatrix { weight: w, rows: merged }));
            }
        }
        let mut by_n: BTreeMap<usize, KlTable> = BTreeMap::new();
        for (y, col) in self.tables.kl.snapshot() {
            let mut entries: Vec<(String, QPoly)> = col.iter().map(|(x, p)| (x.to_string(), p.clone())).collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            by_n.entry(y.n()).or_default().insert(y.to_string(), entries);
        }
        for (n, table) in by_n {
            let key = format!("n{}", n);
            let mut merged = disk.load::<KlTable>("kl", &key).unwrap_or_default();
            let before = merged.len();
            merged.extend(table);
            if merged.len() != before || before == 0 {
                warn(disk.store("kl", &key, &merged));
            }
        }
    }
}
