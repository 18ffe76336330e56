//! The computation context: memo tables shared by all modules.

use parking_lot::RwLock;
use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::Arc;

use crate::cache::DiskCache;
use crate::laurent::Laurent;
use crate::multiseg::Multisegment;
use crate::weyl::KlColumns;

/// A read-mostly memo table. Values are computed outside the lock, so
/// recursive computations never deadlock; concurrent duplicate work is
/// harmless because every value is a pure function of its key.
pub struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Hash + Eq + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Memo { map: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, k: &K) -> Option<V> {
        self.map.read().get(k).cloned()
    }

    pub fn insert(&self, k: K, v: V) -> V {
        self.map.write().entry(k).or_insert(v).clone()
    }

    pub fn get_or(&self, k: &K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.get(k) {
            return v;
        }
        let v = f();
        self.insert(k.clone(), v)
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().clear();
    }

    /// A copy of all entries.
    pub fn snapshot(&self) -> Vec<(K, V)> {
        self.map.read().iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

impl<K: Hash + Eq + Clone, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

/// Sparse vector of Laurent coefficients indexed by multisegments.
pub type LVec = BTreeMap<Multisegment, Laurent>;

/// `S(a)` listed bottom-up in a linear extension of `≤`.
pub struct BelowSet {
    pub members: Vec<Multisegment>,
    pub index: HashMap<Multisegment, usize>,
}

impl BelowSet {
    pub fn contains(&self, b: &Multisegment) -> bool {
        self.index.contains_key(b)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Memo tables for one engine instance.
#[derive(Default)]
pub struct Tables {
    pub below: Memo<Multisegment, Arc<BelowSet>>,
    pub sigma: Memo<Multisegment, Arc<LVec>>,
    pub gstar: Memo<Multisegment, Arc<LVec>>,
    pub prow: Memo<Multisegment, Arc<LVec>>,
    pub bar_estar: Memo<Multisegment, Arc<LVec>>,
    pub kl: KlColumns,
    pub dk_irr: Memo<(Multisegment, i32), Arc<BTreeMap<Multisegment, i64>>>,
}

/// Entry point for all computations. Cheap to share across threads.
pub struct Engine {
    pub tables: Tables,
    pub disk: Option<DiskCache>,
    /// Largest total degree accepted by [`Engine::canonical_basis`].
    pub max_basis_degree: u32,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    /// An engine without persistent cache.
    pub fn new() -> Engine {
        Engine { tables: Tables::default(), disk: None, max_basis_degree: 10 }
    }

    /// An engine backed by the persistent cache at `dir`.
    pub fn with_cache(dir: impl Into<std::path::PathBuf>) -> Engine {
        Engine { disk: Some(DiskCache::new(dir)), ..Engine::new() }
    }

    /// An engine backed by the cache directory from the environment, if set.
    pub fn from_env() -> Engine {
        match DiskCache::from_env() {
            Some(d) => Engine { disk: Some(d), ..Engine::new() },
            None => Engine::new(),
        }
    }

    pub fn clear_memory(&self) {
        let t = &self.tables;
        t.below.clear();
        t.sigma.clear();
        t.gstar.clear();
        t.prow.clear();
        t.bar_estar.clear();
        t.kl.clear();
        t.dk_irr.clear();
    }
}
