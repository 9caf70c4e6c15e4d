//! Optional enumeration cache: a JSON file keyed by order, storing the
//! class descriptor strings per order. Loading re-derives ψ and
//! cyclicity arithmetically from the descriptors instead of trusting
//! stored values; saving snapshots every order memoized so far.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{memo_snapshot, seed_order_summary, HarnessError};
use crate::catalog::Tier;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    orders: BTreeMap<u64, CachedOrder>,
}

#[derive(Serialize, Deserialize)]
struct CachedOrder {
    tier: Tier,
    classes: Vec<String>,
}

/// Seeds the in-process memo from a cache file. Returns the number of
/// orders loaded.
pub fn load_cache_file(path: &Path) -> Result<usize, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    let file: CacheFile = serde_json::from_str(&text)?;
    let mut loaded = 0usize;
    for (n, order) in file.orders {
        seed_order_summary(n, order.tier, &order.classes)?;
        loaded += 1;
    }
    Ok(loaded)
}

/// Writes every memoized order to the cache file (descriptors only).
pub fn save_cache_file(path: &Path) -> Result<usize, HarnessError> {
    let mut orders = BTreeMap::new();
    for summary in memo_snapshot() {
        orders.insert(
            summary.n,
            CachedOrder {
                tier: summary.tier,
                classes: summary.classes.iter().map(|c| c.descriptor.clone()).collect(),
            },
        );
    }
    let count = orders.len();
    let file = CacheFile { version: 1, orders };
    std::fs::write(path, serde_json::to_string_pretty(&file).expect("serializable"))?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::order_summary;

    #[test]
    fn cache_round_trip() {
        let _ = order_summary(21).unwrap();
        let _ = order_summary(45).unwrap();
        let dir = std::env::temp_dir().join("ordersum-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.json");
        let saved = save_cache_file(&path).unwrap();
        assert!(saved >= 2);
        let loaded = load_cache_file(&path).unwrap();
        assert_eq!(loaded, saved);
        // the seeded summary reproduces the enumerated ψ values
        let summary = order_summary(21).unwrap();
        let psis: Vec<u64> = summary.classes.iter().map(|c| c.psi).collect();
        assert!(psis.contains(&301) && psis.contains(&85));
        std::fs::remove_file(&path).ok();
    }
}
