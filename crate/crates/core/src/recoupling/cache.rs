use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Kind, Recoupling};
use crate::cyclo::CycloNum;
use crate::error::Result;

/// Bumped whenever the file layout or any stored convention changes; files
/// with another version are ignored.
pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub kind: Kind,
    pub labels: Vec<u32>,
    pub value: CycloNum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub p: u32,
    pub entries: Vec<CacheEntry>,
}

impl Recoupling {
    /// Snapshot of the memo table, sorted by key.
    pub fn to_cache(&self) -> CacheFile {
        let table = self.table.lock().expect("recoupling table");
        let mut entries: Vec<CacheEntry> = table
            .iter()
            .map(|((kind, labels), value)| CacheEntry {
                kind: *kind,
                labels: labels.clone(),
                value: value.clone(),
            })
            .collect();
        entries.sort_by(|a, b| (a.kind, &a.labels).cmp(&(b.kind, &b.labels)));
        CacheFile { version: CACHE_VERSION, p: self.ctx.p(), entries }
    }

    /// Merge entries from a cache snapshot. Returns how many were taken;
    /// snapshots of another version or level contribute nothing.
    pub fn absorb(&self, file: &CacheFile) -> usize {
        if file.version != CACHE_VERSION || file.p != self.ctx.p() {
            return 0;
        }
        let mut table = self.table.lock().expect("recoupling table");
        let mut n = 0;
        for e in &file.entries {
            if e.value.p() != self.ctx.p() {
                continue;
            }
            table.entry((e.kind, e.labels.clone())).or_insert_with(|| {
                n += 1;
                e.value.clone()
            });
        }
        n
    }

    /// Load a cache file if it exists and parses; anything unreadable is
    /// treated as absent.
    pub fn load_cache(&self, path: &Path) -> usize {
        let Ok(text) = fs::read_to_string(path) else {
            return 0;
        };
        match serde_json::from_str::<CacheFile>(&text) {
            Ok(file) => self.absorb(&file),
            Err(_) => 0,
        }
    }

    pub fn save_cache(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&self.to_cache())?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Conventional file name for the level-p table inside a cache directory.
pub fn cache_file_name(p: u32) -> String {
    format!("recoupling-v{CACHE_VERSION}-p{p}.json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycloContext;
    use crate::recoupling::Six;

    #[test]
    fn round_trip_through_disk() {
        let ctx = CycloContext::new(10).unwrap();
        let r = Recoupling::new(&ctx);
        r.sixj(Six::new(1, 1, 2, 1, 1, 2)).unwrap();
        r.theta(2, 2, 2).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(cache_file_name(10));
        r.save_cache(&path).unwrap();

        let fresh = Recoupling::new(&ctx);
        assert_eq!(fresh.load_cache(&path), r.len());
        assert_eq!(fresh.to_cache(), r.to_cache());
        assert_eq!(fresh.theta(2, 2, 2).unwrap(), crate::recoupling::theta(&ctx, 2, 2, 2).unwrap());
    }

    #[test]
    fn stale_versions_and_levels_are_ignored() {
        let ctx = CycloContext::new(8).unwrap();
        let r = Recoupling::new(&ctx);
        r.delta(1).unwrap();
        let mut file = r.to_cache();
        file.version += 1;
        assert_eq!(Recoupling::new(&ctx).absorb(&file), 0);
        file.version = CACHE_VERSION;
        file.p = 10;
        assert_eq!(Recoupling::new(&ctx).absorb(&file), 0);
        let dir = tempfile::tempdir().unwrap();
        let junk = dir.path().join("junk.json");
        std::fs::write(&junk, "{not json").unwrap();
        assert_eq!(Recoupling::new(&ctx).load_cache(&junk), 0);
    }
}
