//! On-disk cache of catalogs, Ext tables and enumerations, one directory per
//! spec hash. Unreadable entries are treated as misses.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(root: &Path, key: &str) -> Cache {
        Cache { dir: Some(root.join(key)) }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn get<T: DeserializeOwned>(&self, name: &str) -> Option<T> {
        let path = self.dir.as_ref()?.join(name);
        let text = fs::read(path).ok()?;
        serde_json::from_slice(&text).ok()
    }

    /// Best effort; a failed write only costs a recomputation next time.
    pub fn put<T: Serialize>(&self, name: &str, value: &T) {
        let Some(dir) = &self.dir else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let Ok(bytes) = serde_json::to_vec(value) else { return };
        let tmp = dir.join(format!("{name}.{}.tmp", std::process::id()));
        if fs::write(&tmp, bytes).is_ok() && fs::rename(&tmp, dir.join(name)).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let root = tempfile::tempdir().unwrap();
        let c = Cache::new(root.path(), "k");
        assert_eq!(c.get::<Vec<u32>>("v.json"), None);
        c.put("v.json", &vec![1u32, 2]);
        assert_eq!(c.get::<Vec<u32>>("v.json"), Some(vec![1, 2]));
        fs::write(root.path().join("k").join("v.json"), b"{not json").unwrap();
        assert_eq!(c.get::<Vec<u32>>("v.json"), None);
        assert_eq!(Cache::disabled().get::<Vec<u32>>("v.json"), None);
    }
}
