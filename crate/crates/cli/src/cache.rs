use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    version: u32,
    kind: String,
    key: String,
    payload: T,
}

/// Content-addressed store for expensive character data.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// Hex SHA-256 of the canonical JSON of `(version, kind, input)`.
    pub fn key<K: Serialize>(kind: &str, input: &K) -> String {
        let canonical = serde_json::to_vec(&(CACHE_VERSION, kind, input)).expect("cache keys serialize");
        hex::encode(Sha256::digest(canonical))
    }

    fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// `None` on a miss, a corrupt entry or a version mismatch.
    pub fn load<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Option<T> {
        let bytes = fs::read(self.entry_path(key)).ok()?;
        let env: Envelope<T> = serde_json::from_slice(&bytes).ok()?;
        (env.version == CACHE_VERSION && env.kind == kind && env.key == key).then_some(env.payload)
    }

    /// Writes through a temporary file under an exclusive lock on `<key>.lock`.
    pub fn store<T: Serialize>(&self, kind: &str, key: &str, payload: &T) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let lock = lock_file(&self.dir.join(format!("{key}.lock")))?;
        lock.lock()?;
        let env = Envelope {
            version: CACHE_VERSION,
            kind: kind.to_string(),
            key: key.to_string(),
            payload,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &env)?;
        tmp.flush()?;
        tmp.persist(self.entry_path(key)).map_err(|e| e.error)?;
        lock.unlock()?;
        Ok(())
    }

    pub fn get_or_compute<T, E>(
        &self,
        kind: &str,
        key: &str,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<(T, bool), E>
    where
        T: Serialize + DeserializeOwned,
    {
        if let Some(v) = self.load(kind, key) {
            return Ok((v, true));
        }
        let v = compute()?;
        // a failed write only costs a recomputation next time
        let _ = self.store(kind, key, &v);
        Ok((v, false))
    }
}

fn lock_file(path: &Path) -> std::io::Result<File> {
    OpenOptions::new().create(true).truncate(false).write(true).open(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = Cache::key("t", &(2, 7));
        assert_eq!(key.len(), 64);
        assert_ne!(key, Cache::key("t", &(2, 5)));
        assert_eq!(cache.load::<Vec<u32>>("t", &key), None);
        let (v, hit) = cache.get_or_compute("t", &key, || Ok::<_, ()>(vec![1u32, 2])).unwrap();
        assert_eq!((v, hit), (vec![1, 2], false));
        let (v, hit) = cache.get_or_compute("t", &key, || Ok::<_, ()>(vec![9u32])).unwrap();
        assert_eq!((v, hit), (vec![1, 2], true));
        fs::write(dir.path().join(format!("{key}.json")), b"{not json").unwrap();
        assert_eq!(cache.load::<Vec<u32>>("t", &key), None);
        assert_eq!(cache.load::<Vec<u32>>("other", &key), None);
    }
}
