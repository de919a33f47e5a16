//! Content-addressed model store: one JSON network document per file.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use aerorisk_core::BayesianNetwork;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Hex characters of the SHA-256 digest used as model id.
const ID_LEN: usize = 16;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("model store {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("stored model {id} is corrupt: {detail}")]
    Corrupt { id: String, detail: String },
}

/// Models are immutable once written: a changed network hashes to a new id.
#[derive(Debug)]
pub struct ModelStore {
    dir: PathBuf,
    write_lock: Mutex<()>,
    cache: RwLock<HashMap<String, Arc<BayesianNetwork>>>,
}

impl ModelStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| StoreError::Io {
            path: dir.clone(),
            source,
        })?;
        Ok(ModelStore {
            dir,
            write_lock: Mutex::new(()),
            cache: RwLock::default(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Id of `net`: truncated SHA-256 of its canonical JSON.
    pub fn model_id(net: &BayesianNetwork) -> String {
        let digest = Sha256::digest(net.to_json().as_bytes());
        hex::encode(digest)[..ID_LEN].to_string()
    }

    fn path_of(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    fn is_valid_id(id: &str) -> bool {
        id.len() == ID_LEN
            && id
                .bytes()
                .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
    }

    /// Stores `net`, returning its id and whether it was newly written.
    pub fn put(&self, net: &BayesianNetwork) -> Result<(String, bool), StoreError> {
        let id = Self::model_id(net);
        let path = self.path_of(&id);
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        if path.exists() {
            return Ok((id, false));
        }
        let tmp = self.dir.join(format!(".{id}.tmp"));
        let io_err = |source| StoreError::Io {
            path: path.clone(),
            source,
        };
        fs::write(&tmp, net.to_json()).map_err(io_err)?;
        fs::rename(&tmp, &path).map_err(io_err)?;
        Ok((id, true))
    }

    /// Loads a model; `Ok(None)` for unknown or malformed ids.
    pub fn get(&self, id: &str) -> Result<Option<Arc<BayesianNetwork>>, StoreError> {
        if !Self::is_valid_id(id) {
            return Ok(None);
        }
        if let Some(net) = self.cache.read().unwrap_or_else(|e| e.into_inner()).get(id) {
            return Ok(Some(Arc::clone(net)));
        }
        let path = self.path_of(id);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(StoreError::Io { path, source }),
        };
        let net = BayesianNetwork::from_json(&text).map_err(|e| StoreError::Corrupt {
            id: id.to_string(),
            detail: e.to_string(),
        })?;
        let net = Arc::new(net);
        self.cache
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .insert(id.to_string(), Arc::clone(&net));
        Ok(Some(net))
    }
}
