//! On-disk certificate store: one file per `(n, m, order)` holding a JSON
//! header line and a digraph6 line. Loads re-verify before returning.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::{check_counterexample, DrCertificate};
use crate::error::{Error, Result};
use crate::format::{decode_digraph6, encode_digraph6};

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    n: usize,
    m: usize,
    order: usize,
    verified_at: u64,
}

#[derive(Debug)]
pub struct CertCache {
    dir: PathBuf,
    write_lock: Mutex<()>,
}

impl CertCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CertCache {
            dir: dir.into(),
            write_lock: Mutex::new(()),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize, m: usize, order: usize) -> PathBuf {
        self.dir.join(format!("dr-{n}-{m}-{order}.cert"))
    }

    /// Writes a verified certificate. Unverified certificates are refused.
    pub fn store(&self, cert: &DrCertificate) -> Result<PathBuf> {
        if !cert.is_verified() {
            return Err(Error::InvalidArgument("refusing to store an unverified certificate".into()));
        }
        let header = Header {
            n: cert.n,
            m: cert.m,
            order: cert.order(),
            verified_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let body = format!(
            "{}\n{}\n",
            serde_json::to_string(&header)?,
            encode_digraph6(&cert.digraph)
        );
        let _guard = self.write_lock.lock().expect("poisoned");
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(cert.n, cert.m, cert.order());
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(body.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` on a cache miss; `CacheCorrupt` when the file does not
    /// parse or its digraph fails re-verification.
    pub fn load(&self, n: usize, m: usize, order: usize) -> Result<Option<DrCertificate>> {
        let path = self.path_for(n, m, order);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |why: String| Error::CacheCorrupt(format!("{}: {why}", path.display()));
        let mut lines = text.lines();
        let header: Header = lines
            .next()
            .ok_or_else(|| corrupt("empty file".into()))
            .and_then(|l| serde_json::from_str(l).map_err(|e| corrupt(e.to_string())))?;
        let d = lines
            .next()
            .ok_or_else(|| corrupt("missing digraph6 line".into()))
            .and_then(|l| decode_digraph6(l).map_err(|e| corrupt(e.to_string())))?;
        if (header.n, header.m, header.order, d.order()) != (n, m, order, order) {
            return Err(corrupt("header does not match key".into()));
        }
        check_counterexample(&d, n, m)
            .map(Some)
            .map_err(|e| corrupt(format!("re-verification failed: {e}")))
    }

    /// Highest-order certificate stored for `(n, m)`.
    pub fn load_best(&self, n: usize, m: usize) -> Result<Option<DrCertificate>> {
        let prefix = format!("dr-{n}-{m}-");
        let mut orders: Vec<usize> = match fs::read_dir(&self.dir) {
            Ok(rd) => rd
                .filter_map(|e| e.ok())
                .filter_map(|e| {
                    let name = e.file_name().into_string().ok()?;
                    name.strip_prefix(&prefix)?
                        .strip_suffix(".cert")?
                        .parse()
                        .ok()
                })
                .collect(),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        orders.sort_unstable();
        match orders.last() {
            Some(&o) => self.load(n, m, o),
            None => Ok(None),
        }
    }
}
