use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliResult;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The JSON document every analysis subcommand prints. `result` is
/// reproducible byte for byte for identical parameters; `timing_ms` is not.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub exact: bool,
    pub nodes: u64,
    pub timing_ms: u128,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, result: Value, exact: bool, nodes: u64) -> Self {
        RunReport {
            command: command.to_string(),
            parameters,
            result,
            exact,
            nodes,
            timing_ms: 0,
            version: VERSION.to_string(),
        }
    }

    pub fn print(&self) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self)?;
        match writeln!(std::io::stdout().lock(), "{text}") {
            // a closed pipe downstream (`| head`) is not our failure
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            other => Ok(other?),
        }
    }
}

/// What a cached run stores: everything but the timing.
#[derive(Debug, Serialize, Deserialize)]
pub struct CachedRun {
    pub result: Value,
    pub exact: bool,
    pub nodes: u64,
}

pub const CACHE_ENV: &str = "TRANSVERSAL_LAB_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".transversal-lab-cache";

/// Cache directory: explicit flag, then the environment, then the default.
pub fn cache_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

/// Run results addressed by the hash of `(command, parameters)`.
pub struct ReportCache {
    dir: PathBuf,
}

impl ReportCache {
    pub fn new(root: &Path) -> Self {
        ReportCache {
            dir: root.join("runs"),
        }
    }

    pub fn key(command: &str, parameters: &Value) -> String {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update([0]);
        h.update(parameters.to_string().as_bytes());
        format!("{:x}", h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A miss, or an unreadable entry, yields `None`; the caller recomputes.
    pub fn load(&self, key: &str) -> Option<CachedRun> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, run: &CachedRun) -> CliResult<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(key);
        let tmp = path.with_extension(format!("{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(run)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_depends_on_command_and_parameters() {
        let p = serde_json::json!({"n": 3, "m": 3});
        let k = ReportCache::key("dr compute", &p);
        assert_eq!(k.len(), 64);
        assert_eq!(k, ReportCache::key("dr compute", &p));
        assert_ne!(k, ReportCache::key("dr anneal", &p));
        assert_ne!(k, ReportCache::key("dr compute", &serde_json::json!({"n": 3, "m": 4})));
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ReportCache::new(dir.path());
        assert!(cache.load("abc").is_none());
        let run = CachedRun {
            result: serde_json::json!({"value": 9}),
            exact: true,
            nodes: 12,
        };
        cache.store("abc", &run).unwrap();
        let back = cache.load("abc").unwrap();
        assert_eq!(back.result, run.result);
        assert_eq!(back.nodes, 12);
    }
}
