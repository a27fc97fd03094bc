//! Run configuration: flags, then an optional TOML file, then defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::Failure;

pub const THREADS_ENV: &str = "NEWSTEIN_THREADS";

/// Contents of the optional config file. Every key is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub method: Option<String>,
    pub output: Option<PathBuf>,
    pub m0: Option<f64>,
    pub alpha: Option<f64>,
    pub lambda: Option<f64>,
    pub ell: Option<f64>,
    pub cutoff: Option<usize>,
    pub two_s: Option<i32>,
    pub two_j: Option<u32>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
    }
}

/// Settings shared by every subcommand after merging.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub file: FileConfig,
}

impl RunConfig {
    pub fn resolve(seed: Option<u64>, threads: Option<usize>, output: Option<PathBuf>, config: Option<&Path>) -> Result<Self, Failure> {
        let file = match config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let env_threads = match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| Failure::invalid(format!("{THREADS_ENV}={v} is not a worker count")))?),
            Err(_) => None,
        };
        let threads = threads.or(env_threads).or(file.threads);
        if threads == Some(0) {
            return Err(Failure::invalid("worker count must be positive"));
        }
        Ok(RunConfig { seed: seed.or(file.seed).unwrap_or(0), threads, output: output.or_else(|| file.output.clone()), file })
    }

    pub fn install_threads(&self) -> Result<(), Failure> {
        if let Some(n) = self.threads {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::invalid(e.to_string()))?;
        }
        Ok(())
    }
}
