//! Run metadata written next to, or embedded in, every output.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub seeds: Vec<u64>,
    pub generator: Option<Value>,
    pub rng_algorithm: &'static str,
    pub software_version: String,
    /// Input path to `sha256:<hex>`.
    pub input_digests: BTreeMap<String, String>,
    pub warnings: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl RunManifest {
    pub fn new(command_line: Vec<String>) -> Self {
        RunManifest {
            command_line,
            seeds: Vec::new(),
            generator: None,
            rng_algorithm: riccinet_core::RNG_ALGORITHM,
            software_version: concat!("riccinet ", env!("CARGO_PKG_VERSION")).to_string(),
            input_digests: BTreeMap::new(),
            warnings: BTreeMap::new(),
            timestamp: None,
        }
    }

    /// Zero counts are not recorded.
    pub fn warn(&mut self, key: &str, count: usize) {
        if count > 0 {
            *self.warnings.entry(key.to_string()).or_default() += count as u64;
        }
    }

    pub fn record_input(&mut self, path: &Path, bytes: &[u8]) {
        self.input_digests.insert(
            path.display().to_string(),
            format!("sha256:{}", hex::encode(Sha256::digest(bytes))),
        );
    }

    /// Everything except the timestamp, so embedded copies are reproducible.
    pub fn stable_json(&self) -> Value {
        let mut m = self.clone();
        m.timestamp = None;
        serde_json::to_value(m).expect("manifest serialises")
    }

    pub fn stamped_json(&self) -> anyhow::Result<Vec<u8>> {
        let mut m = self.clone();
        m.timestamp = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        let mut out = serde_json::to_vec_pretty(&m).context("serialising manifest")?;
        out.push(b'\n');
        Ok(out)
    }
}
