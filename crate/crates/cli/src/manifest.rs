use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use tracelab::search::SearchSettings;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of a result with timing and node counts removed, so reruns of the
/// same query agree.
pub fn result_digest(v: &Value) -> String {
    fn strip(v: &Value) -> Value {
        match v {
            Value::Object(m) => Value::Object(
                m.iter()
                    .filter(|(k, _)| !matches!(k.as_str(), "elapsed_ms" | "nodes" | "manifest"))
                    .map(|(k, v)| (k.clone(), strip(v)))
                    .collect(),
            ),
            Value::Array(a) => Value::Array(a.iter().map(strip).collect()),
            other => other.clone(),
        }
    }
    sha256_hex(strip(v).to_string().as_bytes())
}

#[derive(Serialize, Clone)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct Budgets {
    pub budget_nodes: u64,
    pub budget_secs: f64,
    pub threads: usize,
    pub isomorph_rejection: bool,
    pub window_bound: bool,
}

impl From<&SearchSettings> for Budgets {
    fn from(s: &SearchSettings) -> Self {
        Budgets {
            budget_nodes: s.budget_nodes,
            budget_secs: s.budget_secs,
            threads: s.threads,
            isomorph_rejection: s.isomorph_rejection,
            window_bound: s.window_bound,
        }
    }
}

#[derive(Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub version: &'static str,
    pub budgets: Option<Budgets>,
    pub wall_ms: u64,
    pub result_sha256: String,
}

/// Collects what a run read so the manifest can name it.
pub struct Run {
    start: Instant,
    command: Vec<String>,
    inputs: Vec<InputDigest>,
}

impl Run {
    pub fn start() -> Run {
        Run {
            start: Instant::now(),
            command: std::env::args().collect(),
            inputs: Vec::new(),
        }
    }

    pub fn input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: sha256_hex(bytes),
        });
    }

    pub fn manifest(&self, settings: Option<&SearchSettings>, result: &Value) -> RunManifest {
        RunManifest {
            command: self.command.clone(),
            inputs: self.inputs.clone(),
            version: env!("CARGO_PKG_VERSION"),
            budgets: settings.map(Budgets::from),
            wall_ms: self.start.elapsed().as_millis() as u64,
            result_sha256: result_digest(result),
        }
    }
}
