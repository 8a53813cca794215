use ddvv_core::matcore::MatrixClass;
use serde::Serialize;

/// Everything needed to reproduce a run bit-for-bit given the same build:
/// command name, full configuration, toolkit version, timestamp. Fields that
/// do not apply to a command are omitted from the serialized form.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<MatrixClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iters: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    pub version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            class: None,
            m: None,
            n: None,
            n_min: None,
            n_max: None,
            seed,
            trials: None,
            restarts: None,
            iters: None,
            tol: None,
            lambda: None,
            theta: None,
            threads: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }
}

/// Overall verdict of a run; drives the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Counterexample,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Counterexample => 3,
        }
    }
}

/// Machine-readable run report: {manifest, results, status}.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub manifest: RunManifest,
    pub results: serde_json::Value,
    pub status: Status,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The results payload alone, for byte-level reproducibility checks.
    pub fn results_bytes(&self) -> Vec<u8> {
        serde_json::to_vec(&self.results).expect("results serialize")
    }
}
