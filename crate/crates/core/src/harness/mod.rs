//! Suite runner, counterexample searches and plot data export.

mod explore;
mod export;
mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delta::DeltaOp;
use crate::report::Check;
use crate::scalar::ScalarOp;

pub use explore::{explore, CensusRow, ExploreConfig, ExploreMode, ExploreReport, ExploreStatus};
pub use export::{default_window, export_plotdata, resolve_export, write_csv, ExportTarget};
pub use suites::{suite_anchor, SUITE_NAMES};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest universe accepted in a configuration.
pub const MAX_CONFIG_UNIVERSE: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("config parse error: {0}")]
    ConfigParse(String),
    #[error("unknown suite {0:?}")]
    SuiteUnknown(String),
    #[error("I/O failure: {0}")]
    IoFailure(String),
    #[error("invalid export target: {0}")]
    BadTarget(String),
}

impl HarnessError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    pub tolerance: f64,
    /// Universe sizes for the set function and Hausdorff suites.
    pub universe_sizes: Vec<usize>,
    /// Operations checked by the triangle-axioms suite.
    pub delta_ops: Vec<DeltaOp>,
    pub suites: Vec<String>,
    pub oracle_step: f64,
    /// Run planted-violation detectors alongside the positive checks.
    pub negative_tests: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 20_240_901,
            tolerance: 1e-9,
            universe_sizes: vec![5],
            delta_ops: default_triangle_ops(),
            suites: SUITE_NAMES.iter().map(|s| s.to_string()).collect(),
            oracle_step: crate::oracle::ORACLE_STEP,
            negative_tests: true,
        }
    }
}

/// `tau_T(M)`, `tau_T(Pi)`, `tau_T(W)`, `Pi_M`, `Pi_Pi`, `Pi_W` and convolution.
pub fn default_triangle_ops() -> Vec<DeltaOp> {
    let t = [ScalarOp::Minimum, ScalarOp::Product, ScalarOp::Lukasiewicz];
    t.iter()
        .cloned()
        .map(DeltaOp::tau_t)
        .chain(t.iter().cloned().map(DeltaOp::pi_top))
        .chain(std::iter::once(DeltaOp::Convolution))
        .collect()
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: SuiteConfig =
            serde_json::from_str(text).map_err(|e| HarnessError::ConfigParse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        for s in &self.suites {
            if !SUITE_NAMES.contains(&s.as_str()) {
                return Err(HarnessError::SuiteUnknown(s.clone()));
            }
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(HarnessError::ConfigParse(format!(
                "tolerance must lie in (0, 1), got {}",
                self.tolerance
            )));
        }
        if !(self.oracle_step > 0.0 && self.oracle_step <= 0.1) {
            return Err(HarnessError::ConfigParse(format!(
                "oracle_step must lie in (0, 0.1], got {}",
                self.oracle_step
            )));
        }
        if let Some(&n) = self
            .universe_sizes
            .iter()
            .find(|&&n| n == 0 || n > MAX_CONFIG_UNIVERSE)
        {
            return Err(HarnessError::ConfigParse(format!(
                "universe size {n} outside 1..={MAX_CONFIG_UNIVERSE}"
            )));
        }
        Ok(())
    }
}

/// One claim inside a suite: a statement and the checks that back it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    /// Planted-violation detector: the checks pass when the violation is caught.
    #[serde(default)]
    pub negative: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Claim {
    pub fn new(statement: impl Into<String>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Claim {
            statement: statement.into(),
            negative: false,
            checks,
            notes: Vec::new(),
            passed,
        }
    }

    pub fn detector(statement: impl Into<String>, checks: Vec<Check>) -> Self {
        Claim {
            negative: true,
            ..Claim::new(statement, checks)
        }
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    /// The theorem or example the suite verifies.
    pub anchor: String,
    pub claims: Vec<Claim>,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub suites_ms: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: SuiteConfig,
    /// Suite name to verified statement.
    pub theorem_map: BTreeMap<String, String>,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
    /// Wall-clock data; the only part of a report that varies between runs.
    #[serde(default)]
    pub timing: Timing,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    /// The report with timing cleared.
    pub fn without_timing(&self) -> Report {
        Report {
            timing: Timing::default(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per suite.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let failing: Vec<&str> = s
                .claims
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.statement.as_str())
                .collect();
            out.push_str(&format!(
                "{} {}",
                if s.passed { "PASS" } else { "FAIL" },
                s.suite
            ));
            if !failing.is_empty() {
                out.push_str(&format!(" ({})", failing.join("; ")));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} suites, {}\n",
            self.suites.len(),
            if self.passed { "all passed" } else { "failures present" }
        ));
        out
    }
}

/// A pool honouring `PMMEAS_THREADS`.
pub fn thread_pool() -> Result<rayon::ThreadPool, HarnessError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("PMMEAS_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| HarnessError::ConfigParse(format!("PMMEAS_THREADS={v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| HarnessError::ConfigParse(e.to_string()))
}

/// Runs the selected suites concurrently and merges their results in
/// configuration order.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, HarnessError> {
    config.validate()?;
    let pool = thread_pool()?;
    let start = Instant::now();
    let results: Vec<(SuiteResult, f64)> = pool.install(|| {
        config
            .suites
            .par_iter()
            .map(|name| {
                let t = Instant::now();
                let r = suites::run(name, config);
                (r, t.elapsed().as_secs_f64() * 1e3)
            })
            .collect()
    });
    let mut timing = Timing {
        total_ms: start.elapsed().as_secs_f64() * 1e3,
        suites_ms: BTreeMap::new(),
    };
    let mut suites = Vec::with_capacity(results.len());
    for (r, ms) in results {
        timing.suites_ms.insert(r.suite.clone(), ms);
        suites.push(r);
    }
    let theorem_map = suites
        .iter()
        .map(|s| (s.suite.clone(), s.anchor.clone()))
        .collect();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        theorem_map,
        passed: suites.iter().all(|s| s.passed),
        suites,
        timing,
    })
}
