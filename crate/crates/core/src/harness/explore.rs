use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{thread_pool, HarnessError, SCHEMA_VERSION};
use crate::delta::DeltaOp;
use crate::generate::{dirac_space, distinct_sum_weights, random_dyadic_ddf, random_metric, rng_for};
use crate::hausdorff::{measurable_sets, HausdorffContext};
use crate::measures::{build_dirac, classify, NumericSetFunction};
use crate::oracle::apply_on_grid;
use crate::scalar::{LOp, ScalarOp};
use crate::subset::Universe;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExploreMode {
    FindNonassoc,
    FindPiTopViolation,
    STauCensus,
}

impl ExploreMode {
    pub const ALL: [ExploreMode; 3] = [
        ExploreMode::FindNonassoc,
        ExploreMode::FindPiTopViolation,
        ExploreMode::STauCensus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExploreMode::FindNonassoc => "find-nonassoc",
            ExploreMode::FindPiTopViolation => "find-pi-top-violation",
            ExploreMode::STauCensus => "s-tau-census",
        }
    }
}

impl fmt::Display for ExploreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExploreMode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExploreMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| HarnessError::ConfigParse(format!("unknown explore mode {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExploreConfig {
    pub mode: ExploreMode,
    pub seed: u64,
    /// Number of random instances to try.
    pub budget: usize,
    pub tolerance: f64,
    /// Fixed weights for `find-pi-top-violation`.
    pub weights: Option<Vec<f64>>,
    /// Number of points in the census spaces.
    pub census_points: usize,
}

impl ExploreConfig {
    pub fn new(mode: ExploreMode) -> Self {
        ExploreConfig {
            mode,
            seed: super::SuiteConfig::default().seed,
            budget: 20,
            tolerance: 1e-9,
            weights: None,
            census_points: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExploreStatus {
    Found,
    /// The budget ran out without a witness. Reported, not an error.
    BudgetExhausted,
    Tabulated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub tau: String,
    /// `|S_tau|` to number of spaces.
    pub histogram: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExploreReport {
    pub schema_version: u32,
    pub config: ExploreConfig,
    pub status: ExploreStatus,
    pub tried: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub census: Option<Vec<CensusRow>>,
    #[serde(default)]
    pub elapsed_ms: f64,
}

impl ExploreReport {
    pub fn without_timing(&self) -> ExploreReport {
        ExploreReport {
            elapsed_ms: 0.0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

pub fn explore(config: &ExploreConfig) -> Result<ExploreReport, HarnessError> {
    if config.budget == 0 {
        return Err(HarnessError::ConfigParse("budget must be positive".into()));
    }
    let start = Instant::now();
    let pool = thread_pool()?;
    let (status, tried, witness, census) = pool.install(|| match config.mode {
        ExploreMode::FindNonassoc => find_nonassoc(config),
        ExploreMode::FindPiTopViolation => find_pi_top_violation(config),
        ExploreMode::STauCensus => census(config),
    })?;
    Ok(ExploreReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        status,
        tried,
        witness,
        census,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

type Outcome = (ExploreStatus, usize, Option<serde_json::Value>, Option<Vec<CensusRow>>);

const NONASSOC_BITS: u32 = 6;

/// Associativity of `tau_{K_1,D}` through the grid oracle on dyadic triples,
/// where the grid evaluation is exact.
fn find_nonassoc(config: &ExploreConfig) -> Result<Outcome, HarnessError> {
    let op = DeltaOp::tau_la(LOp::k_alpha(1.0).expect("valid"), ScalarOp::Drastic);
    let step = 1.0 / (1u64 << NONASSOC_BITS) as f64;
    let x_max = 16.0;
    let mut rng = rng_for(config.seed, "explore/find-nonassoc");
    for trial in 1..=config.budget {
        let [g, h, k]: [_; 3] = std::array::from_fn(|_| random_dyadic_ddf(&mut rng, 3, 4.0, NONASSOC_BITS));
        let left = apply_on_grid(&op, &apply_on_grid(&op, &g, &h, x_max, step), &k, x_max, step);
        let right = apply_on_grid(&op, &g, &apply_on_grid(&op, &h, &k, x_max, step), x_max, step);
        let at = left
            .leq_violation(&right, config.tolerance)
            .or_else(|| right.leq_violation(&left, config.tolerance));
        if let Some(x) = at {
            let w = json!({
                "op": op.short_name(),
                "G": g, "H": h, "K": k,
                "x": x,
                "left": left.eval(x),
                "right": right.eval(x),
                "left_ddf": left, "right_ddf": right,
            });
            return Ok((ExploreStatus::Found, trial, Some(w), None));
        }
    }
    Ok((ExploreStatus::BudgetExhausted, config.budget, None, None))
}

fn find_pi_top_violation(config: &ExploreConfig) -> Result<Outcome, HarnessError> {
    let tau = DeltaOp::pi_top(ScalarOp::Minimum);
    let mut rng = rng_for(config.seed, "explore/find-pi-top-violation");
    for trial in 1..=config.budget {
        let w = match &config.weights {
            Some(w) => w.clone(),
            None => distinct_sum_weights(&mut rng, 3, 1.0, 10.0),
        };
        let u = Universe::of_size(w.len()).map_err(|e| HarnessError::ConfigParse(e.to_string()))?;
        let mu = NumericSetFunction::additive(u.clone(), &w).map_err(|e| HarnessError::ConfigParse(e.to_string()))?;
        let gamma = build_dirac(&mu);
        let c = classify(&gamma, &tau, config.tolerance).map_err(|e| HarnessError::ConfigParse(e.to_string()))?;
        if let Some(pw) = c.measure_witness {
            let e = u.parse_bits(&pw.e).expect("witness is a subset");
            let f = u.parse_bits(&pw.f).expect("witness is a subset");
            let w = json!({
                "tau": tau.short_name(),
                "weights": w,
                "E": pw.e, "F": pw.f,
                "mu_E": mu.get(e), "mu_F": mu.get(f),
                "gamma_union": gamma.get(e.union(f)),
                "tau_of_parts": tau.apply(gamma.get(e), gamma.get(f)).expect("Pi_M is total"),
            });
            return Ok((ExploreStatus::Found, trial, Some(w), None));
        }
        if config.weights.is_some() {
            return Ok((ExploreStatus::BudgetExhausted, trial, None, None));
        }
    }
    Ok((ExploreStatus::BudgetExhausted, config.budget, None, None))
}

fn census(config: &ExploreConfig) -> Result<Outcome, HarnessError> {
    let n = config.census_points;
    if n == 0 || n > 6 {
        return Err(HarnessError::ConfigParse(format!("census spaces need 1..=6 points, got {n}")));
    }
    let taus = [
        DeltaOp::tau_t(ScalarOp::Minimum),
        DeltaOp::tau_t(ScalarOp::Product),
        DeltaOp::tau_t(ScalarOp::Lukasiewicz),
        DeltaOp::pi_top(ScalarOp::Minimum),
        DeltaOp::Convolution,
    ];
    let mut rows: Vec<CensusRow> = taus
        .iter()
        .map(|t| CensusRow {
            tau: t.short_name(),
            histogram: BTreeMap::new(),
        })
        .collect();
    let mut rng = rng_for(config.seed, "explore/s-tau-census");
    for _ in 0..config.budget {
        let d = random_metric(&mut rng, n, 1.0, 10.0);
        let ctx = HausdorffContext::new(dirac_space(&d, taus[0].clone()))
            .map_err(|e| HarnessError::ConfigParse(e.to_string()))?;
        for (row, tau) in rows.iter_mut().zip(&taus) {
            let size = measurable_sets(&ctx, tau, config.tolerance)
                .map_err(|e| HarnessError::ConfigParse(e.to_string()))?
                .len();
            *row.histogram.entry(size).or_insert(0) += 1;
        }
    }
    Ok((ExploreStatus::Tabulated, config.budget, None, Some(rows)))
}
