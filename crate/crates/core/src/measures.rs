//! Probabilistic-valued set functions on the power set of a finite universe.
//!
//! A set function `gamma` assigns a DDF to every subset with `gamma(∅) = eps_0`.
//! Under a triangle function `tau` it is a measure when
//! `gamma(E ∪ F) = tau(gamma(E), gamma(F))` for disjoint `E, F`, a submeasure
//! when `>=` holds instead, and antimonotone when `E ⊆ F` implies
//! `gamma(E) >= gamma(F)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ddf::DiscreteDDF;
use crate::delta::{check_distributive, DeltaError, DeltaOp};
use crate::ext_real;
use crate::report::Check;
use crate::scalar::LOp;
use crate::subset::{Subset, Universe, UniverseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("the value at the empty set must be eps_0, got {0}")]
    EmptySetNotIdentity(String),
    #[error("numeric set function: {0}")]
    BadNumeric(String),
    #[error("not {l}-decomposable at E={e}, F={f}")]
    NotLDecomposable { l: String, e: String, f: String },
    #[error("input {index} is not a {kind}: {witness}")]
    InputNotMeasure {
        index: usize,
        kind: &'static str,
        witness: String,
    },
    #[error("{0} is not distributive on the sampled values")]
    NotDistributive(String),
    #[error("set functions live on different universes")]
    UniverseMismatch,
    #[error("{0}")]
    Delta(#[from] DeltaError),
    #[error("{0}")]
    Universe(#[from] UniverseError),
    #[error("missing value for subset {0}")]
    MissingSubset(String),
    #[error("key {0:?} is not a subset of the universe")]
    UnknownSubset(String),
}

/// `gamma: 2^Omega -> Delta+` with `gamma(∅) = eps_0`, stored by bitmask.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSetFunction {
    universe: Universe,
    values: Vec<DiscreteDDF>,
}

impl FiniteSetFunction {
    pub fn new(universe: Universe, values: Vec<DiscreteDDF>) -> Result<Self, MeasureError> {
        if values.len() != universe.subset_count() {
            return Err(MeasureError::WrongLength {
                expected: universe.subset_count(),
                got: values.len(),
            });
        }
        if values[0] != DiscreteDDF::identity() {
            return Err(MeasureError::EmptySetNotIdentity(values[0].to_string()));
        }
        Ok(FiniteSetFunction { universe, values })
    }

    pub fn from_fn(
        universe: Universe,
        f: impl FnMut(Subset) -> DiscreteDDF,
    ) -> Result<Self, MeasureError> {
        let values = universe.subsets().map(f).collect();
        Self::new(universe, values)
    }

    /// The constant `eps_0` set function.
    pub fn neutral(universe: Universe) -> Self {
        let values = vec![DiscreteDDF::identity(); universe.subset_count()];
        FiniteSetFunction { universe, values }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn values(&self) -> &[DiscreteDDF] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> &DiscreteDDF {
        &self.values[s.index()]
    }

    /// The pair `(E, F)` as bitmask strings.
    pub fn pair_witness(&self, e: Subset, f: Subset) -> PairWitness {
        PairWitness {
            e: self.universe.bits(e),
            f: self.universe.bits(f),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SetFunctionTable {
    universe: Universe,
    table: BTreeMap<String, DiscreteDDF>,
}

impl Serialize for FiniteSetFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let table = self
            .universe
            .subsets()
            .map(|e| (self.universe.bits(e), self.values[e.index()].clone()))
            .collect();
        SetFunctionTable {
            universe: self.universe.clone(),
            table,
        }
        .serialize(s)
    }
}

/// Accepts either an explicit table keyed by bitmask strings (the empty set
/// may be omitted) or a generator description.
impl<'de> Deserialize<'de> for FiniteSetFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            universe: Universe,
            #[serde(default)]
            table: Option<BTreeMap<String, DiscreteDDF>>,
            #[serde(default)]
            generator: Option<Generator>,
        }
        let raw = Raw::deserialize(d)?;
        let result = match (raw.table, raw.generator) {
            (Some(table), None) => from_table(raw.universe, table),
            (None, Some(g)) => g.build(raw.universe),
            _ => {
                return Err(serde::de::Error::custom(
                    "expected exactly one of \"table\" or \"generator\"",
                ))
            }
        };
        result.map_err(serde::de::Error::custom)
    }
}

fn from_table(
    universe: Universe,
    mut table: BTreeMap<String, DiscreteDDF>,
) -> Result<FiniteSetFunction, MeasureError> {
    let mut values = Vec::with_capacity(universe.subset_count());
    for e in universe.subsets() {
        let key = universe.bits(e);
        match table.remove(&key) {
            Some(v) => values.push(v),
            None if e.is_empty() => values.push(DiscreteDDF::identity()),
            None => return Err(MeasureError::MissingSubset(key)),
        }
    }
    if let Some(key) = table.into_keys().next() {
        return Err(MeasureError::UnknownSubset(key));
    }
    FiniteSetFunction::new(universe, values)
}

/// Recipes for set functions in configuration files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Generator {
    /// `eps_{mu(E)}` with `mu` the sum of the weights in `E`.
    #[serde(rename = "dirac-additive")]
    DiracAdditive { weights: Vec<f64> },
    /// `eps_{mu(E)}` with `mu` the largest weight in `E`.
    #[serde(rename = "dirac-maxitive")]
    DiracMaxitive { weights: Vec<f64> },
    /// `m(E) ⊙ Phi` with `m` additive.
    #[serde(rename = "scaled-profile")]
    ScaledProfile { weights: Vec<f64>, phi: DiscreteDDF },
}

impl Generator {
    pub fn build(&self, universe: Universe) -> Result<FiniteSetFunction, MeasureError> {
        match self {
            Generator::DiracAdditive { weights } => {
                Ok(build_dirac(&NumericSetFunction::additive(universe, weights)?))
            }
            Generator::DiracMaxitive { weights } => {
                Ok(build_dirac(&NumericSetFunction::maxitive(universe, weights)?))
            }
            Generator::ScaledProfile { weights, phi } => {
                let m = NumericSetFunction::additive(universe, weights)?;
                build_scaled_profile(&m, &LOp::Plus, phi, 1e-9)
            }
        }
    }
}

/// `mu: 2^Omega -> [0, +inf]` with `mu(∅) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericSetFunction {
    universe: Universe,
    #[serde(with = "ext_real::vec")]
    values: Vec<f64>,
}

impl NumericSetFunction {
    pub fn new(universe: Universe, values: Vec<f64>) -> Result<Self, MeasureError> {
        if values.len() != universe.subset_count() {
            return Err(MeasureError::WrongLength {
                expected: universe.subset_count(),
                got: values.len(),
            });
        }
        if values[0] != 0.0 {
            return Err(MeasureError::BadNumeric(format!("mu(∅) = {}", values[0])));
        }
        if let Some(v) = values.iter().find(|v| !(**v >= 0.0)) {
            return Err(MeasureError::BadNumeric(format!("negative value {v}")));
        }
        Ok(NumericSetFunction { universe, values })
    }

    fn check_weights(universe: &Universe, weights: &[f64]) -> Result<(), MeasureError> {
        if weights.len() != universe.size() {
            return Err(MeasureError::WrongLength {
                expected: universe.size(),
                got: weights.len(),
            });
        }
        Ok(())
    }

    /// `mu(E) = sum of weights in E`.
    pub fn additive(universe: Universe, weights: &[f64]) -> Result<Self, MeasureError> {
        Self::check_weights(&universe, weights)?;
        let values = universe
            .subsets()
            .map(|e| e.elements().map(|i| weights[i]).sum())
            .collect();
        Self::new(universe, values)
    }

    /// `mu(E) = max of weights in E`.
    pub fn maxitive(universe: Universe, weights: &[f64]) -> Result<Self, MeasureError> {
        Self::check_weights(&universe, weights)?;
        let values = universe
            .subsets()
            .map(|e| e.elements().map(|i| weights[i]).fold(0.0, f64::max))
            .collect();
        Self::new(universe, values)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> f64 {
        self.values[s.index()]
    }

    /// The first disjoint pair with `mu(E ∪ F) != L(mu(E), mu(F))`.
    pub fn l_decomposability_violation(&self, l: &LOp, tol: f64) -> Option<(Subset, Subset)> {
        self.universe.disjoint_pairs().find(|&(e, f)| {
            let want = l.apply(self.get(e), self.get(f));
            let got = self.get(e.union(f));
            !(want == got || (want - got).abs() <= tol * want.abs().max(got.abs()).max(1.0))
        })
    }
}

/// An ordered pair of subsets as bitmask strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub e: String,
    pub f: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub is_measure: bool,
    pub is_submeasure: bool,
    pub is_antimonotone: bool,
    pub measure_witness: Option<PairWitness>,
    pub submeasure_witness: Option<PairWitness>,
    /// A pair `E ⊆ F` with `gamma(E) >= gamma(F)` failing.
    pub antimonotone_witness: Option<PairWitness>,
    pub disjoint_pairs: usize,
}

/// Classifies `gamma` under `tau` over all ordered disjoint pairs.
pub fn classify(
    gamma: &FiniteSetFunction,
    tau: &DeltaOp,
    tol: f64,
) -> Result<Classification, DeltaError> {
    let all: Vec<Subset> = gamma.universe.subsets().collect();
    classify_on(gamma, tau, &all, tol)
}

/// Classifies the restriction of `gamma` to a family of subsets closed under
/// disjoint unions. Pairs whose union leaves the family are skipped.
pub fn classify_on(
    gamma: &FiniteSetFunction,
    tau: &DeltaOp,
    members: &[Subset],
    tol: f64,
) -> Result<Classification, DeltaError> {
    let mut in_family = vec![false; gamma.universe.subset_count()];
    for m in members {
        in_family[m.index()] = true;
    }
    let mut out = Classification {
        is_measure: true,
        is_submeasure: true,
        is_antimonotone: true,
        measure_witness: None,
        submeasure_witness: None,
        antimonotone_witness: None,
        disjoint_pairs: 0,
    };
    for &e in members {
        for &f in members {
            if f.is_subset_of(e) && e != f && !gamma.get(e).leq(gamma.get(f), tol) {
                out.is_antimonotone = false;
                out.antimonotone_witness
                    .get_or_insert_with(|| gamma.pair_witness(f, e));
            }
            let u = e.union(f);
            if !e.is_disjoint(f) || !in_family[u.index()] {
                continue;
            }
            out.disjoint_pairs += 1;
            let combined = tau.apply(gamma.get(e), gamma.get(f))?;
            let whole = gamma.get(u);
            if !combined.leq(whole, tol) {
                out.is_submeasure = false;
                out.submeasure_witness
                    .get_or_insert_with(|| gamma.pair_witness(e, f));
            }
            if !combined.approx_eq(whole, tol) {
                out.is_measure = false;
                out.measure_witness
                    .get_or_insert_with(|| gamma.pair_witness(e, f));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    /// `tau(gamma(E ∪ F), gamma(E ∩ F)) = tau(gamma(E), gamma(F))` for all pairs.
    pub identity_holds: bool,
    pub witness: Option<PairWitness>,
    pub pairs_checked: usize,
    pub classify_is_measure: bool,
    /// Whether the identity verdict matches [`classify`].
    pub agree: bool,
}

/// Checks the valuation identity on all `4^n` ordered pairs and compares
/// the verdict with the disjoint-pair definition.
pub fn check_characterization(
    gamma: &FiniteSetFunction,
    tau: &DeltaOp,
    tol: f64,
) -> Result<CharacterizationReport, DeltaError> {
    let mut holds = true;
    let mut witness = None;
    let mut pairs = 0;
    for e in gamma.universe.subsets() {
        for f in gamma.universe.subsets() {
            pairs += 1;
            let left = tau.apply(gamma.get(e.union(f)), gamma.get(e.intersection(f)))?;
            let right = tau.apply(gamma.get(e), gamma.get(f))?;
            if !left.approx_eq(&right, tol) {
                holds = false;
                witness.get_or_insert_with(|| gamma.pair_witness(e, f));
            }
        }
    }
    let measure = classify(gamma, tau, tol)?.is_measure;
    Ok(CharacterizationReport {
        identity_holds: holds,
        witness,
        pairs_checked: pairs,
        classify_is_measure: measure,
        agree: holds == measure,
    })
}

/// `gamma(E ∪ F) >= tau(gamma(E), gamma(F))` for every pair, disjoint or not.
pub fn check_all_pairs_inequality(
    gamma: &FiniteSetFunction,
    tau: &DeltaOp,
    tol: f64,
) -> Result<Check, DeltaError> {
    let mut c = Check::new(format!("all-pairs inequality under {tau}"));
    for e in gamma.universe.subsets() {
        for f in gamma.universe.subsets() {
            let combined = tau.apply(gamma.get(e), gamma.get(f))?;
            c.record(combined.leq(gamma.get(e.union(f)), tol), || {
                let w = gamma.pair_witness(e, f);
                format!("E={}, F={}", w.e, w.f)
            });
        }
    }
    Ok(c)
}

/// `gamma(E) = eps_{mu(E)}`.
pub fn build_dirac(mu: &NumericSetFunction) -> FiniteSetFunction {
    let values = mu
        .values
        .iter()
        .map(|&v| DiscreteDDF::epsilon(v).expect("values are non-negative"))
        .collect();
    FiniteSetFunction {
        universe: mu.universe.clone(),
        values,
    }
}

/// `gamma(E) = m(E) ⊙ Phi` for an `L`-decomposable `m`.
pub fn build_scaled_profile(
    m: &NumericSetFunction,
    l: &LOp,
    phi: &DiscreteDDF,
    tol: f64,
) -> Result<FiniteSetFunction, MeasureError> {
    if let Some((e, f)) = m.l_decomposability_violation(l, tol) {
        return Err(MeasureError::NotLDecomposable {
            l: l.short_name(),
            e: m.universe.bits(e),
            f: m.universe.bits(f),
        });
    }
    let values = m.values.iter().map(|&c| phi.scalar_multiply(c)).collect();
    FiniteSetFunction::new(m.universe.clone(), values)
}

/// The three constructions that turn measures into measures or submeasures.
#[derive(Clone, Debug, PartialEq)]
pub enum TransformMode {
    /// `c ⊙ gamma` for a distributive `tau`.
    Scale(f64),
    /// `tau(gamma1, gamma2)` pointwise in the subset.
    CombineTau,
    /// `theta(gamma1, gamma2)` for a `theta` dominating `tau`.
    CombineTheta(DeltaOp),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformOutcome {
    pub gamma: FiniteSetFunction,
    pub classification: Classification,
    /// `theta >> tau` on the quadruples induced by disjoint pairs.
    pub dominance: Option<Check>,
}

fn require(
    gamma: &FiniteSetFunction,
    tau: &DeltaOp,
    index: usize,
    measure: bool,
    tol: f64,
) -> Result<(), MeasureError> {
    let c = classify(gamma, tau, tol)?;
    let (ok, kind, w) = if measure {
        (c.is_measure, "measure", c.measure_witness)
    } else {
        (c.is_submeasure, "submeasure", c.submeasure_witness)
    };
    if ok {
        return Ok(());
    }
    let w = w.map(|w| format!("E={}, F={}", w.e, w.f)).unwrap_or_default();
    Err(MeasureError::InputNotMeasure {
        index,
        kind,
        witness: w,
    })
}

fn distinct_values(gamma: &FiniteSetFunction) -> Vec<DiscreteDDF> {
    let mut out: Vec<DiscreteDDF> = Vec::new();
    for v in &gamma.values {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

/// Applies one of the construction theorems and classifies the result.
///
/// Scaling and the `tau`-combination need measures as input; the
/// `theta`-combination accepts submeasures.
pub fn transform(
    mode: &TransformMode,
    inputs: &[&FiniteSetFunction],
    tau: &DeltaOp,
    tol: f64,
) -> Result<TransformOutcome, MeasureError> {
    let arity = if matches!(mode, TransformMode::Scale(_)) { 1 } else { 2 };
    assert_eq!(inputs.len(), arity, "{mode:?} takes {arity} set functions");
    if inputs.iter().any(|g| g.universe != inputs[0].universe) {
        return Err(MeasureError::UniverseMismatch);
    }
    let needs_measure = !matches!(mode, TransformMode::CombineTheta(_));
    for (i, g) in inputs.iter().enumerate() {
        require(g, tau, i, needs_measure, tol)?;
    }
    let universe = inputs[0].universe.clone();
    let mut dominance = None;
    let values = match mode {
        TransformMode::Scale(c) => {
            let samples = distinct_values(inputs[0]);
            let check = check_distributive(tau, &samples, &[*c], tol);
            if !check.passed {
                return Err(MeasureError::NotDistributive(tau.short_name()));
            }
            inputs[0].values.iter().map(|v| v.scalar_multiply(*c)).collect()
        }
        TransformMode::CombineTau => pointwise_op(tau, inputs[0], inputs[1])?,
        TransformMode::CombineTheta(theta) => {
            let (g1, g2) = (inputs[0], inputs[1]);
            let quads: Vec<[DiscreteDDF; 4]> = universe
                .disjoint_pairs()
                .map(|(e, f)| {
                    [
                        g1.get(e).clone(),
                        g1.get(f).clone(),
                        g2.get(e).clone(),
                        g2.get(f).clone(),
                    ]
                })
                .collect();
            dominance = Some(crate::delta::check_dominance_delta(theta, tau, &quads, tol));
            pointwise_op(theta, g1, g2)?
        }
    };
    let gamma = FiniteSetFunction::new(universe, values)?;
    let classification = classify(&gamma, tau, tol)?;
    Ok(TransformOutcome {
        gamma,
        classification,
        dominance,
    })
}

fn pointwise_op(
    op: &DeltaOp,
    g1: &FiniteSetFunction,
    g2: &FiniteSetFunction,
) -> Result<Vec<DiscreteDDF>, DeltaError> {
    g1.values
        .iter()
        .zip(&g2.values)
        .map(|(a, b)| op.apply(a, b))
        .collect()
}

/// An `n`-ary aggregation applied pointwise to DDFs: `Pi_alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointwiseAggregation {
    #[serde(rename = "M")]
    Min,
    #[serde(rename = "max")]
    Max,
    #[serde(rename = "Pi")]
    Product,
    #[serde(rename = "AM")]
    Mean,
}

impl PointwiseAggregation {
    pub fn apply_scalar(self, xs: &[f64]) -> f64 {
        match self {
            PointwiseAggregation::Min => xs.iter().copied().fold(1.0, f64::min),
            PointwiseAggregation::Max => xs.iter().copied().fold(0.0, f64::max),
            PointwiseAggregation::Product => xs.iter().product(),
            PointwiseAggregation::Mean => xs.iter().sum::<f64>() / xs.len().max(1) as f64,
        }
    }

    pub fn apply(self, ddfs: &[&DiscreteDDF]) -> DiscreteDDF {
        if let [single] = ddfs {
            return (*single).clone();
        }
        DiscreteDDF::pointwise(ddfs, |v| self.apply_scalar(v))
    }

    pub fn short_name(self) -> &'static str {
        match self {
            PointwiseAggregation::Min => "Pi_M",
            PointwiseAggregation::Max => "Pi_max",
            PointwiseAggregation::Product => "Pi_Pi",
            PointwiseAggregation::Mean => "Pi_AM",
        }
    }

    /// `alpha(tau(x_1, y_1), ..., tau(x_n, y_n)) >= tau(alpha(x), alpha(y))`
    /// for each tuple of pairs.
    pub fn check_dominance(
        self,
        tau: &DeltaOp,
        tuples: &[Vec<(DiscreteDDF, DiscreteDDF)>],
        tol: f64,
    ) -> Result<Check, DeltaError> {
        let mut c = Check::new(format!("{} >> {tau}", self.short_name()));
        for t in tuples {
            let combined: Vec<DiscreteDDF> = t
                .iter()
                .map(|(x, y)| tau.apply(x, y))
                .collect::<Result<_, _>>()?;
            let lhs = self.apply(&combined.iter().collect::<Vec<_>>());
            let ax = self.apply(&t.iter().map(|p| &p.0).collect::<Vec<_>>());
            let ay = self.apply(&t.iter().map(|p| &p.1).collect::<Vec<_>>());
            let rhs = tau.apply(&ax, &ay)?;
            c.record(rhs.leq(&lhs, tol), || format!("lhs={lhs}, rhs={rhs}"));
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateOutcome {
    pub gamma: FiniteSetFunction,
    pub classification: Classification,
    /// `alpha >> tau` on the tuples induced by disjoint pairs.
    pub dominance: Check,
    /// `tau <= tau_i` on the pairs induced by each input.
    pub order: Check,
    /// `alpha(eps_0, ..., eps_0) = eps_0`.
    pub boundary: bool,
    /// Whether the sampled premises held. The result is returned either way.
    pub premises_verified: bool,
}

/// Aggregates `tau_i`-submeasures pointwise and classifies the result under `tau`.
pub fn aggregate(
    alpha: PointwiseAggregation,
    gammas: &[&FiniteSetFunction],
    tau: &DeltaOp,
    taus: &[DeltaOp],
    tol: f64,
) -> Result<AggregateOutcome, MeasureError> {
    assert!(!gammas.is_empty(), "aggregate needs at least one set function");
    assert_eq!(gammas.len(), taus.len(), "one triangle function per input");
    let universe = gammas[0].universe.clone();
    if gammas.iter().any(|g| g.universe != universe) {
        return Err(MeasureError::UniverseMismatch);
    }
    for (i, (g, t)) in gammas.iter().zip(taus).enumerate() {
        require(g, t, i, false, tol)?;
    }
    let pairs: Vec<(Subset, Subset)> = universe.disjoint_pairs().collect();
    let mut order = Check::new(format!("{tau} <= tau_i"));
    for (g, t) in gammas.iter().zip(taus) {
        for &(e, f) in &pairs {
            let lo = tau.apply(g.get(e), g.get(f))?;
            let hi = t.apply(g.get(e), g.get(f))?;
            order.record(lo.leq(&hi, tol), || format!("{t} at {}", g.universe.bits(e)));
        }
    }
    let tuples: Vec<Vec<(DiscreteDDF, DiscreteDDF)>> = pairs
        .iter()
        .map(|&(e, f)| {
            gammas
                .iter()
                .map(|g| (g.get(e).clone(), g.get(f).clone()))
                .collect()
        })
        .collect();
    let dominance = alpha.check_dominance(tau, &tuples, tol)?;
    let id = DiscreteDDF::identity();
    let boundary = alpha.apply(&vec![&id; gammas.len()]) == id;
    let values = universe
        .subsets()
        .map(|s| alpha.apply(&gammas.iter().map(|g| g.get(s)).collect::<Vec<_>>()))
        .collect();
    let gamma = FiniteSetFunction::new(universe, values)?;
    let classification = classify(&gamma, tau, tol)?;
    Ok(AggregateOutcome {
        premises_verified: dominance.passed && order.passed,
        gamma,
        classification,
        dominance,
        order,
        boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarOp;

    fn universe(n: usize) -> Universe {
        Universe::of_size(n).unwrap()
    }

    fn dirac_additive(w: &[f64]) -> FiniteSetFunction {
        build_dirac(&NumericSetFunction::additive(universe(w.len()), w).unwrap())
    }

    #[test]
    fn dirac_additive_is_tau_t_measure() {
        let g = dirac_additive(&[1.0, 2.0, 4.0]);
        assert_eq!(*g.get(Subset(0b101)), DiscreteDDF::epsilon(5.0).unwrap());
        let c = classify(&g, &DeltaOp::tau_t(ScalarOp::Product), 1e-9).unwrap();
        assert!(c.is_measure && c.is_submeasure && c.is_antimonotone);
        assert_eq!(c.disjoint_pairs, 27);
        let c = classify(&g, &DeltaOp::pi_top(ScalarOp::Minimum), 1e-9).unwrap();
        assert!(!c.is_measure);
        let w = c.measure_witness.unwrap();
        let (e, f) = (universe(3).parse_bits(&w.e).unwrap(), universe(3).parse_bits(&w.f).unwrap());
        assert!(!e.is_empty() && !f.is_empty());
    }

    #[test]
    fn maxitive_is_pi_top_measure() {
        let g = build_dirac(&NumericSetFunction::maxitive(universe(3), &[1.0, 2.0, 4.0]).unwrap());
        for t in [ScalarOp::Minimum, ScalarOp::Product, ScalarOp::Lukasiewicz] {
            assert!(classify(&g, &DeltaOp::pi_top(t), 1e-9).unwrap().is_measure);
        }
    }

    #[test]
    fn neutral_is_measure_for_all() {
        let g = FiniteSetFunction::neutral(universe(3));
        for tau in [DeltaOp::tau_t(ScalarOp::Lukasiewicz), DeltaOp::Convolution] {
            assert!(classify(&g, &tau, 1e-9).unwrap().is_measure);
        }
    }

    #[test]
    fn characterization_and_corruption() {
        let tau = DeltaOp::tau_t(ScalarOp::Product);
        let g = dirac_additive(&[1.0, 2.0, 4.0, 0.5]);
        let r = check_characterization(&g, &tau, 1e-9).unwrap();
        assert!(r.identity_holds && r.agree && r.pairs_checked == 256);
        let bad = crate::generate::corrupt_at(&g, Subset(0b0110));
        let r = check_characterization(&bad, &tau, 1e-9).unwrap();
        assert!(!r.identity_holds && r.agree && r.witness.is_some());
        let empty = FiniteSetFunction::neutral(universe(0));
        assert!(check_characterization(&empty, &tau, 1e-9).unwrap().identity_holds);
    }

    #[test]
    fn scaled_profile() {
        let m = NumericSetFunction::additive(universe(3), &[1.0, 2.0, 3.0]).unwrap();
        let eps1 = DiscreteDDF::epsilon(1.0).unwrap();
        let g = build_scaled_profile(&m, &LOp::Plus, &eps1, 1e-9).unwrap();
        assert_eq!(*g.get(Subset(0b011)), DiscreteDDF::epsilon(3.0).unwrap());
        let phi = DiscreteDDF::new(vec![(1.0, 0.5), (2.0, 0.5)], 0.0).unwrap();
        let g = build_scaled_profile(&m, &LOp::Plus, &phi, 1e-9).unwrap();
        let plus_m = DeltaOp::tau_la(LOp::Plus, ScalarOp::Minimum);
        assert!(classify(&g, &plus_m, 1e-9).unwrap().is_measure);
        let plus_pi = DeltaOp::tau_la(LOp::Plus, ScalarOp::Product);
        assert!(!classify(&g, &plus_pi, 1e-9).unwrap().is_measure);
        let k2 = LOp::k_alpha(2.0).unwrap();
        assert!(matches!(
            build_scaled_profile(&m, &k2, &phi, 1e-9),
            Err(MeasureError::NotLDecomposable { .. })
        ));
    }

    #[test]
    fn transforms() {
        let g = dirac_additive(&[1.0, 2.5, 4.0]);
        let tm = DeltaOp::tau_t(ScalarOp::Minimum);
        let out = transform(&TransformMode::Scale(2.0), &[&g], &tm, 1e-9).unwrap();
        assert!(out.classification.is_measure);
        let h = dirac_additive(&[0.5, 1.0, 3.0]);
        let tp = DeltaOp::tau_t(ScalarOp::Product);
        let out = transform(&TransformMode::CombineTau, &[&g, &h], &tp, 1e-9).unwrap();
        assert!(out.classification.is_measure);
        let tw = DeltaOp::tau_t(ScalarOp::Lukasiewicz);
        let mode = TransformMode::CombineTheta(DeltaOp::pi_top(ScalarOp::Minimum));
        let out = transform(&mode, &[&g, &h], &tw, 1e-9).unwrap();
        assert!(out.classification.is_submeasure);
        assert!(out.dominance.unwrap().passed);
        let pm = DeltaOp::pi_top(ScalarOp::Minimum);
        assert!(matches!(
            transform(&TransformMode::CombineTau, &[&g, &h], &pm, 1e-9),
            Err(MeasureError::InputNotMeasure { index: 0, .. })
        ));
    }

    #[test]
    fn aggregation() {
        let g = dirac_additive(&[1.0, 2.5, 4.0]);
        let h = dirac_additive(&[0.5, 1.0, 3.0]);
        let tw = DeltaOp::tau_la(LOp::Plus, ScalarOp::Lukasiewicz);
        let out = aggregate(
            PointwiseAggregation::Mean,
            &[&g, &h],
            &tw,
            &[tw.clone(), tw.clone()],
            1e-9,
        )
        .unwrap();
        assert!(out.premises_verified && out.boundary);
        assert!(out.classification.is_submeasure);
        let single = aggregate(PointwiseAggregation::Mean, &[&g], &tw, std::slice::from_ref(&tw), 1e-9).unwrap();
        assert_eq!(single.gamma, g);
    }

    #[test]
    fn json_forms() {
        let g: FiniteSetFunction = serde_json::from_str(
            r#"{"universe":["a","b","c"],"generator":{"type":"dirac-additive","weights":[1,2,4]}}"#,
        )
        .unwrap();
        assert_eq!(*g.get(Subset(0b111)), DiscreteDDF::epsilon(7.0).unwrap());
        let text = serde_json::to_string(&g).unwrap();
        let back: FiniteSetFunction = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"universe":["a"],"table":{"1":{"atoms":[[1,1]],"inf_mass":0},"0":{"atoms":[[1,1]],"inf_mass":0}}}"#;
        assert!(serde_json::from_str::<FiniteSetFunction>(bad).is_err());
        let numeric = NumericSetFunction::new(universe(1), vec![0.0, f64::INFINITY]).unwrap();
        let text = serde_json::to_string(&numeric).unwrap();
        assert!(text.contains("\"inf\""));
        assert_eq!(serde_json::from_str::<NumericSetFunction>(&text).unwrap(), numeric);
    }
}
