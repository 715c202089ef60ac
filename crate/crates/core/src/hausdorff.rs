//! Probabilistic diameters, set distances and the Hausdorff distance on a
//! finite probabilistic metric space, the induced set function `Lambda` and
//! its class of measurable sets.
//!
//! For step functions `sup_{s<t}` of a finite pointwise inf/sup combination
//! equals the combination evaluated at `t`, so every quantity here is a
//! pointwise combination of the distance DDFs. Empty quantifiers follow the
//! conventions `inf ∅ = 1` and `sup ∅ = 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ddf::DiscreteDDF;
use crate::delta::{DeltaError, DeltaOp};
use crate::measures::{classify_on, Classification, FiniteSetFunction};
use crate::ppm::FinitePpMSpace;
use crate::report::Check;
use crate::subset::{Subset, Universe, UniverseError, MAX_UNIVERSE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HausdorffError {
    #[error("the diameter of the empty set is undefined")]
    EmptySet,
    #[error("set {0} is not probabilistic bounded")]
    NotProbBounded(String),
    #[error("{0}")]
    Universe(#[from] UniverseError),
    #[error("{0}")]
    Delta(#[from] DeltaError),
}

/// A finite space together with its power set.
#[derive(Clone, Debug)]
pub struct HausdorffContext {
    space: FinitePpMSpace,
    universe: Universe,
}

impl HausdorffContext {
    pub fn new(space: FinitePpMSpace) -> Result<Self, HausdorffError> {
        if space.len() > MAX_UNIVERSE {
            return Err(UniverseError::TooLarge(space.len()).into());
        }
        let universe = Universe::new(space.points().to_vec())?;
        Ok(HausdorffContext { space, universe })
    }

    pub fn space(&self) -> &FinitePpMSpace {
        &self.space
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    fn h(&self, p: usize, q: usize) -> &DiscreteDDF {
        self.space.dist(p, q)
    }

    /// `D_E(t) = sup_{s<t} inf_{p,q in E} H_{p,q}(s)`.
    pub fn prob_diameter(&self, e: Subset) -> Result<DiscreteDDF, HausdorffError> {
        if e.is_empty() {
            return Err(HausdorffError::EmptySet);
        }
        let parts: Vec<&DiscreteDDF> = e
            .elements()
            .flat_map(|p| e.elements().map(move |q| (p, q)))
            .map(|(p, q)| self.h(p, q))
            .collect();
        Ok(pointwise_min(&parts))
    }

    /// `sup_t D_E(t) = 1`. The empty set counts as bounded.
    pub fn is_prob_bounded(&self, e: Subset) -> bool {
        e.is_empty()
            || self
                .prob_diameter(e)
                .map(|d| d.mass_at_infinity() == 0.0)
                .unwrap_or(false)
    }

    /// `d_{E,F}(t) = sup_{s<t} inf_{p in E} sup_{q in F} H_{p,q}(s)`.
    pub fn prob_distance(&self, e: Subset, f: Subset) -> DiscreteDDF {
        let per_point: Vec<DiscreteDDF> = e
            .elements()
            .map(|p| {
                let row: Vec<&DiscreteDDF> = f.elements().map(|q| self.h(p, q)).collect();
                pointwise_max(&row)
            })
            .collect();
        pointwise_min(&per_point.iter().collect::<Vec<_>>())
    }

    /// `H_{E,F} = min(d_{E,F}, d_{F,E})` for bounded `E` and `F`.
    pub fn hausdorff_distance(&self, e: Subset, f: Subset) -> Result<DiscreteDDF, HausdorffError> {
        for s in [e, f] {
            if !self.is_prob_bounded(s) {
                return Err(HausdorffError::NotProbBounded(self.universe.bits(s)));
            }
        }
        Ok(self.hausdorff_unchecked(e, f))
    }

    fn hausdorff_unchecked(&self, e: Subset, f: Subset) -> DiscreteDDF {
        let a = self.prob_distance(e, f);
        let b = self.prob_distance(f, e);
        pointwise_min(&[&a, &b])
    }

    /// `Lambda_E = H_{E^c, Omega}`.
    pub fn lambda_h(&self, e: Subset) -> Result<DiscreteDDF, HausdorffError> {
        self.hausdorff_distance(self.universe.complement(e), self.universe.full())
    }

    /// `Lambda` on every subset, as a set function.
    pub fn lambda_function(&self) -> Result<FiniteSetFunction, HausdorffError> {
        let values = self
            .universe
            .subsets()
            .map(|e| self.lambda_h(e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteSetFunction::new(self.universe.clone(), values)
            .expect("Lambda of the empty set is H_{Omega,Omega} = eps_0"))
    }
}

/// Pointwise minimum; the empty minimum is the constant 1 on `(0, +inf]`.
fn pointwise_min(parts: &[&DiscreteDDF]) -> DiscreteDDF {
    if parts.is_empty() {
        return DiscreteDDF::identity();
    }
    DiscreteDDF::pointwise(parts, |v| v.iter().copied().fold(1.0, f64::min))
}

/// Pointwise maximum; the empty maximum vanishes on every finite point.
fn pointwise_max(parts: &[&DiscreteDDF]) -> DiscreteDDF {
    if parts.is_empty() {
        return DiscreteDDF::at_infinity();
    }
    DiscreteDDF::pointwise(parts, |v| v.iter().copied().fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremStatus {
    Pass,
    Fail,
    /// The input is not a probabilistic metric space, so the theorem says nothing.
    PreconditionUnmet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub status: TheoremStatus,
    pub precondition: Vec<Check>,
    pub checks: Vec<Check>,
}

/// Checks `Lambda_∅ = eps_0`, antimonotonicity and
/// `Lambda_{E ∪ F} <= Pi_M(Lambda_E, Lambda_F)` over all pairs.
pub fn check_lambda_theorem(ctx: &HausdorffContext, tol: f64) -> Result<LambdaReport, HausdorffError> {
    let pre = ctx.space.verify(tol)?;
    let lambda = ctx.lambda_function()?;
    let u = &ctx.universe;
    let mut empty = Check::new("Lambda(∅) = eps_0");
    empty.record(lambda.get(Subset::EMPTY).approx_eq(&DiscreteDDF::identity(), tol), || {
        lambda.get(Subset::EMPTY).to_string()
    });
    let mut anti = Check::new("antimonotonicity");
    let mut bound = Check::new("Lambda(E ∪ F) <= Pi_M(Lambda(E), Lambda(F))");
    for e in u.subsets() {
        for f in u.subsets() {
            if e.is_subset_of(f) {
                anti.record(lambda.get(f).leq(lambda.get(e), tol), || {
                    format!("E={}, F={}", u.bits(e), u.bits(f))
                });
            }
            let m = pointwise_min(&[lambda.get(e), lambda.get(f)]);
            bound.record(lambda.get(e.union(f)).leq(&m, tol), || {
                format!("E={}, F={}", u.bits(e), u.bits(f))
            });
        }
    }
    let checks = vec![empty, anti, bound];
    let status = if !pre.passed {
        TheoremStatus::PreconditionUnmet
    } else if checks.iter().all(|c| c.passed) {
        TheoremStatus::Pass
    } else {
        TheoremStatus::Fail
    };
    Ok(LambdaReport {
        status,
        precondition: pre.checks,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurableReport {
    /// `S_tau` as sorted bitmask strings.
    pub members: Vec<String>,
    pub contains_empty: bool,
    pub contains_full: bool,
    pub complement_closed: Check,
    pub union_closed: Check,
    /// `S_tau = {∅, Omega}`.
    pub trivial: bool,
    /// `Lambda_Omega`, which under the empty-set conventions is all mass at `+inf`.
    pub lambda_full: DiscreteDDF,
}

impl MeasurableReport {
    pub fn structure_holds(&self) -> bool {
        self.contains_empty
            && self.contains_full
            && self.complement_closed.passed
            && self.union_closed.passed
    }
}

/// `E` is measurable when `Lambda_G = tau(Lambda_{G ∩ E}, Lambda_{G \ E})`
/// for every `G`.
pub fn measurable_sets(ctx: &HausdorffContext, tau: &DeltaOp, tol: f64) -> Result<Vec<Subset>, HausdorffError> {
    let lambda = ctx.lambda_function()?;
    let mut out = Vec::new();
    'candidates: for e in ctx.universe.subsets() {
        for g in ctx.universe.subsets() {
            let split = tau.apply(lambda.get(g.intersection(e)), lambda.get(g.difference(e)))?;
            if !split.approx_eq(lambda.get(g), tol) {
                continue 'candidates;
            }
        }
        out.push(e);
    }
    Ok(out)
}

/// Computes `S_tau` and checks that it is an algebra.
pub fn enumerate_measurable(ctx: &HausdorffContext, tau: &DeltaOp, tol: f64) -> Result<MeasurableReport, HausdorffError> {
    let u = &ctx.universe;
    let members = measurable_sets(ctx, tau, tol)?;
    let mut is_member = vec![false; u.subset_count()];
    for m in &members {
        is_member[m.index()] = true;
    }
    let mut comp = Check::new("closed under complement");
    let mut union = Check::new("closed under union");
    for &e in &members {
        comp.record(is_member[u.complement(e).index()], || u.bits(e));
        for &f in &members {
            union.record(is_member[e.union(f).index()], || format!("{} ∪ {}", u.bits(e), u.bits(f)));
        }
    }
    let mut names: Vec<String> = members.iter().map(|&m| u.bits(m)).collect();
    names.sort();
    let full = u.full();
    Ok(MeasurableReport {
        contains_empty: is_member[0],
        contains_full: is_member[full.index()],
        trivial: members.iter().all(|&m| m.is_empty() || m == full),
        members: names,
        complement_closed: comp,
        union_closed: union,
        lambda_full: ctx.lambda_h(full)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub measurable: usize,
    /// `Lambda_{E ∪ F} = tau(Lambda_E, Lambda_F)` for disjoint measurable `E, F`.
    pub additivity: Check,
    /// The same restriction run through the general classifier.
    pub classification: Classification,
}

/// Checks that `Lambda` restricted to `S_tau` is a `tau`-decomposable measure.
pub fn check_restriction_measure(ctx: &HausdorffContext, tau: &DeltaOp, tol: f64) -> Result<RestrictionReport, HausdorffError> {
    let members = measurable_sets(ctx, tau, tol)?;
    let lambda = ctx.lambda_function()?;
    let u = &ctx.universe;
    let mut add = Check::new("restriction is a measure");
    for &e in &members {
        for &f in &members {
            if !e.is_disjoint(f) {
                continue;
            }
            let combined = tau.apply(lambda.get(e), lambda.get(f))?;
            add.record(combined.approx_eq(lambda.get(e.union(f)), tol), || {
                format!("E={}, F={}", u.bits(e), u.bits(f))
            });
        }
    }
    let classification = classify_on(&lambda, tau, &members, tol)?;
    Ok(RestrictionReport {
        measurable: members.len(),
        additivity: add,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::dirac_space;
    use crate::scalar::ScalarOp;

    fn eps(a: f64) -> DiscreteDDF {
        DiscreteDDF::epsilon(a).unwrap()
    }

    fn two_points() -> HausdorffContext {
        let d = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        HausdorffContext::new(dirac_space(&d, DeltaOp::tau_t(ScalarOp::Minimum))).unwrap()
    }

    #[test]
    fn two_point_examples() {
        let ctx = two_points();
        let (p, q, all) = (Subset(1), Subset(2), Subset(3));
        assert_eq!(ctx.prob_diameter(p).unwrap(), DiscreteDDF::identity());
        assert_eq!(ctx.prob_diameter(all).unwrap(), eps(1.0));
        assert_eq!(ctx.prob_diameter(Subset::EMPTY), Err(HausdorffError::EmptySet));
        assert!(ctx.is_prob_bounded(all));
        assert_eq!(ctx.prob_distance(Subset::EMPTY, all), DiscreteDDF::identity());
        assert_eq!(ctx.prob_distance(p, Subset::EMPTY), DiscreteDDF::at_infinity());
        assert_eq!(ctx.prob_distance(p, q), eps(1.0));
        assert_eq!(ctx.hausdorff_distance(p, q).unwrap(), eps(1.0));
        assert_eq!(ctx.hausdorff_distance(all, all).unwrap(), DiscreteDDF::identity());
        assert_eq!(ctx.lambda_h(Subset::EMPTY).unwrap(), DiscreteDDF::identity());
        assert_eq!(ctx.lambda_h(p).unwrap(), eps(1.0));
        // the raw definition puts Lambda(Omega) = H(∅, Omega) at +inf
        assert_eq!(ctx.lambda_h(all).unwrap(), DiscreteDDF::at_infinity());
    }

    #[test]
    fn unbounded_sets_are_rejected() {
        let d = vec![vec![0.0, f64::INFINITY], vec![f64::INFINITY, 0.0]];
        let ctx = HausdorffContext::new(dirac_space(&d, DeltaOp::tau_t(ScalarOp::Minimum))).unwrap();
        assert!(!ctx.is_prob_bounded(Subset(3)));
        assert!(matches!(
            ctx.hausdorff_distance(Subset(1), Subset(3)),
            Err(HausdorffError::NotProbBounded(_))
        ));
    }

    #[test]
    fn lambda_theorem_and_measurable_sets() {
        let ctx = two_points();
        let r = check_lambda_theorem(&ctx, 1e-9).unwrap();
        assert_eq!(r.status, TheoremStatus::Pass);
        for tau in [DeltaOp::tau_t(ScalarOp::Minimum), DeltaOp::pi_top(ScalarOp::Minimum)] {
            let m = enumerate_measurable(&ctx, &tau, 1e-9).unwrap();
            assert!(m.structure_holds());
            assert_eq!(m.members, vec!["00".to_string(), "11".to_string()]);
            assert!(m.trivial);
            let r = check_restriction_measure(&ctx, &tau, 1e-9).unwrap();
            assert!(r.additivity.passed && r.classification.is_measure);
        }
        let single = HausdorffContext::new(dirac_space(&[vec![0.0]], DeltaOp::Convolution)).unwrap();
        assert_eq!(check_lambda_theorem(&single, 1e-9).unwrap().status, TheoremStatus::Pass);
    }

    #[test]
    fn precondition_is_reported() {
        let mut rng = crate::generate::rng_for(3, "test");
        let space = crate::generate::non_metric_space(&mut rng, 4, DeltaOp::tau_t(ScalarOp::Minimum));
        let r = check_lambda_theorem(&HausdorffContext::new(space).unwrap(), 1e-9).unwrap();
        assert_eq!(r.status, TheoremStatus::PreconditionUnmet);
    }
}
