//! Probabilistic pseudo-metric spaces.
//!
//! A finite space carries a symmetric matrix of DDFs with `eps_0` on the
//! diagonal and satisfies `F(p, r) >= tau(F(p, q), F(q, r))`. Antimonotone
//! decomposable submeasures generate such spaces on the power set through
//! `rho(E, F) = gamma(E △ F)`; these generated pseudo-metrics are combined
//! with `⊕_theta` and ordered by `⪯` (the reverse of the pointwise order).

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ddf::DiscreteDDF;
use crate::delta::{check_dominance_delta, DeltaError, DeltaOp};
use crate::generate::{random_ddf, random_quadruples, rng_for};
use crate::measures::{classify, FiniteSetFunction, MeasureError, PointwiseAggregation};
use crate::report::Check;
use crate::scalar::ScalarOp;
use crate::subset::{Subset, Universe};

/// Largest product space that [`product_space`] will build.
pub const MAX_PRODUCT_POINTS: usize = 4096;

/// Spaces up to this size get an exhaustive triangle scan.
pub const EXHAUSTIVE_TRIPLES_LIMIT: usize = 64;

/// Number of random triples checked on larger spaces.
pub const SAMPLED_TRIPLES: usize = 20_000;

/// Default number of random quadruples behind a sampled dominance verdict.
pub const DOMINANCE_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PpmError {
    #[error("{points} points but a {n}x{n} distance matrix")]
    SizeMismatch { points: usize, n: usize },
    #[error("distance is not symmetric between {0} and {1}")]
    Asymmetric(String, String),
    #[error("missing distance between {0} and {1}")]
    MissingDistance(String, String),
    #[error("input is not an antimonotone submeasure: {0}")]
    InputNotAntimonotoneSubmeasure(String),
    #[error("sampled premise failed: {0}")]
    DominanceUnverified(String),
    #[error("pseudo-metrics live on different point sets")]
    PointSetMismatch,
    #[error("product would have {0} points, at most {MAX_PRODUCT_POINTS} are supported")]
    ProductTooLarge(usize),
    #[error("{0}")]
    Delta(#[from] DeltaError),
    #[error("{0}")]
    Measure(#[from] MeasureError),
}

/// A symmetric `n x n` matrix of DDFs.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<DiscreteDDF>,
}

impl DistanceMatrix {
    /// Fills the matrix from `f(i, j)` for `i <= j` and mirrors it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> DiscreteDDF) -> Self {
        let mut data = vec![DiscreteDDF::identity(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[j * n + i] = v.clone();
                data[i * n + j] = v;
            }
        }
        DistanceMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &DiscreteDDF {
        &self.data[i * self.n + j]
    }
}

/// A finite probabilistic pseudo-metric space `(points, F, tau)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinitePpMSpace {
    points: Vec<String>,
    dist: DistanceMatrix,
    tau: DeltaOp,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PpmReport {
    pub checks: Vec<Check>,
    pub triangle_exhaustive: bool,
    pub passed: bool,
}

impl FinitePpMSpace {
    pub fn new(points: Vec<String>, dist: DistanceMatrix, tau: DeltaOp) -> Result<Self, PpmError> {
        if points.len() != dist.n {
            return Err(PpmError::SizeMismatch {
                points: points.len(),
                n: dist.n,
            });
        }
        Ok(FinitePpMSpace { points, dist, tau })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn tau(&self) -> &DeltaOp {
        &self.tau
    }

    pub fn dist(&self, i: usize, j: usize) -> &DiscreteDDF {
        self.dist.get(i, j)
    }

    pub fn with_tau(mut self, tau: DeltaOp) -> Self {
        self.tau = tau;
        self
    }

    /// Checks `F(p, p) = eps_0`, symmetry and the triangle inequality.
    ///
    /// Triples are scanned exhaustively up to [`EXHAUSTIVE_TRIPLES_LIMIT`]
    /// points and sampled with a seeded generator beyond that.
    pub fn verify(&self, tol: f64) -> Result<PpmReport, DeltaError> {
        self.verify_with(tol, EXHAUSTIVE_TRIPLES_LIMIT, SAMPLED_TRIPLES, 0)
    }

    pub fn verify_with(
        &self,
        tol: f64,
        exhaustive_limit: usize,
        samples: usize,
        seed: u64,
    ) -> Result<PpmReport, DeltaError> {
        let n = self.len();
        let id = DiscreteDDF::identity();
        let mut refl = Check::new("reflexivity");
        let mut sym = Check::new("symmetry");
        for i in 0..n {
            refl.record(self.dist(i, i).approx_eq(&id, tol), || self.points[i].clone());
            for j in 0..n {
                sym.record(self.dist(i, j) == self.dist(j, i), || {
                    format!("{} {}", self.points[i], self.points[j])
                });
            }
        }
        let exhaustive = n <= exhaustive_limit;
        let triples: Vec<(usize, usize, usize)> = if exhaustive {
            (0..n)
                .flat_map(|p| (0..n).flat_map(move |q| (0..n).map(move |r| (p, q, r))))
                .collect()
        } else {
            let mut rng = rng_for(seed, "ppm-triples");
            (0..samples)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect()
        };
        let partial: Vec<Check> = triples
            .par_chunks(4096)
            .map(|chunk| -> Result<Check, DeltaError> {
                let mut c = Check::new("triangle inequality");
                for &(p, q, r) in chunk {
                    let via = self.tau.apply(self.dist(p, q), self.dist(q, r))?;
                    c.record(via.leq(self.dist(p, r), tol), || {
                        format!("p={}, q={}, r={}", self.points[p], self.points[q], self.points[r])
                    });
                }
                Ok(c)
            })
            .collect::<Result<_, _>>()?;
        let mut tri = Check::new(if exhaustive {
            "triangle inequality"
        } else {
            "triangle inequality (sampled)"
        });
        for c in partial {
            tri.absorb(c);
        }
        let checks = vec![refl, sym, tri];
        Ok(PpmReport {
            passed: checks.iter().all(|c| c.passed),
            triangle_exhaustive: exhaustive,
            checks,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct RawSpace {
    points: Vec<String>,
    dist: BTreeMap<String, DiscreteDDF>,
    tau: DeltaOp,
}

impl Serialize for FinitePpMSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut dist = BTreeMap::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let key = format!("{}|{}", self.points[i], self.points[j]);
                dist.insert(key, self.dist(i, j).clone());
            }
        }
        RawSpace {
            points: self.points.clone(),
            dist,
            tau: self.tau.clone(),
        }
        .serialize(s)
    }
}

/// Diagonal entries may be omitted (they default to `eps_0`) and each
/// unordered pair needs to be given once, in either order.
impl<'de> Deserialize<'de> for FinitePpMSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSpace::deserialize(d)?;
        space_from_raw(raw).map_err(serde::de::Error::custom)
    }
}

fn space_from_raw(raw: RawSpace) -> Result<FinitePpMSpace, PpmError> {
    let n = raw.points.len();
    let lookup = |i: usize, j: usize| {
        let (p, q) = (&raw.points[i], &raw.points[j]);
        (
            raw.dist.get(&format!("{p}|{q}")),
            raw.dist.get(&format!("{q}|{p}")),
        )
    };
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (&raw.points[i], &raw.points[j]);
            let v = match lookup(i, j) {
                (Some(a), Some(b)) if a != b => {
                    return Err(PpmError::Asymmetric(p.clone(), q.clone()))
                }
                (Some(a), _) | (None, Some(a)) => a.clone(),
                (None, None) if i == j => DiscreteDDF::identity(),
                (None, None) => return Err(PpmError::MissingDistance(p.clone(), q.clone())),
            };
            data.push(v);
        }
    }
    FinitePpMSpace::new(raw.points, DistanceMatrix { n, data }, raw.tau)
}

/// A pseudo-metric on the power set that depends only on `E △ F`:
/// `rho(E, F) = by_diff[E △ F]`. Every generated pseudo-metric and every
/// `⊕` combination of them has this form.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoMetric {
    universe: Universe,
    by_diff: Vec<DiscreteDDF>,
}

impl PseudoMetric {
    /// `nu`: the constant `eps_0` pseudo-metric.
    pub fn neutral(universe: Universe) -> Self {
        let by_diff = vec![DiscreteDDF::identity(); universe.subset_count()];
        PseudoMetric { universe, by_diff }
    }

    /// `rho(E, F) = gamma(E △ F)` for an antimonotone `tau`-submeasure `gamma`.
    pub fn generated(gamma: &FiniteSetFunction, tau: &DeltaOp, tol: f64) -> Result<Self, PpmError> {
        let c = classify(gamma, tau, tol)?;
        if !c.is_submeasure || !c.is_antimonotone {
            let why = c
                .submeasure_witness
                .map(|w| format!("submeasure fails at E={}, F={}", w.e, w.f))
                .or_else(|| {
                    c.antimonotone_witness
                        .map(|w| format!("antimonotonicity fails at E={}, F={}", w.e, w.f))
                })
                .unwrap_or_default();
            return Err(PpmError::InputNotAntimonotoneSubmeasure(why));
        }
        Ok(PseudoMetric {
            universe: gamma.universe().clone(),
            by_diff: gamma.values().to_vec(),
        })
    }

    /// Wraps a table indexed by symmetric difference without any checks.
    pub fn from_table(universe: Universe, by_diff: Vec<DiscreteDDF>) -> Self {
        assert_eq!(by_diff.len(), universe.subset_count(), "one value per subset");
        PseudoMetric { universe, by_diff }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn get(&self, e: Subset, f: Subset) -> &DiscreteDDF {
        &self.by_diff[e.symmetric_difference(f).index()]
    }

    pub fn table(&self) -> &[DiscreteDDF] {
        &self.by_diff
    }

    /// The space on all subsets, labelled by their bitmask strings.
    pub fn to_space(&self, tau: DeltaOp) -> FinitePpMSpace {
        let n = self.universe.subset_count();
        let points = self.universe.subsets().map(|s| self.universe.bits(s)).collect();
        let dist = DistanceMatrix::from_fn(n, |i, j| self.by_diff[i ^ j].clone());
        FinitePpMSpace::new(points, dist, tau).expect("sizes match")
    }

    /// Pseudo-metric axioms under `tau`. Since `rho` depends only on the
    /// symmetric difference, the triangle inequality over all triples
    /// reduces to `rho[A △ B] >= tau(rho[A], rho[B])` over all pairs.
    pub fn validity(&self, tau: &DeltaOp, tol: f64) -> Result<Check, DeltaError> {
        let mut c = Check::new(format!("pseudo-metric under {tau}"));
        c.record(self.by_diff[0].approx_eq(&DiscreteDDF::identity(), tol), || {
            "rho(E, E) != eps_0".into()
        });
        for a in self.universe.subsets() {
            for b in self.universe.subsets() {
                let via = tau.apply(&self.by_diff[a.index()], &self.by_diff[b.index()])?;
                c.record(via.leq(&self.by_diff[a.symmetric_difference(b).index()], tol), || {
                    format!("A={}, B={}", self.universe.bits(a), self.universe.bits(b))
                });
            }
        }
        Ok(c)
    }

    pub fn approx_eq(&self, other: &PseudoMetric, tol: f64) -> bool {
        self.universe == other.universe
            && self
                .by_diff
                .iter()
                .zip(&other.by_diff)
                .all(|(a, b)| a.approx_eq(b, tol))
    }
}

/// The space generated by an antimonotone `tau`-submeasure.
pub fn from_submeasure(gamma: &FiniteSetFunction, tau: &DeltaOp, tol: f64) -> Result<FinitePpMSpace, PpmError> {
    Ok(PseudoMetric::generated(gamma, tau, tol)?.to_space(tau.clone()))
}

/// `rho(E, G) = rho(E △ F, F △ G)` over all triples of a space whose points
/// are the subsets of a universe in bitmask order.
pub fn check_translation_invariance(space: &FinitePpMSpace, tol: f64) -> Check {
    let n = space.len();
    let mut c = Check::new("translation invariance");
    if !n.is_power_of_two() {
        return Check::failed("translation invariance", "points are not a power set");
    }
    for e in 0..n {
        for f in 0..n {
            for g in 0..n {
                let ok = space.dist(e, g).approx_eq(space.dist(e ^ f, f ^ g), tol);
                c.record(ok, || format!("E={}, F={}, G={}", space.points[e], space.points[f], space.points[g]));
            }
        }
    }
    c
}

/// `rho ⪯ varrho` iff `rho(E, F) >= varrho(E, F)` pointwise for all pairs.
pub fn preceq(rho: &PseudoMetric, varrho: &PseudoMetric, tol: f64) -> Result<bool, PpmError> {
    if rho.universe != varrho.universe {
        return Err(PpmError::PointSetMismatch);
    }
    Ok(varrho
        .by_diff
        .iter()
        .zip(&rho.by_diff)
        .all(|(v, r)| v.leq(r, tol)))
}

/// `(rho ⊕_theta varrho)(E, F) = theta(rho(E, F), varrho(E, F))`, available
/// once `theta >> tau` has been confirmed on random quadruples.
#[derive(Clone, Debug)]
pub struct Oplus {
    theta: DeltaOp,
    tau: DeltaOp,
    dominance: Check,
}

impl Oplus {
    pub fn new(theta: DeltaOp, tau: DeltaOp, seed: u64, tol: f64) -> Result<Self, PpmError> {
        let mut rng = rng_for(seed, "oplus-dominance");
        let quads = random_quadruples(&mut rng, DOMINANCE_SAMPLES, 3, 10.0);
        let dominance = check_dominance_delta(&theta, &tau, &quads, tol);
        if !dominance.passed {
            return Err(PpmError::DominanceUnverified(format!(
                "{theta} >> {tau}: {}",
                dominance.witness.clone().unwrap_or_default()
            )));
        }
        Ok(Oplus {
            theta,
            tau,
            dominance,
        })
    }

    /// `⊕_{Pi_M}`, which dominates every triangle function.
    pub fn pi_m(tau: DeltaOp) -> Self {
        Oplus {
            theta: DeltaOp::pi_top(ScalarOp::Minimum),
            tau,
            dominance: Check::new("Pi_M dominates every triangle function"),
        }
    }

    pub fn theta(&self) -> &DeltaOp {
        &self.theta
    }

    pub fn tau(&self) -> &DeltaOp {
        &self.tau
    }

    /// The sampled dominance check behind this operation.
    pub fn dominance(&self) -> &Check {
        &self.dominance
    }

    pub fn apply(&self, rho: &PseudoMetric, varrho: &PseudoMetric) -> Result<PseudoMetric, PpmError> {
        if rho.universe != varrho.universe {
            return Err(PpmError::PointSetMismatch);
        }
        let by_diff = rho
            .by_diff
            .iter()
            .zip(&varrho.by_diff)
            .map(|(a, b)| self.theta.apply(a, b))
            .collect::<Result<_, _>>()?;
        Ok(PseudoMetric {
            universe: rho.universe.clone(),
            by_diff,
        })
    }
}

/// A finite set of pseudo-metrics on one power set.
#[derive(Clone, Debug)]
pub struct PseudoMetricFamily {
    universe: Universe,
    members: Vec<PseudoMetric>,
}

impl PseudoMetricFamily {
    pub fn new(universe: Universe, members: Vec<PseudoMetric>) -> Result<Self, PpmError> {
        if members.iter().any(|m| m.universe != universe) {
            return Err(PpmError::PointSetMismatch);
        }
        Ok(PseudoMetricFamily { universe, members })
    }

    pub fn members(&self) -> &[PseudoMetric] {
        &self.members
    }

    /// Adds `nu` and closes the family under `op`, merging members equal
    /// within `tol`. Stops growing at `cap` members.
    pub fn closure(&self, op: &Oplus, tol: f64, cap: usize) -> Result<PseudoMetricFamily, PpmError> {
        let mut out: Vec<PseudoMetric> = Vec::new();
        let push = |m: PseudoMetric, out: &mut Vec<PseudoMetric>| {
            if !out.iter().any(|o| o.approx_eq(&m, tol)) {
                out.push(m);
            }
        };
        push(PseudoMetric::neutral(self.universe.clone()), &mut out);
        for m in &self.members {
            push(m.clone(), &mut out);
        }
        let mut start = 0;
        while start < out.len() && out.len() < cap {
            let end = out.len();
            for i in 0..end {
                for j in start.max(i)..end {
                    let c = op.apply(&out[i], &out[j])?;
                    push(c, &mut out);
                }
            }
            start = end;
        }
        Ok(PseudoMetricFamily {
            universe: self.universe.clone(),
            members: out,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemilatticeReport {
    pub closure_size: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Checks the bounded semilattice structure of the `⊕_{Pi_M}` closure of a
/// family together with the interplay of `⊕_theta` and `⪯`.
///
/// Every member of the closure is also checked to be a pseudo-metric under
/// `tau`, so planted bad members are caught even when the order-theoretic
/// identities hold for them.
pub fn check_semilattice(family: &PseudoMetricFamily, theta: &Oplus, tol: f64) -> Result<SemilatticeReport, PpmError> {
    let tau = theta.tau().clone();
    let join = Oplus::pi_m(tau.clone());
    let closed = family.closure(&join, tol, 256)?;
    let ms = closed.members();
    let nu = PseudoMetric::neutral(family.universe.clone());

    let mut valid = Check::new("members are pseudo-metrics");
    for (k, m) in ms.iter().enumerate() {
        let c = m.validity(&tau, tol)?;
        valid.record(c.passed, || format!("member {k}: {}", c.witness.unwrap_or_default()));
    }
    let mut idem = Check::new("idempotence");
    let mut comm = Check::new("commutativity");
    let mut neutral = Check::new("neutrality of nu");
    let mut bottom = Check::new("nu ⪯ rho");
    let mut prop_i = Check::new("rho ⪯ varrho iff rho ⊕ varrho = varrho");
    let mut mono = Check::new("monotonicity of ⊕_theta");
    let mut prop_ii = Check::new("(s ⊕_theta r) ⊕ (s ⊕_theta v) ⪯ s ⊕_theta (r ⊕ v)");
    for (i, r) in ms.iter().enumerate() {
        idem.record(join.apply(r, r)?.approx_eq(r, tol), || format!("member {i}"));
        neutral.record(theta.apply(&nu, r)?.approx_eq(r, tol), || format!("member {i}"));
        bottom.record(preceq(&nu, r, tol)?, || format!("member {i}"));
        for (j, v) in ms.iter().enumerate() {
            let rv = join.apply(r, v)?;
            comm.record(rv.approx_eq(&join.apply(v, r)?, tol), || format!("members {i}, {j}"));
            let le = preceq(r, v, tol)?;
            prop_i.record(le == rv.approx_eq(v, tol), || format!("members {i}, {j}"));
            for (k, s) in ms.iter().enumerate() {
                let sr = theta.apply(s, r)?;
                let sv = theta.apply(s, v)?;
                if le {
                    mono.record(preceq(&sr, &sv, tol)?, || format!("members {i}, {j}, {k}"));
                }
                let lhs = join.apply(&sr, &sv)?;
                let rhs = theta.apply(s, &rv)?;
                prop_ii.record(preceq(&lhs, &rhs, tol)?, || format!("members {i}, {j}, {k}"));
            }
        }
    }
    let checks = vec![valid, idem, comm, neutral, bottom, prop_i, mono, prop_ii];
    Ok(SemilatticeReport {
        closure_size: ms.len(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[derive(Clone, Debug)]
pub struct ProductOutcome {
    pub space: FinitePpMSpace,
    /// `alpha >> tau` on random tuples.
    pub dominance: Check,
    /// `tau <= tau_i` on random pairs, one check per factor.
    pub order: Vec<Check>,
}

/// The product space with `rho(E, F) = alpha(rho_1(E_1, F_1), ..., rho_n(E_n, F_n))`.
///
/// The premises `alpha >> tau` and `tau <= tau_i` are sampled on random DDFs
/// first; a failed premise aborts with [`PpmError::DominanceUnverified`].
pub fn product_space(
    spaces: &[&FinitePpMSpace],
    alpha: PointwiseAggregation,
    tau: &DeltaOp,
    seed: u64,
    tol: f64,
) -> Result<ProductOutcome, PpmError> {
    let total = spaces
        .iter()
        .try_fold(1usize, |acc, s| acc.checked_mul(s.len()))
        .unwrap_or(usize::MAX);
    if total > MAX_PRODUCT_POINTS {
        return Err(PpmError::ProductTooLarge(total));
    }
    let mut rng = rng_for(seed, "product-premises");
    let tuples: Vec<Vec<(DiscreteDDF, DiscreteDDF)>> = (0..DOMINANCE_SAMPLES)
        .map(|_| {
            (0..spaces.len())
                .map(|_| (random_ddf(&mut rng, 3, 10.0, 0.2), random_ddf(&mut rng, 3, 10.0, 0.2)))
                .collect()
        })
        .collect();
    let dominance = alpha.check_dominance(tau, &tuples, tol)?;
    if !dominance.passed {
        return Err(PpmError::DominanceUnverified(dominance.name.clone()));
    }
    let mut order = Vec::with_capacity(spaces.len());
    for s in spaces {
        let mut c = Check::new(format!("{tau} <= {}", s.tau()));
        for t in &tuples {
            let (g, h) = &t[0];
            c.record(tau.apply(g, h)?.leq(&s.tau().apply(g, h)?, tol), || format!("G={g}, H={h}"));
        }
        if !c.passed {
            return Err(PpmError::DominanceUnverified(c.name));
        }
        order.push(c);
    }

    let sizes: Vec<usize> = spaces.iter().map(|s| s.len()).collect();
    let coords = |mut k: usize| -> Vec<usize> {
        let mut out = vec![0; sizes.len()];
        for (slot, &m) in out.iter_mut().zip(&sizes).rev() {
            *slot = k % m;
            k /= m;
        }
        out
    };
    let points = (0..total)
        .map(|k| {
            coords(k)
                .iter()
                .zip(spaces)
                .map(|(&i, s)| s.points[i].as_str())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let dist = DistanceMatrix::from_fn(total, |a, b| {
        let (ca, cb) = (coords(a), coords(b));
        let parts: Vec<&DiscreteDDF> = spaces
            .iter()
            .enumerate()
            .map(|(k, s)| s.dist(ca[k], cb[k]))
            .collect();
        alpha.apply(&parts)
    });
    Ok(ProductOutcome {
        space: FinitePpMSpace::new(points, dist, tau.clone())?,
        dominance,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{build_dirac, NumericSetFunction};

    fn gamma(w: &[f64]) -> FiniteSetFunction {
        build_dirac(&NumericSetFunction::additive(Universe::of_size(w.len()).unwrap(), w).unwrap())
    }

    fn tw() -> DeltaOp {
        DeltaOp::tau_t(ScalarOp::Lukasiewicz)
    }

    #[test]
    fn generated_space_is_ppm() {
        let tau = DeltaOp::tau_t(ScalarOp::Product);
        let space = from_submeasure(&gamma(&[1.0, 2.0, 4.0]), &tau, 1e-9).unwrap();
        assert_eq!(space.len(), 8);
        let r = space.verify(1e-9).unwrap();
        assert!(r.passed && r.triangle_exhaustive);
        assert_eq!(r.checks[2].checked, 512);
        assert!(check_translation_invariance(&space, 1e-9).passed);
        let nu = PseudoMetric::neutral(Universe::of_size(3).unwrap()).to_space(tau);
        assert!(nu.verify(1e-9).unwrap().passed);
    }

    #[test]
    fn rejects_non_submeasure() {
        let g = gamma(&[1.0, 2.0]);
        // gamma(Omega) below the combination of its parts
        let mut values = g.values().to_vec();
        values[3] = DiscreteDDF::epsilon(1.5).unwrap();
        let g = FiniteSetFunction::new(g.universe().clone(), values).unwrap();
        assert!(matches!(
            from_submeasure(&g, &tw(), 1e-9),
            Err(PpmError::InputNotAntimonotoneSubmeasure(_))
        ));
    }

    #[test]
    fn oplus_and_order() {
        let u = Universe::of_size(3).unwrap();
        let rho = PseudoMetric::generated(&gamma(&[1.0, 2.0, 4.0]), &tw(), 1e-9).unwrap();
        let nu = PseudoMetric::neutral(u.clone());
        let op = Oplus::new(DeltaOp::pi_top(ScalarOp::Minimum), tw(), 7, 1e-9).unwrap();
        assert!(op.apply(&nu, &rho).unwrap().approx_eq(&rho, 1e-9));
        assert!(op.apply(&rho, &rho).unwrap().approx_eq(&rho, 1e-9));
        assert!(preceq(&nu, &rho, 1e-9).unwrap());
        assert!(preceq(&rho, &rho, 1e-9).unwrap());
        assert!(!preceq(&rho, &nu, 1e-9).unwrap());
        let other = PseudoMetric::neutral(Universe::of_size(2).unwrap());
        assert_eq!(preceq(&rho, &other, 1e-9), Err(PpmError::PointSetMismatch));
        assert!(matches!(
            Oplus::new(tw(), DeltaOp::pi_top(ScalarOp::Minimum), 7, 1e-9),
            Err(PpmError::DominanceUnverified(_))
        ));
    }

    #[test]
    fn semilattice_on_small_family() {
        let u = Universe::of_size(3).unwrap();
        let members = vec![
            PseudoMetric::generated(&gamma(&[1.0, 2.0, 4.0]), &tw(), 1e-9).unwrap(),
            PseudoMetric::generated(&gamma(&[3.0, 0.5, 1.0]), &tw(), 1e-9).unwrap(),
        ];
        let fam = PseudoMetricFamily::new(u.clone(), members).unwrap();
        let theta = Oplus::pi_m(tw());
        let r = check_semilattice(&fam, &theta, 1e-9).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.closure_size, 4);
        let mut bad = gamma(&[1.0, 2.0, 4.0]).values().to_vec();
        bad[7] = bad[7].translate(1.0);
        let fam = PseudoMetricFamily::new(u.clone(), vec![PseudoMetric::from_table(u, bad)]).unwrap();
        let r = check_semilattice(&fam, &theta, 1e-9).unwrap();
        assert!(!r.checks[0].passed);
    }

    #[test]
    fn products() {
        let a = from_submeasure(&gamma(&[1.0, 2.0]), &tw(), 1e-9).unwrap();
        let b = from_submeasure(&gamma(&[0.5, 3.0]), &tw(), 1e-9).unwrap();
        let out = product_space(&[&a, &b], PointwiseAggregation::Min, &tw(), 1, 1e-9).unwrap();
        assert_eq!(out.space.len(), 16);
        assert!(out.space.verify(1e-9).unwrap().passed);
        let one = product_space(&[&a], PointwiseAggregation::Min, &tw(), 1, 1e-9).unwrap();
        assert_eq!(one.space.dist(1, 2), a.dist(1, 2));
        let single = crate::generate::dirac_space(&[vec![0.0]], tw());
        let p = product_space(&[&single, &single], PointwiseAggregation::Min, &tw(), 1, 1e-9).unwrap();
        assert_eq!(p.space.len(), 1);
        assert_eq!(*p.space.dist(0, 0), DiscreteDDF::identity());
        let big = from_submeasure(&gamma(&[1.0; 7]), &tw(), 1e-9).unwrap();
        assert!(matches!(
            product_space(&[&big, &big], PointwiseAggregation::Min, &tw(), 1, 1e-9),
            Err(PpmError::ProductTooLarge(16384))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let a = from_submeasure(&gamma(&[1.0, 2.0]), &tw(), 1e-9).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        let back: FinitePpMSpace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        let missing = r#"{"points":["a","b"],"dist":{},"tau":{"kind":"convolution"}}"#;
        assert!(serde_json::from_str::<FinitePpMSpace>(missing).is_err());
    }
}
