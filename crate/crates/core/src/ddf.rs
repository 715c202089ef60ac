//! Distance distribution functions with finite support.
//!
//! A [`DiscreteDDF`] is a left-continuous, non-decreasing step function on
//! `[0, +inf]` with `F(0) = 0` and `F(+inf) = 1`. It is stored as a sorted list
//! of `(location, mass)` atoms plus a separate mass sitting at `+inf`. The
//! value at `x` is the total mass of atoms strictly below `x`.
//!
//! Every operation in this crate maps step functions to step functions, so
//! all arithmetic on this type is exact up to floating point rounding.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Allowed deviation of the total mass from 1.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Default comparison tolerance used throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

/// CDF increments at or below this size are dropped when a result is
/// canonicalized from its levels.
const LEVEL_EPS: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DdfError {
    #[error("masses sum to {total}, expected 1")]
    NonNormalized { total: f64 },
    #[error("location {0} is negative or not a number")]
    NegativeLocation(f64),
    #[error("mass {0} is negative or not a number")]
    NegativeMass(f64),
    #[error("bad grid: step={step}, x_max={x_max}")]
    BadGrid { step: f64, x_max: f64 },
}

/// A finitely supported distance distribution function.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDdf", into = "RawDdf")]
pub struct DiscreteDDF {
    atoms: Vec<(f64, f64)>,
    inf_mass: f64,
    // cum[k] is the mass of the first k atoms; cum.len() == atoms.len() + 1.
    cum: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawDdf {
    atoms: Vec<(f64, f64)>,
    inf_mass: f64,
}

impl TryFrom<RawDdf> for DiscreteDDF {
    type Error = DdfError;

    fn try_from(raw: RawDdf) -> Result<Self, Self::Error> {
        DiscreteDDF::new(raw.atoms, raw.inf_mass)
    }
}

impl From<DiscreteDDF> for RawDdf {
    fn from(f: DiscreteDDF) -> Self {
        RawDdf {
            atoms: f.atoms,
            inf_mass: f.inf_mass,
        }
    }
}

impl DiscreteDDF {
    /// Builds a DDF from user supplied atoms.
    ///
    /// Atoms are sorted, exact duplicate locations merged and zero masses
    /// dropped. An atom at `+inf` is folded into `mass_at_infinity`.
    pub fn new(atoms: Vec<(f64, f64)>, mass_at_infinity: f64) -> Result<Self, DdfError> {
        if mass_at_infinity.is_nan() || mass_at_infinity < 0.0 {
            return Err(DdfError::NegativeMass(mass_at_infinity));
        }
        let mut inf_mass = mass_at_infinity;
        let mut finite = Vec::with_capacity(atoms.len());
        for (loc, mass) in atoms {
            if loc.is_nan() || loc < 0.0 {
                return Err(DdfError::NegativeLocation(loc));
            }
            if mass.is_nan() || mass < 0.0 || mass.is_infinite() {
                return Err(DdfError::NegativeMass(mass));
            }
            if loc == f64::INFINITY {
                inf_mass += mass;
            } else {
                finite.push((loc, mass));
            }
        }
        let total: f64 = finite.iter().map(|a| a.1).sum::<f64>() + inf_mass;
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(DdfError::NonNormalized { total });
        }
        Ok(Self::canonical(finite, inf_mass))
    }

    /// `epsilon_a`: the unit step at `a`, which is 1 exactly for `x > a`.
    pub fn epsilon(a: f64) -> Result<Self, DdfError> {
        if a.is_nan() || a < 0.0 {
            return Err(DdfError::NegativeLocation(a));
        }
        if a == f64::INFINITY {
            return Ok(Self::at_infinity());
        }
        Ok(Self::canonical(vec![(a, 1.0)], 0.0))
    }

    /// `epsilon_0`, the neutral element of every triangle function.
    pub fn identity() -> Self {
        Self::canonical(vec![(0.0, 1.0)], 0.0)
    }

    /// All mass at `+inf`: the function that vanishes on every finite `x`.
    pub fn at_infinity() -> Self {
        Self::canonical(Vec::new(), 1.0)
    }

    // Sorts, merges exact duplicates and drops empty atoms. No validation.
    fn canonical(mut atoms: Vec<(f64, f64)>, mut inf_mass: f64) -> Self {
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (loc, mass) in atoms {
            // -0.0 sorts below 0.0 under total_cmp
            let loc = if loc == 0.0 { 0.0 } else { loc };
            if loc == f64::INFINITY {
                inf_mass += mass;
                continue;
            }
            if mass == 0.0 {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.0 == loc => last.1 += mass,
                _ => merged.push((loc, mass)),
            }
        }
        let mut cum = Vec::with_capacity(merged.len() + 1);
        let mut acc = 0.0;
        cum.push(acc);
        for &(_, m) in &merged {
            acc += m;
            cum.push(acc);
        }
        DiscreteDDF {
            atoms: merged,
            inf_mass,
            cum,
        }
    }

    /// Canonicalizes atoms produced by an operation that preserves total mass.
    pub(crate) fn from_parts(atoms: Vec<(f64, f64)>, inf_mass: f64) -> Self {
        Self::canonical(atoms, inf_mass)
    }

    /// Builds the step function whose value just above each `location` is
    /// `value`, i.e. `F` equals `value` on `(location, next location]`.
    ///
    /// Values are clamped to `[0, 1]` and made non-decreasing by a running
    /// maximum, so the last finite level determines the mass at `+inf`.
    pub(crate) fn from_levels(mut levels: Vec<(f64, f64)>) -> Self {
        levels.retain(|l| l.0.is_finite());
        levels.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<(f64, f64)> = Vec::with_capacity(levels.len());
        let mut reached = 0.0f64;
        for (loc, value) in levels {
            let value = value.clamp(0.0, 1.0);
            if value <= reached + LEVEL_EPS {
                continue;
            }
            let loc = if loc <= 0.0 { 0.0 } else { loc };
            let mass = value - reached;
            reached = value;
            match atoms.last_mut() {
                Some(last) if last.0 == loc => last.1 += mass,
                _ => atoms.push((loc, mass)),
            }
        }
        let mut inf_mass = 1.0 - reached;
        if inf_mass <= LEVEL_EPS {
            inf_mass = 0.0;
        }
        Self::canonical(atoms, inf_mass)
    }

    /// Combines several DDFs pointwise: the result at `x` is
    /// `f(F_1(x), ..., F_k(x))`.
    ///
    /// `f` must be non-decreasing in every argument for the result to be a
    /// distance distribution function.
    pub fn pointwise<F>(ddfs: &[&DiscreteDDF], f: F) -> DiscreteDDF
    where
        F: Fn(&[f64]) -> f64,
    {
        let mut locs: Vec<f64> = ddfs
            .iter()
            .flat_map(|d| d.atoms.iter().map(|a| a.0))
            .collect();
        locs.push(0.0);
        locs.sort_by(f64::total_cmp);
        locs.dedup();
        let mut buf = vec![0.0; ddfs.len()];
        let levels = locs
            .into_iter()
            .map(|c| {
                for (slot, d) in buf.iter_mut().zip(ddfs) {
                    *slot = d.right_limit(c);
                }
                (c, f(&buf))
            })
            .collect();
        Self::from_levels(levels)
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn mass_at_infinity(&self) -> f64 {
        self.inf_mass
    }

    /// Largest finite atom location, if any.
    pub fn max_location(&self) -> Option<f64> {
        self.atoms.last().map(|a| a.0)
    }

    /// Cumulative levels: `(location, F just above location)` per atom.
    pub fn levels(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.atoms
            .iter()
            .zip(&self.cum[1..])
            .map(|(a, &c)| (a.0, c))
    }

    /// `F(x)`: the mass strictly below `x`. `F(+inf) = 1`.
    pub fn eval(&self, x: f64) -> f64 {
        if x == f64::INFINITY {
            return 1.0;
        }
        if !(x > 0.0) {
            return 0.0;
        }
        let k = self.atoms.partition_point(|a| a.0 < x);
        self.cum[k]
    }

    /// `F(x+)`: the mass at or below `x`.
    pub fn right_limit(&self, x: f64) -> f64 {
        if x == f64::INFINITY {
            return 1.0;
        }
        if x.is_nan() || x < 0.0 {
            return 0.0;
        }
        let k = self.atoms.partition_point(|a| a.0 <= x);
        self.cum[k]
    }

    /// Total sum of masses including the mass at `+inf`.
    pub fn total_mass(&self) -> f64 {
        self.cum[self.atoms.len()] + self.inf_mass
    }

    /// True when the function only takes the values 0 and 1.
    pub fn is_crisp(&self) -> bool {
        self.dirac_location().is_some()
    }

    /// `Some(a)` when this is `epsilon_a` (with `a = +inf` allowed).
    pub fn dirac_location(&self) -> Option<f64> {
        match (self.atoms.as_slice(), self.inf_mass) {
            ([], m) if m > 0.0 => Some(f64::INFINITY),
            ([(loc, mass)], m) if m == 0.0 && (*mass - 1.0).abs() <= NORMALIZATION_TOL => {
                Some(*loc)
            }
            _ => None,
        }
    }

    /// `c ⊙ G`: relocates every atom to `c * location`; `0 ⊙ G` and
    /// `inf ⊙ G` are both `epsilon_0`.
    ///
    /// # Panics
    ///
    /// Panics if `c` is negative or NaN.
    pub fn scalar_multiply(&self, c: f64) -> DiscreteDDF {
        assert!(c >= 0.0, "scalar_multiply needs c >= 0, got {c}");
        if c == 0.0 || c == f64::INFINITY {
            return Self::identity();
        }
        if c == 1.0 {
            return self.clone();
        }
        let atoms = self.atoms.iter().map(|&(l, m)| (c * l, m)).collect();
        Self::canonical(atoms, self.inf_mass)
    }

    /// Shifts every finite atom by `delta` to the right.
    pub fn translate(&self, delta: f64) -> DiscreteDDF {
        assert!(delta >= 0.0, "translate needs delta >= 0, got {delta}");
        let atoms = self.atoms.iter().map(|&(l, m)| (l + delta, m)).collect();
        Self::canonical(atoms, self.inf_mass)
    }

    /// Pointwise order `self <= other` up to a tolerance.
    ///
    /// The tolerance is applied both to values and to locations:
    /// `F(x) <= G(x + tol) + tol` for every `x`. With `tol = 0` this is the
    /// exact pointwise order. The horizontal slack absorbs atom locations
    /// that differ only by rounding (`(a + b) + c` against `a + (b + c)`).
    pub fn leq(&self, other: &DiscreteDDF, tol: f64) -> bool {
        self.leq_violation(other, tol).is_none()
    }

    /// The first location where `self <= other` fails, if any.
    pub fn leq_violation(&self, other: &DiscreteDDF, tol: f64) -> Option<f64> {
        // Both sides are constant on the left-open intervals between atoms of
        // `self`; the supremum of F - G on (c, next] is approached at c+.
        self.levels()
            .find(|&(c, v)| v > other.right_limit(c + tol) + tol)
            .map(|(c, _)| c)
    }

    /// Equality up to `tol` in the sense of [`DiscreteDDF::leq`] both ways.
    pub fn approx_eq(&self, other: &DiscreteDDF, tol: f64) -> bool {
        self.leq(other, tol) && other.leq(self, tol)
    }

    /// Tabulates `F` on `0, step, 2 step, ..., x_max`.
    pub fn grid_sample(&self, x_max: f64, step: f64) -> Result<Vec<(f64, f64)>, DdfError> {
        if !(step > 0.0) || !step.is_finite() || !(x_max > 0.0) || !x_max.is_finite() {
            return Err(DdfError::BadGrid { step, x_max });
        }
        let n = (x_max / step + 1e-9).floor() as usize;
        Ok((0..=n)
            .map(|i| {
                let x = i as f64 * step;
                (x, self.eval(x))
            })
            .collect())
    }
}

/// `G <= H` pointwise within `tol`.
pub fn ddf_leq(g: &DiscreteDDF, h: &DiscreteDDF, tol: f64) -> bool {
    g.leq(h, tol)
}

/// `G = H` within `tol`.
pub fn ddf_eq(g: &DiscreteDDF, h: &DiscreteDDF, tol: f64) -> bool {
    g.approx_eq(h, tol)
}

impl fmt::Debug for DiscreteDDF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for DiscreteDDF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(a) = self.dirac_location() {
            return write!(f, "eps({a})");
        }
        write!(f, "{{")?;
        for (i, (l, m)) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({l}, {m})")?;
        }
        if self.inf_mass > 0.0 {
            write!(f, "; inf: {}", self.inf_mass)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_step() -> DiscreteDDF {
        DiscreteDDF::new(vec![(1.0, 0.5), (3.0, 0.5)], 0.0).unwrap()
    }

    #[test]
    fn make_ddf_examples() {
        let e0 = DiscreteDDF::new(vec![(0.0, 1.0)], 0.0).unwrap();
        assert_eq!(e0, DiscreteDDF::identity());
        assert_eq!(two_step().eval(2.0), 0.5);
        let half = DiscreteDDF::new(vec![(1.0, 0.5)], 0.5).unwrap();
        assert_eq!(half.eval(1e300), 0.5);
        assert_eq!(half.eval(f64::INFINITY), 1.0);
    }

    #[test]
    fn make_ddf_errors() {
        assert!(matches!(
            DiscreteDDF::new(vec![(1.0, 0.4)], 0.0),
            Err(DdfError::NonNormalized { .. })
        ));
        assert!(matches!(
            DiscreteDDF::new(vec![(-1.0, 1.0)], 0.0),
            Err(DdfError::NegativeLocation(_))
        ));
        assert!(matches!(
            DiscreteDDF::new(vec![(1.0, 1.5), (2.0, -0.5)], 0.0),
            Err(DdfError::NegativeMass(_))
        ));
    }

    #[test]
    fn make_ddf_merges_duplicates() {
        let f = DiscreteDDF::new(vec![(2.0, 0.25), (1.0, 0.5), (2.0, 0.25), (5.0, 0.0)], 0.0)
            .unwrap();
        assert_eq!(f.atoms(), &[(1.0, 0.5), (2.0, 0.5)]);
    }

    #[test]
    fn epsilon_examples() {
        let e0 = DiscreteDDF::epsilon(0.0).unwrap();
        assert_eq!(e0.eval(0.001), 1.0);
        assert_eq!(e0.eval(0.0), 0.0);
        let e2 = DiscreteDDF::epsilon(2.0).unwrap();
        assert_eq!(e2.eval(2.0), 0.0);
        assert_eq!(e2.eval(2.0001), 1.0);
        let einf = DiscreteDDF::epsilon(f64::INFINITY).unwrap();
        assert_eq!(einf.eval(1e308), 0.0);
        assert_eq!(einf.eval(f64::INFINITY), 1.0);
        assert!(matches!(
            DiscreteDDF::epsilon(-0.5),
            Err(DdfError::NegativeLocation(_))
        ));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(DiscreteDDF::epsilon(2.0).unwrap().eval(2.0), 0.0);
        assert_eq!(two_step().eval(3.0), 0.5);
        assert_eq!(two_step().eval(f64::INFINITY), 1.0);
        assert_eq!(two_step().eval(0.0), 0.0);
    }

    #[test]
    fn scalar_multiply_examples() {
        let g = two_step();
        assert_eq!(g.scalar_multiply(0.0), DiscreteDDF::identity());
        assert_eq!(g.scalar_multiply(f64::INFINITY), DiscreteDDF::identity());
        let e3 = DiscreteDDF::epsilon(3.0).unwrap();
        assert_eq!(e3.scalar_multiply(2.0), DiscreteDDF::epsilon(6.0).unwrap());
        assert_eq!(g.scalar_multiply(0.5).atoms(), &[(0.5, 0.5), (1.5, 0.5)]);
        assert_eq!(g.scalar_multiply(1.0), g);
    }

    #[test]
    fn leq_examples() {
        let e1 = DiscreteDDF::epsilon(1.0).unwrap();
        let e2 = DiscreteDDF::epsilon(2.0).unwrap();
        let e3 = DiscreteDDF::epsilon(3.0).unwrap();
        assert!(ddf_leq(&e3, &e1, DEFAULT_TOL));
        assert!(ddf_leq(&two_step(), &two_step(), DEFAULT_TOL));
        assert!(ddf_leq(&e2, &e1, DEFAULT_TOL));
        assert!(!ddf_leq(&e1, &e2, DEFAULT_TOL));
        // horizontal slack absorbs rounding in locations
        let a = DiscreteDDF::epsilon(0.1 + 0.2).unwrap();
        let b = DiscreteDDF::epsilon(0.3).unwrap();
        assert!(ddf_eq(&a, &b, DEFAULT_TOL));
        assert!(!ddf_eq(&a, &b, 0.0));
    }

    #[test]
    fn leq_sees_mass_at_infinity() {
        let half = DiscreteDDF::new(vec![(1.0, 0.5)], 0.5).unwrap();
        let e1 = DiscreteDDF::epsilon(1.0).unwrap();
        assert!(ddf_leq(&half, &e1, DEFAULT_TOL));
        assert!(!ddf_leq(&e1, &half, DEFAULT_TOL));
        assert!(ddf_leq(&DiscreteDDF::at_infinity(), &half, 0.0));
    }

    #[test]
    fn grid_sample_examples() {
        let e1 = DiscreteDDF::epsilon(1.0).unwrap();
        assert_eq!(
            e1.grid_sample(2.0, 1.0).unwrap(),
            vec![(0.0, 0.0), (1.0, 0.0), (2.0, 1.0)]
        );
        let e0 = DiscreteDDF::identity();
        assert_eq!(
            e0.grid_sample(1.0, 0.5).unwrap(),
            vec![(0.0, 0.0), (0.5, 1.0), (1.0, 1.0)]
        );
        assert_eq!(
            two_step().grid_sample(4.0, 2.0).unwrap(),
            vec![(0.0, 0.0), (2.0, 0.5), (4.0, 1.0)]
        );
        assert!(matches!(
            e1.grid_sample(1.0, 0.0),
            Err(DdfError::BadGrid { .. })
        ));
        assert_eq!(e1.grid_sample(2.0, 0.1).unwrap().len(), 21);
    }

    #[test]
    fn from_levels_canonicalizes() {
        let f = DiscreteDDF::from_levels(vec![(2.0, 0.5), (1.0, 0.5), (3.0, 0.4), (4.0, 1.0)]);
        assert_eq!(f.atoms(), &[(1.0, 0.5), (4.0, 0.5)]);
        assert_eq!(f.mass_at_infinity(), 0.0);
        let g = DiscreteDDF::from_levels(vec![(1.0, 0.25)]);
        assert_eq!(g.mass_at_infinity(), 0.75);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let f = two_step();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"atoms":[[1.0,0.5],[3.0,0.5]],"inf_mass":0.0}"#);
        let back: DiscreteDDF = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<DiscreteDDF>(r#"{"atoms":[[1.0,0.5]],"inf_mass":0.0}"#)
            .is_err());
    }

    fn arb_ddf() -> impl Strategy<Value = DiscreteDDF> {
        (
            prop::collection::vec((0.0f64..10.0, 0.01f64..1.0), 0..5),
            prop::bool::ANY,
        )
            .prop_map(|(raw, with_inf)| {
                let extra = if with_inf || raw.is_empty() { 0.3 } else { 0.0 };
                let total: f64 = raw.iter().map(|a| a.1).sum::<f64>() + extra;
                let atoms = raw.iter().map(|&(l, m)| (l, m / total)).collect();
                DiscreteDDF::canonical(atoms, extra / total)
            })
    }

    proptest! {
        #[test]
        fn normalized_and_monotone(f in arb_ddf(), xs in prop::collection::vec(0.0f64..12.0, 1..20)) {
            prop_assert!((f.total_mass() - 1.0).abs() <= NORMALIZATION_TOL);
            let mut xs = xs;
            xs.sort_by(f64::total_cmp);
            let vals: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
            prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn left_continuous_at_atoms(f in arb_ddf()) {
            let mut below = 0.0;
            for &(loc, m) in f.atoms() {
                prop_assert!((f.eval(loc) - below).abs() <= 1e-15);
                below += m;
            }
        }

        #[test]
        fn scaling_relocates_diracs(a in 0.0f64..100.0, c in 0.001f64..50.0) {
            let e = DiscreteDDF::epsilon(a).unwrap().scalar_multiply(c);
            prop_assert_eq!(e.dirac_location(), Some(c * a));
        }

        #[test]
        fn leq_is_a_partial_order(f in arb_ddf(), g in arb_ddf(), h in arb_ddf()) {
            prop_assert!(f.leq(&f, DEFAULT_TOL));
            if f.leq(&g, 0.0) && g.leq(&f, 0.0) {
                prop_assert_eq!(&f, &g);
            }
            if f.leq(&g, 0.0) && g.leq(&h, 0.0) {
                prop_assert!(f.leq(&h, 0.0));
            }
        }

        #[test]
        fn leq_matches_pointwise_grid(f in arb_ddf(), g in arb_ddf()) {
            let pointwise = (0..=1200).all(|i| {
                let x = i as f64 * 0.01;
                f.eval(x) <= g.eval(x)
            }) && f.atoms().iter().chain(g.atoms()).all(|&(c, _)| {
                f.right_limit(c) <= g.right_limit(c)
            });
            prop_assert_eq!(f.leq(&g, 0.0), pointwise);
        }
    }
}
