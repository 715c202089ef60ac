//! Binary operations on distance distribution functions.
//!
//! All operations are evaluated exactly on step functions:
//!
//! * `tau_LA(L, A)(G, H)(x) = sup { A(G(u), H(v)) : L(u, v) = x }`. For a
//!   left-continuous `A` only the corners `L(a_i, b_j)` of the two step
//!   functions can be jump points, so the supremum is a running maximum over
//!   corner values.
//! * `rho_LQ(L, Q)(G, H)(x) = inf { Qbar(G(u), H(v)) : L(u, v) = x }`. On each
//!   constant piece of `G` the infimum sits at the right end of the piece.
//! * `pi_top(T)` is pointwise and `convolution` is the law of an independent sum.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ddf::DiscreteDDF;
use crate::report::Check;
use crate::scalar::{LOp, ScalarOp};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeltaError {
    #[error(
        "{0} is not left-continuous; the exact path only covers {{0,1}}-valued inputs, \
         use the grid oracle path instead"
    )]
    NonLeftContinuousScalar(String),
}

/// A binary operation on distance distribution functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DeltaOp {
    #[serde(rename = "tau_T")]
    TauT {
        #[serde(rename = "T")]
        t: ScalarOp,
    },
    #[serde(rename = "tau_LA")]
    TauLA {
        #[serde(rename = "L")]
        l: LOp,
        #[serde(rename = "A")]
        a: ScalarOp,
    },
    #[serde(rename = "pi_top")]
    PiTop { top: ScalarOp },
    #[serde(rename = "rho_LQ")]
    RhoLQ {
        #[serde(rename = "L")]
        l: LOp,
        #[serde(rename = "Q")]
        q: ScalarOp,
    },
    #[serde(rename = "convolution")]
    Convolution,
}

impl DeltaOp {
    pub fn tau_t(t: ScalarOp) -> Self {
        DeltaOp::TauT { t }
    }

    pub fn tau_la(l: LOp, a: ScalarOp) -> Self {
        DeltaOp::TauLA { l, a }
    }

    pub fn pi_top(top: ScalarOp) -> Self {
        DeltaOp::PiTop { top }
    }

    pub fn rho_lq(l: LOp, q: ScalarOp) -> Self {
        DeltaOp::RhoLQ { l, q }
    }

    /// Evaluates the operation exactly.
    ///
    /// Sup-type operations built on a scalar that is not left-continuous are
    /// only evaluated when both inputs are `{0, 1}`-valued.
    pub fn apply(&self, g: &DiscreteDDF, h: &DiscreteDDF) -> Result<DiscreteDDF, DeltaError> {
        match self {
            DeltaOp::TauT { t } => sup_corners(&LOp::Plus, t, g, h),
            DeltaOp::TauLA { l, a } => sup_corners(l, a, g, h),
            DeltaOp::PiTop { top } => Ok(DiscreteDDF::pointwise(&[g, h], |v| {
                top.apply(v[0], v[1])
            })),
            DeltaOp::RhoLQ { l, q } => Ok(inf_curve(l, q, g, h)),
            DeltaOp::Convolution => Ok(convolve(g, h)),
        }
    }

    /// The scalar operation whose left-continuity matters, if any.
    pub fn scalar(&self) -> Option<&ScalarOp> {
        match self {
            DeltaOp::TauT { t } => Some(t),
            DeltaOp::TauLA { a, .. } => Some(a),
            DeltaOp::PiTop { top } => Some(top),
            DeltaOp::RhoLQ { q, .. } => Some(q),
            DeltaOp::Convolution => None,
        }
    }

    pub fn short_name(&self) -> String {
        match self {
            DeltaOp::TauT { t } => format!("tau_T({t})"),
            DeltaOp::TauLA { l, a } => format!("tau_LA({l}, {a})"),
            DeltaOp::PiTop { top } => format!("Pi_{top}"),
            DeltaOp::RhoLQ { l, q } => format!("rho_LQ({l}, {q})"),
            DeltaOp::Convolution => "convolution".into(),
        }
    }
}

impl fmt::Display for DeltaOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

// Right-limit levels with a pseudo-level (0, 0) in front.
fn corner_levels(f: &DiscreteDDF) -> Vec<(f64, f64)> {
    std::iter::once((0.0, 0.0)).chain(f.levels()).collect()
}

fn sup_corners(
    l: &LOp,
    a: &ScalarOp,
    g: &DiscreteDDF,
    h: &DiscreteDDF,
) -> Result<DiscreteDDF, DeltaError> {
    if !a.is_left_continuous() && !(g.is_crisp() && h.is_crisp()) {
        return Err(DeltaError::NonLeftContinuousScalar(a.short_name()));
    }
    let gl = corner_levels(g);
    let hl = corner_levels(h);
    let mut levels = Vec::with_capacity(gl.len() * hl.len());
    for &(ga, gv) in &gl {
        for &(hb, hv) in &hl {
            levels.push((l.apply(ga, hb), a.apply(gv, hv)));
        }
    }
    Ok(DiscreteDDF::from_levels(levels))
}

fn inf_curve(l: &LOp, q: &ScalarOp, g: &DiscreteDDF, h: &DiscreteDDF) -> DiscreteDDF {
    let gl = corner_levels(g);
    let mut cands: Vec<f64> = Vec::new();
    cands.extend(g.atoms().iter().map(|a| a.0));
    cands.extend(h.atoms().iter().map(|a| a.0));
    for &(ga, _) in &gl {
        for &(hb, _) in h.atoms() {
            cands.push(l.apply(ga, hb));
        }
    }
    cands.push(0.0);
    cands.retain(|c| c.is_finite());
    cands.sort_by(f64::total_cmp);
    cands.dedup();

    let value_at = |x: f64| -> f64 {
        // piece i of G covers (a_i, a_{i+1}] with value gl[i].1; piece 0 includes u = 0
        let mut best = f64::INFINITY;
        for (i, &(ai, gi)) in gl.iter().enumerate() {
            if i > 0 && ai >= x {
                break;
            }
            let u = gl.get(i + 1).map_or(x, |next| next.0.min(x));
            let v = l.solve_right(u, x);
            let hv = h.eval(v);
            best = best.min(gi + hv - q.apply(gi, hv));
        }
        best
    };

    let mut levels = Vec::with_capacity(cands.len());
    for (k, &c) in cands.iter().enumerate() {
        let probe = match cands.get(k + 1) {
            Some(&next) => 0.5 * (c + next),
            None => c + 1.0,
        };
        levels.push((c, value_at(probe)));
    }
    DiscreteDDF::from_levels(levels)
}

fn convolve(g: &DiscreteDDF, h: &DiscreteDDF) -> DiscreteDDF {
    let mut atoms = Vec::with_capacity(g.atoms().len() * h.atoms().len());
    for &(a, p) in g.atoms() {
        for &(b, q) in h.atoms() {
            atoms.push((a + b, p * q));
        }
    }
    let (gi, hi) = (g.mass_at_infinity(), h.mass_at_infinity());
    DiscreteDDF::from_parts(atoms, gi + hi - gi * hi)
}

fn witness2(g: &DiscreteDDF, h: &DiscreteDDF) -> String {
    format!("G={g}, H={h}")
}

fn witness3(g: &DiscreteDDF, h: &DiscreteDDF, k: &DiscreteDDF) -> String {
    format!("G={g}, H={h}, K={k}")
}

fn or_failed(name: &str, r: Result<Vec<Check>, DeltaError>) -> Vec<Check> {
    r.unwrap_or_else(|e| vec![Check::failed(name, e.to_string())])
}

/// Commutativity, associativity, monotonicity and neutrality of `eps_0`.
///
/// Monotonicity is tested on the ordered pairs `min(G, H) <= G` built from
/// every pair of samples, against every third sample.
pub fn check_triangle_axioms(op: &DeltaOp, samples: &[DiscreteDDF], tol: f64) -> Vec<Check> {
    let run = || -> Result<Vec<Check>, DeltaError> {
        let mut comm = Check::new("commutativity");
        let mut assoc = Check::new("associativity");
        let mut mono = Check::new("monotonicity");
        let mut neutral = Check::new("neutrality");
        let id = DiscreteDDF::identity();
        let e = op.apply(&id, &id)?;
        neutral.record(e.approx_eq(&id, tol), || format!("tau(eps0, eps0) = {e}"));
        let n = samples.len();
        let mut table = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = Some(op.apply(&samples[i], &samples[j])?);
            }
        }
        let pair = |i: usize, j: usize| table[i * n + j].as_ref().expect("filled");
        for (i, g) in samples.iter().enumerate() {
            let r = op.apply(g, &id)?;
            neutral.record(r.approx_eq(g, tol), || format!("G={g}, tau(G, eps0)={r}"));
            for (j, h) in samples.iter().enumerate() {
                comm.record(pair(i, j).approx_eq(pair(j, i), tol), || witness2(g, h));
                let lo = DiscreteDDF::pointwise(&[g, h], |v| v[0].min(v[1]));
                for (k, kk) in samples.iter().enumerate() {
                    let left = op.apply(pair(i, j), kk)?;
                    let right = op.apply(g, pair(j, k))?;
                    assoc.record(left.approx_eq(&right, tol), || witness3(g, h, kk));
                    let low = op.apply(&lo, kk)?;
                    mono.record(low.leq(pair(i, k), tol), || {
                        format!("lo={lo}, G={g}, K={kk}")
                    });
                }
            }
        }
        Ok(vec![comm, assoc, mono, neutral])
    };
    or_failed("triangle-axioms", run())
}

/// `theta(tau(x, y), tau(u, v)) >= tau(theta(x, u), theta(y, v))` for each
/// quadruple `[x, y, u, v]`.
pub fn check_dominance_delta(
    theta: &DeltaOp,
    tau: &DeltaOp,
    quadruples: &[[DiscreteDDF; 4]],
    tol: f64,
) -> Check {
    let name = format!("{theta} >> {tau}");
    let run = || -> Result<Vec<Check>, DeltaError> {
        let mut c = Check::new(name.clone());
        for [x, y, u, v] in quadruples {
            let lhs = theta.apply(&tau.apply(x, y)?, &tau.apply(u, v)?)?;
            let rhs = tau.apply(&theta.apply(x, u)?, &theta.apply(y, v)?)?;
            c.record(rhs.leq(&lhs, tol), || {
                format!("x={x}, y={y}, u={u}, v={v}: lhs={lhs}, rhs={rhs}")
            });
        }
        Ok(vec![c])
    };
    or_failed(&name, run()).remove(0)
}

/// `c ⊙ op(G, H) = op(c ⊙ G, c ⊙ H)` for all samples and constants.
pub fn check_distributive(
    op: &DeltaOp,
    samples: &[DiscreteDDF],
    constants: &[f64],
    tol: f64,
) -> Check {
    let name = format!("distributivity of {op}");
    let run = || -> Result<Vec<Check>, DeltaError> {
        let mut chk = Check::new(name.clone());
        for g in samples {
            for h in samples {
                let gh = op.apply(g, h)?;
                for &c in constants {
                    let left = gh.scalar_multiply(c);
                    let right = op.apply(&g.scalar_multiply(c), &h.scalar_multiply(c))?;
                    chk.record(left.approx_eq(&right, tol), || format!("c={c}, {}", witness2(g, h)));
                }
            }
        }
        Ok(vec![chk])
    };
    or_failed(&name, run()).remove(0)
}

/// `tau_T(T) = tau_LA(+, T)` and `Pi_T = tau_LA(K_inf, T)` on all sample pairs.
pub fn check_specialization(t: &ScalarOp, samples: &[DiscreteDDF], tol: f64) -> Vec<Check> {
    let pairs = [
        (DeltaOp::tau_t(t.clone()), DeltaOp::tau_la(LOp::k_alpha(1.0).expect("valid"), t.clone())),
        (DeltaOp::pi_top(t.clone()), DeltaOp::tau_la(LOp::KInfinity, t.clone())),
    ];
    pairs
        .iter()
        .map(|(special, general)| {
            let name = format!("{special} = {general}");
            let run = || -> Result<Vec<Check>, DeltaError> {
                let mut c = Check::new(name.clone());
                for g in samples {
                    for h in samples {
                        let a = special.apply(g, h)?;
                        let b = general.apply(g, h)?;
                        c.record(a.approx_eq(&b, tol), || witness2(g, h));
                    }
                }
                Ok(vec![c])
            };
            or_failed(&name, run()).remove(0)
        })
        .collect()
}

/// `tau_LA(L, M)(c1 ⊙ H, c2 ⊙ H) = L(c1, c2) ⊙ H`.
pub fn check_scaling_law(l: &LOp, constants: &[f64], samples: &[DiscreteDDF], tol: f64) -> Check {
    let op = DeltaOp::tau_la(l.clone(), ScalarOp::Minimum);
    let mut c = Check::new(format!("scaling law for {l}"));
    for h in samples {
        for &c1 in constants {
            for &c2 in constants {
                let got = op
                    .apply(&h.scalar_multiply(c1), &h.scalar_multiply(c2))
                    .expect("M is left-continuous");
                let want = h.scalar_multiply(l.apply(c1, c2));
                c.record(got.approx_eq(&want, tol), || {
                    format!("c1={c1}, c2={c2}, H={h}: got {got}, want {want}")
                });
            }
        }
    }
    c
}
