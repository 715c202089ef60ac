//! Brute-force grid evaluation of the sup- and inf-type operations.
//!
//! These routines never look at atom locations. They sample the constraint
//! curve `L(u, v) = x` on a uniform grid and are used to cross-check the
//! exact step-function algorithms in [`crate::delta`].

use crate::ddf::DiscreteDDF;
use crate::delta::DeltaOp;
use crate::report::Check;
use crate::scalar::{LOp, ScalarOp};

/// Default grid step of the oracles.
pub const ORACLE_STEP: f64 = 1e-3;

/// `sup { A(G(u+), H(v+)) : u, v on the grid, L(u, v) < x }`.
///
/// Any grid pair with `L(u, v) < x` can be moved slightly up and to the right
/// without leaving `{L < x}`, so right limits give a lower bound that is exact
/// when the atoms lie on the grid.
pub fn sup_oracle(l: &LOp, a: &ScalarOp, g: &DiscreteDDF, h: &DiscreteDDF, x: f64, step: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    let n = (x / step).ceil() as i64 + 1;
    let mut best = 0.0f64;
    // largest grid index k with L(u, k * step) < x; non-increasing in u
    let mut k = n;
    for i in 0..=n {
        let u = i as f64 * step;
        if u >= x {
            break;
        }
        while k >= 0 && l.apply(u, k as f64 * step) >= x {
            k -= 1;
        }
        if k < 0 {
            break;
        }
        best = best.max(a.apply(g.right_limit(u), h.right_limit(k as f64 * step)));
    }
    best
}

/// `min { Qbar(G(u), H(v)) }` over grid `u <= x` (plus `u = x`) with `v` the
/// smallest grid point satisfying `L(u, v) >= x`.
pub fn inf_oracle(l: &LOp, qbar: &ScalarOp, g: &DiscreteDDF, h: &DiscreteDDF, x: f64, step: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    let n = (x / step).floor() as i64;
    let mut us: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();
    us.push(x);
    let mut best = f64::INFINITY;
    // smallest grid index k with L(u, k * step) >= x; non-increasing in u
    let mut k = (x / step).ceil() as i64 + 1;
    for u in us {
        while k > 0 && l.apply(u, (k - 1) as f64 * step) >= x {
            k -= 1;
        }
        best = best.min(qbar.apply(g.eval(u), h.eval(k as f64 * step)));
    }
    best
}

/// `P(X + Y < x)` computed as `sum_i p_i H(x - a_i)`.
pub fn convolution_oracle(g: &DiscreteDDF, h: &DiscreteDDF, x: f64) -> f64 {
    if x == f64::INFINITY {
        return 1.0;
    }
    g.atoms()
        .iter()
        .filter(|a| a.0 < x)
        .map(|&(a, p)| p * h.eval(x - a))
        .sum()
}

/// Oracle value of any operation at `x`.
pub fn oracle_eval(op: &DeltaOp, g: &DiscreteDDF, h: &DiscreteDDF, x: f64, step: f64) -> f64 {
    match op {
        DeltaOp::TauT { t } => sup_oracle(&LOp::Plus, t, g, h, x, step),
        DeltaOp::TauLA { l, a } => sup_oracle(l, a, g, h, x, step),
        DeltaOp::PiTop { top } => top.apply(g.eval(x), h.eval(x)),
        DeltaOp::RhoLQ { l, q } => inf_oracle(l, &q.clone().dual(), g, h, x, step),
        DeltaOp::Convolution => convolution_oracle(g, h, x),
    }
}

/// Compares an exact result `r` with oracle values at the points `xs`.
///
/// The grid shifts the constraint curve by at most two grid steps, so the
/// oracle must lie between `R(x - 2 step)` and `R(x + 2 step)`, widened by `tol`.
pub fn check_oracle_agreement(
    op: &DeltaOp,
    g: &DiscreteDDF,
    h: &DiscreteDDF,
    r: &DiscreteDDF,
    xs: &[f64],
    step: f64,
    tol: f64,
) -> Check {
    let mut c = Check::new(format!("oracle agreement for {op}"));
    for &x in xs {
        let o = oracle_eval(op, g, h, x, step);
        let lo = r.eval((x - 2.0 * step).max(0.0)) - tol;
        let hi = r.eval(x + 2.0 * step) + tol;
        c.record(lo <= o && o <= hi, || {
            format!("x={x}: oracle {o} outside [{lo}, {hi}], G={g}, H={h}, R={r}")
        });
    }
    c
}

/// Evaluates an operation through the oracle on `0, step, ..., x_max` and
/// turns the samples into a step function. Usable for every scalar,
/// including ones that are not left-continuous.
pub fn apply_on_grid(op: &DeltaOp, g: &DiscreteDDF, h: &DiscreteDDF, x_max: f64, step: f64) -> DiscreteDDF {
    let n = (x_max / step).round() as usize;
    let levels = (1..=n)
        .map(|k| {
            let x = k as f64 * step;
            ((k - 1) as f64 * step, oracle_eval(op, g, h, x, step))
        })
        .collect();
    DiscreteDDF::from_levels(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(a: f64) -> DiscreteDDF {
        DiscreteDDF::epsilon(a).unwrap()
    }

    #[test]
    fn sup_oracle_on_diracs() {
        // tau_T(Pi)(eps_1, eps_2) jumps at 3
        let (l, a) = (LOp::Plus, ScalarOp::Product);
        assert_eq!(sup_oracle(&l, &a, &eps(1.0), &eps(2.0), 2.99, 1e-3), 0.0);
        assert_eq!(sup_oracle(&l, &a, &eps(1.0), &eps(2.0), 3.003, 1e-3), 1.0);
    }

    #[test]
    fn inf_oracle_on_diracs() {
        let (l, q) = (LOp::Plus, ScalarOp::Lukasiewicz.dual());
        assert_eq!(inf_oracle(&l, &q, &eps(2.0), &eps(3.0), 4.99, 1e-3), 0.0);
        assert_eq!(inf_oracle(&l, &q, &eps(2.0), &eps(3.0), 5.01, 1e-3), 1.0);
    }

    #[test]
    fn convolution_oracle_is_exact() {
        let g = DiscreteDDF::new(vec![(1.0, 0.5), (3.0, 0.5)], 0.0).unwrap();
        let r = DeltaOp::Convolution.apply(&g, &g).unwrap();
        for x in [0.0, 2.0, 2.5, 4.0, 4.5, 6.0, 7.0] {
            assert!((convolution_oracle(&g, &g, x) - r.eval(x)).abs() < 1e-15);
        }
    }

    #[test]
    fn grid_path_matches_exact_on_dyadic_input() {
        let g = DiscreteDDF::new(vec![(0.5, 0.5), (1.25, 0.5)], 0.0).unwrap();
        let h = DiscreteDDF::new(vec![(0.75, 0.25), (1.5, 0.75)], 0.0).unwrap();
        let op = DeltaOp::tau_t(ScalarOp::Minimum);
        let exact = op.apply(&g, &h).unwrap();
        let grid = apply_on_grid(&op, &g, &h, 4.0, 1.0 / 64.0);
        assert!(exact.approx_eq(&grid, 1e-12), "{exact} vs {grid}");
    }
}
