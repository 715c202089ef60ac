//! Binary operations on the unit interval and on the extended half-line.
//!
//! [`ScalarOp`] covers the t-norms `M`, `Π`, `W`, `D`, the arithmetic mean,
//! duals `x + y - Q(x, y)` of quasi-copulas and tabulated aggregation
//! functions. [`LOp`] covers the jointly strictly increasing operations on
//! `[0, +inf]` with neutral element 0 that replace ordinary addition.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ext_real;
use crate::report::Check;

/// Slack allowed in scalar identities that hold exactly in real arithmetic.
pub const SCALAR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarOpError {
    #[error("arguments ({x}, {y}) are outside [0, 1]")]
    OutOfUnitInterval { x: f64, y: f64 },
    #[error("arguments ({u}, {v}) are negative or not a number")]
    NegativeInput { u: f64, v: f64 },
    #[error("bad grid step {0}")]
    BadGrid(f64),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("invalid operation: {0}")]
    InvalidLOp(String),
}

/// An aggregation function, t-norm or dual quasi-copula on `[0, 1]^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ScalarOp {
    #[serde(rename = "tnorm-M")]
    Minimum,
    #[serde(rename = "tnorm-Pi")]
    Product,
    #[serde(rename = "tnorm-W")]
    Lukasiewicz,
    #[serde(rename = "tnorm-D")]
    Drastic,
    #[serde(rename = "agg-AM")]
    ArithmeticMean,
    /// `x + y - Q(x, y)`.
    #[serde(rename = "quasicopula-dual")]
    Dual { of: Box<ScalarOp> },
    #[serde(rename = "table")]
    Table(TableOp),
}

impl ScalarOp {
    pub fn dual(self) -> ScalarOp {
        ScalarOp::Dual { of: Box::new(self) }
    }

    /// Evaluates the operation, rejecting arguments outside `[0, 1]`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, ScalarOpError> {
        if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
            return Err(ScalarOpError::OutOfUnitInterval { x, y });
        }
        Ok(self.apply(x, y))
    }

    /// Evaluates without range checks. Callers guarantee `x, y` in `[0, 1]`.
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        match self {
            ScalarOp::Minimum => x.min(y),
            ScalarOp::Product => x * y,
            ScalarOp::Lukasiewicz => (x + y - 1.0).max(0.0),
            ScalarOp::Drastic => {
                if x.max(y) == 1.0 {
                    x.min(y)
                } else {
                    0.0
                }
            }
            ScalarOp::ArithmeticMean => (x + y) / 2.0,
            ScalarOp::Dual { of } => x + y - of.apply(x, y),
            ScalarOp::Table(t) => t.apply(x, y),
        }
    }

    /// Whether the operation is left-continuous. The exact step-function
    /// algorithms in [`crate::delta`] are only offered for these.
    pub fn is_left_continuous(&self) -> bool {
        match self {
            ScalarOp::Drastic => false,
            ScalarOp::Dual { of } => of.is_left_continuous(),
            _ => true,
        }
    }

    pub fn is_tnorm(&self) -> bool {
        matches!(
            self,
            ScalarOp::Minimum | ScalarOp::Product | ScalarOp::Lukasiewicz | ScalarOp::Drastic
        )
    }

    pub fn short_name(&self) -> String {
        match self {
            ScalarOp::Minimum => "M".into(),
            ScalarOp::Product => "Pi".into(),
            ScalarOp::Lukasiewicz => "W".into(),
            ScalarOp::Drastic => "D".into(),
            ScalarOp::ArithmeticMean => "AM".into(),
            ScalarOp::Dual { of } => format!("dual({})", of.short_name()),
            ScalarOp::Table(t) => format!("table{}", t.values.len()),
        }
    }
}

impl fmt::Display for ScalarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

/// A square table of values on the uniform grid `i / (n - 1)`, bilinearly
/// interpolated in between.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct TableOp {
    values: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawTable {
    values: Vec<Vec<f64>>,
}

impl TryFrom<RawTable> for TableOp {
    type Error = ScalarOpError;

    fn try_from(raw: RawTable) -> Result<Self, Self::Error> {
        TableOp::new(raw.values)
    }
}

impl TableOp {
    pub fn new(values: Vec<Vec<f64>>) -> Result<Self, ScalarOpError> {
        let n = values.len();
        if n < 2 {
            return Err(ScalarOpError::InvalidTable("need at least a 2x2 table".into()));
        }
        if values.iter().any(|row| row.len() != n) {
            return Err(ScalarOpError::InvalidTable("table must be square".into()));
        }
        for (i, row) in values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) {
                    return Err(ScalarOpError::InvalidTable(format!(
                        "value {v} at ({i}, {j}) outside [0, 1]"
                    )));
                }
                if (i > 0 && values[i - 1][j] > v) || (j > 0 && row[j - 1] > v) {
                    return Err(ScalarOpError::InvalidTable(format!(
                        "table decreases at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(TableOp { values })
    }

    /// Tabulates `op` on an `n x n` grid.
    pub fn sample(op: &ScalarOp, n: usize) -> Result<Self, ScalarOpError> {
        let step = 1.0 / (n.max(2) - 1) as f64;
        let values = (0..n.max(2))
            .map(|i| {
                (0..n.max(2))
                    .map(|j| op.apply(i as f64 * step, j as f64 * step).clamp(0.0, 1.0))
                    .collect()
            })
            .collect();
        Self::new(values)
    }

    fn apply(&self, x: f64, y: f64) -> f64 {
        let last = (self.values.len() - 1) as f64;
        let (fx, fy) = (x * last, y * last);
        let i = (fx.floor() as usize).min(self.values.len() - 2);
        let j = (fy.floor() as usize).min(self.values.len() - 2);
        let (tx, ty) = (fx - i as f64, fy - j as f64);
        let v = &self.values;
        let top = v[i][j] * (1.0 - ty) + v[i][j + 1] * ty;
        let bottom = v[i + 1][j] * (1.0 - ty) + v[i + 1][j + 1] * ty;
        top * (1.0 - tx) + bottom * tx
    }
}

/// A commutative, associative, jointly strictly increasing, continuous
/// operation on `[0, +inf]` with neutral element 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", try_from = "LOpRepr", into = "LOpRepr")]
pub enum LOp {
    /// Ordinary addition, the same operation as `K_1`.
    Plus,
    /// `(x^alpha + y^alpha)^(1/alpha)`.
    KAlpha { alpha: f64 },
    /// `max(x, y)`.
    KInfinity,
    OrdinalSum(OrdinalSum),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum LOpRepr {
    #[serde(rename = "plus")]
    Plus,
    #[serde(rename = "K_alpha")]
    KAlpha { alpha: f64 },
    #[serde(rename = "K_infinity")]
    KInfinity,
    #[serde(rename = "ordinal-sum")]
    OrdinalSum { blocks: Vec<OrdinalBlock> },
}

impl TryFrom<LOpRepr> for LOp {
    type Error = ScalarOpError;

    fn try_from(r: LOpRepr) -> Result<Self, Self::Error> {
        match r {
            LOpRepr::Plus => Ok(LOp::Plus),
            LOpRepr::KAlpha { alpha } => LOp::k_alpha(alpha),
            LOpRepr::KInfinity => Ok(LOp::KInfinity),
            LOpRepr::OrdinalSum { blocks } => OrdinalSum::new(blocks).map(LOp::OrdinalSum),
        }
    }
}

impl From<LOp> for LOpRepr {
    fn from(l: LOp) -> Self {
        match l {
            LOp::Plus => LOpRepr::Plus,
            LOp::KAlpha { alpha } => LOpRepr::KAlpha { alpha },
            LOp::KInfinity => LOpRepr::KInfinity,
            LOp::OrdinalSum(s) => LOpRepr::OrdinalSum { blocks: s.blocks },
        }
    }
}

impl LOp {
    pub fn k_alpha(alpha: f64) -> Result<LOp, ScalarOpError> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(ScalarOpError::InvalidLOp(format!(
                "K_alpha needs a finite alpha > 0, got {alpha}"
            )));
        }
        Ok(LOp::KAlpha { alpha })
    }

    /// Evaluates `L(u, v)`, rejecting negative or NaN arguments.
    pub fn eval(&self, u: f64, v: f64) -> Result<f64, ScalarOpError> {
        if !(u >= 0.0) || !(v >= 0.0) {
            return Err(ScalarOpError::NegativeInput { u, v });
        }
        Ok(self.apply(u, v))
    }

    /// Evaluates without checks; `u, v >= 0`.
    pub fn apply(&self, u: f64, v: f64) -> f64 {
        if u == f64::INFINITY || v == f64::INFINITY {
            return f64::INFINITY;
        }
        match self {
            LOp::Plus => u + v,
            LOp::KAlpha { alpha } => k_alpha(*alpha, u, v),
            LOp::KInfinity => u.max(v),
            LOp::OrdinalSum(s) => s.apply(u, v),
        }
    }

    /// The smallest `v >= 0` with `L(u, v) >= x`, for `0 <= u`, finite `x`.
    pub fn solve_right(&self, u: f64, x: f64) -> f64 {
        if u >= x {
            return 0.0;
        }
        match self {
            LOp::Plus => x - u,
            LOp::KAlpha { alpha } if *alpha == 1.0 => x - u,
            LOp::KAlpha { alpha } => x * (1.0 - (u / x).powf(*alpha)).max(0.0).powf(1.0 / alpha),
            LOp::KInfinity => x,
            LOp::OrdinalSum(_) => {
                let (mut lo, mut hi) = (0.0f64, x);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.apply(u, mid) >= x {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                hi
            }
        }
    }

    pub fn short_name(&self) -> String {
        match self {
            LOp::Plus => "+".into(),
            LOp::KAlpha { alpha } => format!("K_{alpha}"),
            LOp::KInfinity => "K_inf".into(),
            LOp::OrdinalSum(s) => format!("ordinal-sum[{}]", s.blocks.len()),
        }
    }
}

impl fmt::Display for LOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

fn k_alpha(alpha: f64, u: f64, v: f64) -> f64 {
    if alpha == 1.0 {
        return u + v;
    }
    let (hi, lo) = if u >= v { (u, v) } else { (v, u) };
    if hi == 0.0 {
        return 0.0;
    }
    hi * (1.0 + (lo / hi).powf(alpha)).powf(1.0 / alpha)
}

/// One block `]a, b[` of an ordinal sum with its increasing bijection
/// `[a, b] -> [0, +inf]`, given as a table of points starting at `(a, 0)`.
///
/// Between table points the bijection is linear. Past the last point it
/// continues with a hyperbolic tail that reaches `+inf` at `b` (or linearly
/// when `b = +inf`), keeping the slope of the last segment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrdinalBlock {
    pub a: f64,
    #[serde(with = "ext_real")]
    pub b: f64,
    pub table: Vec<(f64, f64)>,
}

impl OrdinalBlock {
    fn tail(&self) -> (f64, f64, f64) {
        let (xm, ym) = *self.table.last().expect("validated");
        let slope = match self.table.len() {
            1 => 1.0,
            n => {
                let (xp, yp) = self.table[n - 2];
                (ym - yp) / (xm - xp)
            }
        };
        (xm, ym, slope)
    }

    fn forward(&self, x: f64) -> f64 {
        let (xm, ym, slope) = self.tail();
        if x >= xm {
            if self.b == f64::INFINITY {
                return ym + slope * (x - xm);
            }
            if x >= self.b {
                return f64::INFINITY;
            }
            return ym + slope * (self.b - xm) * (x - xm) / (self.b - x);
        }
        let k = self.table.partition_point(|p| p.0 <= x).max(1);
        let (x0, y0) = self.table[k - 1];
        let (x1, y1) = self.table[k];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    fn inverse(&self, y: f64) -> f64 {
        let (xm, ym, slope) = self.tail();
        if y >= ym {
            if y == f64::INFINITY {
                return self.b;
            }
            if self.b == f64::INFINITY {
                return xm + (y - ym) / slope;
            }
            let t = (y - ym) / (slope * (self.b - xm));
            return (xm + t * self.b) / (1.0 + t);
        }
        let k = self.table.partition_point(|p| p.1 <= y).max(1);
        let (x0, y0) = self.table[k - 1];
        let (x1, y1) = self.table[k];
        x0 + (x1 - x0) * (y - y0) / (y1 - y0)
    }
}

/// `L(x, y) = l_k^{-1}(l_k(x) + l_k(y))` inside a shared block, `max` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct OrdinalSum {
    blocks: Vec<OrdinalBlock>,
}

impl OrdinalSum {
    pub fn new(mut blocks: Vec<OrdinalBlock>) -> Result<Self, ScalarOpError> {
        blocks.sort_by(|p, q| p.a.total_cmp(&q.a));
        for (k, blk) in blocks.iter().enumerate() {
            let bad = |msg: &str| Err(ScalarOpError::InvalidLOp(format!("block {k}: {msg}")));
            if !(blk.a >= 0.0) || !(blk.b > blk.a) {
                return bad("need 0 <= a < b");
            }
            match blk.table.first() {
                Some(&(x0, y0)) if x0 == blk.a && y0 == 0.0 => {}
                _ => return bad("table must start at (a, 0)"),
            }
            if blk
                .table
                .windows(2)
                .any(|w| !(w[1].0 > w[0].0) || !(w[1].1 > w[0].1))
            {
                return bad("table must be strictly increasing");
            }
            let (xm, ym) = *blk.table.last().expect("non-empty");
            if !(xm < blk.b) || !ym.is_finite() {
                return bad("table must stay below b with finite values");
            }
            if k > 0 && blocks[k - 1].b > blk.a {
                return bad("blocks overlap");
            }
        }
        Ok(OrdinalSum { blocks })
    }

    pub fn blocks(&self) -> &[OrdinalBlock] {
        &self.blocks
    }

    fn apply(&self, u: f64, v: f64) -> f64 {
        for blk in &self.blocks {
            let inside = |t: f64| t > blk.a && t < blk.b;
            if inside(u) && inside(v) {
                return blk.inverse(blk.forward(u) + blk.forward(v));
            }
        }
        u.max(v)
    }
}

/// Outcome of a 4-dimensional dominance scan `f >> g`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarDominanceReport {
    pub dominates: bool,
    /// Smallest value of `f(g(x,y), g(u,v)) - g(f(x,u), f(y,v))`.
    pub min_margin: f64,
    /// The quadruple `(x, y, u, v)` attaining the minimum margin.
    pub worst: [f64; 4],
    pub violations: usize,
    pub points_checked: usize,
}

fn unit_grid(step: f64) -> Result<Vec<f64>, ScalarOpError> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(ScalarOpError::BadGrid(step));
    }
    let n = (1.0 / step).round();
    if ((1.0 / n) - step).abs() < 1e-12 {
        let n = n as usize;
        return Ok((0..=n).map(|i| i as f64 / n as f64).collect());
    }
    let mut pts: Vec<f64> = (0..)
        .map(|i| i as f64 * step)
        .take_while(|&x| x < 1.0 - 1e-12)
        .collect();
    pts.push(1.0);
    Ok(pts)
}

/// Checks `f(g(x, y), g(u, v)) >= g(f(x, u), f(y, v))` on the full grid.
pub fn check_scalar_dominance(
    f: &ScalarOp,
    g: &ScalarOp,
    grid_step: f64,
) -> Result<ScalarDominanceReport, ScalarOpError> {
    let pts = unit_grid(grid_step)?;
    let per_x: Vec<(f64, [f64; 4], usize)> = pts
        .par_iter()
        .map(|&x| {
            let mut best = (f64::INFINITY, [x, 0.0, 0.0, 0.0], 0usize);
            for &y in &pts {
                let gxy = g.apply(x, y);
                for &u in &pts {
                    let fxu = f.apply(x, u);
                    for &v in &pts {
                        let lhs = f.apply(gxy, g.apply(u, v));
                        let rhs = g.apply(fxu, f.apply(y, v));
                        let margin = lhs - rhs;
                        if margin < -SCALAR_EPS {
                            best.2 += 1;
                        }
                        if margin < best.0 {
                            best.0 = margin;
                            best.1 = [x, y, u, v];
                        }
                    }
                }
            }
            best
        })
        .collect();
    let mut report = ScalarDominanceReport {
        dominates: true,
        min_margin: f64::INFINITY,
        worst: [0.0; 4],
        violations: 0,
        points_checked: pts.len().pow(4),
    };
    for (margin, quad, violations) in per_x {
        report.violations += violations;
        if margin < report.min_margin {
            report.min_margin = margin;
            report.worst = quad;
        }
    }
    report.dominates = report.violations == 0;
    Ok(report)
}

/// Commutativity, associativity, monotonicity and neutrality of 1 on a grid.
pub fn check_tnorm_laws(t: &ScalarOp, grid_step: f64) -> Result<Vec<Check>, ScalarOpError> {
    let pts = unit_grid(grid_step)?;
    let mut comm = Check::new("commutativity");
    let mut assoc = Check::new("associativity");
    let mut mono = Check::new("monotonicity");
    let mut ident = Check::new("identity-1");
    for (i, &x) in pts.iter().enumerate() {
        ident.record((t.apply(x, 1.0) - x).abs() <= SCALAR_EPS, || format!("T({x}, 1)"));
        for (j, &y) in pts.iter().enumerate() {
            let txy = t.apply(x, y);
            comm.record((txy - t.apply(y, x)).abs() <= SCALAR_EPS, || {
                format!("T({x}, {y})")
            });
            if i + 1 < pts.len() {
                mono.record(t.apply(pts[i + 1], y) >= txy - SCALAR_EPS, || {
                    format!("T(., {y}) at {x}")
                });
            }
            if j + 1 < pts.len() {
                mono.record(t.apply(x, pts[j + 1]) >= txy - SCALAR_EPS, || {
                    format!("T({x}, .) at {y}")
                });
            }
            for &z in &pts {
                let l = t.apply(txy, z);
                let r = t.apply(x, t.apply(y, z));
                assoc.record((l - r).abs() <= SCALAR_EPS, || format!("({x}, {y}, {z})"));
            }
        }
    }
    Ok(vec![comm, assoc, mono, ident])
}

/// `lower(x, y) <= upper(x, y)` on the grid.
pub fn check_pointwise_order(
    lower: &ScalarOp,
    upper: &ScalarOp,
    grid_step: f64,
) -> Result<Check, ScalarOpError> {
    let pts = unit_grid(grid_step)?;
    let mut c = Check::new(format!("{lower} <= {upper}"));
    for &x in &pts {
        for &y in &pts {
            c.record(lower.apply(x, y) <= upper.apply(x, y) + SCALAR_EPS, || {
                format!("({x}, {y})")
            });
        }
    }
    Ok(c)
}

/// Associativity of an operation on the grid. Used on duals of quasi-copulas.
pub fn check_associative(op: &ScalarOp, grid_step: f64) -> Result<Check, ScalarOpError> {
    let pts = unit_grid(grid_step)?;
    let mut c = Check::new(format!("associativity of {op}"));
    for &x in &pts {
        for &y in &pts {
            let xy = op.apply(x, y).clamp(0.0, 1.0);
            for &z in &pts {
                let l = op.apply(xy, z);
                let r = op.apply(x, op.apply(y, z).clamp(0.0, 1.0));
                c.record((l - r).abs() <= SCALAR_EPS, || format!("({x}, {y}, {z})"));
            }
        }
    }
    Ok(c)
}

/// Laws of an operation in the class of `L` operations, on sampled points.
///
/// Checks commutativity, associativity (relative tolerance `tol`),
/// neutrality of 0 and joint strict monotonicity on every strictly ordered
/// pair of sample pairs.
pub fn check_lop_laws(l: &LOp, samples: &[f64], tol: f64) -> Vec<Check> {
    let close = |a: f64, b: f64| {
        a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    };
    let mut comm = Check::new("commutativity");
    let mut assoc = Check::new("associativity");
    let mut neutral = Check::new("neutral-0");
    let mut strict = Check::new("joint-strict-monotonicity");
    for &x in samples {
        neutral.record(close(l.apply(x, 0.0), x), || format!("L({x}, 0)"));
        for &y in samples {
            let lxy = l.apply(x, y);
            comm.record(close(lxy, l.apply(y, x)), || format!("L({x}, {y})"));
            for &z in samples {
                let a = l.apply(lxy, z);
                let b = l.apply(x, l.apply(y, z));
                assoc.record(close(a, b), || format!("({x}, {y}, {z})"));
            }
            for &x2 in samples.iter().filter(|&&s| s > x) {
                for &y2 in samples.iter().filter(|&&s| s > y) {
                    strict.record(l.apply(x2, y2) > lxy, || {
                        format!("L({x}, {y}) vs L({x2}, {y2})")
                    });
                }
            }
        }
    }
    vec![comm, assoc, neutral, strict]
}

#[cfg(test)]
mod tests {
    use super::*;

    const TNORMS: [ScalarOp; 4] = [
        ScalarOp::Minimum,
        ScalarOp::Product,
        ScalarOp::Lukasiewicz,
        ScalarOp::Drastic,
    ];

    #[test]
    fn eval_examples() {
        assert!((ScalarOp::Lukasiewicz.eval(0.7, 0.6).unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(ScalarOp::Drastic.eval(0.7, 0.6).unwrap(), 0.0);
        assert_eq!(ScalarOp::Drastic.eval(1.0, 0.6).unwrap(), 0.6);
        let dual_w = ScalarOp::Lukasiewicz.dual();
        assert_eq!(dual_w.eval(0.7, 0.6).unwrap(), 1.0);
        assert!(matches!(
            ScalarOp::Minimum.eval(1.2, 0.3),
            Err(ScalarOpError::OutOfUnitInterval { .. })
        ));
    }

    #[test]
    fn dual_of_w_is_bounded_sum_on_grid() {
        // x + y - W(x, y) = min(x + y, 1), checked on the 0.01 grid
        let dual_w = ScalarOp::Lukasiewicz.dual();
        for i in 0..=100 {
            for j in 0..=100 {
                let (x, y) = (i as f64 / 100.0, j as f64 / 100.0);
                assert!((dual_w.apply(x, y) - (x + y).min(1.0)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn double_dual_is_identity_on_grid() {
        for q in [ScalarOp::Minimum, ScalarOp::Product, ScalarOp::Lukasiewicz] {
            let dd = q.clone().dual().dual();
            for i in 0..=100 {
                for j in 0..=100 {
                    let (x, y) = (i as f64 / 100.0, j as f64 / 100.0);
                    assert!((dd.apply(x, y) - q.apply(x, y)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn builtin_tnorms_satisfy_laws() {
        for t in &TNORMS {
            for c in check_tnorm_laws(t, 0.05).unwrap() {
                assert!(c.passed, "{t}: {c:?}");
            }
        }
    }

    #[test]
    fn tnorms_are_ordered() {
        use ScalarOp::*;
        for (lo, hi) in [(Drastic, Lukasiewicz), (Lukasiewicz, Product), (Product, Minimum)] {
            assert!(check_pointwise_order(&lo, &hi, 0.01).unwrap().passed);
        }
        assert!(!check_pointwise_order(&Minimum, &Product, 0.01).unwrap().passed);
    }

    #[test]
    fn dominance_examples() {
        let r = check_scalar_dominance(&ScalarOp::ArithmeticMean, &ScalarOp::Lukasiewicz, 0.05)
            .unwrap();
        assert!(r.dominates, "{r:?}");
        assert_eq!(r.points_checked, 21usize.pow(4));
        let r = check_scalar_dominance(&ScalarOp::Minimum, &ScalarOp::Minimum, 0.1).unwrap();
        assert!(r.dominates);
        let r = check_scalar_dominance(&ScalarOp::Lukasiewicz, &ScalarOp::ArithmeticMean, 0.1)
            .unwrap();
        assert!(!r.dominates);
        let [x, y, u, v] = r.worst;
        let (w, am) = (ScalarOp::Lukasiewicz, ScalarOp::ArithmeticMean);
        let lhs = w.apply(am.apply(x, y), am.apply(u, v));
        let rhs = am.apply(w.apply(x, u), w.apply(y, v));
        assert!(lhs < rhs - 1e-9, "witness {:?} does not violate", r.worst);
        assert!(check_scalar_dominance(&w, &am, 0.0).is_err());
        assert!(check_scalar_dominance(&w, &am, 0.6).is_err());
    }

    #[test]
    fn associativity_of_duals() {
        assert!(check_associative(&ScalarOp::Lukasiewicz.dual(), 0.05).unwrap().passed);
        assert!(check_associative(&ScalarOp::Product.dual(), 0.05).unwrap().passed);
        assert!(!check_associative(&ScalarOp::ArithmeticMean, 0.05).unwrap().passed);
    }

    #[test]
    fn lop_examples() {
        assert_eq!(LOp::k_alpha(1.0).unwrap().eval(2.0, 3.0).unwrap(), 5.0);
        assert!((LOp::k_alpha(2.0).unwrap().eval(3.0, 4.0).unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(LOp::KInfinity.eval(2.0, 3.0).unwrap(), 3.0);
        assert_eq!(LOp::Plus.eval(2.0, f64::INFINITY).unwrap(), f64::INFINITY);
        assert!(matches!(
            LOp::Plus.eval(-1.0, 2.0),
            Err(ScalarOpError::NegativeInput { .. })
        ));
        assert!(LOp::k_alpha(0.0).is_err());
    }

    fn sample_ordinal_sum() -> LOp {
        LOp::OrdinalSum(
            OrdinalSum::new(vec![
                OrdinalBlock {
                    a: 1.0,
                    b: 3.0,
                    table: vec![(1.0, 0.0), (2.0, 1.0)],
                },
                OrdinalBlock {
                    a: 5.0,
                    b: f64::INFINITY,
                    table: vec![(5.0, 0.0), (6.0, 2.0), (8.0, 3.0)],
                },
            ])
            .unwrap(),
        )
    }

    fn lop_samples() -> Vec<f64> {
        vec![0.0, 0.3, 1.0, 1.2, 1.7, 2.0, 2.5, 2.99, 3.0, 4.0, 5.5, 6.0, 7.5, 9.0, 20.0]
    }

    #[test]
    fn lop_laws_hold() {
        let ops = [
            LOp::Plus,
            LOp::k_alpha(0.5).unwrap(),
            LOp::k_alpha(2.0).unwrap(),
            LOp::k_alpha(7.0).unwrap(),
            LOp::KInfinity,
            sample_ordinal_sum(),
        ];
        for l in &ops {
            for c in check_lop_laws(l, &lop_samples(), 1e-9) {
                // K_inf is not strictly increasing in one argument but is jointly
                assert!(c.passed, "{l}: {c:?}");
            }
        }
    }

    #[test]
    fn ordinal_sum_behaves_like_max_outside_blocks() {
        let l = sample_ordinal_sum();
        assert_eq!(l.apply(0.5, 2.0), 2.0);
        assert_eq!(l.apply(3.5, 4.0), 4.0);
        assert_eq!(l.apply(1.5, 6.0), 6.0);
        // inside the first block l(x) = x - 1 on [1, 2]
        assert!((l.apply(1.25, 1.5) - 1.75).abs() < 1e-12);
        let r = l.apply(2.5, 2.5);
        assert!(r > 2.5 && r < 3.0);
    }

    #[test]
    fn solve_right_inverts() {
        let ops = [
            LOp::Plus,
            LOp::k_alpha(2.0).unwrap(),
            LOp::k_alpha(0.5).unwrap(),
            sample_ordinal_sum(),
        ];
        for l in &ops {
            for &(u, x) in &[(0.5, 2.0), (1.2, 2.9), (0.0, 4.0), (5.5, 7.0)] {
                let v = l.solve_right(u, x);
                assert!((l.apply(u, v) - x).abs() < 1e-9, "{l} u={u} x={x} v={v}");
            }
        }
        assert_eq!(LOp::KInfinity.solve_right(1.0, 3.0), 3.0);
        assert_eq!(LOp::KInfinity.solve_right(3.0, 3.0), 0.0);
    }

    #[test]
    fn descriptor_json() {
        let w: ScalarOp = serde_json::from_str(r#"{"kind":"tnorm-W"}"#).unwrap();
        assert_eq!(w, ScalarOp::Lukasiewicz);
        let d: ScalarOp =
            serde_json::from_str(r#"{"kind":"quasicopula-dual","of":{"kind":"tnorm-Pi"}}"#)
                .unwrap();
        assert_eq!(d, ScalarOp::Product.dual());
        let l: LOp = serde_json::from_str(r#"{"kind":"K_alpha","alpha":2.0}"#).unwrap();
        assert_eq!(l, LOp::KAlpha { alpha: 2.0 });
        assert!(serde_json::from_str::<LOp>(r#"{"kind":"K_alpha","alpha":-1}"#).is_err());
        let s = serde_json::to_string(&sample_ordinal_sum()).unwrap();
        let back: LOp = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sample_ordinal_sum());
        let t: ScalarOp =
            serde_json::from_str(r#"{"kind":"table","values":[[0,0],[0,1]]}"#).unwrap();
        assert_eq!(t.apply(0.5, 0.5), 0.25);
        assert!(serde_json::from_str::<ScalarOp>(r#"{"kind":"table","values":[[0,1],[0,0]]}"#)
            .is_err());
    }

    #[test]
    fn sampled_table_tracks_source() {
        let t = ScalarOp::Table(TableOp::sample(&ScalarOp::Product, 11).unwrap());
        assert!((t.apply(0.3, 0.7) - 0.21).abs() < 0.01);
        assert!(t.is_left_continuous());
        assert!(!ScalarOp::Drastic.is_left_continuous());
    }
}
