use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::HarnessError;
use crate::ddf::DiscreteDDF;
use crate::delta::DeltaOp;
use crate::generate::{dirac_space, random_metric, rng_for};
use crate::hausdorff::HausdorffContext;
use crate::scalar::ScalarOp;

/// What to tabulate.
///
/// Textual forms: `epsilon:<a>`, `ddf-file:<path>` (JSON DDF) and
/// `lambda:<bits>`, the `Lambda^H` value of a subset of a seeded Dirac space
/// with one point per bit.
#[derive(Clone, Debug, PartialEq)]
pub enum ExportTarget {
    Epsilon(f64),
    DdfFile(PathBuf),
    Lambda(String),
}

impl FromStr for ExportTarget {
    type Err = HarnessError;

    fn from_str(id: &str) -> Result<Self, Self::Err> {
        let bad = || HarnessError::BadTarget(id.to_string());
        let (kind, arg) = id.split_once(':').ok_or_else(bad)?;
        match kind {
            "epsilon" => arg
                .parse()
                .ok()
                .filter(|a: &f64| *a >= 0.0)
                .map(ExportTarget::Epsilon)
                .ok_or_else(bad),
            "ddf-file" if !arg.is_empty() => Ok(ExportTarget::DdfFile(arg.into())),
            "lambda" if !arg.is_empty() && arg.chars().all(|c| c == '0' || c == '1') => {
                Ok(ExportTarget::Lambda(arg.to_string()))
            }
            _ => Err(bad()),
        }
    }
}

/// Builds the DDF behind a target. `seed` fixes the space for `lambda`.
pub fn resolve_export(target: &ExportTarget, seed: u64) -> Result<DiscreteDDF, HarnessError> {
    match target {
        ExportTarget::Epsilon(a) => DiscreteDDF::epsilon(*a).map_err(|e| HarnessError::BadTarget(e.to_string())),
        ExportTarget::DdfFile(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| HarnessError::IoFailure(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| HarnessError::ConfigParse(format!("{}: {e}", path.display())))
        }
        ExportTarget::Lambda(bits) => {
            let n = bits.len();
            let mut rng = rng_for(seed, "export/lambda");
            let d = random_metric(&mut rng, n, 1.0, 10.0);
            let ctx = HausdorffContext::new(dirac_space(&d, DeltaOp::tau_t(ScalarOp::Minimum)))
                .map_err(|e| HarnessError::BadTarget(e.to_string()))?;
            let e = ctx
                .universe()
                .parse_bits(bits)
                .map_err(|e| HarnessError::BadTarget(e.to_string()))?;
            ctx.lambda_h(e).map_err(|e| HarnessError::BadTarget(e.to_string()))
        }
    }
}

/// A window covering every finite atom with some room to the right.
pub fn default_window(f: &DiscreteDDF) -> (f64, f64) {
    let x_max = match f.max_location() {
        Some(m) if m > 0.0 => 2.0 * m,
        _ => 1.0,
    };
    (x_max, x_max / 100.0)
}

/// Writes `x,F` rows of [`DiscreteDDF::grid_sample`] and returns the number
/// of data rows.
pub fn export_plotdata(f: &DiscreteDDF, x_max: f64, step: f64, path: &Path) -> Result<usize, HarnessError> {
    let rows = f
        .grid_sample(x_max, step)
        .map_err(|e| HarnessError::BadTarget(e.to_string()))?;
    write_csv(&rows, path)?;
    Ok(rows.len())
}

pub fn write_csv(rows: &[(f64, f64)], path: &Path) -> Result<(), HarnessError> {
    let mut out = String::from("x,F\n");
    for &(x, v) in rows {
        // strip accumulated binary noise from grid coordinates
        let x = (x * 1e9).round() / 1e9;
        writeln!(out, "{x},{v}").expect("writing to a string");
    }
    std::fs::write(path, out).map_err(|e| HarnessError::IoFailure(format!("{}: {e}", path.display())))
}
