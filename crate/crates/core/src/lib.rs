//! Distance distribution functions, triangle functions and probabilistic
//! valued decomposable set functions on finite universes, with exhaustive
//! checkers and brute-force oracles.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ddf;
pub mod delta;
mod ext_real;
pub mod generate;
pub mod harness;
pub mod hausdorff;
pub mod measures;
pub mod oracle;
pub mod ppm;
pub mod report;
pub mod scalar;
pub mod subset;

pub use ddf::{ddf_eq, ddf_leq, DdfError, DiscreteDDF, DEFAULT_TOL};
pub use delta::{DeltaError, DeltaOp};
pub use report::Check;
pub use scalar::{LOp, ScalarOp};
pub use subset::{Subset, Universe};
