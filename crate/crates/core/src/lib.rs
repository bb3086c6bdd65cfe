//! Exact distance geometry on the line: hardness reductions, gadget
//! compilers, a branch-and-prune realizer and approximate-realization tools.

pub mod ambiguous;
pub mod approx;
pub mod bp;
pub mod cnf;
pub mod cycles;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod oracle;
pub mod realization;
pub mod reduction;
pub mod reproduce;
pub mod scalar;

pub use cnf::{Assignment, Clause, CnfFormula, Literal};
pub use error::{Error, Result};
pub use graph::{Edge, WeightedGraph};
pub use realization::{verify_realization, Realization, VerifyReport};
pub use scalar::{Rational, Scalar};

/// Realization with exact rational coordinates.
pub type ExactRealization = Realization<Rational>;
/// Realization with `f64` coordinates.
pub type RealRealization = Realization<f64>;
/// Realization with `f32` coordinates.
pub type RealRealization32 = Realization<f32>;
