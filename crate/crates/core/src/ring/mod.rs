//! Exact multivariate polynomial arithmetic over Q and Q(i), with
//! differentiation, substitution, weighted decomposition, and realification.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so the ring is safe to use from multiple threads.

pub mod coeff;
pub mod grading;
pub mod matrix;
pub mod poly;
pub mod vars;

pub use coeff::{rat, rat_from_str, rat_int, rat_to_string, Coeff, GaussRat, Rat, Sqrt2Ext};
pub use grading::{weight_decompose, Grading};
pub use poly::{poly_to_json_gauss, poly_to_json_rat, Poly};
pub use vars::{VarId, VarKind, VarTable};
