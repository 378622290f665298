//! Exact symbolic toolkit for uniformly 2-nondegenerate CR hypersurface
//! models with rank-1 Levi kernel: model construction, Levi-geometric
//! invariants, infinitesimal symmetries, and jet-level classification.

pub mod classify;
pub mod cli;
pub mod error;
pub mod hypersurface;
pub mod jet;
pub mod levi;
pub mod ring;
pub mod symmetry;

pub use error::{CrError, CrResult};
