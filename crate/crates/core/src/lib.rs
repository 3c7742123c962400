//! Automatic degeneracies of planar curve singularities.
//!
//! The kernel computes colengths of determinantal ideals in k[[x,y]] over a
//! prime field, builds degeneracy matrices from dual bases of principal
//! parts, and checks the results against exact closed forms.

pub mod closed_forms;
pub mod colength;
pub mod error;
pub mod field;
pub mod invariants;
pub mod jets;
pub mod parser;
pub mod poly;
pub mod strategy;

pub use colength::{ideal_colength, ColengthOptions, ColengthReport};
pub use error::{AdegError, Result};
pub use field::PrimeField;
pub use invariants::{DegeneracyKind, DegeneracyResult, RunConfig};
pub use jets::GermSpec;
pub use parser::{format_germ, parse_germ};
pub use poly::TruncatedPoly;
pub use strategy::{BasisStrategy, StrategyRegistry};
