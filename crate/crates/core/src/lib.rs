//! Exact tooling for flag-transitive, point-imprimitive 2-designs with prime λ.
//!
//! * [`design`]: incidence structures and 2-design verification.
//! * [`permgroup`]: permutation groups, stabilizer chains, block systems.
//! * [`decompose`]: the inner/quotient decomposition of a design over an
//!   invariant point partition.
//! * [`feasibility`]: enumeration and classification of admissible parameter
//!   tuples for a prime λ.
//! * [`exceptional`]: the 16-point biplane, certification pipelines and the
//!   Fermat-prime parameter family.
//!
//! No floating point is used anywhere; square-root comparisons are done by
//! squaring.

use thiserror::Error;

pub mod arith;
pub mod decompose;
pub mod design;
pub mod exceptional;
pub mod feasibility;
pub mod permgroup;

pub use arith::{Check, Relation};
pub use design::{check_identities, verify_2design, DesignError, DesignParams, Flag, IncidenceStructure};
pub use permgroup::{Partition, PermGroup, Permutation};

/// Version tag written into every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// A text-format error with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}
