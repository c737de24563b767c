//! Finitely generated subgroups of ℝ inside a real quadratic field `ℚ(√d)`.

mod cut;
mod group;
mod quad;

pub use cut::{Cut, Extended};
pub use group::{ValueGroup, DEFAULT_SEARCH_CAP};
pub use quad::{is_square_free, parse_rational, QuadElement, QuadRepr};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueGroupError {
    #[error("radicand {0} is not a square-free positive integer")]
    NotSquareFree(u64),
    #[error("elements live in different fields: √{0} and √{1}")]
    FieldMismatch(u64, u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the value group is trivial")]
    TrivialGroup,
    #[error("{0} is not an element of the value group")]
    NotMember(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("empty interval: lower end {lo} is not below upper end {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("no group element found in the interval within coefficient box {cap}")]
    NotFound { cap: u64 },
}
