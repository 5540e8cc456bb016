//! Truncated representations.

mod checks;
mod fredholm;
mod operator;
mod space;
mod spec;

pub use checks::{
    eigenvalue_distinctness, gamma, quotient_consistency, relation_residual, sector_split_check,
    DistinctnessReport, QuotientReport, RelationResidual, ResidualReport, SectorReport, Status,
};
pub use fredholm::{
    bound_series, fredholm_trace, tail_bound, FredholmModule, FredholmReport, SeriesReport,
    TracePoint,
};
pub use operator::{apply_element, apply_formal_sum, rep_generator, OpEntry, TruncatedOperator};
pub use space::{admissible, Sector, TruncatedSpace};
pub use spec::{Family, Phase, RepSpec, Sign};

use thiserror::Error;

use crate::star_algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("element of {found} applied to a representation of {expected}")]
    PresentationMismatch { expected: String, found: String },
    #[error("coefficient has a pole: {0}")]
    Pole(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
