//! Integer linear algebra and abelian-group bookkeeping for K-groups.

mod group;
mod gysin;
mod lens;
mod matrix;
mod teardrop;

pub use group::{group_ops, FGAbelianGroup, GroupOp, GroupOpResult};
pub use gysin::{
    determinantal_invariants, gcd_of_minors, gysin_invariants, gysin_matrix,
    DeterminantalInvariants,
};
pub use lens::{lens_k_groups, phi_index, phi_matrix, FormulaCheck, LensDescriptor, LensKGroups};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use teardrop::{
    real_teardrop_k, six_term, teardrop_k_groups, RealTeardropK, SixTermInput, SixTermOutput,
    TeardropK,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("all {size}x{size} minors vanish (rank {rank})")]
    Degenerate { size: usize, rank: usize },
    #[error("value {0} does not fit in 64 bits")]
    Overflow(String),
}
