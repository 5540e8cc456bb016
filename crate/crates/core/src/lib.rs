//! Computations for quantum weighted projective spaces, quantum lens spaces
//! and quantum teardrops: exact ℚ(q) arithmetic, normal forms in the
//! sphere algebras, strong-grading certificates, integer K-theory and
//! truncated representations.

pub mod grading;
pub mod ktheory;
pub mod representations;
pub mod scalar;
pub mod star_algebra;
