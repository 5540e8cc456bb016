//! The sphere and prolongated-sphere *-algebras as rewriting systems.

mod element;
mod generator;
mod monomial;
mod named;
mod presentation;

pub use element::AlgebraElement;
pub use generator::{word_to_string, FormalSum, Generator, Word};
pub use monomial::Monomial;
pub use named::{
    compositions, lens_generators, make_named_element, teardrop_generators, NamedElement,
};
pub use presentation::{AlgebraPresentation, PresentationKind, Strategy};

use thiserror::Error;

use crate::grading::{degree, Degree, GradingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator {generator} is not valid in {presentation}")]
    InvalidGenerator {
        generator: String,
        presentation: String,
    },
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot combine elements of {left} and {right}")]
    PresentationMismatch { left: String, right: String },
    #[error("parameter error: {0}")]
    Parameter(String),
}

/// Whether every monomial of `x` has neutral degree under `g`.
pub fn degree_zero_membership(x: &AlgebraElement, g: &GradingSpec) -> bool {
    match degree(x, g) {
        Degree::Zero => true,
        Degree::Homogeneous(d) => d == 0,
        Degree::Inhomogeneous | Degree::NotInSubalgebra => false,
    }
}
