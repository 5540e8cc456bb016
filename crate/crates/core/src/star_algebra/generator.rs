use std::fmt;

use serde::Serialize;

use crate::scalar::QScalar;

/// A generator of the sphere or prolongated-sphere algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Generator {
    Z(usize),
    ZStar(usize),
    W,
    WStar,
}

impl Generator {
    pub fn star(self) -> Generator {
        match self {
            Generator::Z(i) => Generator::ZStar(i),
            Generator::ZStar(i) => Generator::Z(i),
            Generator::W => Generator::WStar,
            Generator::WStar => Generator::W,
        }
    }

    pub fn index(self) -> Option<usize> {
        match self {
            Generator::Z(i) | Generator::ZStar(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Z(i) => write!(f, "z{i}"),
            Generator::ZStar(i) => write!(f, "z{i}*"),
            Generator::W => write!(f, "w"),
            Generator::WStar => write!(f, "w*"),
        }
    }
}

pub type Word = Vec<Generator>;

/// A finite linear combination of words, not yet normalized.
pub type FormalSum = Vec<(QScalar, Word)>;

pub fn word_to_string(w: &[Generator]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
