use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::GradingError;
use crate::star_algebra::{AlgebraElement, AlgebraPresentation, Monomial};

/// The grading group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(tag = "group", content = "modulus", rename_all = "snake_case")]
pub enum GradingGroup {
    /// The weighted ℤ-grading `|z_i| = m_i` on the whole algebra.
    Integers,
    /// Its reduction modulo `N`.
    Cyclic(u64),
    /// The ℤ-grading on the lens subalgebra of degrees divisible by `N`:
    /// an element has degree `k` when its weighted degree is `kN`.
    LensIntegers(u64),
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingGroup::Integers => write!(f, "Z"),
            GradingGroup::Cyclic(n) => write!(f, "Z_{n}"),
            GradingGroup::LensIntegers(n) => write!(f, "Z (lens, N = {n})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GradingSpec {
    pub presentation: AlgebraPresentation,
    pub weights: Vec<i64>,
    pub group: GradingGroup,
}

impl GradingSpec {
    pub fn new(
        presentation: AlgebraPresentation,
        weights: Vec<i64>,
        group: GradingGroup,
    ) -> Result<Self, GradingError> {
        if weights.len() != presentation.n + 1 {
            return Err(GradingError::BadSpec(format!(
                "expected {} weights for {presentation}, got {}",
                presentation.n + 1,
                weights.len()
            )));
        }
        if weights.iter().any(|&m| m <= 0) {
            return Err(GradingError::BadSpec("weights must be positive".into()));
        }
        if weights.iter().fold(0i64, |g, &m| g.gcd(&m)) != 1 {
            return Err(GradingError::BadSpec(
                "weights must be coprime as a tuple".into(),
            ));
        }
        if let GradingGroup::Cyclic(0) | GradingGroup::LensIntegers(0) = group {
            return Err(GradingError::BadSpec("modulus must be at least 1".into()));
        }
        Ok(GradingSpec {
            presentation,
            weights,
            group,
        })
    }

    /// The same weights with a different group.
    pub fn with_group(&self, group: GradingGroup) -> Self {
        GradingSpec {
            group,
            ..self.clone()
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.group {
            GradingGroup::Integers => None,
            GradingGroup::Cyclic(n) | GradingGroup::LensIntegers(n) => Some(n),
        }
    }

    /// Degree of `w`: minus twice the weight of `z_n`.
    pub fn w_weight(&self) -> i64 {
        -2 * self.weights[self.presentation.n]
    }

    /// The weighted ℤ-degree of a monomial, before any reduction.
    pub fn weighted_degree(&self, m: &Monomial) -> i64 {
        let zs: i64 = self
            .weights
            .iter()
            .zip(m.a.iter().zip(&m.b))
            .map(|(&w, (&a, &b))| w * (a as i64 - b as i64))
            .sum();
        zs + m.s * self.w_weight()
    }

    /// Map a weighted ℤ-degree into the group; `None` when it lies outside
    /// the subalgebra the grading lives on.
    pub fn reduce(&self, raw: i64) -> Option<i64> {
        match self.group {
            GradingGroup::Integers => Some(raw),
            GradingGroup::Cyclic(n) => Some(raw.rem_euclid(n as i64)),
            GradingGroup::LensIntegers(n) => (raw % n as i64 == 0).then(|| raw / n as i64),
        }
    }

    /// Canonical representative of a group element.
    pub fn normalize_degree(&self, d: i64) -> i64 {
        match self.group {
            GradingGroup::Cyclic(n) => d.rem_euclid(n as i64),
            _ => d,
        }
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        self.normalize_degree(a + b)
    }

    pub fn neg(&self, a: i64) -> i64 {
        self.normalize_degree(-a)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Option<i64> {
        self.reduce(self.weighted_degree(m))
    }
}

/// Result of [`degree`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    /// The zero element, homogeneous of every degree.
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
    /// Some monomial does not belong to the lens subalgebra.
    NotInSubalgebra,
}

impl Degree {
    /// Whether an element of this degree may stand where degree `d` is required.
    pub fn matches(self, d: i64) -> bool {
        match self {
            Degree::Zero => true,
            Degree::Homogeneous(e) => e == d,
            _ => false,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Zero => write!(f, "zero"),
            Degree::Homogeneous(d) => write!(f, "{d}"),
            Degree::Inhomogeneous => write!(f, "inhomogeneous"),
            Degree::NotInSubalgebra => write!(f, "not in subalgebra"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::Homogeneous(d) => s.serialize_i64(*d),
            other => s.collect_str(other),
        }
    }
}

/// The common degree of all monomials of `x`.
pub fn degree(x: &AlgebraElement, g: &GradingSpec) -> Degree {
    let mut found = None;
    for (m, _) in x.terms() {
        let Some(d) = g.monomial_degree(m) else {
            return Degree::NotInSubalgebra;
        };
        match found {
            None => found = Some(d),
            Some(e) if e != d => return Degree::Inhomogeneous,
            _ => {}
        }
    }
    found.map_or(Degree::Zero, Degree::Homogeneous)
}

/// The part of `x` whose monomials have group degree `d`.
pub fn homogeneous_component(x: &AlgebraElement, g: &GradingSpec, d: i64) -> AlgebraElement {
    x.filter_terms(|m| g.monomial_degree(m) == Some(d))
}

/// The distinct degrees occurring in `x`, ascending.
pub fn degrees_present(x: &AlgebraElement, g: &GradingSpec) -> Vec<Option<i64>> {
    let mut ds: Vec<Option<i64>> = x.terms().map(|(m, _)| g.monomial_degree(m)).collect();
    ds.sort();
    ds.dedup();
    ds
}
