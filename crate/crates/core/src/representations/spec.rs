use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::RepError;
use crate::scalar::ratio_to_f64;
use crate::star_algebra::AlgebraPresentation;

/// A point `λ` of the unit circle.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Phase {
    /// `exp(2πi a / b)`.
    RootOfUnity {
        a: i64,
        b: u64,
    },
    Angle {
        radians: f64,
    },
}

impl Phase {
    pub fn one() -> Self {
        Phase::RootOfUnity { a: 0, b: 1 }
    }

    /// `λ^e`. Roots of unity reduce the exponent exactly before evaluating.
    pub fn pow(&self, e: i64) -> Complex64 {
        match *self {
            Phase::RootOfUnity { a, b } => {
                let r = (a * e).rem_euclid(b as i64);
                match (r, b) {
                    (0, _) => Complex64::new(1.0, 0.0),
                    (r, b) if 2 * r == b as i64 => Complex64::new(-1.0, 0.0),
                    (r, b) if 4 * r == b as i64 => Complex64::new(0.0, 1.0),
                    (r, b) if 4 * r == 3 * b as i64 => Complex64::new(0.0, -1.0),
                    _ => Complex64::from_polar(1.0, TAU * r as f64 / b as f64),
                }
            }
            Phase::Angle { radians } => Complex64::from_polar(1.0, radians * e as f64),
        }
    }

    pub fn value(&self) -> Complex64 {
        self.pow(1)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::RootOfUnity { a, b } => write!(f, "exp(2πi·{a}/{b})"),
            Phase::Angle { radians } => write!(f, "exp(i·{radians})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `π_λ` of the sphere algebra, `z_n` not in the kernel.
    SpherePi { lambda: Phase },
    /// `π̄_k` of the sphere algebra on admissible vectors.
    BarPi { k: usize },
    /// `π_{λ,±}` of the prolongated sphere algebra.
    SigmaPi { lambda: Phase, sign: Sign },
}

fn serialize_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RepSpec {
    pub n: usize,
    #[serde(flatten)]
    pub family: Family,
    #[serde(serialize_with = "serialize_rational")]
    pub q0: BigRational,
}

impl RepSpec {
    pub fn new(n: usize, family: Family, q0: BigRational) -> Result<Self, RepError> {
        if n == 0 {
            return Err(RepError::Parameter("representations need n >= 1".into()));
        }
        if q0 <= BigRational::zero() || q0 >= BigRational::one() {
            return Err(RepError::Parameter(format!("q0 = {q0} is not in (0, 1)")));
        }
        match family {
            Family::BarPi { k } if k > n => {
                return Err(RepError::Parameter(format!("k = {k} exceeds n = {n}")));
            }
            Family::SpherePi { lambda } | Family::SigmaPi { lambda, .. } => check_phase(&lambda)?,
            _ => {}
        }
        Ok(RepSpec { n, family, q0 })
    }

    pub fn sphere_pi(n: usize, lambda: Phase, q0: BigRational) -> Result<Self, RepError> {
        RepSpec::new(n, Family::SpherePi { lambda }, q0)
    }

    pub fn bar_pi(n: usize, k: usize, q0: BigRational) -> Result<Self, RepError> {
        RepSpec::new(n, Family::BarPi { k }, q0)
    }

    pub fn sigma_pi(
        n: usize,
        lambda: Phase,
        sign: Sign,
        q0: BigRational,
    ) -> Result<Self, RepError> {
        RepSpec::new(n, Family::SigmaPi { lambda, sign }, q0)
    }

    /// The algebra this representation is a representation of.
    pub fn presentation(&self) -> AlgebraPresentation {
        match self.family {
            Family::SigmaPi { .. } => AlgebraPresentation::sigma(self.n),
            _ => AlgebraPresentation::sphere(self.n),
        }
    }

    pub fn q0_f64(&self) -> f64 {
        ratio_to_f64(&self.q0)
    }

    /// The space this representation lives on at the given cutoff.
    pub fn space(&self, cutoff: u32) -> Result<super::TruncatedSpace, RepError> {
        let admissible = match self.family {
            Family::BarPi { k } => Some(k),
            _ => None,
        };
        super::TruncatedSpace::new(self.n, cutoff, None, admissible)
    }
}

fn check_phase(p: &Phase) -> Result<(), RepError> {
    match *p {
        Phase::RootOfUnity { b: 0, .. } => {
            Err(RepError::Parameter("root of unity needs b >= 1".into()))
        }
        Phase::Angle { radians } if !radians.is_finite() => {
            Err(RepError::Parameter("phase angle must be finite".into()))
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_powers() {
        let l = Phase::RootOfUnity { a: 1, b: 4 };
        assert_eq!(l.pow(1), Complex64::new(0.0, 1.0));
        assert_eq!(l.pow(-2), Complex64::new(-1.0, 0.0));
        assert_eq!(l.pow(4), Complex64::new(1.0, 0.0));
        let t = Phase::RootOfUnity { a: 1, b: 3 };
        assert!((t.pow(3) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((t.value().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn q0_range() {
        let half = BigRational::new(1.into(), 2.into());
        assert!(RepSpec::sphere_pi(1, Phase::one(), half.clone()).is_ok());
        assert!(RepSpec::sphere_pi(1, Phase::one(), BigRational::one()).is_err());
        assert!(RepSpec::bar_pi(2, 3, half).is_err());
    }
}
