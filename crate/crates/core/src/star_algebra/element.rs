use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::generator::{FormalSum, Generator};
use super::monomial::Monomial;
use super::presentation::AlgebraPresentation;
use super::AlgebraError;
use crate::scalar::QScalar;

/// A linear combination of normal-form monomials over ℚ(q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    presentation: AlgebraPresentation,
    terms: BTreeMap<Monomial, QScalar>,
}

impl AlgebraElement {
    pub fn zero(p: AlgebraPresentation) -> Self {
        AlgebraElement {
            presentation: p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: AlgebraPresentation) -> Self {
        Self::scalar(p, QScalar::one())
    }

    pub fn scalar(p: AlgebraPresentation, c: QScalar) -> Self {
        let mut e = Self::zero(p);
        e.add_term(Monomial::one(p.n), c);
        e
    }

    pub fn generator(p: AlgebraPresentation, g: Generator) -> Result<Self, AlgebraError> {
        p.normalize_word(&[g])
    }

    pub fn from_word(p: AlgebraPresentation, w: &[Generator]) -> Result<Self, AlgebraError> {
        p.normalize_word(w)
    }

    pub fn presentation(&self) -> AlgebraPresentation {
        self.presentation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_else(QScalar::zero)
    }

    /// Add `c·m`; `m` must already be in normal form.
    pub fn add_term(&mut self, m: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            self.presentation.is_normal_monomial(&m),
            "non-normal monomial {m}"
        );
        match self.terms.get_mut(&m) {
            Some(acc) => {
                *acc = &*acc + &c;
                if acc.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.presentation != other.presentation {
            return Err(AlgebraError::PresentationMismatch {
                left: self.presentation.to_string(),
                right: other.presentation.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.scale(&-QScalar::one()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut sum: FormalSum = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            let w1 = m1.to_word();
            for (m2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(m2.to_word());
                sum.push((c1 * c2, w));
            }
        }
        self.presentation.normalize(&sum)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero(self.presentation);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.presentation);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The *-involution: reverse each word, star each letter, renormalize.
    /// Coefficients are real rational functions, so they are unchanged.
    pub fn adjoint(&self) -> Self {
        let sum: FormalSum = self
            .terms
            .iter()
            .map(|(m, c)| {
                let w = m.to_word().into_iter().rev().map(Generator::star).collect();
                (c.clone(), w)
            })
            .collect();
        self.presentation
            .normalize(&sum)
            .expect("adjoint of a valid element uses valid generators")
    }

    /// The element as a formal sum of normal-order words.
    pub fn to_formal_sum(&self) -> FormalSum {
        self.terms
            .iter()
            .map(|(m, c)| (c.clone(), m.to_word()))
            .collect()
    }

    /// Keep only the terms for which `keep` holds.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        AlgebraElement {
            presentation: self.presentation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

fn needs_parens(c: &QScalar) -> bool {
    let s = c.to_string();
    s.starts_with('(') || s[1..].contains([' ', '+'])
}

impl fmt::Display for AlgebraElement {
    /// Terms in ascending monomial order, e.g. `1 + (-1)*z0 z0*`.
    /// The output is accepted by the CLI expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = if needs_parens(c) || c.to_string().starts_with('-') {
                    format!("({c})")
                } else {
                    c.to_string()
                };
                match (m.is_one(), c.is_one()) {
                    (true, _) => cs,
                    (false, true) => m.to_string(),
                    (false, false) => format!("{cs}*{m}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermRef<'a> {
    monomial: &'a Monomial,
    coeff: String,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermRef {
                monomial: m,
                coeff: c.to_string(),
            })?;
        }
        seq.end()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:ident) => {
        impl std::ops::$tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $f(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$op(rhs).expect("elements of the same presentation")
            }
        }
        impl std::ops::$tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $f(self, rhs: AlgebraElement) -> AlgebraElement {
                self.$op(&rhs).expect("elements of the same presentation")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-QScalar::one())
    }
}
