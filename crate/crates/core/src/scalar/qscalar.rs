use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::poly::{format_poly, Field, Poly};
use super::ScalarError;

type QPoly = Poly<BigRational>;

/// An element of the rational function field ℚ(q).
///
/// Canonical form: numerator and denominator coprime, denominator monic,
/// zero stored as `0/1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QScalar {
    num: QPoly,
    den: QPoly,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with an explicit error for division by zero.
pub fn qscalar_arith(a: &QScalar, b: &QScalar, op: ArithOp) -> Result<QScalar, ScalarError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Substitute `q := q0`.
pub fn qscalar_eval(a: &QScalar, q0: &BigRational) -> Result<BigRational, ScalarError> {
    a.eval(q0)
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        QScalar {
            num: QPoly::constant(r),
            den: QPoly::one(),
        }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let mono = QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            QScalar {
                num: mono,
                den: QPoly::one(),
            }
        } else {
            QScalar {
                num: QPoly::one(),
                den: mono,
            }
        }
    }

    /// Build `num/den` and bring it to canonical form.
    pub fn from_polys(num: QPoly, den: QPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    /// Polynomial in `q` with the given coefficients (lowest degree first).
    pub fn from_poly(num: QPoly) -> Self {
        QScalar {
            num,
            den: QPoly::one(),
        }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn canonical(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_monomial() {
            let k = den.degree().unwrap();
            let lc = den.leading().unwrap().clone();
            let num = if lc.is_one() {
                num
            } else {
                num.scale(&(BigRational::one() / lc))
            };
            let s = num.order().unwrap().min(k);
            return QScalar {
                num: num.shift_down(s),
                den: QPoly::monomial(BigRational::one(), k - s),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QScalar { num, den }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let j = k.unsigned_abs() as usize;
        if k > 0 {
            // only a power of q in the denominator can cancel
            let d = self.den.order().unwrap().min(j);
            QScalar {
                num: self.num.shift_up(j - d),
                den: self.den.shift_down(d),
            }
        } else {
            let t = self.num.order().unwrap().min(j);
            QScalar {
                num: self.num.shift_down(t),
                den: self.den.shift_up(j - t),
            }
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::Pole { at: q0.to_string() });
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Approximate value at a floating-point `q0`.
    pub fn eval_f64(&self, q0: f64) -> f64 {
        let to_f = |c: &BigRational| ratio_to_f64(c);
        let n = self
            .num
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q0 + to_f(c));
        let d = self
            .den
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q0 + to_f(c));
        n / d
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Display for QScalar {
    /// `p(q)` when the denominator is 1, otherwise `(p(q))/(r(q))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", format_poly(&self.num, "q"))
        } else {
            write!(
                f,
                "({})/({})",
                format_poly(&self.num, "q"),
                format_poly(&self.den, "q")
            )
        }
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, rhs: &'a QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_monomial() && rhs.den.is_monomial() {
            let (a, b) = (self.den.degree().unwrap(), rhs.den.degree().unwrap());
            let l = a.max(b);
            let num = &self.num.shift_up(l - a) + &rhs.num.shift_up(l - b);
            return QScalar::canonical(num, QPoly::monomial(BigRational::one(), l));
        }
        if self.den == rhs.den {
            return QScalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        QScalar::canonical(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &'a QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &'a QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if rhs.den.is_one() && rhs.num.is_monomial() && rhs.num.leading().unwrap().is_one() {
            return self.shift(rhs.num.degree().unwrap() as i64);
        }
        if self.den.is_one() && self.num.is_monomial() && self.num.leading().unwrap().is_one() {
            return rhs.shift(self.num.degree().unwrap() as i64);
        }
        QScalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

/// Panics on division by zero; use [`QScalar::checked_div`] for fallible input.
impl<'a> Div<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn div(self, rhs: &'a QScalar) -> QScalar {
        self.checked_div(rhs).expect("QScalar division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

impl Field for QScalar {}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl From<BigRational> for QScalar {
    fn from(r: BigRational) -> Self {
        QScalar::from_rational(r)
    }
}
