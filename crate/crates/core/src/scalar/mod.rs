//! Exact arithmetic in ℚ(q) and evaluation at rational points.

mod poly;
mod qscalar;

pub use num_rational::BigRational;
pub use poly::{Field, Poly};
pub(crate) use qscalar::ratio_to_f64;
pub use qscalar::{qscalar_arith, qscalar_eval, ArithOp, QScalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("rational function has a pole at q = {at}")]
    Pole { at: String },
}

/// Parse `"p/r"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    use num_bigint::BigInt;
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
