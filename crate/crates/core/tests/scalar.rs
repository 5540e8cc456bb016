use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use teardrop_core::scalar::{parse_rational, qscalar_arith, ArithOp, Poly, QScalar, ScalarError};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn poly() -> impl Strategy<Value = Poly<BigRational>> {
    prop::collection::vec(-4i64..=4, 0..4)
        .prop_map(|c| Poly::from_coeffs(c.into_iter().map(|x| rat(x, 1)).collect()))
}

prop_compose! {
    fn scalar()(num in poly(), den in poly(), shift in -3i64..=3) -> QScalar {
        let den = if den.is_zero() { Poly::one() } else { den };
        QScalar::from_polys(num, den).unwrap().shift(shift)
    }
}

#[test]
fn examples() {
    let q = QScalar::q();
    let one = QScalar::one();
    // (1 - q^2)^{-1} (1 - q^2) = 1
    let x = &one - &q.pow(2).unwrap();
    assert!((&x * &x.inv().unwrap()).is_one());
    assert_eq!(QScalar::q_pow(-2).eval(&rat(1, 2)).unwrap(), rat(4, 1));
    assert_eq!(
        qscalar_arith(&one, &QScalar::zero(), ArithOp::Div),
        Err(ScalarError::DivisionByZero)
    );
    assert!(x.inv().unwrap().eval(&rat(1, 1)).is_err());
    assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
    assert_eq!(parse_rational("-2"), Some(rat(-2, 1)));
    assert_eq!(parse_rational("1/0"), None);
    assert_eq!(parse_rational("0.5"), None);
}

#[test]
fn display() {
    assert_eq!(QScalar::q_pow(2).to_string(), "q^2");
    assert_eq!(QScalar::from_int(-3).to_string(), "-3");
    let x = &QScalar::one() / &(&QScalar::one() - &QScalar::q());
    assert_eq!(x.to_string(), "(-1)/(q - 1)");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &QScalar::zero(), a.clone());
        prop_assert_eq!(&a * &QScalar::one(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn canonical_form(a in scalar(), b in scalar()) {
        let s = &a + &b;
        let den = s.denominator();
        prop_assert!(den.leading().map(|l| *l == rat(1, 1)).unwrap_or(false));
        prop_assert!(s.numerator().gcd(den).degree() == Some(0));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), n in 1i64..=9, d in 1i64..=9) {
        let q0 = rat(n, d + 9);
        if let (Ok(x), Ok(y)) = (a.eval(&q0), b.eval(&q0)) {
            prop_assert_eq!((&a + &b).eval(&q0).unwrap(), &x + &y);
            prop_assert_eq!((&a * &b).eval(&q0).unwrap(), &x * &y);
            if !y.is_zero() && !b.is_zero() {
                if let Ok(z) = (&a / &b).eval(&q0) {
                    prop_assert_eq!(z, &x / &y);
                }
            }
            let f = a.eval_f64(n as f64 / (d + 9) as f64);
            let exact = as_f64(&x);
            prop_assert!((f - exact).abs() <= 1e-9 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn q_powers(i in -6i64..=6, j in -6i64..=6) {
        prop_assert_eq!(&QScalar::q_pow(i) * &QScalar::q_pow(j), QScalar::q_pow(i + j));
        prop_assert_eq!(QScalar::q().pow(i).unwrap(), QScalar::q_pow(i));
    }
}

fn as_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}
