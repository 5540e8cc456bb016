use super::resolution::{verify_resolution, ResolutionOfIdentity};
use super::spec::{GradingGroup, GradingSpec};
use super::GradingError;
use crate::scalar::{Poly, QScalar};
use crate::star_algebra::{make_named_element, AlgebraElement, Generator, NamedElement};

pub type QPolyX = Poly<QScalar>;

/// `prod_{s in exps} (1 - q^{2s} x)`
pub fn q_product(exps: impl IntoIterator<Item = i64>) -> QPolyX {
    exps.into_iter().fold(QPolyX::one(), |acc, s| {
        let f = QPolyX::from_coeffs(vec![QScalar::one(), -QScalar::q_pow(2 * s)]);
        &acc * &f
    })
}

/// Solve `alpha*f + beta*g = 1` by extended Euclid; `None` if `f`, `g` share a root.
pub fn bezout(f: &QPolyX, g: &QPolyX) -> Option<(QPolyX, QPolyX)> {
    let (d, s, t) = f.ext_gcd(g);
    d.is_one().then_some((s, t))
}

/// Coefficients `(alpha, beta)` with
/// `alpha(x) prod_{s=0}^{N-2}(1 - q^{2s} x) + beta(x)(1 - q^-2 x) = 1`.
pub fn bezout_lens_coefficients(big_n: u64) -> (QPolyX, QPolyX) {
    let p = q_product(0..big_n as i64 - 1);
    let q = q_product([-1]);
    bezout(&p, &q).expect("roots q^-2s and q^2 are distinct")
}

/// Coefficients `(alpha', beta')` with
/// `alpha'(x) prod_{s=1}^{N-1}(1 - q^{-2s} x) + beta'(x)(1 - x) = 1`.
pub fn bezout_lens_coefficients_inverse(big_n: u64) -> (QPolyX, QPolyX) {
    let p = q_product((1..big_n as i64).map(|s| -s));
    let q = q_product([0]);
    bezout(&p, &q).expect("roots q^2s and 1 are distinct")
}

/// `f(x)` evaluated at an algebra element by Horner's rule.
pub fn poly_at(f: &QPolyX, x: &AlgebraElement) -> AlgebraElement {
    let p = x.presentation();
    f.coeffs()
        .iter()
        .rev()
        .fold(AlgebraElement::zero(p), |acc, c| {
            &(&acc * x) + &AlgebraElement::scalar(p, c.clone())
        })
}

fn check_cyclic(g: &GradingSpec) -> Result<u64, GradingError> {
    let GradingGroup::Cyclic(big_n) = g.group else {
        return Err(GradingError::Precondition(format!(
            "Bezout resolutions need a cyclic grading, got {}",
            g.group
        )));
    };
    if g.weights[0].rem_euclid(big_n as i64) != 1 % big_n as i64 {
        return Err(GradingError::Precondition(format!(
            "Bezout resolutions need m0 = 1 mod {big_n}, got m0 = {}",
            g.weights[0]
        )));
    }
    Ok(big_n)
}

fn z0_power(g: &GradingSpec, star: bool, e: u64) -> Result<AlgebraElement, GradingError> {
    let gen = if star {
        Generator::ZStar(0)
    } else {
        Generator::Z(0)
    };
    Ok(AlgebraElement::from_word(
        g.presentation,
        &vec![gen; e as usize],
    )?)
}

fn finish(r: ResolutionOfIdentity, g: &GradingSpec) -> Result<ResolutionOfIdentity, GradingError> {
    let report = verify_resolution(&r, g);
    if !report.valid {
        return Err(GradingError::Unverified(Box::new(report)));
    }
    Ok(r)
}

/// Certificate at degree 1 for a ℤ_N-grading with `m0 = 1 mod N`:
/// `{(alpha(a) z0^{N-1}, z0*^{N-1}), (beta(a) z0*, z0)}`.
pub fn bezout_lens_resolution(g: &GradingSpec) -> Result<ResolutionOfIdentity, GradingError> {
    let big_n = check_cyclic(g)?;
    let p = g.presentation;
    if big_n == 1 {
        return Ok(ResolutionOfIdentity::trivial(p));
    }
    let (alpha, beta) = bezout_lens_coefficients(big_n);
    let a = make_named_element(&NamedElement::A, p)?;
    let r = ResolutionOfIdentity {
        target: 1,
        pairs: vec![
            (
                &poly_at(&alpha, &a) * &z0_power(g, false, big_n - 1)?,
                z0_power(g, true, big_n - 1)?,
            ),
            (
                &poly_at(&beta, &a) * &z0_power(g, true, 1)?,
                z0_power(g, false, 1)?,
            ),
        ],
    };
    finish(r, g)
}

/// Certificate at degree -1:
/// `{(alpha'(a) z0*^{N-1}, z0^{N-1}), (beta'(a) z0, z0*)}`.
pub fn bezout_lens_resolution_inverse(
    g: &GradingSpec,
) -> Result<ResolutionOfIdentity, GradingError> {
    let big_n = check_cyclic(g)?;
    let p = g.presentation;
    if big_n == 1 {
        return Ok(ResolutionOfIdentity::trivial(p));
    }
    let (alpha, beta) = bezout_lens_coefficients_inverse(big_n);
    let a = make_named_element(&NamedElement::A, p)?;
    let r = ResolutionOfIdentity {
        target: g.neg(1),
        pairs: vec![
            (
                &poly_at(&alpha, &a) * &z0_power(g, true, big_n - 1)?,
                z0_power(g, false, big_n - 1)?,
            ),
            (
                &poly_at(&beta, &a) * &z0_power(g, false, 1)?,
                z0_power(g, true, 1)?,
            ),
        ],
    };
    finish(r, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigRational;
    use num_traits::Zero;

    #[test]
    fn n2_coefficients() {
        let (alpha, beta) = bezout_lens_coefficients(2);
        let one = QScalar::one();
        let q2 = QScalar::q_pow(2);
        let expected_alpha = &one / &(&one - &q2);
        let expected_beta = &q2 / &(&q2 - &one);
        assert_eq!(alpha, QPolyX::constant(expected_alpha));
        assert_eq!(beta, QPolyX::constant(expected_beta));
    }

    #[test]
    fn identities_hold_exactly() {
        for n in 1..=6u64 {
            let p = q_product(0..n as i64 - 1);
            let q = q_product([-1]);
            let (alpha, beta) = bezout_lens_coefficients(n);
            assert!((&(&alpha * &p) + &(&beta * &q)).is_one());
            let p = q_product((1..n as i64).map(|s| -s));
            let q = q_product([0]);
            let (alpha, beta) = bezout_lens_coefficients_inverse(n);
            assert!((&(&alpha * &p) + &(&beta * &q)).is_one());
        }
    }

    #[test]
    fn every_denominator_vanishes_at_one() {
        let one = BigRational::from_integer(1.into());
        for n in 2..=6u64 {
            for (alpha, beta) in [
                bezout_lens_coefficients(n),
                bezout_lens_coefficients_inverse(n),
            ] {
                for c in alpha
                    .coeffs()
                    .iter()
                    .chain(beta.coeffs())
                    .filter(|c| !c.is_zero())
                {
                    assert!(c.denominator().eval(&one).is_zero(), "N = {n}: {c}");
                    assert!(c.eval(&one).is_err());
                }
            }
        }
    }
}
