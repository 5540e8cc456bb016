use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teardrop_core::grading::{GradingGroup, GradingSpec};
use teardrop_core::scalar::QScalar;
use teardrop_core::star_algebra::{
    compositions, degree_zero_membership, make_named_element, teardrop_generators, AlgebraElement,
    AlgebraError, AlgebraPresentation, Generator, Monomial, NamedElement, Strategy,
};

use Generator::*;

fn sphere(n: usize) -> AlgebraPresentation {
    AlgebraPresentation::sphere(n)
}

fn word(p: AlgebraPresentation, w: &[Generator]) -> AlgebraElement {
    AlgebraElement::from_word(p, w).unwrap()
}

fn scalar(p: AlgebraPresentation, c: QScalar) -> AlgebraElement {
    AlgebraElement::scalar(p, c)
}

fn random_word(rng: &mut ChaCha8Rng, p: AlgebraPresentation, max_len: usize) -> Vec<Generator> {
    let gens = p.generators();
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| gens[rng.gen_range(0..gens.len())])
        .collect()
}

#[test]
fn commutation_z1_z0() {
    let p = sphere(1);
    let lhs = word(p, &[Z(1), Z(0)]);
    let rhs = word(p, &[Z(0), Z(1)]).scale(&QScalar::q_pow(-1));
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.len(), 1);
}

#[test]
fn unit_relation() {
    for n in 1..=4 {
        let p = sphere(n);
        let sum = (0..=n)
            .map(|j| (QScalar::one(), vec![Z(j), ZStar(j)]))
            .collect();
        assert!(p.normalize(&sum).unwrap().is_one(), "n = {n}");
    }
}

#[test]
fn z1star_z1_n1() {
    let p = sphere(1);
    let x = word(p, &[ZStar(1), Z(1)]);
    let expected = &AlgebraElement::one(p) - &word(p, &[Z(0), ZStar(0)]);
    assert_eq!(x, expected);
    assert_eq!(word(p, &[Z(1), ZStar(1)]), expected);
}

#[test]
fn z0star_z0_matches_product_formula() {
    // z0* z0 = 1 - q^-2 a
    let p = sphere(1);
    let a = make_named_element(&NamedElement::A, p).unwrap();
    let expected = &AlgebraElement::one(p) - &a.scale(&QScalar::q_pow(-2));
    assert_eq!(word(p, &[ZStar(0), Z(0)]), expected);
}

#[test]
fn w_rejected_in_sphere() {
    let p = sphere(2);
    assert!(matches!(
        p.normalize_word(&[Z(0), W]),
        Err(AlgebraError::InvalidGenerator { .. })
    ));
    assert!(matches!(
        p.normalize_word(&[Z(3)]),
        Err(AlgebraError::IndexOutOfRange { index: 3, n: 2 })
    ));
}

#[test]
fn normal_forms_are_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=3 {
        for p in [sphere(n), AlgebraPresentation::sigma(n)] {
            for _ in 0..200 {
                let w = random_word(&mut rng, p, 8);
                let x = p.normalize_word(&w).unwrap();
                for (m, _) in x.terms() {
                    assert!(p.is_normal_monomial(m), "{m} in {p}");
                    let y = p.normalize_word(&m.to_word()).unwrap();
                    assert_eq!(y.len(), 1);
                    assert!(y.coeff(m).is_one());
                }
            }
        }
    }
}

#[test]
fn defining_relations_hold() {
    for n in 1..=3 {
        for p in [sphere(n), AlgebraPresentation::sigma(n)] {
            for (name, lhs, rhs) in p.defining_relations() {
                let l = p.normalize(&lhs).unwrap();
                let r = p.normalize(&rhs).unwrap();
                assert_eq!(l, r, "{name} in {p}");
            }
        }
    }
}

#[test]
fn strategies_agree_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut strategy_rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..1000 {
        let n = 1 + i % 3;
        let p = if i % 2 == 0 {
            sphere(n)
        } else {
            AlgebraPresentation::sigma(n)
        };
        let w = random_word(&mut rng, p, 12);
        let sum = vec![(QScalar::one(), w)];
        let a = p.normalize_with(&sum, Strategy::Memoized).unwrap();
        let b = p.normalize_with(&sum, Strategy::Leftmost).unwrap();
        let c = p
            .normalize_with(&sum, Strategy::Random(&mut strategy_rng))
            .unwrap();
        assert_eq!(a, b, "{p} {:?}", sum[0].1);
        assert_eq!(a, c, "{p} {:?}", sum[0].1);
    }
}

fn q_factor(p: AlgebraPresentation, a: &AlgebraElement, s: i64) -> AlgebraElement {
    &AlgebraElement::one(p) - &a.scale(&QScalar::q_pow(2 * s))
}

#[test]
fn product_formula_for_z0_powers() {
    for n in 1..=3 {
        let p = sphere(n);
        let a = make_named_element(&NamedElement::A, p).unwrap();
        for big_n in 1..=5usize {
            let lhs = word(p, &[vec![Z(0); big_n], vec![ZStar(0); big_n]].concat());
            let rhs =
                (0..big_n as i64).fold(AlgebraElement::one(p), |acc, s| &acc * &q_factor(p, &a, s));
            assert_eq!(lhs, rhs, "z0^N z0*^N, n = {n}, N = {big_n}");
            let lhs = word(p, &[vec![ZStar(0); big_n], vec![Z(0); big_n]].concat());
            let rhs = (1..=big_n as i64)
                .fold(AlgebraElement::one(p), |acc, s| &acc * &q_factor(p, &a, -s));
            assert_eq!(lhs, rhs, "z0*^N z0^N, n = {n}, N = {big_n}");
        }
    }
}

#[test]
fn diagonal_elements_commute() {
    for n in 1..=3 {
        for p in [sphere(n), AlgebraPresentation::sigma(n)] {
            for i in 0..=n {
                for j in 0..=n {
                    let bi = make_named_element(&NamedElement::B { i }, p).unwrap();
                    let bj = make_named_element(&NamedElement::B { i: j }, p).unwrap();
                    assert!((&(&bi * &bj) - &(&bj * &bi)).is_zero());
                }
            }
        }
    }
}

#[test]
fn adjoint_examples() {
    let p = sphere(1);
    assert_eq!(word(p, &[Z(0)]).adjoint(), word(p, &[ZStar(0)]));
    assert!(AlgebraElement::one(p).adjoint().is_one());
    let x = word(p, &[Z(1), ZStar(0)]).scale(&QScalar::q());
    // (q z1 z0*)* = q z0 z1*
    assert_eq!(x.adjoint(), word(p, &[Z(0), ZStar(1)]).scale(&QScalar::q()));
}

#[test]
fn adjoint_is_an_involutive_antihomomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..150 {
        let n = 1 + i % 3;
        let p = if i % 2 == 0 {
            sphere(n)
        } else {
            AlgebraPresentation::sigma(n)
        };
        let x = &word(p, &random_word(&mut rng, p, 5))
            + &scalar(p, QScalar::from_int(rng.gen_range(-3..4)));
        let y = word(p, &random_word(&mut rng, p, 5)).scale(&QScalar::q_pow(rng.gen_range(-2..3)));
        assert_eq!(x.adjoint().adjoint(), x);
        assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
    }
}

#[test]
fn named_elements() {
    let p = sphere(1);
    assert_eq!(
        make_named_element(&NamedElement::A, p).unwrap(),
        word(p, &[Z(1), ZStar(1)])
    );
    let c = make_named_element(&NamedElement::C { l: vec![3], m: 3 }, p).unwrap();
    assert_eq!(c, word(p, &[Z(0), Z(0), Z(0), ZStar(1)]));
    let b00 = make_named_element(&NamedElement::BPair { i: 0, j: 0 }, p).unwrap();
    let a = make_named_element(&NamedElement::A, p).unwrap();
    assert_eq!(b00, &AlgebraElement::one(p) - &a);
    let err = make_named_element(
        &NamedElement::C {
            l: vec![1, 1],
            m: 3,
        },
        sphere(2),
    )
    .unwrap_err();
    assert!(err.to_string().contains("sum of l_i = m"));
    let err = make_named_element(
        &NamedElement::D {
            p: vec![1, 1],
            m: 2,
        },
        AlgebraPresentation::sigma(2),
    )
    .unwrap_err();
    assert!(err.to_string().contains("sum of p_i = 2m"));
}

#[test]
fn degree_zero_membership_examples() {
    for n in 1..=3 {
        for m in 1..=3i64 {
            let p = sphere(n);
            let mut weights = vec![1; n];
            weights.push(m);
            let g = GradingSpec::new(p, weights, GradingGroup::Integers).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let b = make_named_element(&NamedElement::BPair { i, j }, p).unwrap();
                    assert!(degree_zero_membership(&b, &g));
                }
            }
            assert!(!degree_zero_membership(&word(p, &[Z(0)]), &g));
            for l in compositions(m as u32, n) {
                let c = make_named_element(&NamedElement::C { l, m: m as u32 }, p).unwrap();
                assert!(degree_zero_membership(&c, &g));
            }
        }
    }
}

#[test]
fn generator_products_stay_invariant() {
    for n in 1..=2 {
        for m in 1..=3u32 {
            for p in [sphere(n), AlgebraPresentation::sigma(n)] {
                let mut weights = vec![1; n];
                weights.push(m as i64);
                let g = GradingSpec::new(p, weights, GradingGroup::Integers).unwrap();
                let gens = teardrop_generators(p, m).unwrap();
                for (_, x) in &gens {
                    assert!(degree_zero_membership(x, &g));
                    for (_, y) in &gens {
                        assert!(degree_zero_membership(&(x * y), &g));
                    }
                }
            }
        }
    }
}

#[test]
fn sigma_eliminates_zn_star() {
    let p = AlgebraPresentation::sigma(1);
    let x = word(p, &[ZStar(1)]);
    assert_eq!(x, word(p, &[Z(1), W]));
    let m: &Monomial = x.terms().next().unwrap().0;
    assert_eq!((m.a.clone(), m.b.clone(), m.s), (vec![0, 1], vec![0, 0], 1));
    assert!(word(p, &[W, WStar]).is_one());
}

#[test]
fn display_is_stable() {
    let p = sphere(1);
    let x = word(p, &[ZStar(0), Z(0)]);
    assert_eq!(x.to_string(), "((q^2 - 1)/(q^2)) + ((1)/(q^2))*z0 z0*");
}
