use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use teardrop_core::representations::*;
use teardrop_core::star_algebra::{
    make_named_element, AlgebraElement, AlgebraPresentation, Generator, NamedElement,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn q0s() -> [BigRational; 3] {
    [rat(1, 4), rat(1, 2), rat(3, 4)]
}

fn all_specs(n: usize, q0: &BigRational) -> Vec<RepSpec> {
    let lambdas = [
        Phase::one(),
        Phase::RootOfUnity { a: 3, b: 7 },
        Phase::Angle { radians: 2.1 },
    ];
    let mut out = Vec::new();
    for l in lambdas {
        out.push(RepSpec::sphere_pi(n, l, q0.clone()).unwrap());
        for s in [Sign::Plus, Sign::Minus] {
            out.push(RepSpec::sigma_pi(n, l, s, q0.clone()).unwrap());
        }
    }
    for k in 0..=n {
        out.push(RepSpec::bar_pi(n, k, q0.clone()).unwrap());
    }
    out
}

#[test]
fn relation_residuals_vanish_on_the_interior() {
    for n in 1..=3 {
        let cutoff = 10;
        for q0 in q0s() {
            for spec in all_specs(n, &q0) {
                let space = spec.space(cutoff).unwrap();
                let r = relation_residual(spec.presentation(), &spec, &space, 1e-12).unwrap();
                assert!(!r.empty_interior);
                assert_eq!(r.status, Status::Pass, "{spec:?}: {:?}", r.relations);
            }
        }
    }
}

#[test]
fn residual_preconditions() {
    let spec = RepSpec::sphere_pi(1, Phase::one(), rat(1, 2)).unwrap();
    let space = spec.space(4).unwrap();
    assert!(matches!(
        relation_residual(AlgebraPresentation::sigma(1), &spec, &space, 1e-12),
        Err(RepError::PresentationMismatch { .. })
    ));
    let sector = TruncatedSpace::new(1, 4, Some(Sector { s: 0, m: 2 }), None).unwrap();
    assert!(relation_residual(spec.presentation(), &spec, &sector, 1e-12).is_err());
    let bar = RepSpec::bar_pi(2, 1, rat(1, 2)).unwrap();
    let wrong = TruncatedSpace::new(2, 3, None, Some(2)).unwrap();
    assert!(rep_generator(&bar, Generator::Z(0), &wrong).is_err());
    assert!(rep_generator(&spec, Generator::W, &space).is_err());
}

#[test]
fn unit_element_and_unit_relation() {
    let spec = RepSpec::sphere_pi(2, Phase::RootOfUnity { a: 1, b: 5 }, rat(1, 2)).unwrap();
    let space = spec.space(6).unwrap();
    let p = spec.presentation();
    let one = apply_element(&AlgebraElement::one(p), &spec, &space).unwrap();
    assert_eq!(one, TruncatedOperator::identity(space.dim()));
    let sum = p
        .normalize(
            &(0..=2)
                .map(|j| {
                    (
                        teardrop_core::scalar::QScalar::one(),
                        vec![Generator::Z(j), Generator::ZStar(j)],
                    )
                })
                .collect(),
        )
        .unwrap();
    assert!(sum.is_one());
    let raw: Vec<_> = (0..=2)
        .map(|j| {
            (
                teardrop_core::scalar::QScalar::one(),
                vec![Generator::Z(j), Generator::ZStar(j)],
            )
        })
        .collect();
    let op = apply_formal_sum(&raw, &spec, &space).unwrap();
    let diff = op.sub(&TruncatedOperator::identity(space.dim()));
    assert!(diff.max_abs_in_columns(&space.interior(1)) < 1e-14);
}

#[test]
fn sparsity_of_generators() {
    for q0 in q0s() {
        let spec = RepSpec::sphere_pi(3, Phase::Angle { radians: 0.4 }, q0).unwrap();
        let space = spec.space(4).unwrap();
        assert!(rep_generator(&spec, Generator::Z(3), &space)
            .unwrap()
            .is_diagonal());
        for l in 0..3 {
            let op = rep_generator(&spec, Generator::Z(l), &space).unwrap();
            for e in &op.entries {
                let (r, c) = (&space.basis()[e.row], &space.basis()[e.col]);
                let mut expect = c.clone();
                expect[l] -= 1;
                assert_eq!(r, &expect);
            }
            assert_eq!(op.nnz(), space.dim() / 5 * 4);
        }
    }
}

#[test]
fn spectra_do_not_depend_on_lambda() {
    let q0 = rat(1, 2);
    let x = make_named_element(&NamedElement::B { i: 0 }, AlgebraPresentation::sphere(2)).unwrap();
    let a = RepSpec::sphere_pi(2, Phase::one(), q0.clone()).unwrap();
    let b = RepSpec::sphere_pi(2, Phase::RootOfUnity { a: 2, b: 9 }, q0).unwrap();
    let space = a.space(5).unwrap();
    let da = apply_element(&x, &a, &space).unwrap();
    let db = apply_element(&x, &b, &space).unwrap();
    assert_eq!(da, db);
    let z2 = AlgebraElement::generator(AlgebraPresentation::sphere(2), Generator::Z(2)).unwrap();
    let zz = z2.try_mul(&z2.adjoint()).unwrap();
    assert!(
        apply_element(&zz, &a, &space)
            .unwrap()
            .sub(&apply_element(&zz, &b, &space).unwrap())
            .max_abs()
            < 1e-15
    );
}

#[test]
fn c_l_lowers_the_total_by_m() {
    let p = AlgebraPresentation::sphere(2);
    let spec = RepSpec::sphere_pi(2, Phase::one(), rat(1, 2)).unwrap();
    let space = spec.space(6).unwrap();
    for l in [vec![2, 0], vec![1, 1], vec![0, 2]] {
        let x = make_named_element(&NamedElement::C { l: l.clone(), m: 2 }, p).unwrap();
        let op = apply_element(&x, &spec, &space).unwrap();
        let total = |i: usize| space.basis()[i].iter().sum::<u32>() as i64;
        assert!(op.entries.iter().all(|e| total(e.row) - total(e.col) == -2));
        for (col, k) in space.basis().iter().enumerate() {
            if k.iter().zip(&l).all(|(a, b)| a >= b) {
                assert_eq!(op.column(col).len(), 1);
                assert!(op.column(col)[0].value().norm() > 0.0);
            }
        }
    }
}

#[test]
fn pole_is_reported() {
    let spec = RepSpec::sphere_pi(1, Phase::one(), rat(1, 2)).unwrap();
    let space = spec.space(2).unwrap();
    let q = teardrop_core::scalar::QScalar::q();
    let bad = (&teardrop_core::scalar::QScalar::one() - &(&q + &q))
        .inv()
        .unwrap();
    let x = vec![(bad, vec![Generator::Z(0)])];
    assert!(matches!(
        apply_formal_sum(&x, &spec, &space),
        Err(RepError::Pole(_))
    ));
}

#[test]
fn sectors_are_preserved() {
    for n in 1..=3 {
        let cutoff = if n == 3 { 5 } else { 8 };
        for m in 1..=4u32 {
            for q0 in q0s() {
                let specs = [
                    RepSpec::sphere_pi(n, Phase::RootOfUnity { a: 1, b: 3 }, q0.clone()).unwrap(),
                    RepSpec::sigma_pi(n, Phase::Angle { radians: 1.3 }, Sign::Minus, q0.clone())
                        .unwrap(),
                ];
                for spec in specs {
                    let space = spec.space(cutoff).unwrap();
                    let r = sector_split_check(&spec, m, &space).unwrap();
                    assert_eq!(r.status, Status::Pass, "{spec:?} m={m}: {:?}", r.offending);
                    assert_eq!(r.off_sector_entries, 0);
                    if m > 1 {
                        assert!(r.control_off_sector_entries > 0);
                    } else {
                        assert_eq!(r.control_off_sector_entries, 0);
                    }
                }
            }
        }
    }
}

#[test]
fn sector_example_generators() {
    let spec = RepSpec::sphere_pi(2, Phase::one(), rat(1, 2)).unwrap();
    let r = sector_split_check(&spec, 2, &spec.space(6).unwrap()).unwrap();
    for g in ["b(0,1)", "c(2,0)", "c(1,1)", "c(0,2)"] {
        assert!(
            r.generators.iter().any(|x| x == g),
            "{g} missing from {:?}",
            r.generators
        );
    }
    let sig = RepSpec::sigma_pi(2, Phase::one(), Sign::Plus, rat(1, 2)).unwrap();
    let r = sector_split_check(&sig, 2, &sig.space(6).unwrap()).unwrap();
    assert!(r.generators.iter().any(|x| x.starts_with('d')));
    assert!(r.generators.iter().any(|x| x == "w"));
}

#[test]
fn distinctness_at_half() {
    for n in 1..=2 {
        for m in 1..=3u32 {
            for cutoff in [6, 8] {
                for s in 0..m as u64 {
                    let space =
                        TruncatedSpace::new(n, cutoff, Some(Sector { s, m: m as u64 }), None)
                            .unwrap();
                    let r = eigenvalue_distinctness(n, m, &rat(1, 2), &space).unwrap();
                    assert_eq!(
                        r.status,
                        Status::Pass,
                        "n={n} m={m} K={cutoff} s={s}: {r:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn distinctness_degenerates_at_one() {
    for n in 1..=2 {
        let space = TruncatedSpace::full(n, 4).unwrap();
        let r = eigenvalue_distinctness(n, 2, &BigRational::one(), &space).unwrap();
        assert_eq!(r.status, Status::Degenerate);
        assert!(r.cross_vector_collisions > 0);
    }
}

#[test]
fn gamma_matches_the_diagonal_of_c_c_star() {
    let q0 = rat(1, 2);
    for n in 1..=2 {
        let p = AlgebraPresentation::sphere(n);
        let spec = RepSpec::sphere_pi(n, Phase::RootOfUnity { a: 1, b: 6 }, q0.clone()).unwrap();
        for m in 1..=3u32 {
            let space = spec.space(8).unwrap();
            for i in 0..n {
                let c = make_named_element(&NamedElement::CIndex { i, m }, p).unwrap();
                let cc = c.try_mul(&c.adjoint()).unwrap();
                let op = apply_element(&cc, &spec, &space).unwrap();
                for idx in space.interior(m as usize + 1) {
                    let exact = gamma(n, m, i, &space.basis()[idx], &q0);
                    let v: f64 = num_traits::ToPrimitive::to_f64(&exact).unwrap();
                    let d = op.get(idx, idx);
                    assert!(
                        (d - Complex64::new(v, 0.0)).norm() <= 1e-13 * v.max(1e-300).max(1.0),
                        "{d} vs {v}"
                    );
                    assert!(d.norm() > 0.0);
                }
            }
        }
    }
}

#[test]
fn quotient_routes_agree() {
    for n in 2..=3 {
        let cutoff = if n == 3 { 5 } else { 8 };
        for m in 1..=2u32 {
            let specs = [
                RepSpec::sphere_pi(n, Phase::RootOfUnity { a: 1, b: 4 }, rat(1, 2)).unwrap(),
                RepSpec::sigma_pi(n, Phase::Angle { radians: 0.7 }, Sign::Plus, rat(3, 4)).unwrap(),
            ];
            for spec in specs {
                let space = TruncatedSpace::full(n - 1, cutoff).unwrap();
                let r = quotient_consistency(&spec, m, &space, 1e-12).unwrap();
                assert_eq!(r.status, Status::Pass, "{r:?}");
                for item in &r.items {
                    if item.element.starts_with("c(") && !spec.presentation().is_sigma() {
                        assert!(item.image_is_zero, "{}", item.element);
                    }
                    if item.element.starts_with("b(") {
                        let ij: Vec<usize> = item.element[2..item.element.len() - 1]
                            .split(',')
                            .map(|v| v.parse().unwrap())
                            .collect();
                        let moves = |i: usize| (i + 1 < n) as i64;
                        if !item.image_is_zero {
                            assert_eq!(
                                item.sum_shifts,
                                vec![moves(ij[1]) - moves(ij[0])],
                                "{}",
                                item.element
                            );
                        }
                    }
                    if item.element.starts_with("d(") {
                        let pv: Vec<i64> = item.element[2..item.element.len() - 1]
                            .split(',')
                            .map(|v| v.parse().unwrap())
                            .collect();
                        let lowered: i64 = pv[..n - 1].iter().sum();
                        assert_eq!(item.sum_shifts, vec![-lowered], "{}", item.element);
                        if pv[n - 1] == 0 {
                            assert_eq!(lowered, 2 * m as i64);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fredholm_module_identities() {
    for n in 1..=3 {
        let f = FredholmModule::new(n, 1, rat(1, 2), 4).unwrap();
        assert!(f.verify());
        assert_eq!(f.half_dim(), 5usize.pow(n as u32));
    }
}

#[test]
fn bound_series_matches_closed_form() {
    for n in 1..=3 {
        let r = bound_series(n, &rat(1, 2), 60, 1e-10).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.monotone);
        assert!((r.closed_form - 2f64.powi(n as i32)).abs() < 1e-15);
    }
    let r = bound_series(2, &rat(1, 2), 60, 1e-10).unwrap();
    assert!(r.partial_sums.iter().all(|&s| s <= 4.0));
}

#[test]
fn fredholm_traces_of_c_l_are_cauchy() {
    for n in 1..=3usize {
        let cutoff = if n == 3 { 8 } else { 14 };
        for m in 1..=2u32 {
            let p = AlgebraPresentation::sphere(n);
            let module = FredholmModule::new(n, m, rat(1, 2), cutoff).unwrap();
            for l in teardrop_core::star_algebra::compositions(m, n) {
                let x = make_named_element(&NamedElement::C { l, m }, p).unwrap();
                let r = fredholm_trace(&x, &module, 1e-12).unwrap();
                assert!(r.j_type && r.lower_vanish && r.cauchy, "{r:?}");
                assert_eq!(r.status, Status::Pass);
                let last = r.points.last().unwrap();
                assert!(last.trace_re.abs() <= 2f64.powi(n as i32));
            }
        }
    }
}

#[test]
fn fredholm_trace_of_b00_in_one_dimension() {
    let p = AlgebraPresentation::sphere(1);
    let x = make_named_element(&NamedElement::B { i: 0 }, p).unwrap();
    let module = FredholmModule::new(1, 1, rat(1, 2), 20).unwrap();
    let r = fredholm_trace(&x, &module, 1e-12).unwrap();
    assert!(!r.j_type);
    assert_eq!(r.bound_kind, "extrapolated");
    for pt in &r.points {
        let exact: f64 = (0..=pt.cutoff).map(|k| 0.25f64.powi(k as i32 + 1)).sum();
        assert!((pt.trace_re - exact).abs() < 1e-14);
    }
    assert!((r.points.last().unwrap().trace_re - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn fredholm_rejects_sigma_elements() {
    let x = AlgebraElement::one(AlgebraPresentation::sigma(1));
    let module = FredholmModule::new(1, 1, rat(1, 2), 3).unwrap();
    assert!(fredholm_trace(&x, &module, 1e-12).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_phase_residuals(theta in 0.0f64..std::f64::consts::TAU, qi in 0usize..3, sign in any::<bool>()) {
        let q0 = q0s()[qi].clone();
        let s = if sign { Sign::Plus } else { Sign::Minus };
        for spec in [
            RepSpec::sphere_pi(2, Phase::Angle { radians: theta }, q0.clone()).unwrap(),
            RepSpec::sigma_pi(2, Phase::Angle { radians: theta }, s, q0).unwrap(),
        ] {
            let space = spec.space(6).unwrap();
            let r = relation_residual(spec.presentation(), &spec, &space, 1e-12).unwrap();
            prop_assert_eq!(r.status, Status::Pass);
        }
    }

    #[test]
    fn adjoint_is_conjugate_transpose(theta in 0.0f64..std::f64::consts::TAU, i in 0usize..=2, j in 0usize..=2) {
        let spec = RepSpec::sphere_pi(2, Phase::Angle { radians: theta }, rat(1, 2)).unwrap();
        let p = spec.presentation();
        let space = spec.space(5).unwrap();
        let x = p.normalize_word(&[Generator::Z(i), Generator::ZStar(j), Generator::Z(2)]).unwrap();
        let a = apply_element(&x, &spec, &space).unwrap();
        let b = apply_element(&x.adjoint(), &spec, &space).unwrap();
        for idx in space.interior(3) {
            for e in a.column(idx) {
                if space.is_interior(e.row, 3) {
                    prop_assert!((b.get(idx, e.row) - e.value().conj()).norm() < 1e-13);
                }
            }
        }
    }
}
