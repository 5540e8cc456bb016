use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use teardrop_core::ktheory::{
    determinantal_invariants, gcd_of_minors, group_ops, gysin_invariants, gysin_matrix,
    lens_k_groups, phi_index, phi_matrix, real_teardrop_k, six_term, smith_normal_form,
    teardrop_k_groups, FGAbelianGroup, GroupOp, GroupOpResult, IntMatrix, KTheoryError,
    LensDescriptor, SixTermInput,
};

/// Rank over ℚ by plain Gaussian elimination.
fn rational_rank(m: &IntMatrix) -> usize {
    let mut rows: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pairwise_coprime(w: &[u64]) -> bool {
    (0..w.len()).all(|i| (i + 1..w.len()).all(|j| w[i].gcd(&w[j]) == 1))
}

fn tuples(n: usize, big_n: u64) -> Vec<Vec<u64>> {
    (0..n + 1).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (0..big_n).map(move |m| {
                    let mut t = t.clone();
                    t.push(m);
                    t
                })
            })
            .collect()
    })
}

fn group(rank: usize, torsion: &[u64]) -> FGAbelianGroup {
    FGAbelianGroup::new(rank, torsion)
}

#[test]
fn smith_examples() {
    let s = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
    assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    let z = smith_normal_form(&IntMatrix::zeros(3, 2));
    assert_eq!(z.rank, 0);
    assert!(z.diagonal().iter().all(|x| x.is_zero()));
    let i = smith_normal_form(&IntMatrix::identity(4));
    assert!(i.invariant_factors.iter().all(|x| x.is_one()));
}

#[test]
fn phi_small_cases() {
    let d = LensDescriptor::new(2, vec![1, 1]).unwrap();
    let phi = phi_matrix(&d);
    // Φ(λ_0^m) = λ_0^{1-m} - λ_0^m, Φ(λ_1^m) = λ_0^{1-m} + λ_1^{1-m} - λ_1^m
    let mut expected = IntMatrix::zeros(4, 4);
    for m in 0..2u64 {
        let e = 1 - m;
        expected[(phi_index(&d, 0, e), phi_index(&d, 0, m))] += 1;
        expected[(phi_index(&d, 0, m), phi_index(&d, 0, m))] -= 1;
        expected[(phi_index(&d, 0, e), phi_index(&d, 1, m))] += 1;
        expected[(phi_index(&d, 1, e), phi_index(&d, 1, m))] += 1;
        expected[(phi_index(&d, 1, m), phi_index(&d, 1, m))] -= 1;
    }
    assert_eq!(phi, expected);
    let k = lens_k_groups(&d);
    assert_eq!(k.k1, FGAbelianGroup::free(1));
    assert_eq!(k.k0, group(1, &[2]));
    assert_eq!(k.formula_check.matches, Some(true));

    for n in 0..=3 {
        let d = LensDescriptor::new(1, vec![0; n + 1]).unwrap();
        let phi = phi_matrix(&d);
        for i in 0..=n {
            for j in 0..=n {
                let v = if j < i { 1 } else { 0 };
                assert_eq!(phi[(j, i)], BigInt::from(v));
            }
        }
        assert_eq!(lens_k_groups(&d).k1, FGAbelianGroup::free(1));
    }

    let d = LensDescriptor::new(4, vec![1, 2, 3]).unwrap();
    let k = lens_k_groups(&d);
    assert_eq!(k.k1.rank, 2);
    assert_eq!(k.formula_check.expected_rank, Some(2));
}

#[test]
fn lens_formula_cross_check() {
    let mut checked = 0;
    for big_n in 1..=6u64 {
        for n in 0..=3 {
            for w in tuples(n, big_n) {
                let d = LensDescriptor::new(big_n, w.clone()).unwrap();
                let k = lens_k_groups(&d);
                let phi = phi_matrix(&d);
                assert_eq!(k.rank_phi, rational_rank(&phi));
                assert_eq!(k.k1.rank + k.rank_phi, big_n as usize * (n + 1));
                assert!(k.k1.is_free());
                assert_eq!(k.formula_check.hypothesis_holds, pairwise_coprime(&w));
                if pairwise_coprime(&w) {
                    let formula: i64 =
                        w.iter().map(|&m| big_n.gcd(&m) as i64).sum::<i64>() - n as i64;
                    assert_eq!(k.k1.rank as i64, formula, "N = {big_n}, m = {w:?}");
                    assert_eq!(k.formula_check.matches, Some(true));
                    checked += 1;
                } else {
                    assert_eq!(k.formula_check.matches, None);
                }
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn lens_descriptor_validation() {
    assert!(LensDescriptor::new(0, vec![0]).is_err());
    assert!(LensDescriptor::new(3, vec![1, 3]).is_err());
    assert!(LensDescriptor::new(3, vec![]).is_err());
}

#[test]
fn teardrop_groups() {
    for n in 1..=4 {
        for m in 1..=5u64 {
            let k = teardrop_k_groups(n, m).unwrap();
            assert_eq!(k.k0, FGAbelianGroup::free(m as usize + n));
            assert!(k.k1.is_zero());
        }
    }
    assert!(teardrop_k_groups(0, 1).is_err());
}

#[test]
fn gysin_examples() {
    assert_eq!(gysin_matrix(1, 3).unwrap(), IntMatrix::zeros(1, 1));
    for m in 1..=5 {
        assert_eq!(
            gysin_matrix(2, m).unwrap(),
            IntMatrix::from_rows(&[vec![0, 0], vec![2 * m as i64, 0]])
        );
    }
    assert_eq!(
        gysin_matrix(3, 1).unwrap(),
        IntMatrix::from_rows(&[vec![0, 0, 0], vec![2, 0, 0], vec![-1, 2, 0]])
    );
}

#[test]
fn gysin_invariants_match_closed_forms() {
    for m in 1..=5u64 {
        assert_eq!(gysin_invariants(2, m).unwrap().r, vec![2 * m]);
        assert_eq!(gysin_invariants(3, m).unwrap().r, vec![m, 4 * m]);
    }
    for n in 2..=6usize {
        let inv = gysin_invariants(n, 1).unwrap();
        assert_eq!(inv.r[n - 2], 1 << (n - 1));
        assert!(inv.r[..n - 2].iter().all(|&r| r == 1));
        for m in 1..=5u64 {
            let inv = gysin_invariants(n, m).unwrap();
            let expected = (2 * m).pow(n as u32 - 1);
            assert_eq!(inv.d[n - 2], expected, "n = {n}, m = {m}");
            assert_eq!(inv.r.iter().product::<u64>(), expected);
            assert!(inv.r.iter().any(|r| r % 2 == 0));
        }
    }
}

#[test]
fn gysin_invariants_against_minor_enumeration() {
    for n in 2..=5usize {
        for m in 1..=3u64 {
            let a = gysin_matrix(n, m).unwrap();
            let inv = gysin_invariants(n, m).unwrap();
            for i in 1..n {
                assert_eq!(
                    gcd_of_minors(&a, i),
                    BigInt::from(inv.d[i - 1]),
                    "n = {n}, m = {m}, i = {i}"
                );
            }
        }
    }
}

#[test]
fn degenerate_sizes_are_reported() {
    let a = IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]]);
    assert_eq!(
        determinantal_invariants(&a, 2),
        Err(KTheoryError::Degenerate { size: 2, rank: 1 })
    );
}

#[test]
fn real_teardrop_candidates() {
    for m in 1..=5u64 {
        let mz = m as usize;
        let k = real_teardrop_k(1, m).unwrap();
        assert!(k.determined);
        assert_eq!(k.k0_candidates, vec![group(mz, &[2])]);
        assert!(k.k1.is_zero());
        assert_eq!(k.coker_delta, group(mz - 1, &[2]));

        let k = real_teardrop_k(2, m).unwrap();
        assert!(!k.determined);
        assert_eq!(
            k.k0_candidates,
            vec![group(mz, &[2, 2 * m]), group(mz, &[4 * m])]
        );

        let k = real_teardrop_k(3, m).unwrap();
        let mut expected = vec![group(mz, &[2, m, 4 * m])];
        if m % 2 == 0 {
            expected.push(group(mz, &[2 * m, 4 * m]));
        }
        expected.push(group(mz, &[m, 8 * m]));
        assert_eq!(k.k0_candidates, expected, "m = {m}");
        assert_eq!(k.k0_candidates.len(), if m % 2 == 0 { 3 } else { 2 });
        // for odd m the dropped alternative coincides with the first
        assert!(group(mz, &[2 * m, 4 * m]).is_isomorphic(&k.k0_candidates[0]) == (m % 2 == 1));
    }
}

#[test]
fn group_examples() {
    assert_eq!(
        group_ops(
            &FGAbelianGroup::cyclic(2),
            &FGAbelianGroup::cyclic(3),
            GroupOp::DirectSum
        ),
        GroupOpResult::Group(FGAbelianGroup::cyclic(6))
    );
    for m in 1..=6u64 {
        let a = group(m as usize, &[2, 2 * m]);
        let b = group(m as usize, &[4 * m]);
        assert_eq!(
            group_ops(&a, &b, GroupOp::IsIsomorphic),
            GroupOpResult::Bool(false)
        );
    }
    let g = group(2, &[4, 6]);
    assert_eq!(FGAbelianGroup::zero().direct_sum(&g), g);
    assert_eq!(g.torsion, vec![2, 12]);
}

#[test]
fn six_term_rejects_mismatched_maps() {
    let input = SixTermInput {
        k0_ideal: FGAbelianGroup::free(2),
        k1_ideal: FGAbelianGroup::zero(),
        k0_quotient: FGAbelianGroup::free(1),
        k1_quotient: FGAbelianGroup::zero(),
        exponential: IntMatrix::zeros(1, 1),
        index: IntMatrix::zeros(2, 0),
    };
    assert!(six_term(&input).is_err());
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_recomposes(rows in small_matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.s.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        for (i, j) in (0..a.rows()).flat_map(|i| (0..a.cols()).map(move |j| (i, j))) {
            if i != j {
                prop_assert!(s.s[(i, j)].is_zero());
            }
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.invariant_factors.iter().all(|f| f.is_positive()));
        prop_assert_eq!(s.rank, rational_rank(&a));
        if a.rows() == a.cols() {
            let prod: BigInt = s.diagonal().iter().product();
            prop_assert_eq!(prod.abs(), a.determinant().abs());
        }
    }

    #[test]
    fn determinantal_divisors_match_minors(rows in small_matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        for k in 1..=s.rank {
            let inv = determinantal_invariants(&a, k).unwrap();
            prop_assert_eq!(gcd_of_minors(&a, k), BigInt::from(inv.d[k - 1]));
        }
        if s.rank < a.rows().min(a.cols()) {
            prop_assert!(gcd_of_minors(&a, s.rank + 1).is_zero());
        }
    }

    #[test]
    fn rank_nullity_for_phi(big_n in 1u64..=7, w in prop::collection::vec(0u64..7, 1..=4)) {
        let w: Vec<u64> = w.into_iter().map(|m| m % big_n).collect();
        let n = w.len() - 1;
        let d = LensDescriptor::new(big_n, w).unwrap();
        let k = lens_k_groups(&d);
        prop_assert_eq!(k.k1.rank + k.rank_phi, big_n as usize * (n + 1));
        prop_assert!(k.k1.is_free());
        prop_assert_eq!(k.k0.rank, k.k1.rank);
    }

    #[test]
    fn isomorphism_is_canonical(a in prop::collection::vec(1u64..=12, 0..4), b in prop::collection::vec(1u64..=12, 0..4)) {
        let x = FGAbelianGroup::new(1, &a);
        let y = FGAbelianGroup::new(1, &b);
        let order = |v: &[u64]| v.iter().product::<u64>();
        if x.is_isomorphic(&y) {
            prop_assert_eq!(order(&a), order(&b));
        }
        prop_assert_eq!(x.direct_sum(&y), y.direct_sum(&x));
        prop_assert!(x.torsion.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(x.torsion.iter().all(|&t| t >= 2));
    }
}
