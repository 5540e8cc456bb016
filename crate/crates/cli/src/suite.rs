//! The acceptance battery behind `teardrop suite`.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use teardrop_core::grading::{
    bezout_lens_resolution, bezout_lens_resolution_inverse, check_strong_grading,
    verify_resolution, weighted_resolution, Constructor, DegreeOutcome, GradingGroup, GradingSpec,
};
use teardrop_core::ktheory::{
    gysin_invariants, lens_k_groups, real_teardrop_k, teardrop_k_groups, FGAbelianGroup,
    LensDescriptor,
};
use teardrop_core::representations::{
    bound_series, eigenvalue_distinctness, fredholm_trace, relation_residual, sector_split_check,
    FredholmModule, Phase, RepSpec, Sector, Sign, Status, TruncatedSpace,
};
use teardrop_core::scalar::{BigRational, QScalar};
use teardrop_core::star_algebra::{
    compositions, make_named_element, AlgebraElement, AlgebraPresentation, Generator, NamedElement,
    Strategy,
};

use crate::config::RunConfig;

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub criteria: Vec<Criterion>,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "lens space K1 rank formula"),
    (2, "teardrop K-groups"),
    (3, "Gysin matrix invariants"),
    (4, "real teardrop K0 candidates"),
    (5, "strong-grading certificates"),
    (6, "z0 power product formula"),
    (7, "rewriting soundness and confluence"),
    (8, "representation residuals and sectors"),
    (9, "eigenvalue distinctness"),
    (10, "Fredholm traces and bound series"),
];

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tuples(len: usize, base: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn lens_rank_formula() -> Outcome {
    let mut checked = 0;
    for big_n in 1..=6u64 {
        for n in 1..=3usize {
            for w in tuples(n + 1, big_n) {
                let coprime = (0..w.len()).all(|i| (i + 1..w.len()).all(|j| w[i].gcd(&w[j]) == 1));
                if !coprime {
                    continue;
                }
                let d = LensDescriptor::new(big_n, w.clone()).map_err(|e| e.to_string())?;
                let k = lens_k_groups(&d);
                let expected: i64 = w.iter().map(|&m| big_n.gcd(&m) as i64).sum::<i64>() - n as i64;
                ensure(
                    k.k1.rank as i64 == expected && k.formula_check.matches == Some(true),
                    || {
                        format!(
                            "N = {big_n}, weights {w:?}: rank {} vs {expected}",
                            k.k1.rank
                        )
                    },
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} weight tuples"))
}

fn teardrop_groups() -> Outcome {
    for n in 1..=4usize {
        for m in 1..=5u64 {
            let k = teardrop_k_groups(n, m).map_err(|e| e.to_string())?;
            ensure(
                k.k0 == FGAbelianGroup::free(n + m as usize) && k.k1.is_zero(),
                || format!("n = {n}, m = {m}: K0 = {:?}, K1 = {:?}", k.k0, k.k1),
            )?;
        }
    }
    Ok("n <= 4, m <= 5".into())
}

fn gysin() -> Outcome {
    for m in 1..=5u64 {
        let r2 = gysin_invariants(2, m).map_err(|e| e.to_string())?.r;
        ensure(r2 == vec![2 * m], || format!("n = 2, m = {m}: r = {r2:?}"))?;
        let r3 = gysin_invariants(3, m).map_err(|e| e.to_string())?.r;
        ensure(r3 == vec![m, 4 * m], || {
            format!("n = 3, m = {m}: r = {r3:?}")
        })?;
    }
    for n in 2..=6usize {
        let inv = gysin_invariants(n, 1).map_err(|e| e.to_string())?;
        ensure(inv.r[n - 2] == 1 << (n - 1), || {
            format!("n = {n}, m = 1: r = {:?}", inv.r)
        })?;
        for m in 1..=5u64 {
            let inv = gysin_invariants(n, m).map_err(|e| e.to_string())?;
            let d = (2 * m).pow(n as u32 - 1);
            ensure(inv.d[n - 2] == d, || {
                format!("n = {n}, m = {m}: d = {:?}", inv.d)
            })?;
            ensure(inv.r.iter().product::<u64>() == d, || {
                format!("n = {n}, m = {m}: r = {:?}", inv.r)
            })?;
            ensure(inv.r.iter().any(|r| r % 2 == 0), || {
                format!("n = {n}, m = {m}: no even r")
            })?;
        }
    }
    Ok("2 <= n <= 6, m <= 5".into())
}

fn real_candidates() -> Outcome {
    let g = |rank: usize, t: &[u64]| FGAbelianGroup::new(rank, t);
    for m in 1..=5u64 {
        let mz = m as usize;
        let k = real_teardrop_k(1, m).map_err(|e| e.to_string())?;
        ensure(k.k0_candidates == vec![g(mz, &[2])] && k.determined, || {
            format!("n = 1, m = {m}: {:?}", k.k0_candidates)
        })?;
        let k = real_teardrop_k(2, m).map_err(|e| e.to_string())?;
        ensure(
            k.k0_candidates == vec![g(mz, &[2, 2 * m]), g(mz, &[4 * m])],
            || format!("n = 2, m = {m}: {:?}", k.k0_candidates),
        )?;
        let k = real_teardrop_k(3, m).map_err(|e| e.to_string())?;
        let want = if m % 2 == 0 { 3 } else { 2 };
        ensure(k.k0_candidates.len() == want, || {
            format!("n = 3, m = {m}: {:?}", k.k0_candidates)
        })?;
    }
    Ok("n <= 3, m <= 5".into())
}

fn spec(p: AlgebraPresentation, w: &[i64], g: GradingGroup) -> Result<GradingSpec, String> {
    GradingSpec::new(p, w.to_vec(), g).map_err(|e| e.to_string())
}

fn presentations(n: usize) -> [AlgebraPresentation; 2] {
    [
        AlgebraPresentation::sphere(n),
        AlgebraPresentation::sigma(n),
    ]
}

fn certificates() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        for p in presentations(n) {
            for big_n in 1..=5u64 {
                let g = spec(p, &vec![1; n + 1], GradingGroup::Cyclic(big_n))?;
                for r in [
                    bezout_lens_resolution(&g),
                    bezout_lens_resolution_inverse(&g),
                ] {
                    let r = r.map_err(|e| e.to_string())?;
                    ensure(verify_resolution(&r, &g).valid, || {
                        format!("Bezout {p} N = {big_n}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    for w in [vec![1, 2], vec![2, 3], vec![1, 2, 3], vec![1, 1, 2]] {
        let big_n: i64 = w.iter().product();
        for p in presentations(w.len() - 1) {
            let g = spec(p, &w, GradingGroup::LensIntegers(big_n as u64))?;
            let r = weighted_resolution(&g).map_err(|e| e.to_string())?;
            for c in [&r.res_plus, &r.res_minus] {
                ensure(verify_resolution(c, &g).valid, || {
                    format!("weighted {p} {w:?}")
                })?;
                count += 1;
            }
        }
    }
    for p in presentations(1) {
        for m in 1..=4 {
            let g = spec(p, &[1, m], GradingGroup::Integers)?;
            let r = check_strong_grading(&g, &[1, -1]);
            let towers = r.degrees.iter().all(|d| {
                matches!(
                    d.outcome,
                    DegreeOutcome::Certified {
                        constructor: Constructor::Tower,
                        ..
                    }
                )
            });
            ensure(r.strong && towers, || format!("tower {p} m = {m}"))?;
            count += 2;
        }
    }
    Ok(format!("{count} certificates verified"))
}

fn product_formula() -> Outcome {
    use Generator::*;
    for n in 1..=3 {
        let p = AlgebraPresentation::sphere(n);
        let a = make_named_element(&NamedElement::A, p).map_err(|e| e.to_string())?;
        let factor = |s: i64| AlgebraElement::one(p).try_sub(&a.scale(&QScalar::q_pow(2 * s)));
        for big_n in 1..=5usize {
            let word = |g: Generator, h: Generator| [vec![g; big_n], vec![h; big_n]].concat();
            let lhs =
                AlgebraElement::from_word(p, &word(Z(0), ZStar(0))).map_err(|e| e.to_string())?;
            let rhs = (0..big_n as i64)
                .try_fold(AlgebraElement::one(p), |acc, s| acc.try_mul(&factor(s)?));
            let rhs = rhs.map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("z0^N z0*^N, n = {n}, N = {big_n}"))?;
            let lhs =
                AlgebraElement::from_word(p, &word(ZStar(0), Z(0))).map_err(|e| e.to_string())?;
            let rhs = (1..=big_n as i64)
                .try_fold(AlgebraElement::one(p), |acc, s| acc.try_mul(&factor(-s)?));
            let rhs = rhs.map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("z0*^N z0^N, n = {n}, N = {big_n}"))?;
        }
    }
    Ok("n <= 3, N <= 5".into())
}

/// Normalizes `words` random words three ways, spread over threads.
pub fn confluence(seed: u64, words: usize) -> Outcome {
    for n in 1..=3 {
        for p in presentations(n) {
            for (name, lhs, rhs) in p.defining_relations() {
                let l = p.normalize(&lhs).map_err(|e| e.to_string())?;
                let r = p.normalize(&rhs).map_err(|e| e.to_string())?;
                ensure(l == r, || format!("relation {name} fails in {p}"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(AlgebraPresentation, Vec<Generator>)> = (0..words)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let p = if rng.gen_bool(0.5) {
                AlgebraPresentation::sphere(n)
            } else {
                AlgebraPresentation::sigma(n)
            };
            let gens = p.generators();
            let len = rng.gen_range(0..=12);
            let w = (0..len)
                .map(|_| gens[rng.gen_range(0..gens.len())])
                .collect();
            (p, w)
        })
        .collect();
    let threads = std::thread::available_parallelism()
        .map_or(1, |t| t.get())
        .min(8);
    let chunk = jobs.len().div_ceil(threads).max(1);
    let failures: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                s.spawn(move || {
                    let mut bad = Vec::new();
                    for (j, (p, w)) in part.iter().enumerate() {
                        let mut srng =
                            ChaCha8Rng::seed_from_u64(seed ^ ((c * chunk + j) as u64 + 1));
                        let sum = vec![(QScalar::one(), w.clone())];
                        let a = p.normalize_with(&sum, Strategy::Memoized);
                        let b = p.normalize_with(&sum, Strategy::Leftmost);
                        let r = p.normalize_with(&sum, Strategy::Random(&mut srng));
                        if a.is_err() || a != b || a != r {
                            bad.push(format!("{p}: {w:?}"));
                        }
                    }
                    bad
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    ensure(failures.is_empty(), || {
        format!("{} disagreements, first {}", failures.len(), failures[0])
    })?;
    Ok(format!("relations hold; {words} random words agree"))
}

fn q0s() -> [BigRational; 3] {
    [rat(1, 4), rat(1, 2), rat(3, 4)]
}

fn residuals_and_sectors(cutoff: u32, tolerance: f64, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut runs = 0;
    for n in 1..=3usize {
        for q0 in q0s() {
            let lambda = Phase::Angle {
                radians: rng.gen_range(0.0..std::f64::consts::TAU),
            };
            let mut specs =
                vec![RepSpec::sphere_pi(n, lambda, q0.clone()).map_err(|e| e.to_string())?];
            for s in [Sign::Plus, Sign::Minus] {
                specs.push(RepSpec::sigma_pi(n, lambda, s, q0.clone()).map_err(|e| e.to_string())?);
            }
            for k in 0..=n {
                specs.push(RepSpec::bar_pi(n, k, q0.clone()).map_err(|e| e.to_string())?);
            }
            for spec in &specs {
                let space = spec.space(cutoff).map_err(|e| e.to_string())?;
                let r = relation_residual(spec.presentation(), spec, &space, tolerance)
                    .map_err(|e| e.to_string())?;
                worst = worst.max(r.max_residual);
                ensure(r.status == Status::Pass && !r.empty_interior, || {
                    format!("{spec:?}: residual {:e}", r.max_residual)
                })?;
                runs += 1;
            }
            for spec in &specs[..3] {
                let space = spec.space(cutoff).map_err(|e| e.to_string())?;
                for m in 1..=4 {
                    let r = sector_split_check(spec, m, &space).map_err(|e| e.to_string())?;
                    ensure(
                        r.status == Status::Pass && r.off_sector_entries == 0,
                        || format!("{spec:?} m = {m}: {:?}", r.offending),
                    )?;
                    ensure(m == 1 || r.control_off_sector_entries > 0, || {
                        format!("z0 control is block-diagonal, m = {m}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{runs} representations, max residual {worst:.3e}"))
}

fn distinctness() -> Outcome {
    let half = rat(1, 2);
    let mut checks = 0;
    for n in 1..=2usize {
        for m in 1..=3u32 {
            for cutoff in 1..=8 {
                for s in 0..m as u64 {
                    let space =
                        TruncatedSpace::new(n, cutoff, Some(Sector { s, m: m as u64 }), None)
                            .map_err(|e| e.to_string())?;
                    let r =
                        eigenvalue_distinctness(n, m, &half, &space).map_err(|e| e.to_string())?;
                    ensure(r.status == Status::Pass, || {
                        format!(
                            "n = {n}, m = {m}, K = {cutoff}, s = {s}: {} same, {} cross",
                            r.same_vector_collisions, r.cross_vector_collisions
                        )
                    })?;
                    checks += 1;
                }
            }
            let space = TruncatedSpace::full(n, 8).map_err(|e| e.to_string())?;
            let r = eigenvalue_distinctness(n, m, &rat(1, 1), &space).map_err(|e| e.to_string())?;
            ensure(r.status == Status::Degenerate, || {
                format!("no collisions at q0 = 1 for n = {n}, m = {m}")
            })?;
        }
    }
    Ok(format!("{checks} sector checks; q0 = 1 collides"))
}

fn fredholm(tolerance: f64) -> Outcome {
    let half = rat(1, 2);
    let mut traces = 0;
    for n in 1..=3usize {
        let s = bound_series(n, &half, 60, 1e-10).map_err(|e| e.to_string())?;
        ensure(s.status == Status::Pass, || {
            format!("bound series n = {n}: error {:e}", s.max_residual)
        })?;
        let cutoff = if n == 3 { 8 } else { 12 };
        let p = AlgebraPresentation::sphere(n);
        for m in 1..=3u32 {
            let module =
                FredholmModule::new(n, m, half.clone(), cutoff).map_err(|e| e.to_string())?;
            ensure(module.verify(), || "F and gamma identities fail".into())?;
            for l in compositions(m, n) {
                let x = make_named_element(&NamedElement::C { l: l.clone(), m }, p)
                    .map_err(|e| e.to_string())?;
                let r = fredholm_trace(&x, &module, tolerance).map_err(|e| e.to_string())?;
                ensure(
                    r.status == Status::Pass && r.cauchy && r.lower_vanish,
                    || format!("c({l:?}) n = {n}: not Cauchy within the tail bound"),
                )?;
                traces += 1;
            }
        }
    }
    Ok(format!(
        "{traces} traces Cauchy; series within 1e-10 at cutoff 60"
    ))
}

/// Run one criterion by number.
pub fn run_criterion(id: u8, cfg: &RunConfig) -> Criterion {
    let outcome = match id {
        1 => lens_rank_formula(),
        2 => teardrop_groups(),
        3 => gysin(),
        4 => real_candidates(),
        5 => certificates(),
        6 => product_formula(),
        7 => confluence(cfg.seed, 10_000),
        8 => residuals_and_sectors(cfg.cutoff, cfg.tolerance, cfg.seed),
        9 => distinctness(),
        10 => fredholm(cfg.tolerance),
        _ => Err(format!("no criterion {id}")),
    };
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown", |c| c.1);
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Criterion {
        id,
        title,
        passed,
        detail,
    }
}

pub fn run_suite(cfg: &RunConfig) -> SuiteReport {
    let criteria: Vec<Criterion> = CRITERIA
        .iter()
        .map(|(id, _)| run_criterion(*id, cfg))
        .collect();
    SuiteReport {
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}
