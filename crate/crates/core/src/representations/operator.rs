use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::space::{admissible, TruncatedSpace};
use super::spec::{Family, Phase, RepSpec};
use super::RepError;
use crate::scalar::{ratio_to_f64, QScalar};
use crate::star_algebra::{AlgebraElement, FormalSum, Generator};

/// A matrix entry of a product of generators:
/// `sign · λ^phase · q^q_exp · prod_d sqrt(1 - q^{2d})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Weight {
    pub q_exp: i64,
    pub roots: Vec<u32>,
    pub phase: i64,
    pub negative: bool,
}

impl Weight {
    pub fn one() -> Self {
        Weight {
            q_exp: 0,
            roots: Vec::new(),
            phase: 0,
            negative: false,
        }
    }

    fn q(e: i64) -> Self {
        Weight {
            q_exp: e,
            ..Weight::one()
        }
    }

    fn with_root(mut self, d: u32) -> Self {
        self.roots.push(d);
        self
    }

    fn times(&mut self, other: &Weight) {
        self.q_exp += other.q_exp;
        self.roots.extend_from_slice(&other.roots);
        self.phase += other.phase;
        self.negative ^= other.negative;
    }

    pub fn value(&self, q: f64, lambda: &Phase) -> Complex64 {
        let mut r = q.powi(self.q_exp as i32);
        for &d in &self.roots {
            r *= (1.0 - q.powi(2 * d as i32)).sqrt();
        }
        if self.negative {
            r = -r;
        }
        if self.phase == 0 {
            Complex64::new(r, 0.0)
        } else {
            lambda.pow(self.phase) * r
        }
    }

    /// `|value|^2`, exact at rational `q`.
    pub fn squared(&self, q: &BigRational) -> BigRational {
        let q2 = q * q;
        let pow = |e: i64| -> BigRational {
            let base = if e >= 0 { q2.clone() } else { q2.recip() };
            num_traits::pow(base, e.unsigned_abs() as usize)
        };
        let mut r = pow(self.q_exp);
        for &d in &self.roots {
            r *= BigRational::one() - pow(d as i64);
        }
        r
    }
}

fn level(k: &[u32], upto: usize) -> i64 {
    k[..upto].iter().map(|&x| x as i64 + 1).sum()
}

/// `π_λ` on `|k_0, ..., k_{n-1}>`; `top_sign` is the sign in front of `π(z_n)`.
fn sphere_step(n: usize, top_sign: bool, g: Generator, k: &[u32]) -> Option<(Vec<u32>, Weight)> {
    match g {
        Generator::Z(i) | Generator::ZStar(i) if i == n => {
            let mut w = Weight::q(level(k, n));
            w.phase = if g == Generator::Z(n) { 1 } else { -1 };
            w.negative = !top_sign;
            Some((k.to_vec(), w))
        }
        Generator::Z(l) => {
            if k[l] == 0 {
                return None;
            }
            let mut t = k.to_vec();
            t[l] -= 1;
            Some((t, Weight::q(level(k, l)).with_root(k[l])))
        }
        Generator::ZStar(l) => {
            let mut t = k.to_vec();
            t[l] += 1;
            Some((t, Weight::q(level(k, l)).with_root(k[l] + 1)))
        }
        Generator::W | Generator::WStar => {
            let mut w = Weight::one();
            w.phase = if g == Generator::W { -2 } else { 2 };
            Some((k.to_vec(), w))
        }
    }
}

/// `π̄_k` on `|p_1, ..., p_n>` with `p_0 = 0`; `z_i` lowers `p_{i+1}, ..., p_k`.
fn bar_step(k: usize, g: Generator, p: &[u32]) -> Option<(Vec<u32>, Weight)> {
    let at = |v: &[u32], j: usize| if j == 0 { 0 } else { v[j - 1] };
    match g {
        Generator::Z(i) | Generator::ZStar(i) if i == k => {
            admissible(p, k).then(|| (p.to_vec(), Weight::q(at(p, k) as i64 + k as i64)))
        }
        Generator::Z(i) if i < k => {
            if !admissible(p, k) {
                return None;
            }
            let d = at(p, i + 1) - at(p, i);
            if d == 0 {
                return None;
            }
            let mut t = p.to_vec();
            for x in &mut t[i..k] {
                *x -= 1;
            }
            Some((t, Weight::q(at(p, i) as i64 + i as i64).with_root(d)))
        }
        Generator::ZStar(i) if i < k => {
            let mut t = p.to_vec();
            for x in &mut t[i..k] {
                *x += 1;
            }
            if !admissible(&t, k) {
                return None;
            }
            let d = at(&t, i + 1) - at(&t, i);
            Some((
                t.clone(),
                Weight::q(at(&t, i) as i64 + i as i64).with_root(d),
            ))
        }
        _ => None,
    }
}

/// Image of a basis vector under one generator, with its matrix entry.
pub(crate) fn step(
    family: &Family,
    n: usize,
    g: Generator,
    k: &[u32],
) -> Option<(Vec<u32>, Weight)> {
    match family {
        Family::SpherePi { .. } => sphere_step(n, true, g, k),
        Family::SigmaPi { sign, .. } => sphere_step(n, *sign == super::Sign::Plus, g, k),
        Family::BarPi { k: kk } => bar_step(*kk, g, k),
    }
}

/// The representation of the sphere or sigma algebra on `H^{n-1}` that
/// kills `z_n` and lets `w` act by `λ^{-2}`.
pub(crate) fn quotient_step(n: usize, g: Generator, k: &[u32]) -> Option<(Vec<u32>, Weight)> {
    match g {
        Generator::Z(i) | Generator::ZStar(i) if i == n => None,
        _ => sphere_step(n - 1, true, g, k),
    }
}

/// Apply a word right to left, staying inside `keep`.
pub(crate) fn walk(
    word: &[Generator],
    k: &[u32],
    step: &impl Fn(Generator, &[u32]) -> Option<(Vec<u32>, Weight)>,
    keep: impl Fn(&[u32]) -> bool,
) -> Option<(Vec<u32>, Weight)> {
    let mut cur = k.to_vec();
    let mut w = Weight::one();
    for &g in word.iter().rev() {
        let (next, x) = step(g, &cur)?;
        if !keep(&next) {
            return None;
        }
        w.times(&x);
        cur = next;
    }
    Some((cur, w))
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct OpEntry {
    pub row: usize,
    pub col: usize,
    pub re: f64,
    pub im: f64,
}

impl OpEntry {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// A sparse complex matrix on a truncated space, in coordinate form
/// sorted by column then row.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct TruncatedOperator {
    pub dim: usize,
    /// Longest word applied. Columns whose coordinates all stay at least
    /// this far below the cutoff never see truncation.
    pub depth: usize,
    pub entries: Vec<OpEntry>,
}

impl TruncatedOperator {
    fn from_map(dim: usize, depth: usize, map: BTreeMap<(usize, usize), Complex64>) -> Self {
        let entries = map
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((col, row), v)| OpEntry {
                row,
                col,
                re: v.re,
                im: v.im,
            })
            .collect();
        TruncatedOperator {
            dim,
            depth,
            entries,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let map = (0..dim)
            .map(|i| ((i, i), Complex64::new(1.0, 0.0)))
            .collect();
        TruncatedOperator::from_map(dim, 0, map)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .binary_search_by(|e| (e.col, e.row).cmp(&(col, row)))
            .map(|i| self.entries[i].value())
            .unwrap_or_default()
    }

    pub fn column(&self, col: usize) -> &[OpEntry] {
        let lo = self.entries.partition_point(|e| e.col < col);
        let hi = self.entries.partition_point(|e| e.col <= col);
        &self.entries[lo..hi]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries
            .iter()
            .filter(|e| e.row == e.col)
            .map(|e| e.value())
            .sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|e| e.row == e.col)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.value().norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry in the given columns.
    pub fn max_abs_in_columns(&self, cols: &[usize]) -> f64 {
        cols.iter()
            .flat_map(|&c| self.column(c))
            .map(|e| e.value().norm())
            .fold(0.0, f64::max)
    }

    pub fn add_scaled(&self, other: &TruncatedOperator, c: Complex64) -> TruncatedOperator {
        let mut map: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for e in &self.entries {
            *map.entry((e.col, e.row)).or_default() += e.value();
        }
        for e in &other.entries {
            *map.entry((e.col, e.row)).or_default() += c * e.value();
        }
        TruncatedOperator::from_map(self.dim, self.depth.max(other.depth), map)
    }

    pub fn sub(&self, other: &TruncatedOperator) -> TruncatedOperator {
        self.add_scaled(other, Complex64::new(-1.0, 0.0))
    }
}

pub(crate) fn eval_coefficient(c: &QScalar, q0: &BigRational) -> Result<f64, RepError> {
    c.eval(q0)
        .map(|v| ratio_to_f64(&v))
        .map_err(|e| RepError::Pole(format!("{c} at q = {q0}: {e}")))
}

/// Assemble `sum c_w · op(w)` from per-generator steps.
pub(crate) fn assemble(
    terms: &[(Complex64, Vec<Generator>)],
    space: &TruncatedSpace,
    step: &impl Fn(Generator, &[u32]) -> Option<(Vec<u32>, Weight)>,
    q: f64,
    lambda: &Phase,
) -> TruncatedOperator {
    let depth = terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0);
    let mut map: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    for (col, k) in space.basis().iter().enumerate() {
        for (c, w) in terms {
            if let Some((t, wt)) = walk(w, k, step, |v| space.index_of(v).is_some()) {
                let row = space.index_of(&t).expect("kept inside the space");
                *map.entry((col, row)).or_default() += c * wt.value(q, lambda);
            }
        }
    }
    TruncatedOperator::from_map(space.dim(), depth, map)
}

pub(crate) fn lambda_of(family: &Family) -> Phase {
    match family {
        Family::SpherePi { lambda } | Family::SigmaPi { lambda, .. } => *lambda,
        Family::BarPi { .. } => Phase::one(),
    }
}

fn check_space(spec: &RepSpec, space: &TruncatedSpace) -> Result<(), RepError> {
    if space.n != spec.n {
        return Err(RepError::Precondition(format!(
            "space has n = {}, representation has n = {}",
            space.n, spec.n
        )));
    }
    if let Family::BarPi { k } = spec.family {
        if space.admissible.is_some_and(|a| a != k) {
            return Err(RepError::Precondition(format!(
                "space is cut to the admissible vectors of k = {}, not {k}",
                space.admissible.unwrap_or_default()
            )));
        }
    } else if space.admissible.is_some() {
        return Err(RepError::Precondition(
            "admissibility filters apply to bar_pi only".into(),
        ));
    }
    Ok(())
}

/// The operator of an unnormalized formal sum.
pub fn apply_formal_sum(
    x: &FormalSum,
    spec: &RepSpec,
    space: &TruncatedSpace,
) -> Result<TruncatedOperator, RepError> {
    check_space(spec, space)?;
    let p = spec.presentation();
    let mut terms = Vec::with_capacity(x.len());
    for (c, w) in x {
        p.check_word(w)?;
        terms.push((
            Complex64::new(eval_coefficient(c, &spec.q0)?, 0.0),
            w.clone(),
        ));
    }
    let n = spec.n;
    let fam = spec.family;
    Ok(assemble(
        &terms,
        space,
        &|g, k: &[u32]| step(&fam, n, g, k),
        spec.q0_f64(),
        &lambda_of(&spec.family),
    ))
}

/// The operator of a normalized element.
pub fn apply_element(
    x: &AlgebraElement,
    spec: &RepSpec,
    space: &TruncatedSpace,
) -> Result<TruncatedOperator, RepError> {
    if x.presentation() != spec.presentation() {
        return Err(RepError::PresentationMismatch {
            expected: spec.presentation().to_string(),
            found: x.presentation().to_string(),
        });
    }
    apply_formal_sum(&x.to_formal_sum(), spec, space)
}

/// The operator of a single generator.
pub fn rep_generator(
    spec: &RepSpec,
    g: Generator,
    space: &TruncatedSpace,
) -> Result<TruncatedOperator, RepError> {
    apply_formal_sum(&vec![(QScalar::one(), vec![g])], spec, space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::Sign;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn bottom_vector_is_annihilated() {
        let spec = RepSpec::sphere_pi(2, Phase::one(), half()).unwrap();
        let space = spec.space(3).unwrap();
        let z0 = rep_generator(&spec, Generator::Z(0), &space).unwrap();
        assert!(z0.column(space.index_of(&[0, 2]).unwrap()).is_empty());
        assert!(!z0.column(space.index_of(&[1, 2]).unwrap()).is_empty());
    }

    #[test]
    fn top_generator_on_vacuum() {
        let lambda = Phase::RootOfUnity { a: 1, b: 8 };
        let spec = RepSpec::sphere_pi(2, lambda, half()).unwrap();
        let space = spec.space(2).unwrap();
        let z2 = rep_generator(&spec, Generator::Z(2), &space).unwrap();
        assert!(z2.is_diagonal());
        assert!((z2.get(0, 0) - lambda.value() * 0.25).norm() < 1e-15);

        let spec = RepSpec::sigma_pi(2, lambda, Sign::Minus, half()).unwrap();
        let z2 = rep_generator(&spec, Generator::Z(2), &space).unwrap();
        assert!((z2.get(0, 0) + lambda.value() * 0.25).norm() < 1e-15);
        let w = rep_generator(&spec, Generator::W, &space).unwrap();
        for d in w.diagonal() {
            assert!((d - lambda.pow(-2)).norm() < 1e-15);
        }
    }

    #[test]
    fn bar_pi_top_is_diagonal() {
        let spec = RepSpec::bar_pi(2, 2, half()).unwrap();
        let space = spec.space(4).unwrap();
        let z2 = rep_generator(&spec, Generator::Z(2), &space).unwrap();
        assert!(z2.is_diagonal());
        for (i, p) in space.basis().iter().enumerate() {
            let expected = 0.5f64.powi(p[1] as i32 + 2);
            assert!((z2.get(i, i).re - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn squared_weights_are_exact() {
        let w = Weight::q(2).with_root(1);
        // (1/4)^2 (1 - 1/4)
        assert_eq!(w.squared(&half()), BigRational::new(3.into(), 64.into()));
        let v = w.value(0.5, &Phase::one());
        assert!((v.norm_sqr() - 3.0 / 64.0).abs() < 1e-15);
    }
}
