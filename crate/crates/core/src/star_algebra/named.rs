use std::fmt;

use serde::Serialize;

use super::element::AlgebraElement;
use super::generator::{Generator, Word};
use super::presentation::AlgebraPresentation;
use super::AlgebraError;
use crate::scalar::QScalar;

/// The distinguished elements used to generate invariant subalgebras and in the
/// K-theory arguments.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum NamedElement {
    /// `a = sum_{i>=1} z_i z_i*`
    A,
    /// `b_i = z_i z_i*`
    B { i: usize },
    /// `b_{i,j} = z_i z_j*`
    BPair { i: usize, j: usize },
    /// `c_l = z_0^{l_0} ... z_{n-1}^{l_{n-1}} z_n*` with `sum l = m`
    C { l: Vec<u32>, m: u32 },
    /// `c~_l = z_0^{l_0} ... z_{n-1}^{l_{n-1}}` with `sum l = m`
    CTilde { l: Vec<u32>, m: u32 },
    /// `c_i = z_i^m z_n*`
    CIndex { i: usize, m: u32 },
    /// `d_p = z_0^{p_0} ... z_{n-1}^{p_{n-1}} w` with `sum p = 2m`
    D { p: Vec<u32>, m: u32 },
}

impl fmt::Display for NamedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |l: &[u32]| {
            l.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            NamedElement::A => write!(f, "a"),
            NamedElement::B { i } => write!(f, "b({i})"),
            NamedElement::BPair { i, j } => write!(f, "b({i},{j})"),
            NamedElement::C { l, .. } => write!(f, "c({})", v(l)),
            NamedElement::CTilde { l, .. } => write!(f, "c_tilde({})", v(l)),
            NamedElement::CIndex { i, m } => write!(f, "c_index({i},{m})"),
            NamedElement::D { p, .. } => write!(f, "d({})", v(p)),
        }
    }
}

fn check_index(i: usize, n: usize) -> Result<(), AlgebraError> {
    if i > n {
        return Err(AlgebraError::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

fn check_vector(
    name: &str,
    v: &[u32],
    n: usize,
    total: u32,
    rule: &str,
) -> Result<(), AlgebraError> {
    if v.len() != n {
        return Err(AlgebraError::Parameter(format!(
            "{name}: exponent vector must have length n = {n}, got {}",
            v.len()
        )));
    }
    let s: u64 = v.iter().map(|&x| x as u64).sum();
    if s != total as u64 {
        return Err(AlgebraError::Parameter(format!(
            "{name}: {rule} violated (sum is {s}, expected {total})"
        )));
    }
    Ok(())
}

fn lower_word(v: &[u32]) -> Word {
    v.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(Generator::Z(i), e as usize))
        .collect()
}

/// Build and normalize a named element in presentation `p`.
pub fn make_named_element(
    name: &NamedElement,
    p: AlgebraPresentation,
) -> Result<AlgebraElement, AlgebraError> {
    use Generator::*;
    let n = p.n;
    match name {
        NamedElement::A => {
            let sum = (1..=n)
                .map(|i| (QScalar::one(), vec![Z(i), ZStar(i)]))
                .collect();
            p.normalize(&sum)
        }
        NamedElement::B { i } => {
            check_index(*i, n)?;
            p.normalize_word(&[Z(*i), ZStar(*i)])
        }
        NamedElement::BPair { i, j } => {
            check_index(*i, n)?;
            check_index(*j, n)?;
            p.normalize_word(&[Z(*i), ZStar(*j)])
        }
        NamedElement::C { l, m } => {
            check_vector("c", l, n, *m, "sum of l_i = m")?;
            let mut w = lower_word(l);
            w.push(ZStar(n));
            p.normalize_word(&w)
        }
        NamedElement::CTilde { l, m } => {
            check_vector("c_tilde", l, n, *m, "sum of l_i = m")?;
            p.normalize_word(&lower_word(l))
        }
        NamedElement::CIndex { i, m } => {
            if *i >= n {
                return Err(AlgebraError::Parameter(format!(
                    "c_index: index {i} must be below n = {n}"
                )));
            }
            let mut w: Word = std::iter::repeat_n(Z(*i), *m as usize).collect();
            w.push(ZStar(n));
            p.normalize_word(&w)
        }
        NamedElement::D { p: pv, m } => {
            if !p.is_sigma() {
                return Err(AlgebraError::InvalidGenerator {
                    generator: "w".into(),
                    presentation: p.to_string(),
                });
            }
            check_vector("d", pv, n, 2 * m, "sum of p_i = 2m")?;
            let mut w = lower_word(pv);
            w.push(W);
            p.normalize_word(&w)
        }
    }
}

/// All exponent vectors of length `len` with entries summing to `total`.
pub fn compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if len == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Generators of the invariant subalgebra for weights `(1,...,1,m)`:
/// `b_{i,j}` with `i <= j < n` and `c_l` (sphere), or `b_{i,j}`, `c_l` and
/// `d_p` (sigma, where `c_l` ends in `z_n w`).
pub fn teardrop_generators(
    p: AlgebraPresentation,
    m: u32,
) -> Result<Vec<(String, AlgebraElement)>, AlgebraError> {
    use Generator::*;
    let n = p.n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let nm = NamedElement::BPair { i, j };
            out.push((nm.to_string(), make_named_element(&nm, p)?));
        }
    }
    for l in compositions(m, n) {
        if p.is_sigma() {
            let mut w = lower_word(&l);
            w.extend([Z(n), W]);
            out.push((
                NamedElement::C { l: l.clone(), m }.to_string(),
                p.normalize_word(&w)?,
            ));
        } else {
            let nm = NamedElement::C { l, m };
            out.push((nm.to_string(), make_named_element(&nm, p)?));
        }
    }
    if p.is_sigma() {
        for pv in compositions(2 * m, n) {
            let nm = NamedElement::D { p: pv, m };
            out.push((nm.to_string(), make_named_element(&nm, p)?));
        }
    }
    Ok(out)
}

/// Generators of the lens subalgebra for weights `(1,...,1,m)`:
/// `z_n`, `b_{i,j}`, `c~_l`, and `w` in the sigma case.
pub fn lens_generators(
    p: AlgebraPresentation,
    m: u32,
) -> Result<Vec<(String, AlgebraElement)>, AlgebraError> {
    let n = p.n;
    let mut out = vec![(
        format!("z{n}"),
        AlgebraElement::generator(p, Generator::Z(n))?,
    )];
    if p.is_sigma() {
        out.push(("w".into(), AlgebraElement::generator(p, Generator::W)?));
    }
    for i in 0..n {
        for j in i..n {
            let nm = NamedElement::BPair { i, j };
            out.push((nm.to_string(), make_named_element(&nm, p)?));
        }
    }
    for l in compositions(m, n) {
        let nm = NamedElement::CTilde { l, m };
        out.push((nm.to_string(), make_named_element(&nm, p)?));
    }
    Ok(out)
}
