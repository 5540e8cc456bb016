use std::collections::BTreeMap;

use serde::Serialize;

use super::bezout::{bezout, q_product, QPolyX};
use super::resolution::{verify_resolution, ResolutionOfIdentity};
use super::spec::{GradingGroup, GradingSpec};
use super::GradingError;
use crate::scalar::QScalar;
use crate::star_algebra::{AlgebraElement, AlgebraPresentation, FormalSum, Generator};

/// A commutative polynomial in `b_0, ..., b_n` (the elements `z_i z_i*`).
#[derive(Clone, PartialEq, Debug)]
pub struct BPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, QScalar>,
}

impl BPoly {
    pub fn zero(nvars: usize) -> Self {
        BPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: QScalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, QScalar::one());
        p
    }

    /// `U_k = 1 - sum_{j<=k} b_j`, with `U_{-1} = 1`.
    pub fn u(nvars: usize, k: isize) -> Self {
        let mut p = Self::constant(nvars, QScalar::one());
        for j in 0..=k {
            p = &p - &Self::var(nvars, j as usize);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let acc = self.terms.entry(e.clone()).or_insert_with(QScalar::zero);
        *acc = &*acc + &c;
        if acc.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, QScalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute a univariate polynomial: `f(self)`.
    pub fn compose(f: &QPolyX, x: &BPoly) -> BPoly {
        f.coeffs()
            .iter()
            .rev()
            .fold(BPoly::zero(x.nvars), |acc, c| {
                &(&acc * x) + &BPoly::constant(x.nvars, c.clone())
            })
    }

    /// Homogenize `f(t) = sum c_j t^j` as `sum c_j y^j x^{d-j}`.
    pub fn homogenize(f: &QPolyX, x: &BPoly, y: &BPoly, d: u32) -> BPoly {
        let mut out = BPoly::zero(x.nvars);
        for (j, c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &y.pow(j as u32) * &x.pow(d - j as u32);
            out = &out + &term.scale(c);
        }
        out
    }

    /// The element `sum c_e prod_i (z_i z_i*)^{e_i}`.
    pub fn to_element(&self, p: AlgebraPresentation) -> Result<AlgebraElement, GradingError> {
        let sum: FormalSum = self
            .terms
            .iter()
            .map(|(e, c)| {
                let w = e
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &k)| {
                        std::iter::repeat_n([Generator::Z(i), Generator::ZStar(i)], k as usize)
                            .flatten()
                    })
                    .collect();
                (c.clone(), w)
            })
            .collect();
        Ok(p.normalize(&sum)?)
    }
}

impl std::ops::Add<&BPoly> for &BPoly {
    type Output = BPoly;
    fn add(self, rhs: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&BPoly> for &BPoly {
    type Output = BPoly;
    fn sub(self, rhs: &BPoly) -> BPoly {
        self + &rhs.scale(&-QScalar::one())
    }
}

impl std::ops::Mul<&BPoly> for &BPoly {
    type Output = BPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &BPoly) -> BPoly {
        let mut out = BPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct WeightedResolution {
    /// `l_i = prod_{j != i} m_j`.
    pub l: Vec<u64>,
    /// Degree +1 certificate `{(B_i z_i*^{l_i}, z_i^{l_i})}`.
    pub res_plus: ResolutionOfIdentity,
    /// Degree -1 certificate `{(A_i z_i^{l_i}, z_i*^{l_i})}`.
    pub res_minus: ResolutionOfIdentity,
}

/// Polynomials `A_0, ..., A_n` in the `b_i` with `sum_i A_i F_i = 1`, where
/// `F_i = prod_{s in exps(l_i)} (U_{i-1} - q^{2s} U_i)` and `U_n = 0`.
///
/// Built from the top down: `F_n = U_{n-1}^{l_n}`, and for each `k` a
/// Bézout identity in `t = U_k / U_{k-1}` expresses a power of `U_{k-1}`
/// through `F_k` and the power of `U_k` obtained before.
fn triangular_coefficients(
    l: &[u64],
    exps: impl Fn(u64) -> Vec<i64>,
) -> Result<Vec<BPoly>, GradingError> {
    let n = l.len() - 1;
    let nv = n + 1;
    // chain[k] = (C_k^h, D_k^h): U_{k-1}^{e_k} = C_k^h F_k + D_k^h U_k^{e_{k+1}}
    let mut chain: Vec<(BPoly, BPoly)> = Vec::new();
    let mut e = l[n] as u32;
    let tpow = |e: u32| QPolyX::monomial(QScalar::one(), e as usize);
    for k in (1..n).rev() {
        let pk = q_product(exps(l[k]));
        let (c, d) = bezout(&pk, &tpow(e)).ok_or_else(|| {
            GradingError::Construction(format!("Bezout step {k} has a common root"))
        })?;
        let (x, y) = (BPoly::u(nv, k as isize - 1), BPoly::u(nv, k as isize));
        let ch = BPoly::homogenize(&c, &x, &y, e - 1);
        let dh = BPoly::homogenize(&d, &x, &y, l[k] as u32 - 1);
        chain.push((ch, dh));
        e += l[k] as u32 - 1;
    }
    chain.reverse();
    let p0 = q_product(exps(l[0]));
    let (alpha, beta) = bezout(&p0, &tpow(e))
        .ok_or_else(|| GradingError::Construction("final Bezout step has a common root".into()))?;
    let u0 = BPoly::u(nv, 0);
    let mut coeffs = vec![BPoly::compose(&alpha, &u0)];
    let mut carry = BPoly::compose(&beta, &u0);
    for (ch, dh) in &chain {
        coeffs.push(&carry * ch);
        carry = &carry * dh;
    }
    coeffs.push(carry);
    Ok(coeffs)
}

fn z_power(
    p: AlgebraPresentation,
    i: usize,
    star: bool,
    e: u64,
) -> Result<AlgebraElement, GradingError> {
    let g = if star {
        Generator::ZStar(i)
    } else {
        Generator::Z(i)
    };
    Ok(AlgebraElement::from_word(p, &vec![g; e as usize])?)
}

/// Certificates for degrees ±1 of the ℤ-grading on the lens subalgebra with
/// `N = prod m_i`, in which `z_i^{l_i}` has degree 1.
pub fn weighted_resolution(g: &GradingSpec) -> Result<WeightedResolution, GradingError> {
    let product: u64 = g.weights.iter().map(|&m| m as u64).product();
    match g.group {
        GradingGroup::LensIntegers(big_n) if big_n == product => {}
        _ => {
            return Err(GradingError::Precondition(format!(
                "weighted resolutions need the lens Z-grading with N = {product}, got {}",
                g.group
            )))
        }
    }
    let p = g.presentation;
    let l: Vec<u64> = (0..g.weights.len())
        .map(|i| product / g.weights[i] as u64)
        .collect();

    let minus = triangular_coefficients(&l, |li| (0..li as i64).collect())?;
    let plus = triangular_coefficients(&l, |li| (1..=li as i64).map(|s| -s).collect())?;

    let mut res_minus = ResolutionOfIdentity {
        target: -1,
        pairs: Vec::new(),
    };
    let mut res_plus = ResolutionOfIdentity {
        target: 1,
        pairs: Vec::new(),
    };
    for (i, &li) in l.iter().enumerate() {
        if !minus[i].is_zero() {
            let a = &minus[i].to_element(p)? * &z_power(p, i, false, li)?;
            res_minus.pairs.push((a, z_power(p, i, true, li)?));
        }
        if !plus[i].is_zero() {
            let b = &plus[i].to_element(p)? * &z_power(p, i, true, li)?;
            res_plus.pairs.push((b, z_power(p, i, false, li)?));
        }
    }
    for r in [&res_minus, &res_plus] {
        let report = verify_resolution(r, g);
        if !report.valid {
            return Err(GradingError::Unverified(Box::new(report)));
        }
    }
    Ok(WeightedResolution {
        l,
        res_plus,
        res_minus,
    })
}
