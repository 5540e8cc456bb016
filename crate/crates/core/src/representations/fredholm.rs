use std::collections::HashMap;

use num_complex::Complex64;
use num_integer::binomial;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::checks::Status;
use super::operator::{apply_element, eval_coefficient, TruncatedOperator};
use super::spec::RepSpec;
use super::RepError;
use crate::star_algebra::{AlgebraElement, AlgebraPresentation, Generator};

fn serialize_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

type IntMatrix = HashMap<(usize, usize), i64>;

fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut rows: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    for (&(r, c), &v) in b {
        rows.entry(r).or_default().push((c, v));
    }
    let mut out = IntMatrix::new();
    for (&(r, k), &v) in a {
        for &(c, w) in rows.get(&k).into_iter().flatten() {
            *out.entry((r, c)).or_default() += v * w;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// The even module on `H ⊕ H` with `H` the truncated `ℓ²(ℕ^n)`;
/// `π_+` sums the `π̄_k` with `k` even and `π_-` those with `k` odd.
#[derive(Clone, Debug, Serialize)]
pub struct FredholmModule {
    pub n: usize,
    pub m: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub q0: BigRational,
    pub cutoff: u32,
}

impl FredholmModule {
    pub fn new(n: usize, m: u32, q0: BigRational, cutoff: u32) -> Result<Self, RepError> {
        RepSpec::bar_pi(n, 0, q0.clone())?;
        if m == 0 {
            return Err(RepError::Parameter("m must be positive".into()));
        }
        Ok(FredholmModule { n, m, q0, cutoff })
    }

    /// Dimension of one copy of `H`.
    pub fn half_dim(&self) -> usize {
        (self.cutoff as usize + 1).pow(self.n as u32)
    }

    /// `F = [[0, 1], [1, 0]]`.
    pub fn f(&self) -> IntMatrix {
        let d = self.half_dim();
        (0..d)
            .flat_map(|i| [((i, i + d), 1), ((i + d, i), 1)])
            .collect()
    }

    /// `γ = diag(1, -1)`.
    pub fn gamma(&self) -> IntMatrix {
        let d = self.half_dim();
        (0..d)
            .flat_map(|i| [((i, i), 1), ((i + d, i + d), -1)])
            .collect()
    }

    /// `F² = 1`, `γ² = 1` and `Fγ = -γF`, checked in integer arithmetic.
    pub fn verify(&self) -> bool {
        let id: IntMatrix = (0..2 * self.half_dim()).map(|i| ((i, i), 1)).collect();
        let (f, g) = (self.f(), self.gamma());
        let fg = int_mul(&f, &g);
        let mut anti = int_mul(&g, &f);
        for (k, v) in &fg {
            *anti.entry(*k).or_default() += v;
        }
        anti.retain(|_, v| *v != 0);
        int_mul(&f, &f) == id && int_mul(&g, &g) == id && anti.is_empty()
    }
}

/// `q^K C(K+n-1, n-1) / (1-q)^n`, an upper bound for
/// `sum_{r>=K} C(r+n-1, n-1) q^r`.
pub fn tail_bound(n: usize, q: f64, k: u32) -> f64 {
    let c = binomial(k as u64 + n as u64 - 1, n as u64 - 1) as f64;
    q.powi(k as i32) * c / (1.0 - q).powi(n as i32)
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub check: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub n: usize,
    pub closed_form: f64,
    pub partial_sums: Vec<f64>,
    pub monotone: bool,
}

/// Partial sums of `sum_r C(r+n-1, n-1) q^r` against `(1-q)^{-n}`.
pub fn bound_series(
    n: usize,
    q0: &BigRational,
    cutoff: u32,
    tolerance: f64,
) -> Result<SeriesReport, RepError> {
    let spec = RepSpec::bar_pi(n, 0, q0.clone())?;
    let q = spec.q0_f64();
    let closed = (1.0 - q).powi(-(n as i32));
    let mut acc = 0.0;
    let mut sums = Vec::with_capacity(cutoff as usize + 1);
    for r in 0..=cutoff {
        acc += binomial(r as u64 + n as u64 - 1, n as u64 - 1) as f64 * q.powi(r as i32);
        sums.push(acc);
    }
    let monotone =
        sums.windows(2).all(|w| w[0] <= w[1]) && sums.iter().all(|&s| s <= closed * (1.0 + 1e-15));
    let err = (closed - acc).abs();
    Ok(SeriesReport {
        check: "bound_series".into(),
        status: Status::from_bool(monotone && err <= tolerance),
        max_residual: err,
        tolerance,
        n,
        closed_form: closed,
        partial_sums: sums,
        monotone,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TracePoint {
    pub cutoff: u32,
    pub trace_re: f64,
    pub trace_im: f64,
    pub abs_sum: f64,
    /// Bound on everything beyond this cutoff, if one is available.
    pub tail: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FredholmReport {
    pub check: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub n: usize,
    pub m: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub q0: BigRational,
    /// Every monomial contains `z_n` or `z_n*`.
    pub j_type: bool,
    /// `π̄_k(x) = 0` for every `k < n` on the truncated space.
    pub lower_vanish: bool,
    /// `"analytic"` for `j_type` elements, otherwise `"extrapolated"` from the
    /// ratio of successive increments.
    pub bound_kind: String,
    pub points: Vec<TracePoint>,
    pub cauchy: bool,
    /// Bound on `|trace|` over the whole space.
    pub trace_bound: Option<f64>,
}

fn column_max(space: &super::TruncatedSpace, col: usize) -> u32 {
    space.basis()[col].iter().copied().max().unwrap_or(0)
}

/// Partial traces of `π_+(x) - π_-(x)` over basis vectors with all
/// coordinates at most `K'`, for `K' = 0..=cutoff`.
pub fn fredholm_trace(
    x: &AlgebraElement,
    module: &FredholmModule,
    tolerance: f64,
) -> Result<FredholmReport, RepError> {
    let n = module.n;
    let p = AlgebraPresentation::sphere(n);
    if x.presentation() != p {
        return Err(RepError::PresentationMismatch {
            expected: p.to_string(),
            found: x.presentation().to_string(),
        });
    }
    let q0 = &module.q0;
    let q = crate::scalar::ratio_to_f64(q0);
    let depth = x
        .terms()
        .map(|(m, _)| m.total_degree() as u32)
        .max()
        .unwrap_or(0);
    let kk = module.cutoff;
    let j_type = !x.is_zero() && x.terms().all(|(m, _)| m.a[n] > 0 || m.b[n] > 0);

    let mut diff: HashMap<(Vec<u32>, Vec<u32>), Complex64> = HashMap::new();
    let mut lower_vanish = true;
    for k in 0..=n {
        let spec = RepSpec::bar_pi(n, k, q0.clone())?;
        let space = spec.space(kk + depth)?;
        let op: TruncatedOperator = apply_element(x, &spec, &space)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for e in &op.entries {
            if column_max(&space, e.col) > kk {
                continue;
            }
            if k < n {
                lower_vanish = false;
            }
            let key = (space.basis()[e.row].clone(), space.basis()[e.col].clone());
            *diff.entry(key).or_default() += sign * e.value();
        }
    }
    let mut trace = vec![Complex64::default(); kk as usize + 1];
    let mut abs = vec![0.0f64; kk as usize + 1];
    for ((row, col), v) in &diff {
        let c = col.iter().copied().max().unwrap_or(0) as usize;
        if row == col {
            trace[c] += v;
        }
        abs[c] += v.norm();
    }
    for i in 1..trace.len() {
        trace[i] = trace[i] + trace[i - 1];
        abs[i] += abs[i - 1];
    }

    let tails: Vec<Option<f64>> = if j_type {
        let mut scale = 0.0;
        for (m, c) in x.terms() {
            let word = m.to_word();
            let first = word
                .iter()
                .rposition(|g| g.index() == Some(n))
                .expect("j_type monomials contain z_n");
            let r = word[first + 1..]
                .iter()
                .filter(|g| matches!(g, Generator::Z(i) if *i < n))
                .count();
            scale += eval_coefficient(c, q0)?.abs() * q.powi(-(r as i32));
        }
        (0..=kk)
            .map(|k| Some(scale * tail_bound(n, q, k + 1)))
            .collect()
    } else {
        let inc: Vec<f64> = (1..abs.len()).map(|i| abs[i] - abs[i - 1]).collect();
        let ratio = inc
            .windows(2)
            .skip(inc.len().saturating_sub(4))
            .filter(|w| w[0] > 0.0)
            .map(|w| w[1] / w[0])
            .fold(0.0, f64::max);
        (0..=kk as usize)
            .map(|k| {
                let last = if k == 0 { abs[0] } else { abs[k] - abs[k - 1] };
                (ratio < 1.0 && inc.len() >= 2).then(|| last * ratio / (1.0 - ratio))
            })
            .collect()
    };

    let mut cauchy = tails.iter().all(|t| t.is_some());
    let mut worst = 0.0f64;
    if cauchy {
        for a in 0..trace.len() {
            let t = tails[a].unwrap_or(f64::INFINITY);
            for b in a + 1..trace.len() {
                let dt = (trace[b] - trace[a]).norm();
                let da = abs[b] - abs[a];
                worst = worst.max(dt - t).max(da - t);
                if dt > t + tolerance || da > t + tolerance {
                    cauchy = false;
                }
            }
        }
    }
    let trace_bound = tails
        .last()
        .copied()
        .flatten()
        .map(|t| abs[kk as usize] + t);
    let within = trace_bound.is_none_or(|b| trace[kk as usize].norm() <= b + tolerance);
    let points = (0..=kk)
        .map(|k| TracePoint {
            cutoff: k,
            trace_re: trace[k as usize].re,
            trace_im: trace[k as usize].im,
            abs_sum: abs[k as usize],
            tail: tails[k as usize],
        })
        .collect();
    Ok(FredholmReport {
        check: "fredholm_trace".into(),
        status: Status::from_bool(cauchy && within && (!j_type || lower_vanish)),
        max_residual: worst.max(0.0),
        tolerance,
        n,
        m: module.m,
        q0: q0.clone(),
        j_type,
        lower_vanish,
        bound_kind: if j_type { "analytic" } else { "extrapolated" }.into(),
        points,
        cauchy,
        trace_bound,
    })
}
