use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::{smith_normal_form, IntMatrix};
use super::KTheoryError;

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// The `n × n` matrix with `a_ij = (-1)^{i-j+1} C(2m, i-j)` for
/// `0 < i - j <= min(2m, n-1)` and zeros elsewhere.
pub fn gysin_matrix(n: usize, m: u64) -> Result<IntMatrix, KTheoryError> {
    if n == 0 || m == 0 {
        return Err(KTheoryError::Parameter(
            "gysin matrix needs n >= 1 and m >= 1".into(),
        ));
    }
    let mut a = IntMatrix::zeros(n, n);
    let reach = (2 * m).min(n as u64 - 1) as usize;
    for i in 0..n {
        for j in i.saturating_sub(reach)..i {
            let k = (i - j) as u64;
            let sign = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
            a[(i, j)] = binomial(2 * m, k) * sign;
        }
    }
    Ok(a)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DeterminantalInvariants {
    /// `d_i` for `i = 1, ..., size`: gcd of the `i × i` minors.
    pub d: Vec<u64>,
    /// `r_1 = d_1`, `r_i = d_i / d_{i-1}`.
    pub r: Vec<u64>,
}

/// `d_i` and `r_i` for `i = 1, ..., size`, read off the Smith normal form:
/// `d_i` is the product of the first `i` invariant factors.
pub fn determinantal_invariants(
    a: &IntMatrix,
    size: usize,
) -> Result<DeterminantalInvariants, KTheoryError> {
    let snf = smith_normal_form(a);
    if size > snf.rank {
        return Err(KTheoryError::Degenerate {
            size,
            rank: snf.rank,
        });
    }
    let mut d_values = Vec::with_capacity(size);
    let mut acc = BigInt::one();
    for f in snf.invariant_factors.iter().take(size) {
        acc *= f;
        d_values.push(acc.clone());
    }
    let r_values: Vec<BigInt> = (0..size)
        .map(|i| {
            if i == 0 {
                d_values[0].clone()
            } else {
                &d_values[i] / &d_values[i - 1]
            }
        })
        .collect();
    let small = |v: Vec<BigInt>| -> Result<Vec<u64>, KTheoryError> {
        v.iter()
            .map(|x| {
                x.to_u64()
                    .ok_or_else(|| KTheoryError::Overflow(x.to_string()))
            })
            .collect()
    };
    Ok(DeterminantalInvariants {
        d: small(d_values)?,
        r: small(r_values)?,
    })
}

/// `d_i` and `r_i` of the Gysin matrix, `i = 1, ..., n-1`.
pub fn gysin_invariants(n: usize, m: u64) -> Result<DeterminantalInvariants, KTheoryError> {
    determinantal_invariants(&gysin_matrix(n, m)?, n - 1)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of all `k × k` minors by explicit enumeration. Exponential; meant for
/// small matrices.
pub fn gcd_of_minors(a: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(a.rows(), k) {
        for cols in combinations(a.cols(), k) {
            g = g.gcd(&a.submatrix(&rows, &cols).determinant());
        }
    }
    g
}
