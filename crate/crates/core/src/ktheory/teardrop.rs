use serde::Serialize;

use super::group::FGAbelianGroup;
use super::gysin::gysin_invariants;
use super::matrix::{smith_normal_form, IntMatrix};
use super::KTheoryError;

/// K-groups of an ideal and a quotient together with the connecting maps
/// `∂: K_0(B) -> K_1(I)` and `δ: K_1(B) -> K_0(I)`, written as integer
/// matrices on the free parts.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SixTermInput {
    pub k0_ideal: FGAbelianGroup,
    pub k1_ideal: FGAbelianGroup,
    pub k0_quotient: FGAbelianGroup,
    pub k1_quotient: FGAbelianGroup,
    pub exponential: IntMatrix,
    pub index: IntMatrix,
}

/// What the six-term sequence determines about the middle algebra.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SixTermOutput {
    /// `coker δ`, the image of `K_0(I)` in `K_0(A)`.
    pub k0_sub: FGAbelianGroup,
    /// `ker ∂`, the image of `K_0(A)` in `K_0(B)`.
    pub k0_quotient_part: FGAbelianGroup,
    /// `coker ∂`, the image of `K_1(I)` in `K_1(A)`.
    pub k1_sub: FGAbelianGroup,
    /// `ker δ`.
    pub k1_quotient_part: FGAbelianGroup,
}

fn check_free_map(
    m: &IntMatrix,
    from: &FGAbelianGroup,
    to: &FGAbelianGroup,
    what: &str,
) -> Result<(), KTheoryError> {
    if !from.is_free() || !to.is_free() || m.cols() != from.rank || m.rows() != to.rank {
        return Err(KTheoryError::Parameter(format!(
            "{what}: a {}x{} matrix cannot map {from} to {to}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Bookkeeping for a six-term sequence whose ideal and quotient K-groups
/// are free: both K-groups of the middle term are extensions of a kernel by
/// a cokernel of the connecting maps.
pub fn six_term(input: &SixTermInput) -> Result<SixTermOutput, KTheoryError> {
    check_free_map(
        &input.exponential,
        &input.k0_quotient,
        &input.k1_ideal,
        "exponential map",
    )?;
    check_free_map(
        &input.index,
        &input.k1_quotient,
        &input.k0_ideal,
        "index map",
    )?;
    let kernel = |m: &IntMatrix| FGAbelianGroup::free(m.cols() - smith_normal_form(m).rank);
    Ok(SixTermOutput {
        k0_sub: FGAbelianGroup::cokernel(&input.index),
        k0_quotient_part: kernel(&input.exponential),
        k1_sub: FGAbelianGroup::cokernel(&input.exponential),
        k1_quotient_part: kernel(&input.index),
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TeardropK {
    pub n: usize,
    pub m: u64,
    #[serde(rename = "K0")]
    pub k0: FGAbelianGroup,
    #[serde(rename = "K1")]
    pub k1: FGAbelianGroup,
}

/// K-groups of the quantum teardrop with weights `(1, ..., 1, m)` from
/// `0 -> K^{⊕m} -> C(WP) -> C(CP^{n-1}) -> 0`.
pub fn teardrop_k_groups(n: usize, m: u64) -> Result<TeardropK, KTheoryError> {
    if n == 0 || m == 0 {
        return Err(KTheoryError::Parameter(
            "teardrop needs n >= 1 and m >= 1".into(),
        ));
    }
    let input = SixTermInput {
        k0_ideal: FGAbelianGroup::free(m as usize),
        k1_ideal: FGAbelianGroup::zero(),
        k0_quotient: FGAbelianGroup::free(n),
        k1_quotient: FGAbelianGroup::zero(),
        exponential: IntMatrix::zeros(0, n),
        index: IntMatrix::zeros(m as usize, 0),
    };
    let out = six_term(&input)?;
    // the quotient part is free, so the K_0 extension splits
    Ok(TeardropK {
        n,
        m,
        k0: out.k0_sub.direct_sum(&out.k0_quotient_part),
        k1: out.k1_sub.direct_sum(&out.k1_quotient_part),
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RealTeardropK {
    pub n: usize,
    pub m: u64,
    #[serde(rename = "K1")]
    pub k1: FGAbelianGroup,
    pub delta: IntMatrix,
    pub coker_delta: FGAbelianGroup,
    /// `K_0` of the lens-space quotient, `ℤ ⊕ ⊕ ℤ_{r_i}`.
    pub quotient_k0: FGAbelianGroup,
    pub d: Vec<u64>,
    pub r: Vec<u64>,
    /// Every group the extension might be; none is preferred.
    #[serde(rename = "candidates")]
    pub k0_candidates: Vec<FGAbelianGroup>,
    /// True when the extension splits and `K_0` is determined.
    pub determined: bool,
}

/// K-theory of the quantum real teardrop with weights `(1, ..., 1, m)` from
/// `0 -> K^{⊕m} -> C(RP^{2n}) -> C(L^{2n-1}(2m; 1, ..., 1)) -> 0`.
pub fn real_teardrop_k(n: usize, m: u64) -> Result<RealTeardropK, KTheoryError> {
    if n == 0 || m == 0 {
        return Err(KTheoryError::Parameter(
            "real teardrop needs n >= 1 and m >= 1".into(),
        ));
    }
    let inv = gysin_invariants(n, m)?;
    let r: Vec<u64> = inv.r.iter().copied().filter(|&x| x != 1).collect();
    let quotient_k0 = FGAbelianGroup::new(1, &inv.r);
    let delta = IntMatrix::from_rows(&vec![vec![2]; m as usize]);
    let k1_quotient_part = FGAbelianGroup::free(1 - smith_normal_form(&delta).rank);
    let coker_delta = FGAbelianGroup::cokernel(&delta);
    let k1 = k1_quotient_part;

    let free = coker_delta.rank + quotient_k0.rank;
    let mut candidates = Vec::new();
    let determined = quotient_k0.is_free();
    let mut base = vec![2u64];
    base.extend(&r);
    candidates.push(FGAbelianGroup::new(free, &base));
    if !determined {
        for (k, &rk) in r.iter().enumerate() {
            if rk % 2 == 0 {
                let mut t: Vec<u64> = r.clone();
                t[k] = 2 * rk;
                let g = FGAbelianGroup::new(free, &t);
                if !candidates.contains(&g) {
                    candidates.push(g);
                }
            }
        }
    }
    Ok(RealTeardropK {
        n,
        m,
        k1,
        delta,
        coker_delta,
        quotient_k0,
        d: inv.d,
        r: inv.r,
        k0_candidates: candidates,
        determined,
    })
}
