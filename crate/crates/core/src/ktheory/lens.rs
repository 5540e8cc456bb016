use num_integer::Integer;
use serde::Serialize;

use super::group::FGAbelianGroup;
use super::matrix::{smith_normal_form, IntMatrix};
use super::KTheoryError;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LensDescriptor {
    #[serde(rename = "N")]
    pub modulus: u64,
    pub weights: Vec<u64>,
}

impl LensDescriptor {
    pub fn new(modulus: u64, weights: Vec<u64>) -> Result<Self, KTheoryError> {
        if modulus == 0 {
            return Err(KTheoryError::Parameter("N must be at least 1".into()));
        }
        if weights.is_empty() {
            return Err(KTheoryError::Parameter(
                "at least one weight is required".into(),
            ));
        }
        if let Some(w) = weights.iter().find(|&&w| w >= modulus) {
            return Err(KTheoryError::Parameter(format!(
                "weight {w} is outside 0..{}",
                modulus - 1
            )));
        }
        Ok(LensDescriptor { modulus, weights })
    }

    /// `n`, where the sphere is `S^{2n+1}`.
    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    /// Whether the weights are pairwise coprime.
    pub fn pairwise_coprime(&self) -> bool {
        let w = &self.weights;
        (0..w.len()).all(|i| (i + 1..w.len()).all(|j| w[i].gcd(&w[j]) == 1))
    }

    /// `sum_i gcd(N, m_i) - n`, with `gcd(N, 0) = N`.
    pub fn formula_rank(&self) -> i64 {
        self.weights
            .iter()
            .map(|&m| self.modulus.gcd(&m) as i64)
            .sum::<i64>()
            - self.n() as i64
    }
}

/// Column/row index of the basis element `λ_i^m`: `i * N + m`.
pub fn phi_index(d: &LensDescriptor, i: usize, m: u64) -> usize {
    i * d.modulus as usize + m as usize
}

/// The matrix of `λ_i^m ↦ sum_{j<=i} λ_j^{(m - m_j) mod N} - λ_i^m`,
/// basis ordered `i` major, `m` minor.
pub fn phi_matrix(d: &LensDescriptor) -> IntMatrix {
    let big_n = d.modulus;
    let dim = big_n as usize * (d.n() + 1);
    let mut out = IntMatrix::zeros(dim, dim);
    for i in 0..=d.n() {
        for m in 0..big_n {
            let col = phi_index(d, i, m);
            for j in 0..=i {
                let e = (m as i64 - d.weights[j] as i64).rem_euclid(big_n as i64) as u64;
                out[(phi_index(d, j, e), col)] += 1;
            }
            out[(col, col)] -= 1;
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FormulaCheck {
    pub hypothesis_holds: bool,
    /// `sum gcd(N, m_i) - n`; present only when the hypothesis holds.
    pub expected_rank: Option<i64>,
    pub matches: Option<bool>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LensKGroups {
    pub descriptor: LensDescriptor,
    #[serde(rename = "K0")]
    pub k0: FGAbelianGroup,
    #[serde(rename = "K1")]
    pub k1: FGAbelianGroup,
    pub rank_phi: usize,
    pub formula_check: FormulaCheck,
}

/// `K_1 = ker Φ` (free), `K_0 = coker Φ`.
pub fn lens_k_groups(d: &LensDescriptor) -> LensKGroups {
    let phi = phi_matrix(d);
    let snf = smith_normal_form(&phi);
    let nullity = phi.cols() - snf.rank;
    let k1 = FGAbelianGroup::free(nullity);
    let k0 = FGAbelianGroup::cokernel(&phi);
    let hypothesis_holds = d.pairwise_coprime();
    let expected_rank = hypothesis_holds.then(|| d.formula_rank());
    LensKGroups {
        descriptor: d.clone(),
        k0,
        k1,
        rank_phi: snf.rank,
        formula_check: FormulaCheck {
            hypothesis_holds,
            expected_rank,
            matches: expected_rank.map(|r| r == nullity as i64),
        },
    }
}
