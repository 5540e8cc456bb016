use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::{smith_normal_form, IntMatrix};

/// `ℤ^rank ⊕ ℤ_{t_1} ⊕ ... ⊕ ℤ_{t_k}` with `t_1 | t_2 | ... | t_k`, each `t_i >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct FGAbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => Self::free(1),
            _ => Self::new(0, &[order]),
        }
    }

    /// Canonicalize `ℤ^rank ⊕ ⊕ ℤ_{orders}`; orders 0 count as free summands, 1 is dropped.
    pub fn new(rank: usize, orders: &[u64]) -> Self {
        let zeros = orders.iter().filter(|&&o| o == 0).count();
        let finite: Vec<BigInt> = orders
            .iter()
            .filter(|&&o| o > 1)
            .map(|&o| BigInt::from(o))
            .collect();
        let snf = smith_normal_form(&IntMatrix::diagonal(&finite));
        Self::from_invariant_factors(rank + zeros, &snf.invariant_factors)
    }

    /// Build from a divisibility chain as produced by Smith normal form.
    pub fn from_invariant_factors(rank: usize, factors: &[BigInt]) -> Self {
        let torsion = factors
            .iter()
            .map(|f| f.abs())
            .filter(|f| !f.is_one() && !f.is_zero())
            .map(|f| f.to_u64().expect("invariant factor fits in u64"))
            .collect();
        FGAbelianGroup { rank, torsion }
    }

    /// The cokernel of an integer matrix `M: ℤ^cols -> ℤ^rows`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        Self::from_invariant_factors(m.rows() - snf.rank, &snf.invariant_factors)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::new(self.rank + other.rank, &orders)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self == other
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupOp {
    DirectSum,
    IsIsomorphic,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupOpResult {
    Group(FGAbelianGroup),
    Bool(bool),
}

pub fn group_ops(a: &FGAbelianGroup, b: &FGAbelianGroup, op: GroupOp) -> GroupOpResult {
    match op {
        GroupOp::DirectSum => GroupOpResult::Group(a.direct_sum(b)),
        GroupOp::IsIsomorphic => GroupOpResult::Bool(a.is_isomorphic(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt() {
        let g = FGAbelianGroup::cyclic(2).direct_sum(&FGAbelianGroup::cyclic(3));
        assert_eq!(g, FGAbelianGroup::cyclic(6));
    }

    #[test]
    fn zero_is_neutral() {
        let g = FGAbelianGroup::new(2, &[4, 6]);
        assert_eq!(FGAbelianGroup::zero().direct_sum(&g), g);
        assert_eq!(g.torsion, vec![2, 12]);
    }

    #[test]
    fn z2_z2m_differs_from_z4m() {
        for m in 1..=8 {
            let a = FGAbelianGroup::new(m as usize, &[2, 2 * m]);
            let b = FGAbelianGroup::new(m as usize, &[4 * m]);
            assert_eq!(
                group_ops(&a, &b, GroupOp::IsIsomorphic),
                GroupOpResult::Bool(false)
            );
        }
    }

    #[test]
    fn display() {
        assert_eq!(FGAbelianGroup::new(1, &[2]).to_string(), "Z + Z_2");
        assert_eq!(FGAbelianGroup::zero().to_string(), "0");
    }
}
