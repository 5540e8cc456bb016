use std::collections::HashMap;

use serde::Serialize;

use super::RepError;

/// Basis vectors with `sum k_i ≡ s (mod m)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Sector {
    pub s: u64,
    pub m: u64,
}

impl Sector {
    pub fn of(k: &[u32], m: u64) -> u64 {
        k.iter().map(|&x| x as u64).sum::<u64>() % m
    }

    pub fn contains(&self, k: &[u32]) -> bool {
        Sector::of(k, self.m) == self.s
    }
}

/// Whether `p = (p_1, ..., p_n)` satisfies `p_1 <= ... <= p_k` and
/// `p_n < ... < p_{k+1}`.
pub fn admissible(p: &[u32], k: usize) -> bool {
    p[..k].windows(2).all(|w| w[0] <= w[1]) && p[k..].windows(2).all(|w| w[0] > w[1])
}

/// The span of `|k_0, ..., k_{n-1}>` with every `k_i <= cutoff`, optionally
/// cut down to a sector or to the admissible vectors of one `π̄_k`.
/// Basis vectors are kept in lexicographic order.
#[derive(Clone, Debug, Serialize)]
pub struct TruncatedSpace {
    pub n: usize,
    pub cutoff: u32,
    pub sector: Option<Sector>,
    pub admissible: Option<usize>,
    #[serde(skip)]
    basis: Vec<Vec<u32>>,
    #[serde(skip)]
    index: HashMap<Vec<u32>, usize>,
}

impl TruncatedSpace {
    pub fn new(
        n: usize,
        cutoff: u32,
        sector: Option<Sector>,
        admissible_for: Option<usize>,
    ) -> Result<Self, RepError> {
        if n == 0 {
            return Err(RepError::Parameter("the space needs n >= 1".into()));
        }
        if let Some(sec) = sector {
            if sec.m == 0 || sec.s >= sec.m {
                return Err(RepError::Parameter(format!(
                    "bad sector s = {}, m = {}",
                    sec.s, sec.m
                )));
            }
        }
        if let Some(k) = admissible_for {
            if k > n {
                return Err(RepError::Parameter(format!("k = {k} exceeds n = {n}")));
            }
        }
        let side = cutoff as usize + 1;
        let total = side
            .checked_pow(n as u32)
            .filter(|&t| t <= 50_000_000)
            .ok_or_else(|| {
                RepError::Parameter(format!("(K+1)^n is too large for K = {cutoff}, n = {n}"))
            })?;
        let mut basis = Vec::new();
        let mut k = vec![0u32; n];
        for _ in 0..total {
            let keep = sector.is_none_or(|s| s.contains(&k))
                && admissible_for.is_none_or(|a| admissible(&k, a));
            if keep {
                basis.push(k.clone());
            }
            for j in (0..n).rev() {
                if k[j] < cutoff {
                    k[j] += 1;
                    break;
                }
                k[j] = 0;
            }
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        Ok(TruncatedSpace {
            n,
            cutoff,
            sector,
            admissible: admissible_for,
            basis,
            index,
        })
    }

    pub fn full(n: usize, cutoff: u32) -> Result<Self, RepError> {
        TruncatedSpace::new(n, cutoff, None, None)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn index_of(&self, k: &[u32]) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// True when every coordinate can be raised `depth` times without
    /// leaving the cutoff.
    pub fn is_interior(&self, idx: usize, depth: usize) -> bool {
        self.basis[idx]
            .iter()
            .all(|&x| x as usize + depth <= self.cutoff as usize)
    }

    pub fn interior(&self, depth: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.is_interior(i, depth))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_basis() {
        let s = TruncatedSpace::full(2, 1).unwrap();
        assert_eq!(s.basis(), &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(s.index_of(&[1, 0]), Some(2));
        assert_eq!(s.interior(1), vec![0]);
    }

    #[test]
    fn sectors_partition() {
        let full = TruncatedSpace::full(3, 4).unwrap();
        let total: usize = (0..3)
            .map(|s| {
                TruncatedSpace::new(3, 4, Some(Sector { s, m: 3 }), None)
                    .unwrap()
                    .dim()
            })
            .sum();
        assert_eq!(total, full.dim());
    }

    #[test]
    fn admissibility() {
        assert!(admissible(&[1, 2, 2], 3));
        assert!(!admissible(&[2, 1, 0], 3));
        assert!(admissible(&[2, 1, 0], 0));
        assert!(!admissible(&[2, 2], 0));
        assert!(admissible(&[0, 3, 1], 2));
        let s = TruncatedSpace::new(2, 3, None, Some(1)).unwrap();
        assert!(s.basis().iter().all(|p| admissible(p, 1)));
    }
}
