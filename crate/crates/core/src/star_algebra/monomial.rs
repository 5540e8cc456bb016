use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::generator::{Generator, Word};

/// A normal-form monomial
/// `z0^a0 ... zn^an · zn*^bn ... z0*^b0 · w^s`.
///
/// Sphere presentation: `min(a_n, b_n) = 0` and `s = 0`.
/// Sigma presentation: `b_n = 0` and `a_n <= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Monomial {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub s: i64,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            a: vec![0; n + 1],
            b: vec![0; n + 1],
            s: 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.s == 0 && self.a.iter().chain(&self.b).all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.a.iter().chain(&self.b).map(|&e| e as u64).sum::<u64>() + self.s.unsigned_abs()
    }

    /// The word spelled by this monomial, in normal order.
    pub fn to_word(&self) -> Word {
        let mut w = Word::with_capacity(self.total_degree() as usize);
        for (i, &e) in self.a.iter().enumerate() {
            w.extend(std::iter::repeat_n(Generator::Z(i), e as usize));
        }
        for (i, &e) in self.b.iter().enumerate().rev() {
            w.extend(std::iter::repeat_n(Generator::ZStar(i), e as usize));
        }
        let wg = if self.s >= 0 {
            Generator::W
        } else {
            Generator::WStar
        };
        w.extend(std::iter::repeat_n(wg, self.s.unsigned_abs() as usize));
        w
    }

    /// Read back a word that is already in normal order.
    pub(crate) fn from_normal_word(n: usize, w: &[Generator]) -> Self {
        let mut m = Monomial::one(n);
        for g in w {
            match *g {
                Generator::Z(i) => m.a[i] += 1,
                Generator::ZStar(i) => m.b[i] += 1,
                Generator::W => m.s += 1,
                Generator::WStar => m.s -= 1,
            }
        }
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.a.cmp(&self.a))
            .then_with(|| other.b.cmp(&self.b))
            .then_with(|| self.s.cmp(&other.s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Juxtaposed generators, e.g. `z0^2 z1 z1* z0*^3 w*^2`; the empty monomial is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |g: Generator, e: u64| match e {
            0 => {}
            1 => parts.push(g.to_string()),
            _ => parts.push(format!("{g}^{e}")),
        };
        for (i, &e) in self.a.iter().enumerate() {
            push(Generator::Z(i), e as u64);
        }
        for (i, &e) in self.b.iter().enumerate().rev() {
            push(Generator::ZStar(i), e as u64);
        }
        if self.s > 0 {
            push(Generator::W, self.s as u64);
        } else {
            push(Generator::WStar, self.s.unsigned_abs());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
