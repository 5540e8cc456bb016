use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::rc::Rc;

use rand::RngCore;
use serde::Serialize;

use super::element::AlgebraElement;
use super::generator::{FormalSum, Generator, Word};
use super::monomial::Monomial;
use super::AlgebraError;
use crate::scalar::QScalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    /// O(S^{2n+1}_q): generators z_0..z_n and their adjoints.
    Sphere,
    /// O(Σ^{2n+1}_q): sphere generators plus a central unitary w with z_n* = w z_n.
    Sigma,
}

/// A presentation of one of the two algebras as a rewriting system.
///
/// Sphere orientation:
///
/// ```text
/// z_j z_i   -> q^-1 z_i z_j                               (j > i)
/// z_j* z_i* -> q^-1 z_i* z_j*                             (j < i)
/// z_i* z_j  -> q^-1 z_j z_i*                              (i != j)
/// z_i* z_i  -> z_i z_i* - (q^-2 - 1) sum_{j>i} z_j z_j*   (i < n)
/// z_n* z_n  -> z_n z_n*
/// z_n z_n*  -> 1 - sum_{j<n} z_j z_j*
/// ```
///
/// Sigma orientation: `z_n* -> z_n w`, `w`/`w*` move to the right and cancel,
/// the first three sphere rules for indices below `n`, and
///
/// ```text
/// z_i* z_i  -> z_i z_i* - (q^-2 - 1)(1 - sum_{j<=i} z_j z_j*)   (i < n)
/// z_n z_n   -> w* (1 - sum_{j<n} z_j z_j*)
/// ```
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct AlgebraPresentation {
    pub kind: PresentationKind,
    pub n: usize,
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PresentationKind::Sphere => write!(f, "sphere({})", self.n),
            PresentationKind::Sigma => write!(f, "sigma({})", self.n),
        }
    }
}

/// How to reduce a formal sum to normal form.
pub enum Strategy<'a> {
    /// Build the product letter by letter from the right, caching
    /// `normal(m * g)` for normal monomials `m` and generators `g`.
    Memoized,
    /// Always contract the leftmost redex of the most recent word.
    Leftmost,
    /// Contract a random redex in each word, preferring single-term rules;
    /// the choice is a seeded hash of the word so equal words stay merged.
    Random(&'a mut dyn RngCore),
}

type Terms = Vec<(Monomial, QScalar)>;

const CACHE_LIMIT: usize = 1 << 18;

thread_local! {
    static PRODUCT_CACHE: RefCell<HashMap<(AlgebraPresentation, Monomial, Generator), Rc<Terms>>> =
        RefCell::new(HashMap::new());
}

fn accumulate_word(acc: &mut HashMap<Word, QScalar>, w: Word, c: QScalar) {
    accumulate_into(acc, w, c)
}

fn accumulate(acc: &mut HashMap<Monomial, QScalar>, m: Monomial, c: QScalar) {
    accumulate_into(acc, m, c)
}

fn accumulate_into<K: std::hash::Hash + Eq>(acc: &mut HashMap<K, QScalar>, m: K, c: QScalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

type Replacement = Vec<(QScalar, Word)>;

impl AlgebraPresentation {
    pub fn sphere(n: usize) -> Self {
        assert!(n >= 1, "sphere presentation needs n >= 1");
        AlgebraPresentation {
            kind: PresentationKind::Sphere,
            n,
        }
    }

    pub fn sigma(n: usize) -> Self {
        assert!(n >= 1, "sigma presentation needs n >= 1");
        AlgebraPresentation {
            kind: PresentationKind::Sigma,
            n,
        }
    }

    pub fn is_sigma(&self) -> bool {
        self.kind == PresentationKind::Sigma
    }

    /// The generators this presentation accepts.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = (0..=self.n)
            .flat_map(|i| [Generator::Z(i), Generator::ZStar(i)])
            .collect();
        if self.is_sigma() {
            gens.extend([Generator::W, Generator::WStar]);
        }
        gens
    }

    pub fn check_generator(&self, g: Generator) -> Result<(), AlgebraError> {
        match g {
            Generator::Z(i) | Generator::ZStar(i) if i > self.n => {
                Err(AlgebraError::IndexOutOfRange {
                    index: i,
                    n: self.n,
                })
            }
            Generator::W | Generator::WStar if !self.is_sigma() => {
                Err(AlgebraError::InvalidGenerator {
                    generator: g.to_string(),
                    presentation: self.to_string(),
                })
            }
            _ => Ok(()),
        }
    }

    pub fn check_word(&self, w: &[Generator]) -> Result<(), AlgebraError> {
        w.iter().try_for_each(|&g| self.check_generator(g))
    }

    /// Whether `m` satisfies the normal-form constraints of this presentation.
    pub fn is_normal_monomial(&self, m: &Monomial) -> bool {
        let n = self.n;
        if m.a.len() != n + 1 || m.b.len() != n + 1 {
            return false;
        }
        match self.kind {
            PresentationKind::Sphere => m.s == 0 && m.a[n].min(m.b[n]) == 0,
            PresentationKind::Sigma => m.b[n] == 0 && m.a[n] <= 1,
        }
    }

    /// Rule applicable at `pos`: the length of the matched pattern and its replacement.
    fn rule_at(&self, w: &[Generator], pos: usize, k: &Constants) -> Option<(usize, Replacement)> {
        use Generator::*;
        let n = self.n;
        let sigma = self.is_sigma();
        let x = w[pos];
        if sigma && x == ZStar(n) {
            return Some((1, vec![(QScalar::one(), vec![Z(n), W])]));
        }
        let y = *w.get(pos + 1)?;
        let one = || QScalar::one();
        let rep = match (x, y) {
            (W, W) | (WStar, WStar) => return None,
            (W, WStar) | (WStar, W) => vec![(one(), vec![])],
            (W, g) | (WStar, g) => vec![(one(), vec![g, x])],
            (Z(j), Z(i)) if j > i => vec![(k.q_inv.clone(), vec![Z(i), Z(j)])],
            (ZStar(j), ZStar(i)) if j < i => vec![(k.q_inv.clone(), vec![ZStar(i), ZStar(j)])],
            (ZStar(i), Z(j)) if i != j => vec![(k.q_inv.clone(), vec![Z(j), ZStar(i)])],
            (ZStar(i), Z(_)) if i < n && !sigma => {
                let mut r = vec![(one(), vec![Z(i), ZStar(i)])];
                r.extend((i + 1..=n).map(|j| (k.neg_c.clone(), vec![Z(j), ZStar(j)])));
                r
            }
            (ZStar(i), Z(_)) if i < n => {
                let mut r = vec![(one(), vec![Z(i), ZStar(i)]), (k.neg_c.clone(), vec![])];
                r.extend((0..=i).map(|j| (k.c.clone(), vec![Z(j), ZStar(j)])));
                r
            }
            (ZStar(_), Z(_)) => vec![(one(), vec![Z(n), ZStar(n)])],
            (Z(i), ZStar(j)) if i == n && j == n && !sigma => {
                let mut r = vec![(one(), vec![])];
                r.extend((0..n).map(|j| (-one(), vec![Z(j), ZStar(j)])));
                r
            }
            (Z(i), Z(j)) if sigma && i == n && j == n => {
                let mut r = vec![(one(), vec![WStar])];
                r.extend((0..n).map(|j| (-one(), vec![Z(j), ZStar(j), WStar])));
                r
            }
            _ => return None,
        };
        Some((2, rep))
    }

    fn first_redex(&self, w: &[Generator], k: &Constants) -> Option<(usize, usize, Replacement)> {
        (0..w.len()).find_map(|p| self.rule_at(w, p, k).map(|(len, rep)| (p, len, rep)))
    }

    /// Rewrite a formal sum to normal form.
    pub fn normalize(&self, x: &FormalSum) -> Result<AlgebraElement, AlgebraError> {
        self.normalize_with(x, Strategy::Memoized)
    }

    /// `normal(m * g)` for a normal monomial `m`.
    fn times_generator(&self, m: &Monomial, g: Generator, k: &Constants) -> Rc<Terms> {
        let key = (*self, m.clone(), g);
        if let Some(hit) = PRODUCT_CACHE.with(|c| c.borrow().get(&key).cloned()) {
            return hit;
        }
        let out = Rc::new(self.times_generator_uncached(m, g, k));
        PRODUCT_CACHE.with(|c| {
            let mut c = c.borrow_mut();
            if c.len() >= CACHE_LIMIT {
                c.clear();
            }
            c.insert(key, out.clone());
        });
        out
    }

    fn times_generator_uncached(&self, m: &Monomial, g: Generator, k: &Constants) -> Terms {
        let n = self.n;
        if self.is_sigma() && g == Generator::ZStar(n) {
            return self.times_word(m, &[Generator::Z(n), Generator::W], k);
        }
        let mut w = m.to_word();
        let Some(&x) = w.last() else {
            return vec![(Monomial::from_normal_word(n, &[g]), QScalar::one())];
        };
        match self.rule_at(&[x, g], 0, k) {
            Some((2, rep)) => {
                w.pop();
                let prefix = Monomial::from_normal_word(n, &w);
                let mut acc = HashMap::new();
                for (c, rw) in rep {
                    for (t, tc) in self.times_word(&prefix, &rw, k) {
                        accumulate(&mut acc, t, &c * &tc);
                    }
                }
                acc.into_iter().collect()
            }
            _ => {
                w.push(g);
                vec![(Monomial::from_normal_word(n, &w), QScalar::one())]
            }
        }
    }

    /// `normal(m * w)` for a normal monomial `m`.
    fn times_word(&self, m: &Monomial, w: &[Generator], k: &Constants) -> Terms {
        let mut cur: Terms = vec![(m.clone(), QScalar::one())];
        for &g in w {
            let mut next = HashMap::new();
            for (t, c) in &cur {
                for (t2, c2) in self.times_generator(t, g, k).iter() {
                    accumulate(&mut next, t2.clone(), c * c2);
                }
            }
            cur = next.into_iter().collect();
        }
        cur
    }

    pub fn normalize_word(&self, w: &[Generator]) -> Result<AlgebraElement, AlgebraError> {
        self.normalize(&vec![(QScalar::one(), w.to_vec())])
    }

    /// Rewrite with an explicit redex-selection strategy. Every strategy
    /// must give the same answer; tests compare them.
    pub fn normalize_with(
        &self,
        x: &FormalSum,
        mut strategy: Strategy<'_>,
    ) -> Result<AlgebraElement, AlgebraError> {
        for (_, w) in x {
            self.check_word(w)?;
        }
        let k = Constants::new();
        if let Strategy::Memoized = strategy {
            let mut out = AlgebraElement::zero(*self);
            let one = Monomial::one(self.n);
            for (c, w) in x {
                for (t, tc) in self.times_word(&one, w, &k) {
                    out.add_term(t, c * &tc);
                }
            }
            return Ok(out);
        }
        let mut pending: HashMap<Word, QScalar> = HashMap::new();
        for (c, w) in x {
            accumulate_word(&mut pending, w.clone(), c.clone());
        }
        let seed = match &mut strategy {
            Strategy::Random(rng) => rng.next_u64(),
            _ => 0,
        };
        let mut out = AlgebraElement::zero(*self);
        // one redex per pending word per round, merging like words between rounds
        while !pending.is_empty() {
            let mut round: Vec<(Word, QScalar)> = pending.drain().collect();
            round.sort_by(|a, b| a.0.cmp(&b.0));
            for (w, c) in round {
                let found = match strategy {
                    Strategy::Random(_) => {
                        let all: Vec<(usize, usize, Replacement)> = (0..w.len())
                            .filter_map(|p| self.rule_at(&w, p, &k).map(|(len, rep)| (p, len, rep)))
                            .collect();
                        let single: Vec<usize> =
                            (0..all.len()).filter(|&i| all[i].2.len() == 1).collect();
                        let pool: Vec<usize> = if single.is_empty() {
                            (0..all.len()).collect()
                        } else {
                            single
                        };
                        if pool.is_empty() {
                            None
                        } else {
                            let mut h = DefaultHasher::new();
                            (seed, &w).hash(&mut h);
                            let i = pool[(h.finish() % pool.len() as u64) as usize];
                            all.into_iter().nth(i)
                        }
                    }
                    _ => self.first_redex(&w, &k),
                };
                match found {
                    None => out.add_term(Monomial::from_normal_word(self.n, &w), c),
                    Some((p, len, rep)) => {
                        for (rc, rw) in rep {
                            let mut nw = Word::with_capacity(w.len() + rw.len());
                            nw.extend_from_slice(&w[..p]);
                            nw.extend(rw);
                            nw.extend_from_slice(&w[p + len..]);
                            accumulate_word(&mut pending, nw, &c * &rc);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The defining relations as pairs `(lhs, rhs)` of formal sums.
    pub fn defining_relations(&self) -> Vec<(String, FormalSum, FormalSum)> {
        use Generator::*;
        let n = self.n;
        let q = QScalar::q();
        let c = &QScalar::q_pow(-2) - &QScalar::one();
        let one = QScalar::one;
        let mut rels = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                rels.push((
                    format!("z{i} z{j} = q z{j} z{i}"),
                    vec![(one(), vec![Z(i), Z(j)])],
                    vec![(q.clone(), vec![Z(j), Z(i)])],
                ));
            }
            for j in 0..=n {
                if i != j {
                    rels.push((
                        format!("z{i} z{j}* = q z{j}* z{i}"),
                        vec![(one(), vec![Z(i), ZStar(j)])],
                        vec![(q.clone(), vec![ZStar(j), Z(i)])],
                    ));
                }
            }
            let mut rhs = vec![(one(), vec![ZStar(i), Z(i)])];
            rhs.extend((i + 1..=n).map(|j| (c.clone(), vec![Z(j), ZStar(j)])));
            rels.push((
                format!("z{i} z{i}* = z{i}* z{i} + (q^-2 - 1) sum_(j>{i}) zj zj*"),
                vec![(one(), vec![Z(i), ZStar(i)])],
                rhs,
            ));
        }
        rels.push((
            "sum_j zj zj* = 1".to_string(),
            (0..=n).map(|j| (one(), vec![Z(j), ZStar(j)])).collect(),
            vec![(one(), vec![])],
        ));
        if self.is_sigma() {
            rels.push((
                format!("z{n}* = w z{n}"),
                vec![(one(), vec![ZStar(n)])],
                vec![(one(), vec![W, Z(n)])],
            ));
            rels.push((
                "w w* = 1".to_string(),
                vec![(one(), vec![W, WStar])],
                vec![(one(), vec![])],
            ));
            rels.push((
                "w* w = 1".to_string(),
                vec![(one(), vec![WStar, W])],
                vec![(one(), vec![])],
            ));
            for g in (0..=n).flat_map(|i| [Z(i), ZStar(i)]) {
                rels.push((
                    format!("w {g} = {g} w"),
                    vec![(one(), vec![W, g])],
                    vec![(one(), vec![g, W])],
                ));
            }
        }
        rels
    }
}

struct Constants {
    q_inv: QScalar,
    /// q^-2 - 1
    c: QScalar,
    neg_c: QScalar,
}

impl Constants {
    fn new() -> Self {
        let c = &QScalar::q_pow(-2) - &QScalar::one();
        Constants {
            q_inv: QScalar::q_pow(-1),
            neg_c: -&c,
            c,
        }
    }
}
