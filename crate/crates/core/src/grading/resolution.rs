use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::spec::{degree, homogeneous_component, Degree, GradingSpec};
use crate::star_algebra::{AlgebraElement, AlgebraPresentation};

/// A finite family `{(a_i, b_i)}` with `sum a_i b_i = 1`, each `b_i` of
/// degree `target` and each `a_i` of the inverse degree.
#[derive(Clone, PartialEq, Debug)]
pub struct ResolutionOfIdentity {
    pub target: i64,
    pub pairs: Vec<(AlgebraElement, AlgebraElement)>,
}

impl ResolutionOfIdentity {
    /// `{(1, 1)}` at the neutral degree.
    pub fn trivial(p: AlgebraPresentation) -> Self {
        let one = AlgebraElement::one(p);
        ResolutionOfIdentity {
            target: 0,
            pairs: vec![(one.clone(), one)],
        }
    }

    /// `sum a_i b_i`, normalized.
    pub fn product_sum(&self, p: AlgebraPresentation) -> AlgebraElement {
        self.pairs
            .iter()
            .fold(AlgebraElement::zero(p), |acc, (a, b)| &acc + &(a * b))
    }

    /// Pairs `(a_i a'_j, b'_j b_i)`; the result certifies the sum of the two targets.
    pub fn compose(&self, inner: &ResolutionOfIdentity, g: &GradingSpec) -> Self {
        let mut pairs = Vec::with_capacity(self.pairs.len() * inner.pairs.len());
        for (a, b) in &self.pairs {
            for (a2, b2) in &inner.pairs {
                pairs.push((a * a2, b2 * b));
            }
        }
        ResolutionOfIdentity {
            target: g.add(self.target, inner.target),
            pairs,
        }
        .prune()
    }

    /// Swap the roles of `a_i` and `b_i` through the involution:
    /// `{(b_i*, a_i*)}` certifies the same target when the grading is *-compatible.
    pub fn adjoint_pairs(&self) -> Self {
        ResolutionOfIdentity {
            target: self.target,
            pairs: self
                .pairs
                .iter()
                .map(|(a, b)| (b.adjoint(), a.adjoint()))
                .collect(),
        }
    }

    /// Split pairs into homogeneous components: `(a^{(-t)}, b^{(t)})` for every
    /// degree `t` present in `b`. Mismatched products cancel in aggregate, so
    /// the neutral part of `sum a b = 1` is kept.
    pub fn split_homogeneous(&self, g: &GradingSpec) -> Vec<(i64, AlgebraElement, AlgebraElement)> {
        let mut out = Vec::new();
        for (a, b) in &self.pairs {
            let mut ds: Vec<i64> = b
                .terms()
                .filter_map(|(m, _)| g.monomial_degree(m))
                .collect();
            ds.sort();
            ds.dedup();
            for d in ds {
                let bd = homogeneous_component(b, g, d);
                let ad = homogeneous_component(a, g, g.neg(d));
                if !ad.is_zero() {
                    out.push((d, ad, bd));
                }
            }
        }
        out
    }

    fn prune(mut self) -> Self {
        self.pairs.retain(|(a, b)| !a.is_zero() && !b.is_zero());
        self
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl Serialize for ResolutionOfIdentity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair<'a> {
            a: &'a AlgebraElement,
            b: &'a AlgebraElement,
        }
        let pairs: Vec<Pair> = self.pairs.iter().map(|(a, b)| Pair { a, b }).collect();
        let mut st = s.serialize_struct("ResolutionOfIdentity", 2)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("pairs", &pairs)?;
        st.end()
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct PairFailure {
    pub index: usize,
    /// `"a"` or `"b"`.
    pub side: &'static str,
    pub expected: i64,
    pub found: Degree,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ResolutionReport {
    pub valid: bool,
    pub target: i64,
    pub pair_count: usize,
    pub pair_failures: Vec<PairFailure>,
    /// `sum a_i b_i - 1` when it is nonzero.
    pub defect: Option<AlgebraElement>,
}

/// Check the degree conditions and that `sum a_i b_i` normalizes to 1.
pub fn verify_resolution(r: &ResolutionOfIdentity, g: &GradingSpec) -> ResolutionReport {
    let p = g.presentation;
    let target = g.normalize_degree(r.target);
    let inverse = g.neg(target);
    let mut pair_failures = Vec::new();
    for (index, (a, b)) in r.pairs.iter().enumerate() {
        let (da, db) = (degree(a, g), degree(b, g));
        if !da.matches(inverse) {
            pair_failures.push(PairFailure {
                index,
                side: "a",
                expected: inverse,
                found: da,
            });
        }
        if !db.matches(target) {
            pair_failures.push(PairFailure {
                index,
                side: "b",
                expected: target,
                found: db,
            });
        }
    }
    let bad_presentation = r
        .pairs
        .iter()
        .any(|(a, b)| a.presentation() != p || b.presentation() != p);
    let defect = if bad_presentation {
        None
    } else {
        let d = &r.product_sum(p) - &AlgebraElement::one(p);
        (!d.is_zero()).then_some(d)
    };
    ResolutionReport {
        valid: !bad_presentation && pair_failures.is_empty() && defect.is_none(),
        target,
        pair_count: r.pairs.len(),
        pair_failures,
        defect,
    }
}
