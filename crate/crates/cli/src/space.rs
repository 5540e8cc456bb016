use serde::Serialize;
use teardrop_core::grading::{GradingGroup, GradingSpec};
use teardrop_core::scalar::BigRational;
use teardrop_core::star_algebra::AlgebraPresentation;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Sphere,
    Sigma,
    Lens,
    SigmaLens,
    Wp,
    Rp,
}

fn serialize_q0<S: serde::Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

/// A space named on the command line, e.g. `--space lens --N 3 --weights 1,1,2`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    pub n: usize,
    pub weights: Vec<i64>,
    #[serde(rename = "N")]
    pub modulus: Option<u64>,
    #[serde(serialize_with = "serialize_q0")]
    pub q0: Option<BigRational>,
}

impl SpaceDescriptor {
    /// Weights default to all ones; `n` may be omitted when weights are given.
    pub fn new(
        kind: SpaceKind,
        n: Option<usize>,
        weights: Option<Vec<i64>>,
        modulus: Option<u64>,
        q0: Option<BigRational>,
    ) -> Result<Self, String> {
        let (n, weights) = match (n, weights) {
            (Some(n), Some(w)) if w.len() != n + 1 => {
                return Err(format!("n = {n} needs {} weights, got {}", n + 1, w.len()));
            }
            (_, Some(w)) if w.len() < 2 => return Err("at least two weights are required".into()),
            (_, Some(w)) => (w.len() - 1, w),
            (Some(n), None) => (n, vec![1; n + 1]),
            (None, None) => return Err("give n or the weights".into()),
        };
        if n == 0 {
            return Err("n must be at least 1".into());
        }
        if weights.iter().any(|&m| m <= 0) {
            return Err("weights must be positive".into());
        }
        let modulus = match (kind, modulus) {
            (SpaceKind::Lens | SpaceKind::SigmaLens, None) => {
                return Err("lens spaces need --N".into());
            }
            (_, Some(0)) => return Err("N must be at least 1".into()),
            (SpaceKind::Sphere | SpaceKind::Sigma, Some(_)) => {
                return Err("--N applies to lens, sigma_lens, wp and rp".into());
            }
            (SpaceKind::Wp | SpaceKind::Rp, None) => Some(weights.iter().product::<i64>() as u64),
            (_, m) => m,
        };
        Ok(SpaceDescriptor {
            kind,
            n,
            weights,
            modulus,
            q0,
        })
    }

    pub fn presentation(&self) -> AlgebraPresentation {
        match self.kind {
            SpaceKind::Sphere | SpaceKind::Lens | SpaceKind::Wp => {
                AlgebraPresentation::sphere(self.n)
            }
            SpaceKind::Sigma | SpaceKind::SigmaLens | SpaceKind::Rp => {
                AlgebraPresentation::sigma(self.n)
            }
        }
    }

    /// The grading whose strength makes this space the base or total space of
    /// a principal bundle: the circle action on the sphere, the cyclic action
    /// with quotient the lens space, and the circle action on the lens space
    /// with quotient the weighted projective space.
    pub fn grading(&self) -> Result<GradingSpec, String> {
        let group = match self.kind {
            SpaceKind::Sphere | SpaceKind::Sigma => GradingGroup::Integers,
            SpaceKind::Lens | SpaceKind::SigmaLens => {
                GradingGroup::Cyclic(self.modulus.unwrap_or(1))
            }
            SpaceKind::Wp | SpaceKind::Rp => GradingGroup::LensIntegers(self.modulus.unwrap_or(1)),
        };
        GradingSpec::new(self.presentation(), self.weights.clone(), group)
            .map_err(|e| e.to_string())
    }
}
