//! Weighted gradings and resolutions of identity certifying strong gradings.

mod bezout;
mod resolution;
mod spec;
mod tower;
mod weighted;

pub use bezout::{
    bezout, bezout_lens_coefficients, bezout_lens_coefficients_inverse, bezout_lens_resolution,
    bezout_lens_resolution_inverse, poly_at, q_product, QPolyX,
};
pub use resolution::{verify_resolution, PairFailure, ResolutionOfIdentity, ResolutionReport};
pub use spec::{degree, degrees_present, homogeneous_component, Degree, GradingGroup, GradingSpec};
pub use tower::{compose_tower_resolutions, GeneratorCertificates, TowerSpec};
pub use weighted::{weighted_resolution, BPoly, WeightedResolution};

use serde::Serialize;
use thiserror::Error;

use crate::star_algebra::{AlgebraError, AlgebraPresentation};

#[derive(Debug, Clone, Error)]
pub enum GradingError {
    #[error("invalid grading: {0}")]
    BadSpec(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("constructed certificate failed verification")]
    Unverified(Box<ResolutionReport>),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constructor {
    Bezout,
    Weighted,
    Tower,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DegreeOutcome {
    Certified {
        constructor: Constructor,
        certificate: ResolutionOfIdentity,
        report: ResolutionReport,
    },
    /// No constructor applies; this is not a proof that the grading is not strong.
    NoConstructor {
        reason: String,
    },
    Failed {
        reason: String,
    },
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: i64,
    #[serde(flatten)]
    pub outcome: DegreeOutcome,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StrongGradingReport {
    pub presentation: AlgebraPresentation,
    pub grading: GradingSpec,
    /// True when every requested degree was certified.
    pub strong: bool,
    pub degrees: Vec<DegreeReport>,
}

enum Unavailable {
    NoConstructor(String),
    Failed(String),
}

fn failed(e: GradingError) -> Unavailable {
    Unavailable::Failed(e.to_string())
}

fn generator_certificates(
    g: &GradingSpec,
) -> Result<(Constructor, GeneratorCertificates), Unavailable> {
    match g.group {
        GradingGroup::Cyclic(big_n) => {
            if g.weights[0].rem_euclid(big_n as i64) != 1 % big_n as i64 {
                return Err(Unavailable::NoConstructor(format!(
                    "m0 = {} is not 1 mod {big_n}",
                    g.weights[0]
                )));
            }
            let plus = bezout_lens_resolution(g).map_err(failed)?;
            let minus = bezout_lens_resolution_inverse(g).map_err(failed)?;
            Ok((Constructor::Bezout, GeneratorCertificates { plus, minus }))
        }
        GradingGroup::LensIntegers(big_n) => {
            let product: i64 = g.weights.iter().product();
            if big_n as i64 != product {
                return Err(Unavailable::NoConstructor(format!(
                    "N = {big_n} differs from the weight product {product}"
                )));
            }
            let w = weighted_resolution(g).map_err(failed)?;
            Ok((
                Constructor::Weighted,
                GeneratorCertificates {
                    plus: w.res_plus,
                    minus: w.res_minus,
                },
            ))
        }
        GradingGroup::Integers => {
            if g.weights[0] != 1 {
                return Err(Unavailable::NoConstructor(format!(
                    "m0 = {} is not 1",
                    g.weights[0]
                )));
            }
            let big_n: i64 = g.weights.iter().product();
            let big_n = big_n as u64;
            let lens_g = g.with_group(GradingGroup::LensIntegers(big_n));
            let cyc_g = g.with_group(GradingGroup::Cyclic(big_n));
            let (_, lens) = generator_certificates(&lens_g)?;
            let (_, cyclic) = generator_certificates(&cyc_g)?;
            let t = TowerSpec { modulus: big_n };
            let plus = compose_tower_resolutions(&t, g, &lens, &cyclic, 1).map_err(failed)?;
            let minus = compose_tower_resolutions(&t, g, &lens, &cyclic, -1).map_err(failed)?;
            Ok((Constructor::Tower, GeneratorCertificates { plus, minus }))
        }
    }
}

/// Try to certify `A_d A_{-d} = A_0` for each requested degree `d`.
pub fn check_strong_grading(g: &GradingSpec, degrees: &[i64]) -> StrongGradingReport {
    let gens = generator_certificates(g);
    let mut out = Vec::new();
    for &d in degrees {
        let d = g.normalize_degree(d);
        let outcome = match &gens {
            Err(Unavailable::NoConstructor(reason)) => DegreeOutcome::NoConstructor {
                reason: reason.clone(),
            },
            Err(Unavailable::Failed(reason)) => DegreeOutcome::Failed {
                reason: reason.clone(),
            },
            Ok((constructor, certs)) => {
                let certificate = match d {
                    1 => certs.plus.clone(),
                    -1 => certs.minus.clone(),
                    _ if g.normalize_degree(-1) == d => certs.minus.clone(),
                    _ => certs.at_degree(d, g),
                };
                let report = verify_resolution(&certificate, g);
                if report.valid {
                    DegreeOutcome::Certified {
                        constructor: *constructor,
                        certificate,
                        report,
                    }
                } else {
                    DegreeOutcome::Failed {
                        reason: "certificate did not verify".into(),
                    }
                }
            }
        };
        out.push(DegreeReport { degree: d, outcome });
    }
    StrongGradingReport {
        presentation: g.presentation,
        grading: g.clone(),
        strong: out
            .iter()
            .all(|r| matches!(r.outcome, DegreeOutcome::Certified { .. })),
        degrees: out,
    }
}
