use serde::Serialize;

use super::resolution::{verify_resolution, ResolutionOfIdentity};
use super::spec::{GradingGroup, GradingSpec};
use super::GradingError;

/// The sequence `0 -> ℤ --(×N)--> ℤ -> ℤ_N -> 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct TowerSpec {
    pub modulus: u64,
}

/// Certificates for the two generators `±1` of a cyclic or integer grading.
#[derive(Clone, PartialEq, Debug)]
pub struct GeneratorCertificates {
    pub plus: ResolutionOfIdentity,
    pub minus: ResolutionOfIdentity,
}

impl GeneratorCertificates {
    /// A certificate for degree `d`, composed from copies of the `±1` ones.
    /// For a cyclic grading of modulus `N` the shorter way round is used.
    pub fn at_degree(&self, d: i64, g: &GradingSpec) -> ResolutionOfIdentity {
        let d = match g.group {
            GradingGroup::Cyclic(n) => {
                let n = n as i64;
                let r = d.rem_euclid(n);
                if r <= n - r {
                    r
                } else {
                    r - n
                }
            }
            _ => d,
        };
        let step = if d >= 0 { &self.plus } else { &self.minus };
        let mut acc = ResolutionOfIdentity::trivial(g.presentation);
        for _ in 0..d.unsigned_abs() {
            acc = acc.compose(step, g);
        }
        acc
    }
}

fn require_valid(
    r: &ResolutionOfIdentity,
    g: &GradingSpec,
    what: &str,
) -> Result<(), GradingError> {
    let report = verify_resolution(r, g);
    if !report.valid {
        return Err(GradingError::Precondition(format!(
            "{what} certificate for degree {} does not verify",
            r.target
        )));
    }
    Ok(())
}

/// Lift a ℤ_N-certificate to the weighted ℤ-grading.
///
/// Each cyclic pair is split into ℤ-homogeneous parts `(α, β)` with
/// `|β| = target + tN`; a lens certificate `{(u_j, v_j)}` of degree `-t`
/// is inserted between them, giving pairs `(α u_j, v_j β)`.
pub fn compose_tower_resolutions(
    t: &TowerSpec,
    z_grading: &GradingSpec,
    lens: &GeneratorCertificates,
    cyclic: &GeneratorCertificates,
    target: i64,
) -> Result<ResolutionOfIdentity, GradingError> {
    if z_grading.group != GradingGroup::Integers {
        return Err(GradingError::Precondition(
            "tower target must be the Z-grading".into(),
        ));
    }
    let big_n = t.modulus;
    let lens_g = z_grading.with_group(GradingGroup::LensIntegers(big_n));
    let cyc_g = z_grading.with_group(GradingGroup::Cyclic(big_n));
    require_valid(&lens.plus, &lens_g, "lens +1")?;
    require_valid(&lens.minus, &lens_g, "lens -1")?;
    require_valid(&cyclic.plus, &cyc_g, "cyclic +1")?;
    require_valid(&cyclic.minus, &cyc_g, "cyclic -1")?;

    let h_cert = cyclic.at_degree(target, &cyc_g);
    let mut pairs = Vec::new();
    for (d, alpha, beta) in h_cert.split_homogeneous(z_grading) {
        let shift = d - target;
        debug_assert_eq!(shift.rem_euclid(big_n as i64), 0);
        let k_cert = lens.at_degree(-shift / big_n as i64, &lens_g);
        for (u, v) in &k_cert.pairs {
            let a = &alpha * u;
            let b = v * &beta;
            if !a.is_zero() && !b.is_zero() {
                pairs.push((a, b));
            }
        }
    }
    let out = ResolutionOfIdentity { target, pairs };
    let report = verify_resolution(&out, z_grading);
    if !report.valid {
        return Err(GradingError::Unverified(Box::new(report)));
    }
    Ok(out)
}
