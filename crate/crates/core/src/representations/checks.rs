use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::operator::{
    apply_element, apply_formal_sum, assemble, eval_coefficient, quotient_step, walk,
};
use super::space::{Sector, TruncatedSpace};
use super::spec::{Family, RepSpec};
use super::RepError;
use crate::star_algebra::{
    lens_generators, teardrop_generators, AlgebraElement, AlgebraPresentation, FormalSum,
    Generator, Word,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Expected failure of a control case.
    Degenerate,
}

impl Status {
    pub(crate) fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

fn serialize_rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub relation: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub check: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub interior_dim: usize,
    pub empty_interior: bool,
    pub relations: Vec<RelationResidual>,
}

/// Largest entry of `lhs - rhs` over every defining relation, restricted to
/// columns that no word in the relation can push past the cutoff.
pub fn relation_residual(
    p: AlgebraPresentation,
    spec: &RepSpec,
    space: &TruncatedSpace,
    tolerance: f64,
) -> Result<ResidualReport, RepError> {
    if p != spec.presentation() {
        return Err(RepError::PresentationMismatch {
            expected: spec.presentation().to_string(),
            found: p.to_string(),
        });
    }
    if space.sector.is_some() {
        return Err(RepError::Precondition(
            "relations move between sectors; use the full space".into(),
        ));
    }
    let rels = p.defining_relations();
    let depth = rels
        .iter()
        .flat_map(|(_, l, r)| l.iter().chain(r))
        .map(|(_, w)| w.len())
        .max()
        .unwrap_or(0);
    let interior = space.interior(depth);
    let mut out = Vec::with_capacity(rels.len());
    for (name, lhs, rhs) in rels {
        let mut diff: FormalSum = lhs;
        diff.extend(rhs.into_iter().map(|(c, w)| (-&c, w)));
        let op = apply_formal_sum(&diff, spec, space)?;
        out.push(RelationResidual {
            relation: name,
            residual: op.max_abs_in_columns(&interior),
        });
    }
    let max = out.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(ResidualReport {
        check: "relation_residual".into(),
        status: Status::from_bool(max <= tolerance),
        max_residual: max,
        tolerance,
        interior_dim: interior.len(),
        empty_interior: interior.is_empty(),
        relations: out,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorReport {
    pub check: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub m: u64,
    pub generators: Vec<String>,
    pub off_sector_entries: usize,
    pub offending: Vec<String>,
    /// Off-sector entries of `z_0`, which must not be block-diagonal once `m > 1`.
    pub control_off_sector_entries: usize,
}

fn off_sector(op: &super::TruncatedOperator, space: &TruncatedSpace, m: u64) -> (usize, f64) {
    let mut count = 0;
    let mut max = 0.0f64;
    for e in &op.entries {
        if Sector::of(&space.basis()[e.row], m) != Sector::of(&space.basis()[e.col], m) {
            count += 1;
            max = max.max(e.value().norm());
        }
    }
    (count, max)
}

/// The invariant generators for weights `(1, ..., 1, m)`, without repeats.
fn invariant_generators(
    p: AlgebraPresentation,
    m: u32,
) -> Result<Vec<(String, AlgebraElement)>, RepError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (name, x) in teardrop_generators(p, m)?
        .into_iter()
        .chain(lens_generators(p, m)?)
    {
        if seen.insert(name.clone()) {
            out.push((name, x));
        }
    }
    Ok(out)
}

/// Whether the invariant generators preserve each `sum k_i ≡ s (mod m)`.
pub fn sector_split_check(
    spec: &RepSpec,
    m: u32,
    space: &TruncatedSpace,
) -> Result<SectorReport, RepError> {
    if matches!(spec.family, Family::BarPi { .. }) {
        return Err(RepError::Precondition(
            "sector splitting applies to sphere_pi and sigma_pi".into(),
        ));
    }
    if m == 0 {
        return Err(RepError::Parameter("m must be positive".into()));
    }
    let p = spec.presentation();
    let mut names = Vec::new();
    let mut offending = Vec::new();
    let mut total = 0;
    let mut max = 0.0f64;
    for (name, x) in invariant_generators(p, m)? {
        let (c, v) = off_sector(&apply_element(&x, spec, space)?, space, m as u64);
        if c > 0 {
            offending.push(name.clone());
        }
        total += c;
        max = max.max(v);
        names.push(name);
    }
    let z0 = AlgebraElement::generator(p, Generator::Z(0))?;
    let (control, _) = off_sector(&apply_element(&z0, spec, space)?, space, m as u64);
    Ok(SectorReport {
        check: "sector_split".into(),
        status: Status::from_bool(total == 0),
        max_residual: max,
        tolerance: 0.0,
        m: m as u64,
        generators: names,
        off_sector_entries: total,
        offending,
        control_off_sector_entries: control,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinctnessReport {
    pub check: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub q0: BigRational,
    pub n: usize,
    pub m: u32,
    pub vectors: usize,
    /// Pairs `i != j` with `γ^i_k = γ^j_k`.
    pub same_vector_collisions: usize,
    /// Values `γ^i` shared by vectors in one sector with different `k_i`.
    pub cross_vector_collisions: usize,
}

/// `γ^i_k`, the diagonal entry of `π(c_i c_i*)` at `|k>` for
/// `c_i = z_i^m z_n*`, exact at rational `q0`.
pub fn gamma(n: usize, m: u32, i: usize, k: &[u32], q0: &BigRational) -> BigRational {
    let mut word: Word = vec![Generator::Z(n)];
    word.extend(std::iter::repeat_n(Generator::ZStar(i), m as usize));
    let fam = Family::SpherePi {
        lambda: super::Phase::one(),
    };
    let (_, w) = walk(
        &word,
        k,
        &|g, v: &[u32]| super::operator::step(&fam, n, g, v),
        |_| true,
    )
    .expect("raising operators never annihilate");
    w.squared(q0)
}

/// Checks that the diagonal values `γ^i_k` separate basis vectors inside
/// each sector. At `q0 = 1` every value collapses and collisions are
/// reported as degenerate.
pub fn eigenvalue_distinctness(
    n: usize,
    m: u32,
    q0: &BigRational,
    space: &TruncatedSpace,
) -> Result<DistinctnessReport, RepError> {
    if n == 0 || m == 0 {
        return Err(RepError::Parameter("n and m must be positive".into()));
    }
    if space.n != n || space.admissible.is_some() {
        return Err(RepError::Precondition(format!(
            "space must be a sphere_pi space with n = {n}"
        )));
    }
    if *q0 <= BigRational::from_integer(0.into()) || *q0 > BigRational::one() {
        return Err(RepError::Parameter(format!("q0 = {q0} is not in (0, 1]")));
    }
    let sector_of = |k: &[u32]| space.sector.map_or(Sector::of(k, m as u64), |s| s.s);
    let mut same = 0;
    let mut seen: Vec<HashMap<(u64, BigRational), u32>> = vec![HashMap::new(); n];
    let mut cross = 0;
    for k in space.basis() {
        let s = sector_of(k);
        let vals: Vec<BigRational> = (0..n).map(|i| gamma(n, m, i, k, q0)).collect();
        for i in 0..n {
            for j in i + 1..n {
                if vals[i] == vals[j] {
                    same += 1;
                }
            }
        }
        for (i, v) in vals.into_iter().enumerate() {
            match seen[i].entry((s, v)) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != k[i] {
                        cross += 1;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(k[i]);
                }
            }
        }
    }
    let clean = same == 0 && cross == 0;
    let status = if q0.is_one() && !clean {
        Status::Degenerate
    } else {
        Status::from_bool(clean)
    };
    Ok(DistinctnessReport {
        check: "eigenvalue_distinctness".into(),
        status,
        max_residual: 0.0,
        tolerance: 0.0,
        q0: q0.clone(),
        n,
        m,
        vectors: space.dim(),
        same_vector_collisions: same,
        cross_vector_collisions: cross,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientItem {
    pub element: String,
    pub max_difference: f64,
    pub image_is_zero: bool,
    /// Changes of `sum k_i` produced by the image operator.
    pub sum_shifts: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub check: String,
    pub status: Status,
    pub max_residual: f64,
    pub tolerance: f64,
    pub items: Vec<QuotientItem>,
}

/// Compare two routes through `z_n ↦ 0`: acting on `H^{n-1}` with the
/// killed generator directly, and renormalizing the image in the sphere
/// algebra of dimension `n - 1` before representing it.
pub fn quotient_consistency(
    spec: &RepSpec,
    m: u32,
    space: &TruncatedSpace,
    tolerance: f64,
) -> Result<QuotientReport, RepError> {
    let lambda = match spec.family {
        Family::SpherePi { lambda } | Family::SigmaPi { lambda, .. } => lambda,
        Family::BarPi { .. } => {
            return Err(RepError::Precondition(
                "quotient check applies to sphere_pi and sigma_pi".into(),
            ))
        }
    };
    let n = spec.n;
    if n < 2 {
        return Err(RepError::Precondition("quotient check needs n >= 2".into()));
    }
    if space.n != n - 1 || space.sector.is_some() || space.admissible.is_some() {
        return Err(RepError::Precondition(format!(
            "expected the full space with n = {}",
            n - 1
        )));
    }
    let lower = AlgebraPresentation::sphere(n - 1);
    let q = spec.q0_f64();
    let mut items = Vec::new();
    for (name, x) in invariant_generators(spec.presentation(), m)? {
        let mut direct = Vec::new();
        let mut image = Vec::new();
        for (mono, c) in x.terms() {
            let cv = Complex64::new(eval_coefficient(c, &spec.q0)?, 0.0);
            let word = mono.to_word();
            direct.push((cv, word.clone()));
            if mono.a[n] > 0 || mono.b[n] > 0 {
                continue;
            }
            let coeff = cv * lambda.pow(-2 * mono.s);
            let bare: Word = word.into_iter().filter(|g| g.index().is_some()).collect();
            for (mm, cc) in lower.normalize_word(&bare)?.terms() {
                image.push((coeff * eval_coefficient(cc, &spec.q0)?, mm.to_word()));
            }
        }
        let qstep = |g, k: &[u32]| quotient_step(n, g, k);
        let lstep = |g, k: &[u32]| super::operator::step(&Family::SpherePi { lambda }, n - 1, g, k);
        let a = assemble(&direct, space, &qstep, q, &lambda);
        let b = assemble(&image, space, &lstep, q, &lambda);
        let depth = a.depth.max(b.depth);
        let diff = a.sub(&b).max_abs_in_columns(&space.interior(depth));
        let shifts: BTreeSet<i64> = b
            .entries
            .iter()
            .map(|e| {
                let s = |i: usize| space.basis()[i].iter().map(|&v| v as i64).sum::<i64>();
                s(e.row) - s(e.col)
            })
            .collect();
        items.push(QuotientItem {
            element: name,
            max_difference: diff,
            image_is_zero: image.is_empty() || b.nnz() == 0,
            sum_shifts: shifts.into_iter().collect(),
        });
    }
    let max = items.iter().map(|i| i.max_difference).fold(0.0, f64::max);
    Ok(QuotientReport {
        check: "quotient_consistency".into(),
        status: Status::from_bool(max <= tolerance),
        max_residual: max,
        tolerance,
        items,
    })
}
