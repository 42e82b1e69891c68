//! One checker per bound, equality case and conjecture, plus the seeded
//! random-instance generators the property experiments draw from.
//!
//! Every checker computes the invariants involved from scratch and records
//! the literal comparison in a [`BoundReport`]. Conjectural statements never
//! fail: a violation is returned as a report carrying the offending input.

mod report;

pub use report::{Attainment, BoundReport, Comparison, Relation, StatementId};

use crate::codes::{crude_bounds, minimum_distance};
use crate::exactalg::FieldSpec;
use crate::geometry::{ci_grid, CiDescription, CompleteIntersection, FatPointScheme, ProjectivePoint};
use crate::ideals::{alpha, check_recursion_lemma, combinations, largest_recursion_degree, DEFAULT_DEGREE_CAP};
use crate::rng::{seeded, small_int, SplitMix64};
use crate::socle::{check_separator_socle, socle_profile};
use crate::{Error, Result};

use rand::Rng;

/// `m₁+⋯+m_d ≥ d(Z) ≥ m_{s−d+1}+⋯+m_s`.
pub fn check_crude(z: &FatPointScheme) -> Result<BoundReport> {
    crude_bounds(z)
}

/// `d(Z) ≥ α(I_Z) − m(Z)`.
pub fn check_hombound(z: &FatPointScheme) -> Result<BoundReport> {
    z.require_rational()?;
    let dz = minimum_distance(z)?.d as i64;
    let a = alpha(z, DEFAULT_DEGREE_CAP)? as i64;
    let m = z.max_multiplicity() as i64;
    let crude = crude_bounds(z)?;
    let mut report = BoundReport::new(StatementId::HomBound, format!("Z = {z}"));
    report.compare(Comparison::new("d(Z) >= alpha(I_Z) - m(Z)", dz, Relation::Ge, a - m));
    report.attained = Attainment::from_bool(dz == a - m);
    report
        .value("d_Z", dz)
        .value("alpha", a)
        .value("m_Z", m)
        .value("crude_lower", crude.values["lower"].clone());
    Ok(report)
}

/// `d(X) = α(I_X) − 1` iff some `s − 1` points of `X` lie on a hyperplane.
///
/// The right-hand side is decided by rank computations on all
/// `(s−1)`-subsets, independently of the distance algorithm.
pub fn check_boundscor(x: &FatPointScheme) -> Result<BoundReport> {
    x.require_rational()?;
    if !x.is_reduced() {
        return Err(Error::NotReduced);
    }
    let n = x.ambient_dim();
    // on a line a hyperplane is one point, while d(X) = s − 1 = α − 1 always
    if n < 2 {
        return Err(Error::HypothesisUnmet("ambient dimension must be at least 2".into()));
    }
    let dx = minimum_distance(x)?.d as i64;
    let a = alpha(x, DEFAULT_DEGREE_CAP)? as i64;
    let coords = x.coordinate_matrix();
    let on_hyperplane = combinations(x.len(), x.len() - 1)
        .iter()
        .any(|idx| coords.select_columns(idx).rank() <= n);
    let mut report = BoundReport::new(StatementId::BoundsCor, format!("X = {x}"));
    report.compare(Comparison::iff(
        "d(X) == alpha(I_X) - 1 <=> s-1 points on a hyperplane",
        dx == a - 1,
        on_hyperplane,
    ));
    report.attained = Attainment::NotApplicable;
    report
        .value("d_X", dx)
        .value("alpha", a)
        .value("s_minus_1_on_hyperplane", on_hyperplane);
    Ok(report)
}

/// For homogeneous `Z = m·X`: `s_n(Z) ≤ m·d(X)` when `d(X) ≥ α(I_X)`, and
/// `s_n(Z) ≤ 2m − 1` when `d(X) = α(I_X) − 1`.
pub fn check_maintheorem(z: &FatPointScheme, seed: u64) -> Result<BoundReport> {
    z.require_rational()?;
    let m = z.homogeneous_multiplicity().ok_or(Error::NotHomogeneous)? as i64;
    let x = z.support();
    let dx = minimum_distance(&x)?.d as i64;
    let a = alpha(&x, DEFAULT_DEGREE_CAP)? as i64;
    let sn = socle_profile(z, seed)?.min_socle_degree as i64;
    let mut report;
    if dx >= a {
        report = BoundReport::new(StatementId::MainTheoremI, format!("Z = {z}"));
        report.compare(Comparison::new("s_n(Z) <= m*d(X)", sn, Relation::Le, m * dx));
        report.attained = Attainment::from_bool(sn == m * dx);
    } else {
        report = BoundReport::new(StatementId::MainTheoremII, format!("Z = {z}"));
        report.compare(Comparison::new("d(X) == alpha(I_X) - 1", dx, Relation::Eq, a - 1));
        report.compare(Comparison::new("s_n(Z) <= 2m - 1", sn, Relation::Le, 2 * m - 1));
        report.attained = Attainment::from_bool(sn == 2 * m - 1);
    }
    report
        .value("m", m)
        .value("d_X", dx)
        .value("alpha_X", a)
        .value("min_socle_degree", sn);
    Ok(report)
}

/// `d(Z) ≥ s_n(Z) − m(Z) + 1`, evaluated in conjecture mode.
pub fn open_question_experiment(z: &FatPointScheme, seed: u64) -> Result<BoundReport> {
    z.require_rational()?;
    let dz = minimum_distance(z)?.d as i64;
    let sn = socle_profile(z, seed)?.min_socle_degree as i64;
    let m = z.max_multiplicity() as i64;
    let mut report = BoundReport::new(StatementId::OpenQuestion, format!("Z = {z}"));
    report.compare(Comparison::new(
        "d(Z) >= s_n(Z) - m(Z) + 1",
        dz,
        Relation::Ge,
        sn - m + 1,
    ));
    report.attained = Attainment::from_bool(dz == sn - m + 1);
    report.value("d_Z", dz).value("min_socle_degree", sn).value("m_Z", m);
    flag_counterexample(&mut report, z);
    Ok(report)
}

fn flag_counterexample(report: &mut BoundReport, z: &FatPointScheme) {
    if report.statement.is_conjectural() && !report.holds {
        report.counterexample = Some(crate::fps::serialize(z));
    }
}

fn ci_inputs(ci: &CompleteIntersection) -> String {
    let degrees: Vec<String> = ci.degrees.iter().map(|d| d.to_string()).collect();
    format!("CI({}), X = {}", degrees.join(","), ci.scheme)
}

/// Most points of `X` on one hyperplane, and whether the grid is generic in
/// the sense that this equals `d₂⋯d_n`.
fn grid_genericity(ci: &CompleteIntersection) -> Result<(i64, bool)> {
    let hyp = ci.scheme.len() as i64 - minimum_distance(&ci.scheme)?.d as i64;
    let expected: usize = ci.degrees[1..].iter().product();
    Ok((hyp, hyp == expected as i64))
}

/// `d(X) ≥ d₁ + ⋯ + d_n − n` for a reduced complete intersection.
pub fn check_cibound(ci: &CompleteIntersection) -> Result<BoundReport> {
    let n = ci.degrees.len() as i64;
    let dx = minimum_distance(&ci.scheme)?.d as i64;
    let bound = ci.degrees.iter().sum::<usize>() as i64 - n;
    let mut report = BoundReport::new(StatementId::CIBound, ci_inputs(ci));
    report.compare(Comparison::new("d(X) >= d_1+...+d_n - n", dx, Relation::Ge, bound));
    report.attained = Attainment::from_bool(dx == bound);
    report.value("d_X", dx).value("degrees", ci.degrees.clone());
    Ok(report)
}

/// `s_n(m·X) = m·d₁ + d₂ + ⋯ + d_n − n`.
pub fn check_ci_socle_formula(ci: &CompleteIntersection, m: u32, seed: u64) -> Result<BoundReport> {
    let n = ci.degrees.len() as i64;
    let z = ci.scheme.with_multiplicity(m);
    let sn = socle_profile(&z, seed)?.min_socle_degree as i64;
    let formula = m as i64 * ci.degrees[0] as i64 + ci.degrees[1..].iter().sum::<usize>() as i64 - n;
    let mut report = BoundReport::new(StatementId::SocleValueCI, format!("{}, m = {m}", ci_inputs(ci)));
    report.compare(Comparison::new(
        "s_n(Z) == m*d_1 + d_2+...+d_n - n",
        sn,
        Relation::Eq,
        formula,
    ));
    report.attained = Attainment::NotApplicable;
    report
        .value("min_socle_degree", sn)
        .value("formula", formula)
        .value("m", m);
    Ok(report)
}

/// For `m ≥ 2`: `m·d(X) = s_n(Z)` exactly when the type is `(2,2)`.
///
/// At `m = 1` the equivalence is not claimed and the values are only
/// recorded. On a grid that is not generic the comparison is recorded as a
/// note rather than judged.
pub fn check_ci22_equality(ci: &CompleteIntersection, m: u32, seed: u64) -> Result<BoundReport> {
    let dx = minimum_distance(&ci.scheme)?.d as i64;
    let z = ci.scheme.with_multiplicity(m);
    let sn = socle_profile(&z, seed)?.min_socle_degree as i64;
    let lhs = m as i64 * dx == sn;
    let is_22 = ci.degrees == [2, 2];
    let (_, generic) = grid_genericity(ci)?;
    let mut report = BoundReport::new(StatementId::CI22Equality, format!("{}, m = {m}", ci_inputs(ci)));
    report
        .value("m_times_d_X", m as i64 * dx)
        .value("min_socle_degree", sn)
        .value("type_is_2_2", is_22)
        .value("generic_grid", generic);
    if m < 2 {
        report.attained = Attainment::NotApplicable;
        report.note("the equivalence concerns m >= 2; values recorded only");
    } else if !generic && !is_22 {
        report.attained = Attainment::Indeterminate;
        report.note(format!("grid not generic; m*d(X) == s_n(Z) is {lhs}"));
    } else {
        report.compare(Comparison::iff("m*d(X) == s_n(Z) <=> X = CI(2,2)", lhs, is_22));
        report.attained = Attainment::from_bool(lhs);
    }
    Ok(report)
}

/// `d(X) ≥ (d₁ − 1)·d₂⋯d_n`.
///
/// In `P²` this is a theorem for every complete intersection. For `n ≥ 3` it
/// is proven only when some residual curve avoids hyperplane components;
/// pass `curve_certified` if the caller knows that. Otherwise the check runs
/// in conjecture mode.
pub fn check_bezout_ci(ci: &CompleteIntersection, curve_certified: bool) -> Result<BoundReport> {
    let n = ci.degrees.len();
    let statement = match (n, curve_certified) {
        (2, _) => StatementId::N2Theorem,
        (_, true) => StatementId::BezoutCI,
        (_, false) => StatementId::ConjectureCI,
    };
    let dx = minimum_distance(&ci.scheme)?.d as i64;
    let bound = (ci.degrees[0] as i64 - 1) * ci.degrees[1..].iter().product::<usize>() as i64;
    let (hyp, generic) = grid_genericity(ci)?;
    let mut report = BoundReport::new(statement, ci_inputs(ci));
    report.compare(Comparison::new(
        "d(X) >= (d_1 - 1)*d_2*...*d_n",
        dx,
        Relation::Ge,
        bound,
    ));
    report.attained = if generic {
        Attainment::from_bool(dx == bound)
    } else {
        Attainment::Indeterminate
    };
    report
        .value("d_X", dx)
        .value("bound", bound)
        .value("max_points_on_hyperplane", hyp);
    flag_counterexample(&mut report, &ci.scheme);
    Ok(report)
}

/// Outcome of [`survey`]: reports in statement order and the checkers that
/// could not run.
#[derive(Debug, Clone, PartialEq)]
pub struct Survey {
    pub reports: Vec<BoundReport>,
    pub errors: Vec<(StatementId, Error)>,
}

impl Survey {
    fn new() -> Self {
        Survey {
            reports: Vec::new(),
            errors: Vec::new(),
        }
    }

    fn run(&mut self, id: StatementId, result: Result<BoundReport>) {
        match result {
            Ok(r) => self.reports.push(r),
            Err(e) => self.errors.push((id, e)),
        }
    }

    fn finish(mut self) -> Self {
        self.reports.sort_by_key(|r| r.statement);
        self
    }

    pub fn has_counterexample(&self) -> bool {
        self.reports.iter().any(BoundReport::is_counterexample)
    }
}

/// What a survey runs on.
#[derive(Debug, Clone)]
pub enum SurveyTarget {
    Scheme(FatPointScheme),
    /// A complete intersection and the multiplicity of the homogeneous
    /// scheme built on it.
    CompleteIntersection(CiDescription, u32),
}

/// Every checker that applies to the target.
pub fn survey(target: &SurveyTarget, seed: u64) -> Survey {
    match target {
        SurveyTarget::Scheme(z) => survey_scheme(z, seed).finish(),
        SurveyTarget::CompleteIntersection(desc, m) => {
            let ci = match desc.realize() {
                Ok(ci) => ci,
                Err(e) => {
                    let mut s = Survey::new();
                    s.errors.push((StatementId::CIBound, e));
                    return s;
                }
            };
            let z = ci.scheme.with_multiplicity(*m);
            let mut s = survey_scheme(&z, seed);
            s.run(StatementId::CIBound, check_cibound(&ci));
            s.run(StatementId::SocleValueCI, check_ci_socle_formula(&ci, *m, seed));
            s.run(StatementId::CI22Equality, check_ci22_equality(&ci, *m, seed));
            s.run(StatementId::N2Theorem, check_bezout_ci(&ci, false));
            s.finish()
        }
    }
}

fn survey_scheme(z: &FatPointScheme, seed: u64) -> Survey {
    let mut s = Survey::new();
    s.run(StatementId::CrudeBounds, check_crude(z));
    if !z.field().is_rational() {
        return s;
    }
    s.run(StatementId::HomBound, check_hombound(z));
    if z.is_reduced() {
        if z.ambient_dim() >= 2 {
            s.run(StatementId::BoundsCor, check_boundscor(z));
        }
        match largest_recursion_degree(z, z.len()) {
            Ok(Some(b)) => s.run(StatementId::RecursionLemma, check_recursion_lemma(z, b)),
            Ok(None) => {}
            Err(e) => s.errors.push((StatementId::RecursionLemma, e)),
        }
    }
    if z.homogeneous_multiplicity().is_some() {
        s.run(StatementId::MainTheoremI, check_maintheorem(z, seed));
    }
    s.run(StatementId::FatPointSocle, check_separator_socle(z, seed));
    s.run(StatementId::OpenQuestion, open_question_experiment(z, seed));
    s
}

/// Size limits for random schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceSpec {
    pub field: FieldSpec,
    pub max_ambient: usize,
    pub max_points: usize,
    pub max_mult: u32,
    /// Integer coordinates are drawn from `[−coord_bound, coord_bound]`;
    /// ignored over `GF(p)`, where residues are uniform.
    pub coord_bound: i64,
    pub homogeneous: bool,
}

impl InstanceSpec {
    pub fn rational(max_ambient: usize, max_points: usize, max_mult: u32) -> Self {
        InstanceSpec {
            field: FieldSpec::Rational,
            max_ambient,
            max_points,
            max_mult,
            coord_bound: 3,
            homogeneous: false,
        }
    }
}

/// Schemes drawn by [`random_schemes`] and the number of draws rejected.
#[derive(Debug, Clone)]
pub struct Sample {
    pub schemes: Vec<FatPointScheme>,
    pub rejections: usize,
}

const DRAWS_PER_INSTANCE: usize = 1000;

/// `count` schemes drawn from `seed`. Draws that violate a scheme invariant
/// (zero vector, repeated point, support not spanning) are discarded and
/// counted, never repaired.
pub fn random_schemes(spec: &InstanceSpec, count: usize, seed: u64) -> Result<Sample> {
    if spec.max_ambient == 0 || spec.max_points < 2 || spec.max_mult == 0 {
        return Err(Error::HypothesisUnmet("instance limits too small".into()));
    }
    let mut rng = seeded(seed);
    let mut schemes = Vec::with_capacity(count);
    let mut rejections = 0;
    while schemes.len() < count {
        if rejections > DRAWS_PER_INSTANCE * count.max(1) {
            return Err(Error::DegenerateAfterRetries(rejections));
        }
        match draw(spec, &mut rng) {
            Some(z) => schemes.push(z),
            None => rejections += 1,
        }
    }
    Ok(Sample { schemes, rejections })
}

fn draw(spec: &InstanceSpec, rng: &mut SplitMix64) -> Option<FatPointScheme> {
    let n = rng.gen_range(1..=spec.max_ambient);
    if spec.max_points < n + 1 {
        return None;
    }
    let s = rng.gen_range(n + 1..=spec.max_points);
    let common = rng.gen_range(1..=spec.max_mult);
    let mut points = Vec::with_capacity(s);
    for _ in 0..s {
        let coords = (0..=n)
            .map(|_| match spec.field {
                FieldSpec::Rational => spec.field.from_i64(small_int(rng, spec.coord_bound)),
                FieldSpec::Prime(p) => spec.field.from_i64(rng.gen_range(0..p as i64)),
            })
            .collect();
        let m = if spec.homogeneous {
            common
        } else {
            rng.gen_range(1..=spec.max_mult)
        };
        points.push((ProjectivePoint::new(coords).ok()?, m));
    }
    FatPointScheme::new(spec.field, n, points).ok()
}

/// `count` planar configurations of `s` distinct points.
pub fn random_planar_configurations(s: usize, count: usize, seed: u64) -> Result<Sample> {
    let mut rng = seeded(seed);
    let mut schemes = Vec::new();
    let mut rejections = 0;
    while schemes.len() < count {
        if rejections > DRAWS_PER_INSTANCE * count.max(1) {
            return Err(Error::DegenerateAfterRetries(rejections));
        }
        let points: Option<Vec<_>> = (0..s)
            .map(|_| {
                let raw: Vec<i64> = (0..3).map(|_| small_int(&mut rng, 4)).collect();
                ProjectivePoint::from_i64(FieldSpec::Rational, &raw)
                    .ok()
                    .map(|p| (p, 1))
            })
            .collect();
        match points.and_then(|p| FatPointScheme::new(FieldSpec::Rational, 2, p).ok()) {
            Some(z) => schemes.push(z),
            None => rejections += 1,
        }
    }
    Ok(Sample { schemes, rejections })
}

/// Convenience wrapper: grid `CI(degrees)` from `seed`.
pub fn grid(degrees: &[usize], seed: u64) -> Result<CompleteIntersection> {
    ci_grid(degrees, seed)
}
