//! Projective points, fat point schemes, Veronese embeddings and grid
//! complete intersections.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::exactalg::{binomial, FieldSpec, Matrix, Scalar};
use crate::ideals::MonomialBasis;
use crate::rng::{self, COEFF_BOUND};
use crate::{Error, Result};

/// A point of projective space, stored as the representative whose first
/// nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ProjectivePoint {
    coords: Vec<Scalar>,
}

/// Scales raw homogeneous coordinates to the canonical representative.
pub fn normalize_point(raw: Vec<Scalar>) -> Result<ProjectivePoint> {
    ProjectivePoint::new(raw)
}

impl ProjectivePoint {
    pub fn new(mut coords: Vec<Scalar>) -> Result<Self> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?.clone();
        if let Some(first) = coords.first() {
            if coords.iter().any(|c| c.field() != first.field()) {
                return Err(Error::Shape("coordinates from different fields".into()));
            }
        }
        if !lead.is_one() {
            let inv = lead.inverse();
            for c in coords.iter_mut() {
                *c = &*c * &inv;
            }
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(field: FieldSpec, raw: &[i64]) -> Result<Self> {
        ProjectivePoint::new(raw.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// `n` for a point of `Pⁿ`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].field()
    }

    /// Value of the linear form with the given coefficients at this
    /// representative.
    pub fn eval_linear(&self, form: &[Scalar]) -> Scalar {
        self.coords
            .iter()
            .zip(form)
            .fold(self.field().zero(), |acc, (x, a)| &acc + &(x * a))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// `Z = m₁P₁ + ⋯ + m_sP_s` in `Pⁿ`.
///
/// Construction guarantees distinct points, multiplicities ≥ 1 and a support
/// that spans `Pⁿ` (coordinate matrix of rank `n+1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatPointScheme {
    field: FieldSpec,
    ambient_dim: usize,
    points: Vec<(ProjectivePoint, u32)>,
}

impl FatPointScheme {
    pub fn new(field: FieldSpec, ambient_dim: usize, points: Vec<(ProjectivePoint, u32)>) -> Result<Self> {
        check_points(field, ambient_dim, &points)?;
        let mut seen = HashSet::new();
        for (i, (p, _)) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        let z = FatPointScheme {
            field,
            ambient_dim,
            points,
        };
        let rank = z.coordinate_matrix().rank();
        if rank != ambient_dim + 1 {
            return Err(Error::RankDeficient {
                rank,
                needed: ambient_dim + 1,
            });
        }
        Ok(z)
    }

    /// Like [`FatPointScheme::new`], but repeated points are merged keeping
    /// the larger multiplicity (first occurrence fixes the position).
    pub fn new_merging(field: FieldSpec, ambient_dim: usize, points: Vec<(ProjectivePoint, u32)>) -> Result<Self> {
        let mut merged: Vec<(ProjectivePoint, u32)> = Vec::new();
        for (p, m) in points {
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some(entry) => entry.1 = entry.1.max(m),
                None => merged.push((p, m)),
            }
        }
        FatPointScheme::new(field, ambient_dim, merged)
    }

    /// Rational scheme from integer coordinates.
    pub fn from_integer_points(ambient_dim: usize, points: &[(&[i64], u32)]) -> Result<Self> {
        Self::from_integer_points_over(FieldSpec::Rational, ambient_dim, points)
    }

    pub fn from_integer_points_over(field: FieldSpec, ambient_dim: usize, points: &[(&[i64], u32)]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|(c, m)| Ok((ProjectivePoint::from_i64(field, c)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        FatPointScheme::new(field, ambient_dim, pts)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[(ProjectivePoint, u32)] {
        &self.points
    }

    /// Number of distinct points `s`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.points.iter().map(|(_, m)| *m).collect()
    }

    /// `M = Σ mᵢ`, the length of the associated code.
    pub fn total_multiplicity(&self) -> u64 {
        self.points.iter().map(|(_, m)| *m as u64).sum()
    }

    /// `m(Z) = max mᵢ`.
    pub fn max_multiplicity(&self) -> u32 {
        self.points.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|(_, m)| *m == 1)
    }

    /// The common multiplicity, if all are equal.
    pub fn homogeneous_multiplicity(&self) -> Option<u32> {
        let m = self.points.first()?.1;
        self.points.iter().all(|(_, k)| *k == m).then_some(m)
    }

    /// `Supp(Z)`: same points in the same order, all multiplicities 1.
    pub fn support(&self) -> FatPointScheme {
        self.with_multiplicity(1)
    }

    /// The homogeneous scheme `m·Supp(Z)`.
    pub fn with_multiplicity(&self, m: u32) -> FatPointScheme {
        FatPointScheme {
            field: self.field,
            ambient_dim: self.ambient_dim,
            points: self.points.iter().map(|(p, _)| (p.clone(), m)).collect(),
        }
    }

    /// `(n+1) × s` matrix with the normalized coordinates of `P_i` in column `i`.
    pub fn coordinate_matrix(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.points.iter().map(|(p, _)| p.coords.clone()).collect();
        Matrix::from_columns(self.field, self.ambient_dim + 1, &cols).expect("arity checked")
    }

    pub(crate) fn require_rational(&self) -> Result<()> {
        if self.field.is_rational() {
            Ok(())
        } else {
            Err(Error::UnsupportedField(self.field))
        }
    }
}

fn check_points(field: FieldSpec, n: usize, points: &[(ProjectivePoint, u32)]) -> Result<()> {
    for (p, m) in points {
        if p.coords.len() != n + 1 {
            return Err(Error::BadArity {
                expected: n + 1,
                got: p.coords.len(),
            });
        }
        if p.field() != field {
            return Err(Error::Shape(format!(
                "point over {} in a scheme over {field}",
                p.field()
            )));
        }
        if *m == 0 {
            return Err(Error::ZeroMultiplicity);
        }
    }
    Ok(())
}

impl fmt::Display for FatPointScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{m}{p}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `deg Z = Σ C(n + mᵢ − 1, n)`, the value the Hilbert function stabilizes at.
pub fn scheme_degree(z: &FatPointScheme) -> Result<u128> {
    z.require_rational()?;
    let n = z.ambient_dim as u64;
    z.points
        .iter()
        .map(|(_, m)| binomial(n + *m as u64 - 1, n))
        .try_fold(0u128, |acc, b| acc.checked_add(b?).ok_or(Error::Overflow))
}

/// Image of a reduced scheme under the degree-`a` Veronese map into
/// `P^{N_a}`, `N_a = C(n+a, a) − 1`, with monomials in graded-lex order.
///
/// The image is returned as a bare point list: for `a ≥ α(I_X)` it lies in a
/// hyperplane, so it need not satisfy the spanning invariant of a scheme.
pub fn veronese_embed(x: &FatPointScheme, a: usize) -> Result<Vec<ProjectivePoint>> {
    x.require_rational()?;
    if !x.is_reduced() {
        return Err(Error::NotReduced);
    }
    if a == 0 {
        return Err(Error::HypothesisUnmet("Veronese degree must be at least 1".into()));
    }
    let basis = MonomialBasis::new(x.ambient_dim, a)?;
    x.points
        .iter()
        .map(|(p, _)| ProjectivePoint::new(basis.evaluate(p.coords())))
        .collect()
}

/// How the points of a complete intersection are obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CiConstruction {
    /// Products of random hyperplanes, intersected exactly.
    Grid { seed: u64 },
    /// A user-supplied reduced point set asserted to be `CI(d₁,…,d_n)`.
    Explicit(FatPointScheme),
}

/// `CI(d₁,…,d_n)` with `2 ≤ d₁ ≤ ⋯ ≤ d_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiDescription {
    degrees: Vec<usize>,
    construction: CiConstruction,
}

impl CiDescription {
    /// Degrees may be given in any order; they are sorted.
    pub fn new(mut degrees: Vec<usize>, construction: CiConstruction) -> Result<Self> {
        degrees.sort_unstable();
        if degrees.len() < 2 {
            return Err(Error::InvalidCi("need at least two degrees (n ≥ 2)".into()));
        }
        if degrees[0] < 2 {
            return Err(Error::InvalidCi("every degree must be at least 2".into()));
        }
        if let CiConstruction::Explicit(x) = &construction {
            if x.ambient_dim() != degrees.len() {
                return Err(Error::InvalidCi(
                    "ambient dimension must equal the number of degrees".into(),
                ));
            }
            if !x.is_reduced() {
                return Err(Error::NotReduced);
            }
            if x.len() != degrees.iter().product::<usize>() {
                return Err(Error::InvalidCi("point count differs from d₁⋯d_n".into()));
            }
        }
        Ok(CiDescription { degrees, construction })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn construction(&self) -> &CiConstruction {
        &self.construction
    }

    pub fn realize(&self) -> Result<CompleteIntersection> {
        match &self.construction {
            CiConstruction::Grid { seed } => ci_grid(&self.degrees, *seed),
            CiConstruction::Explicit(x) => Ok(CompleteIntersection {
                degrees: self.degrees.clone(),
                scheme: x.clone(),
                hyperplanes: None,
            }),
        }
    }
}

/// A realized reduced complete intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteIntersection {
    pub degrees: Vec<usize>,
    pub scheme: FatPointScheme,
    /// For grids: `hyperplanes[i]` lists the `dᵢ` linear forms whose product
    /// is `Fᵢ`.
    pub hyperplanes: Option<Vec<Vec<Vec<Scalar>>>>,
}

const GRID_ATTEMPTS: usize = 100;

/// Reduced `CI(d₁,…,d_n)` in `Pⁿ` cut out by products of random linear
/// forms with coefficients in `[-9, 9]`.
///
/// Each point is the common zero of one hyperplane from every family. An
/// attempt is rejected unless every such system has a unique solution, the
/// `d₁⋯d_n` solutions are distinct, no solution lies on a hyperplane that was
/// not used to produce it, and the points span `Pⁿ`.
pub fn ci_grid(degrees: &[usize], seed: u64) -> Result<CompleteIntersection> {
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    let n = degrees.len();
    if n < 2 || degrees[0] < 2 {
        return Err(Error::InvalidCi("grid needs n ≥ 2 and all degrees ≥ 2".into()));
    }
    let field = FieldSpec::Rational;
    let mut stream = rng::seeded(seed);
    for _ in 0..GRID_ATTEMPTS {
        let families: Vec<Vec<Vec<Scalar>>> = degrees
            .iter()
            .map(|&d| {
                (0..d)
                    .map(|_| {
                        rng::small_vec(&mut stream, n + 1, COEFF_BOUND)
                            .into_iter()
                            .map(|v| field.from_i64(v))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        if let Some(points) = grid_points(&families, n) {
            let pts = points.into_iter().map(|p| (p, 1)).collect();
            if let Ok(scheme) = FatPointScheme::new(field, n, pts) {
                return Ok(CompleteIntersection {
                    degrees,
                    scheme,
                    hyperplanes: Some(families),
                });
            }
        }
    }
    Err(Error::DegenerateAfterRetries(GRID_ATTEMPTS))
}

fn grid_points(families: &[Vec<Vec<Scalar>>], n: usize) -> Option<Vec<ProjectivePoint>> {
    let field = FieldSpec::Rational;
    let mut choice = vec![0usize; n];
    let mut points = Vec::new();
    let mut seen = HashSet::new();
    loop {
        let rows: Vec<Vec<Scalar>> = choice.iter().zip(families).map(|(&j, fam)| fam[j].clone()).collect();
        let system = Matrix::from_rows(field, &rows, n + 1).ok()?;
        let kernel = system.nullspace_basis();
        if kernel.cols() != 1 {
            return None;
        }
        let p = ProjectivePoint::new(kernel.column(0)).ok()?;
        for (i, fam) in families.iter().enumerate() {
            for (j, h) in fam.iter().enumerate() {
                if j != choice[i] && p.eval_linear(h).is_zero() {
                    return None;
                }
            }
        }
        if !seen.insert(p.clone()) {
            return None;
        }
        points.push(p);
        // odometer over the choice tuple, last index fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Some(points);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < families[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}
