//! Linear codes attached to fat point schemes.
//!
//! `A(Z)` has one block of `mᵢ` identical columns per point. A codeword
//! `u·A(Z)` vanishes exactly at the columns whose points lie on the hyperplane
//! `⟨u, x⟩ = 0`, so `d(Z) = M − max_H Σ_{Pᵢ ∈ H} mᵢ`. The maximum is found by
//! enumerating hyperplanes spanned by `n` independent support points: a
//! weight-maximal point set on a hyperplane spans that hyperplane (otherwise
//! another point could be added), so no optimum is missed.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{Attainment, BoundReport, Comparison, Relation, StatementId};
use crate::exactalg::{FieldSpec, Matrix, Scalar};
use crate::geometry::{FatPointScheme, ProjectivePoint};
use crate::ideals::combinations;
use crate::{Error, Result};

/// `A(Z)`: the `(n+1) × M` generator matrix, laid out block by block in
/// point order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub matrix: Matrix,
    pub block_multiplicities: Vec<u32>,
    pub source: FatPointScheme,
}

impl GeneratorMatrix {
    /// `[M, n+1]`; the third parameter is [`minimum_distance`].
    pub fn length_and_dimension(&self) -> (usize, usize) {
        (self.matrix.cols(), self.matrix.rows())
    }
}

pub fn generator_matrix(z: &FatPointScheme) -> Result<GeneratorMatrix> {
    let n = z.ambient_dim();
    let columns: Vec<Vec<Scalar>> = z
        .points()
        .iter()
        .flat_map(|(p, m)| std::iter::repeat_n(p.coords().to_vec(), *m as usize))
        .collect();
    let matrix = Matrix::from_columns(z.field(), n + 1, &columns)?;
    let rank = matrix.rank();
    if rank != n + 1 {
        return Err(Error::RankDeficient { rank, needed: n + 1 });
    }
    Ok(GeneratorMatrix {
        matrix,
        block_multiplicities: z.multiplicities(),
        source: z.clone(),
    })
}

/// `d(Z)` with a hyperplane attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub d: u64,
    /// Normal vector of the witness hyperplane, first nonzero entry 1.
    pub witness_hyperplane: Vec<Scalar>,
    /// Indices of the support points on the witness hyperplane.
    pub witness_points: Vec<usize>,
}

struct Candidate {
    weight: u64,
    on: Vec<usize>,
    normal: Vec<Scalar>,
}

/// Heavier wins; among equal weights the lexicographically smaller index set.
fn better(a: &Candidate, b: &Candidate) -> Ordering {
    a.weight.cmp(&b.weight).then_with(|| b.on.cmp(&a.on))
}

pub fn minimum_distance(z: &FatPointScheme) -> Result<DistanceResult> {
    let n = z.ambient_dim();
    let field = z.field();
    let rank = z.coordinate_matrix().rank();
    if rank != n + 1 {
        return Err(Error::RankDeficient { rank, needed: n + 1 });
    }
    let subsets = combinations(z.len(), n);
    let best = subsets
        .par_iter()
        .filter_map(|idx| {
            let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| z.points()[i].0.coords().to_vec()).collect();
            let m = Matrix::from_rows(field, &rows, n + 1).ok()?;
            if m.rank() != n {
                return None;
            }
            let normal = ProjectivePoint::new(m.nullspace_basis().column(0)).ok()?;
            let on: Vec<usize> = z
                .points()
                .iter()
                .enumerate()
                .filter(|(_, (p, _))| p.eval_linear(normal.coords()).is_zero())
                .map(|(i, _)| i)
                .collect();
            let weight = on.iter().map(|&i| z.points()[i].1 as u64).sum();
            Some(Candidate {
                weight,
                on,
                normal: normal.coords().to_vec(),
            })
        })
        .max_by(better)
        .expect("a spanning support has n independent points");
    Ok(DistanceResult {
        d: z.total_multiplicity() - best.weight,
        witness_hyperplane: best.normal,
        witness_points: best.on,
    })
}

/// Size limit on the number of messages enumerated by
/// [`minimum_distance_exhaustive`].
pub const EXHAUSTIVE_GUARD: u128 = 1 << 24;

/// Minimum Hamming weight of a nonzero codeword `u·G`, by enumerating one
/// message per projective class of `GF(p)^{n+1}`.
pub fn minimum_distance_exhaustive(g: &GeneratorMatrix) -> Result<u64> {
    let FieldSpec::Prime(p) = g.matrix.field() else {
        return Err(Error::UnsupportedField(g.matrix.field()));
    };
    let p = p as u64;
    let k = g.matrix.rows();
    let size = (p as u128)
        .checked_pow(k as u32)
        .filter(|&s| s <= EXHAUSTIVE_GUARD)
        .ok_or(Error::TooLarge {
            size: (p as u128).saturating_pow(k as u32),
            limit: EXHAUSTIVE_GUARD,
        })?;
    let cols: Vec<Vec<u64>> = (0..g.matrix.cols())
        .map(|c| g.matrix.column(c).iter().map(|v| v.residue().unwrap()).collect())
        .collect();
    let mut best = u64::MAX;
    let mut u = vec![0u64; k];
    for code in 1..size {
        let mut x = code;
        for slot in u.iter_mut() {
            *slot = (x % p as u128) as u64;
            x /= p as u128;
        }
        // one representative per projective class: leading nonzero entry 1
        if u.iter().find(|&&v| v != 0) != Some(&1) {
            continue;
        }
        let weight = cols
            .iter()
            .filter(|col| col.iter().zip(&u).map(|(a, b)| a * b % p).sum::<u64>() % p != 0)
            .count() as u64;
        best = best.min(weight);
    }
    Ok(best)
}

/// Most of the given vectors lying on one hyperplane of their linear span.
///
/// With `r` the rank, such a hyperplane is spanned by `r − 1` independent
/// vectors, and a vector lies on it iff adding it keeps the rank at `r − 1`.
pub fn hyperplane_count_in_span(field: FieldSpec, vectors: &[Vec<Scalar>]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let dim = vectors[0].len();
    let rank_of = |idx: &[usize]| -> Result<usize> {
        let rows: Vec<Vec<Scalar>> = idx.iter().map(|&i| vectors[i].clone()).collect();
        Ok(Matrix::from_rows(field, &rows, dim)?.rank())
    };
    let all: Vec<usize> = (0..vectors.len()).collect();
    let r = rank_of(&all)?;
    if r <= 1 {
        return Ok(0);
    }
    let mut best = 0;
    for base in combinations(vectors.len(), r - 1) {
        if rank_of(&base)? != r - 1 {
            continue;
        }
        let mut count = 0;
        for j in 0..vectors.len() {
            let mut idx = base.clone();
            idx.push(j);
            if rank_of(&idx)? == r - 1 {
                count += 1;
            }
        }
        best = best.max(count);
    }
    Ok(best)
}

/// Compares `d(Z)` with the bounds `m_{s−d+1}+⋯+m_s ≤ d(Z) ≤ m₁+⋯+m_d`,
/// `d = d(X)`, multiplicities sorted in decreasing order; for homogeneous
/// `Z` also checks `d(Z) = m·d(X)`.
pub fn crude_bounds(z: &FatPointScheme) -> Result<BoundReport> {
    let dz = minimum_distance(z)?.d as i64;
    let dx = minimum_distance(&z.support())?.d as usize;
    let mut sorted: Vec<u32> = z.multiplicities();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let s = sorted.len();
    let upper: i64 = sorted[..dx].iter().map(|&m| m as i64).sum();
    let lower: i64 = sorted[s - dx..].iter().map(|&m| m as i64).sum();

    let mut report = BoundReport::new(StatementId::CrudeBounds, format!("Z = {z}"));
    report
        .compare(Comparison::new("m_1+...+m_d >= d(Z)", upper, Relation::Ge, dz))
        .compare(Comparison::new("d(Z) >= m_{s-d+1}+...+m_s", dz, Relation::Ge, lower));
    if let Some(m) = z.homogeneous_multiplicity() {
        report.compare(Comparison::new(
            "d(Z) == m*d(X)",
            dz,
            Relation::Eq,
            m as i64 * dx as i64,
        ));
    }
    report.attained = Attainment::from_bool(dz == upper || dz == lower);
    report
        .value("d_Z", dz)
        .value("d_X", dx)
        .value("sorted_multiplicities", sorted)
        .value("upper", upper)
        .value("lower", lower)
        .value("upper_attained", dz == upper)
        .value("lower_attained", dz == lower);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: FieldSpec = FieldSpec::Prime(2);

    fn gf2(points: &[(&[i64], u32)]) -> FatPointScheme {
        FatPointScheme::from_integer_points_over(F2, 2, points).unwrap()
    }

    fn z1() -> FatPointScheme {
        gf2(&[(&[1, 0, 0], 3), (&[0, 1, 0], 2), (&[0, 0, 1], 2), (&[0, 1, 1], 2)])
    }

    fn z2() -> FatPointScheme {
        gf2(&[(&[0, 1, 1], 2), (&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)])
    }

    #[test]
    fn printed_generator_matrices() {
        let a = generator_matrix(&z2()).unwrap();
        let expected = Matrix::from_i64_rows(F2, &[&[0, 0, 1, 0, 0], &[1, 1, 0, 1, 0], &[1, 1, 0, 0, 1]]).unwrap();
        assert_eq!(a.matrix, expected);
        assert_eq!(a.length_and_dimension(), (5, 3));

        let x = generator_matrix(&z1().support()).unwrap();
        let expected = Matrix::from_i64_rows(F2, &[&[1, 0, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]]).unwrap();
        assert_eq!(x.matrix, expected);
    }

    #[test]
    fn example00_matrix_layout() {
        let z = FatPointScheme::from_integer_points(
            2,
            &[(&[0, 1, 0], 2), (&[1, 0, 0], 2), (&[1, 1, 0], 1), (&[0, 0, 1], 1)],
        )
        .unwrap();
        let a = generator_matrix(&z).unwrap();
        let expected = Matrix::from_i64_rows(
            FieldSpec::Rational,
            &[&[0, 0, 1, 1, 1, 0], &[1, 1, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]],
        )
        .unwrap();
        assert_eq!(a.matrix, expected);
        let d = minimum_distance(&z).unwrap();
        assert_eq!(d.d, 1);
        assert_eq!(d.witness_points, vec![0, 1, 2]);
        assert_eq!(
            d.witness_hyperplane,
            vec![
                FieldSpec::Rational.zero(),
                FieldSpec::Rational.zero(),
                FieldSpec::Rational.one()
            ]
        );
    }

    #[test]
    fn gf2_distances() {
        assert_eq!(minimum_distance(&z1()).unwrap().d, 3);
        assert_eq!(minimum_distance(&z2()).unwrap().d, 1);
        assert_eq!(minimum_distance(&z1().support()).unwrap().d, 1);

        assert_eq!(
            minimum_distance_exhaustive(&generator_matrix(&z1()).unwrap()).unwrap(),
            3
        );
        assert_eq!(
            minimum_distance_exhaustive(&generator_matrix(&z2()).unwrap()).unwrap(),
            1
        );
        assert_eq!(
            minimum_distance_exhaustive(&generator_matrix(&z1().support()).unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn exhaustive_on_identity() {
        let id = gf2(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        assert_eq!(minimum_distance_exhaustive(&generator_matrix(&id).unwrap()).unwrap(), 1);
    }

    #[test]
    fn exhaustive_guard_and_field() {
        let big = FieldSpec::prime(65_537).unwrap();
        let z = FatPointScheme::from_integer_points_over(big, 1, &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        assert!(matches!(
            minimum_distance_exhaustive(&generator_matrix(&z).unwrap()),
            Err(Error::TooLarge { .. })
        ));
        let q = FatPointScheme::from_integer_points(1, &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        assert!(matches!(
            minimum_distance_exhaustive(&generator_matrix(&q).unwrap()),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn crude_bounds_attained_both_ways() {
        let r1 = crude_bounds(&z1()).unwrap();
        assert!(r1.holds);
        assert_eq!(r1.values["upper"], 3);
        assert_eq!(r1.values["upper_attained"], true);
        assert_eq!(r1.values["sorted_multiplicities"], serde_json::json!([3, 2, 2, 2]));

        let r2 = crude_bounds(&z2()).unwrap();
        assert!(r2.holds);
        assert_eq!(r2.values["lower"], 1);
        assert_eq!(r2.values["lower_attained"], true);
        assert_eq!(r2.values["sorted_multiplicities"], serde_json::json!([2, 1, 1, 1]));
    }

    #[test]
    fn homogeneous_doubling() {
        // d(X) = 2: four general points in P²
        let x = FatPointScheme::from_integer_points(
            2,
            &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1), (&[1, 1, 1], 1)],
        )
        .unwrap();
        assert_eq!(minimum_distance(&x).unwrap().d, 2);
        let z = x.with_multiplicity(2);
        assert_eq!(minimum_distance(&z).unwrap().d, 4);
        let r = crude_bounds(&z).unwrap();
        assert!(r.holds);
        assert_eq!(r.comparisons.len(), 3);
    }

    #[test]
    fn span_hyperplane_counts() {
        let q = FieldSpec::Rational;
        let v = |c: &[i64]| c.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        // three collinear points plus one off the line
        let pts = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0]), v(&[0, 0, 1])];
        assert_eq!(hyperplane_count_in_span(q, &pts).unwrap(), 3);
        // degenerate: everything on one line, span has rank 2
        let line = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])];
        assert_eq!(hyperplane_count_in_span(q, &line).unwrap(), 1);
        assert_eq!(hyperplane_count_in_span(q, &[v(&[1, 2, 3])]).unwrap(), 0);
    }
}
