//! Graded pieces of fat point ideals.
//!
//! Over a field of characteristic zero a form `f` of degree `d` lies in
//! `I_P^m` exactly when every partial derivative of order `min(m−1, d)`
//! vanishes at `P` (Euler's relation recovers the lower orders, and for
//! `d < m` the conditions force `f = 0`). Stacking those conditions for all
//! points gives the interpolation matrix whose kernel is `(I_Z)_d`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bounds::{Attainment, BoundReport, Comparison, Relation, StatementId};
use crate::codes::hyperplane_count_in_span;
use crate::exactalg::{binomial_usize, FieldSpec, Matrix, Scalar};
use crate::geometry::{veronese_embed, FatPointScheme, ProjectivePoint};
use crate::{Error, Result};

/// Default upper limit on degrees searched by α, separators and the
/// Artinian reduction.
pub const DEFAULT_DEGREE_CAP: usize = 200;

/// Degree-`d` monomials in `x₀,…,x_n`, graded-lex with `x₀ > x₁ > ⋯ > x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    degree: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: usize) -> Result<Self> {
        let expected = binomial_usize(n + degree, degree)?;
        let mut monomials = Vec::with_capacity(expected);
        let mut current = vec![0u32; n + 1];
        fill_monomials(&mut monomials, &mut current, 0, degree as u32);
        debug_assert_eq!(monomials.len(), expected);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(MonomialBasis {
            n,
            degree,
            monomials,
            index,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Values of every monomial at the given coordinates.
    pub fn evaluate(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let field = coords[0].field();
        let powers = power_table(coords, self.degree);
        self.monomials
            .iter()
            .map(|m| {
                m.iter()
                    .enumerate()
                    .fold(field.one(), |acc, (k, &e)| &acc * &powers[k][e as usize])
            })
            .collect()
    }
}

fn fill_monomials(out: &mut Vec<Vec<u32>>, current: &mut [u32], var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.to_vec());
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill_monomials(out, current, var + 1, remaining - e);
    }
}

fn power_table(coords: &[Scalar], max: usize) -> Vec<Vec<Scalar>> {
    coords
        .iter()
        .map(|c| {
            let mut row = Vec::with_capacity(max + 1);
            row.push(c.field().one());
            for e in 1..=max {
                let next = &row[e - 1] * c;
                row.push(next);
            }
            row
        })
        .collect()
}

/// A basis of `(I_Z)_d`, one coefficient vector (in [`MonomialBasis`] order)
/// per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: usize,
    pub basis: Matrix,
    pub dim: usize,
}

/// Rows: for each point, one row per derivative multi-index of order
/// `min(mᵢ−1, d)`; columns: degree-`d` monomials.
pub fn fat_vanishing_matrix(z: &FatPointScheme, d: usize) -> Result<Matrix> {
    z.require_rational()?;
    vanishing_matrix(z.ambient_dim(), z.points(), d)
}

/// Same as [`fat_vanishing_matrix`] on an arbitrary (possibly degenerate)
/// list of rational points.
pub(crate) fn vanishing_matrix(n: usize, points: &[(ProjectivePoint, u32)], d: usize) -> Result<Matrix> {
    let field = FieldSpec::Rational;
    let basis = MonomialBasis::new(n, d)?;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (p, m) in points {
        let order = (*m as usize - 1).min(d);
        let derivs = MonomialBasis::new(n, order)?;
        let powers = power_table(&integral_coords(p.coords()), d);
        for beta in derivs.monomials() {
            let row = basis
                .monomials()
                .iter()
                .map(|alpha| derivative_at(alpha, beta, &powers, field))
                .collect();
            rows.push(row);
        }
    }
    Matrix::from_rows(field, &rows, basis.len())
}

/// A primitive integer representative of a rational point. Each vanishing
/// condition is homogeneous in the point, so rescaling only rescales rows,
/// and integer entries keep the elimination cheap.
fn integral_coords(coords: &[Scalar]) -> Vec<Scalar> {
    let rationals: Vec<&BigRational> = coords
        .iter()
        .map(|c| c.as_rational().expect("rational point"))
        .collect();
    let lcm = rationals.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rationals.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.into_iter()
        .map(|v| Scalar::Rational(BigRational::from_integer(if g.is_zero() { v } else { v / &g })))
        .collect()
}

/// `∂^β x^α` evaluated at the point whose coordinate powers are given.
fn derivative_at(alpha: &[u32], beta: &[u32], powers: &[Vec<Scalar>], field: FieldSpec) -> Scalar {
    let mut coeff = BigInt::one();
    let mut value = field.one();
    for k in 0..alpha.len() {
        let (a, b) = (alpha[k], beta[k]);
        if b > a {
            return field.zero();
        }
        // falling factorial a (a−1) ⋯ (a−b+1)
        for t in 0..b {
            coeff *= a - t;
        }
        value = &value * &powers[k][(a - b) as usize];
    }
    &value * &field.from_bigint(&coeff)
}

pub(crate) fn graded_dim_of(n: usize, points: &[(ProjectivePoint, u32)], d: usize) -> Result<usize> {
    let total = binomial_usize(n + d, d)?;
    if points.is_empty() {
        return Ok(total);
    }
    Ok(total - vanishing_matrix(n, points, d)?.rank())
}

/// `dim (I_Z)_d`.
pub fn ideal_graded_dim(z: &FatPointScheme, d: usize) -> Result<usize> {
    z.require_rational()?;
    graded_dim_of(z.ambient_dim(), z.points(), d)
}

/// A canonical basis of `(I_Z)_d`: the RREF-derived kernel of the
/// interpolation matrix.
pub fn graded_piece(z: &FatPointScheme, d: usize) -> Result<GradedPiece> {
    let m = fat_vanishing_matrix(z, d)?;
    let basis = m.nullspace_basis();
    Ok(GradedPiece {
        degree: d,
        dim: basis.cols(),
        basis,
    })
}

/// `α(I_Z)`: least degree of a nonzero form in `I_Z`.
pub fn alpha(z: &FatPointScheme, cap: usize) -> Result<usize> {
    z.require_rational()?;
    alpha_of(z.ambient_dim(), z.points(), cap)
}

pub(crate) fn alpha_of(n: usize, points: &[(ProjectivePoint, u32)], cap: usize) -> Result<usize> {
    for d in 1..=cap {
        if graded_dim_of(n, points, d)? > 0 {
            return Ok(d);
        }
    }
    Err(Error::CapExceeded(cap))
}

/// `HF(R/I_Z, d) = C(n+d, n) − dim (I_Z)_d`.
pub fn hilbert_function(z: &FatPointScheme, d: usize) -> Result<usize> {
    z.require_rational()?;
    let n = z.ambient_dim();
    Ok(binomial_usize(n + d, d)? - graded_dim_of(n, z.points(), d)?)
}

/// `HF(0), …, HF(max_degree)`.
pub fn hilbert_function_values(z: &FatPointScheme, max_degree: usize) -> Result<Vec<usize>> {
    (0..=max_degree).map(|d| hilbert_function(z, d)).collect()
}

fn require_reduced(x: &FatPointScheme) -> Result<()> {
    x.require_rational()?;
    if x.is_reduced() {
        Ok(())
    } else {
        Err(Error::NotReduced)
    }
}

/// `d(X)_a = |X| − hyp(v_a(X))`, where `hyp` counts the most points of `X`
/// on a degree-`a` hypersurface that does not contain all of `X`.
///
/// Searches subsets `S ⊊ X` by decreasing size for one admitting a degree-`a`
/// form that vanishes on `S` but not on `X`.
pub fn generalized_distance(x: &FatPointScheme, a: usize) -> Result<usize> {
    require_reduced(x)?;
    if a == 0 {
        return Err(Error::HypothesisUnmet("degree must be at least 1".into()));
    }
    let n = x.ambient_dim();
    let s = x.len();
    let target = graded_dim_of(n, x.points(), a)?;
    for size in (0..s).rev() {
        let subsets = combinations(s, size);
        let found = subsets.par_iter().any(|idx| {
            let pts: Vec<_> = idx.iter().map(|&i| x.points()[i].clone()).collect();
            graded_dim_of(n, &pts, a).is_ok_and(|dim| dim > target)
        });
        if found {
            return Ok(s - size);
        }
    }
    // the empty set always qualifies: X imposes at least one condition
    unreachable!("empty subset admits a non-vanishing form")
}

/// Same invariant computed in Veronese space: the largest number of points of
/// `v_a(X)` on a hyperplane of their linear span.
pub fn generalized_distance_veronese(x: &FatPointScheme, a: usize) -> Result<usize> {
    require_reduced(x)?;
    let image = veronese_embed(x, a)?;
    let columns: Vec<Vec<Scalar>> = image.iter().map(|p| p.coords().to_vec()).collect();
    let hyp = hyperplane_count_in_span(FieldSpec::Rational, &columns)?;
    Ok(x.len() - hyp)
}

/// All `k`-subsets of `0..s` in lexicographic order.
pub(crate) fn combinations(s: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, s: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..s {
            if s - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, s, k, cur, out);
            cur.pop();
        }
    }
    rec(0, s, k, &mut cur, &mut out);
    out
}

/// Checks `d(X)_a ≥ d(X)_{a+1} + 1` and `d(X)_a ≥ b − a + 2` for
/// `1 ≤ a ≤ b − 1`, given `d(X)_b ≥ 2`.
pub fn check_recursion_lemma(x: &FatPointScheme, b: usize) -> Result<BoundReport> {
    require_reduced(x)?;
    if b == 0 {
        return Err(Error::HypothesisUnmet("b must be at least 1".into()));
    }
    let ladder: Vec<usize> = (1..=b).map(|a| generalized_distance(x, a)).collect::<Result<_>>()?;
    if ladder[b - 1] < 2 {
        return Err(Error::HypothesisUnmet(format!("d(X)_{b} = {} < 2", ladder[b - 1])));
    }
    let mut report = BoundReport::new(StatementId::RecursionLemma, format!("X = {x}, b = {b}"));
    for a in 1..b {
        let (da, dnext) = (ladder[a - 1] as i64, ladder[a] as i64);
        report.compare(Comparison::new(
            format!("d(X)_{a} >= d(X)_{} + 1", a + 1),
            da,
            Relation::Ge,
            dnext + 1,
        ));
        report.compare(Comparison::new(
            format!("d(X)_{a} >= b - a + 2"),
            da,
            Relation::Ge,
            b as i64 - a as i64 + 2,
        ));
    }
    if b == 1 {
        report.note("empty ladder: no a with 1 <= a <= b - 1");
    }
    report.attained = Attainment::NotApplicable;
    report.value("b", b).value("ladder", ladder);
    Ok(report)
}

/// Largest `b ≤ limit` with `d(X)_b ≥ 2`, if any.
pub fn largest_recursion_degree(x: &FatPointScheme, limit: usize) -> Result<Option<usize>> {
    let mut best = None;
    for a in 1..=limit {
        if generalized_distance(x, a)? >= 2 {
            best = Some(a);
        } else {
            // d(X)_a is nonincreasing in a
            break;
        }
    }
    Ok(best)
}
