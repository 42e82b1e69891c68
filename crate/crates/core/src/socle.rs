//! Artinian reduction and socle degrees.
//!
//! For a linear form `L` vanishing at no support point, `L` is a
//! non-zerodivisor on `R/I_Z` and `A = R/(I_Z, L)` is Artinian with
//! `HF_A(d) = HF_Z(d) − HF_Z(d−1)`. The socle `0 : m̄` of `A` is read off
//! degree by degree: a class in `A_d` is a socle element when every
//! `x_j · f` falls into `(I_Z + (L))_{d+1}`. Its lowest degree is the
//! minimum socle degree `s_n(Z)`.
//!
//! Coordinates are first changed so that `L` becomes `y₀`. A functional on
//! `R_d` kills `I_{Z,d}` exactly when it lies in the row space of the
//! interpolation matrix `V_d`, so `A_d^*` is that row space cut down to the
//! `y₀`-free monomials. An echelon form of `V_d` with the `y₀`-divisible
//! columns placed first exposes this intersection as the rows whose pivot
//! falls among the `y₀`-free columns, and its rank is `HF_Z(d)` for free.
//! Multiplication by `y_j` on `A_d` is dual to `φ ↦ φ∘y_j`, so the socle in
//! degree `d` has dimension `dim A_d` minus the rank of all contractions of
//! `A_{d+1}^*`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{Attainment, BoundReport, Comparison, Relation, StatementId};
use crate::exactalg::{Matrix, Scalar};
use crate::geometry::{scheme_degree, FatPointScheme, ProjectivePoint};
use crate::ideals::{graded_dim_of, hilbert_function, vanishing_matrix, MonomialBasis, DEFAULT_DEGREE_CAP};
use crate::rng::{seeded, small_vec, COEFF_BOUND};
use crate::{Error, Result};

const NZD_ATTEMPTS: usize = 100;

/// A seeded linear form with integer coefficients in `[−9, 9]` that vanishes
/// at no support point of `Z`.
pub fn generic_nzd_linear_form(z: &FatPointScheme, seed: u64) -> Result<Vec<Scalar>> {
    z.require_rational()?;
    let field = z.field();
    let mut rng = seeded(seed);
    for _ in 0..NZD_ATTEMPTS {
        let form: Vec<Scalar> = small_vec(&mut rng, z.ambient_dim() + 1, COEFF_BOUND)
            .into_iter()
            .map(|c| field.from_i64(c))
            .collect();
        if is_nzd(z, &form) {
            return Ok(form);
        }
    }
    Err(Error::DegenerateAfterRetries(NZD_ATTEMPTS))
}

fn is_nzd(z: &FatPointScheme, form: &[Scalar]) -> bool {
    z.points().iter().all(|(p, _)| !p.eval_linear(form).is_zero())
}

/// `A = R/(I_Z, L)` described by its Hilbert function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinianReduction {
    pub linear_form: Vec<Scalar>,
    /// `L(P_i)` for every support point, all nonzero.
    pub certificate: Vec<Scalar>,
    /// `HF_A(0), HF_A(1), …` up to the last nonzero value.
    pub piece_dims: Vec<usize>,
    pub top_degree: usize,
}

/// Per-degree socle dimensions of the Artinian reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleProfile {
    pub reduction: ArtinianReduction,
    /// Degrees with nonzero socle, mapped to the socle dimension.
    pub degrees_with_socle_dims: BTreeMap<usize, usize>,
    pub min_socle_degree: usize,
}

/// Support points in coordinates `y` with `y₀ = L`: the pivot coordinate
/// `k` of `L` is dropped and `L` is put in front.
fn adapted_points(z: &FatPointScheme, form: &[Scalar]) -> Result<Vec<(ProjectivePoint, u32)>> {
    let k = form.iter().position(|c| !c.is_zero()).ok_or(Error::NotNzd(0))?;
    z.points()
        .iter()
        .map(|(p, m)| {
            let mut coords = vec![p.eval_linear(form)];
            coords.extend(
                p.coords()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, c)| c.clone()),
            );
            Ok((ProjectivePoint::new(coords)?, *m))
        })
        .collect()
}

/// `A_d^*` as independent functionals on the `y₀`-free monomials of degree
/// `d`, together with `HF_Z(d)`.
struct DualPiece {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    functionals: Matrix,
    hilbert: usize,
}

impl DualPiece {
    fn build(n: usize, points: &[(ProjectivePoint, u32)], d: usize) -> Result<Self> {
        let basis = MonomialBasis::new(n, d)?;
        let (divisible, free): (Vec<usize>, Vec<usize>) = (0..basis.len()).partition(|&i| basis.monomials()[i][0] > 0);
        let order: Vec<usize> = divisible.iter().chain(&free).copied().collect();
        let echelon = vanishing_matrix(n, points, d)?.select_columns(&order).row_basis();
        let split = divisible.len();
        let rows: Vec<Vec<Scalar>> = (0..echelon.rows())
            .map(|r| echelon.row(r))
            .filter(|row| row[..split].iter().all(Scalar::is_zero))
            .map(|row| row[split..].to_vec())
            .collect();
        let monomials: Vec<Vec<u32>> = free.iter().map(|&i| basis.monomials()[i].clone()).collect();
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        Ok(DualPiece {
            functionals: Matrix::from_rows(echelon.field(), &rows, monomials.len())?,
            monomials,
            index,
            hilbert: echelon.rows(),
        })
    }

    fn dim(&self) -> usize {
        self.functionals.rows()
    }
}

/// Degree at which `HF_Z` reaches `deg Z`; beyond it `A` vanishes.
fn stabilization_degree(z: &FatPointScheme, cap: usize) -> Result<(usize, Vec<usize>)> {
    let degree = scheme_degree(z)?;
    let mut hf = Vec::new();
    for d in 0..=cap {
        let h = hilbert_function(z, d)?;
        hf.push(h);
        if h as u128 == degree {
            return Ok((d, hf));
        }
    }
    Err(Error::CapExceeded(cap))
}

fn reduce(z: &FatPointScheme, form: &[Scalar], cap: usize) -> Result<(ArtinianReduction, Vec<DualPiece>)> {
    z.require_rational()?;
    if form.len() != z.ambient_dim() + 1 {
        return Err(Error::BadArity {
            expected: z.ambient_dim() + 1,
            got: form.len(),
        });
    }
    if !is_nzd(z, form) {
        return Err(Error::NotNzd(0));
    }
    let degree = scheme_degree(z)?;
    let n = z.ambient_dim();
    let points = adapted_points(z, form)?;
    let mut pieces = Vec::new();
    let mut previous = 0;
    // HF_A(d) = HF_Z(d) − HF_Z(d−1) holds in every degree exactly when L is
    // a non-zerodivisor; the piece past the top must vanish
    let top = loop {
        let d = pieces.len();
        if d > cap {
            return Err(Error::CapExceeded(cap));
        }
        let piece = DualPiece::build(n, &points, d)?;
        if piece.hilbert.checked_sub(previous) != Some(piece.dim()) {
            return Err(Error::NotNzd(d));
        }
        previous = piece.hilbert;
        pieces.push(piece);
        if previous as u128 == degree {
            break d;
        }
    };
    let past = DualPiece::build(n, &points, top + 1)?;
    if past.dim() != 0 {
        return Err(Error::NotNzd(top + 1));
    }
    pieces.push(past);
    let reduction = ArtinianReduction {
        linear_form: form.to_vec(),
        certificate: z.points().iter().map(|(p, _)| p.eval_linear(form)).collect(),
        piece_dims: pieces[..=top].iter().map(DualPiece::dim).collect(),
        top_degree: top,
    };
    Ok((reduction, pieces))
}

/// Hilbert function of `R/(I_Z, L)`; fails with `NotNzd` when `L` is not a
/// non-zerodivisor or the graded pieces are inconsistent.
pub fn artinian_reduction(z: &FatPointScheme, form: &[Scalar], cap: usize) -> Result<ArtinianReduction> {
    Ok(reduce(z, form, cap)?.0)
}

/// Socle dimensions of `R/(I_Z, L)` for a fixed linear form.
pub fn socle_profile_with_form(z: &FatPointScheme, form: &[Scalar], cap: usize) -> Result<SocleProfile> {
    let (reduction, pieces) = reduce(z, form, cap)?;
    let n = z.ambient_dim();
    let top = reduction.top_degree;
    let dims: Vec<usize> = (0..=top)
        .into_par_iter()
        .map(|d| socle_dim(&pieces[d], &pieces[d + 1], n))
        .collect::<Result<_>>()?;
    let degrees_with_socle_dims: BTreeMap<usize, usize> =
        dims.into_iter().enumerate().filter(|(_, k)| *k > 0).collect();
    let min_socle_degree = *degrees_with_socle_dims
        .keys()
        .next()
        .expect("the top graded piece lies in the socle");
    Ok(SocleProfile {
        reduction,
        degrees_with_socle_dims,
        min_socle_degree,
    })
}

/// Socle profile with a linear form drawn from `seed`.
pub fn socle_profile(z: &FatPointScheme, seed: u64) -> Result<SocleProfile> {
    let form = generic_nzd_linear_form(z, seed)?;
    socle_profile_with_form(z, &form, DEFAULT_DEGREE_CAP)
}

/// `dim soc(A)_d`: the nullity of `f ↦ (y₁f, …, y_nf)` from `A_d` to
/// `A_{d+1}^n`, computed as `dim A_d` minus the rank of the dual map.
fn socle_dim(here: &DualPiece, next: &DualPiece, n: usize) -> Result<usize> {
    if here.dim() == 0 || next.dim() == 0 {
        return Ok(here.dim());
    }
    let mut rows = Vec::with_capacity(n * next.dim());
    for r in 0..next.dim() {
        let phi = next.functionals.row(r);
        for j in 1..=n {
            let contracted: Vec<Scalar> = here
                .monomials
                .iter()
                .map(|mono| {
                    let mut up = mono.clone();
                    up[j] += 1;
                    phi[next.index[&up]].clone()
                })
                .collect();
            rows.push(contracted);
        }
    }
    let m = Matrix::from_rows(here.functionals.field(), &rows, here.monomials.len())?;
    Ok(here.dim() - m.rank())
}

/// `Z′`: multiplicity of point `i` lowered by one, the point removed at 1.
fn lowered(z: &FatPointScheme, i: usize) -> Vec<(ProjectivePoint, u32)> {
    z.points()
        .iter()
        .enumerate()
        .filter_map(|(k, (p, m))| match (k == i, *m) {
            (true, 1) => None,
            (true, m) => Some((p.clone(), m - 1)),
            (false, m) => Some((p.clone(), m)),
        })
        .collect()
}

/// Least degree of a separator of `P_i` of multiplicity `m_i`, i.e. of a form
/// in `I_{Z′} \ I_Z`. `i` is zero-based.
pub fn separator_degree(z: &FatPointScheme, i: usize) -> Result<usize> {
    separator_degree_capped(z, i, DEFAULT_DEGREE_CAP)
}

pub fn separator_degree_capped(z: &FatPointScheme, i: usize, cap: usize) -> Result<usize> {
    z.require_rational()?;
    if i >= z.len() {
        return Err(Error::IndexOutOfRange { index: i, len: z.len() });
    }
    let n = z.ambient_dim();
    let smaller = lowered(z, i);
    for d in 0..=cap {
        if graded_dim_of(n, &smaller, d)? > graded_dim_of(n, z.points(), d)? {
            return Ok(d);
        }
    }
    Err(Error::CapExceeded(cap))
}

/// All separator degrees, in point order.
pub fn separator_degrees(z: &FatPointScheme) -> Result<Vec<usize>> {
    (0..z.len()).into_par_iter().map(|i| separator_degree(z, i)).collect()
}

/// Checks that every separator has degree at least `s_n(Z)`.
pub fn check_separator_socle(z: &FatPointScheme, seed: u64) -> Result<BoundReport> {
    let profile = socle_profile(z, seed)?;
    let degrees = separator_degrees(z)?;
    let min_sep = *degrees.iter().min().expect("nonempty scheme");
    let sn = profile.min_socle_degree;
    let mut report = BoundReport::new(StatementId::FatPointSocle, format!("Z = {z}"));
    report.compare(Comparison::new(
        "min separator degree >= s_n(Z)",
        min_sep as i64,
        Relation::Ge,
        sn as i64,
    ));
    report.attained = Attainment::from_bool(min_sep == sn);
    report.value("separator_degrees", degrees).value("min_socle_degree", sn);
    Ok(report)
}

/// `HF_A` predicted from `HF_Z`, for cross-checks.
pub fn expected_piece_dims(z: &FatPointScheme, cap: usize) -> Result<Vec<usize>> {
    let (top, hf) = stabilization_degree(z, cap)?;
    Ok((0..=top)
        .map(|d| if d == 0 { hf[0] } else { hf[d] - hf[d - 1] })
        .collect())
}
