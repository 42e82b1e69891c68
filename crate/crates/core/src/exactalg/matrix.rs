use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FieldSpec, Scalar};
use crate::{Error, Result};

/// Dense row-major matrix over a single exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::Shape("entry from a different field".into()));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, size: usize) -> Self {
        let mut m = Matrix::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer rows, reducing into the field.
    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        Matrix::new(field, rows.len(), cols, entries)
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>], cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape("column length".into()));
            }
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape("inner dimensions".into()));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * rhs.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::Shape("vstack".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix::new(self.field, self.rows + other.rows, self.cols, entries)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.eliminate(false).1.len()
    }

    /// Linearly independent rows spanning the row space, in echelon form but
    /// not reduced.
    pub fn row_basis(&self) -> Matrix {
        let (rows, pivots) = self.eliminate(false);
        let mut out = Matrix::zeros(self.field, pivots.len(), self.cols);
        for (r, row) in rows.into_iter().take(pivots.len()).enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        out
    }

    /// Reduced row-echelon form (zero rows dropped from the bottom are kept so
    /// the shape matches) and the pivot columns in increasing order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = self.eliminate(true);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        (out, pivots)
    }

    /// Basis of `{v : Mv = 0}` as the columns of a `cols × nullity` matrix.
    ///
    /// One basis vector per free column `f` of the RREF: a 1 in position `f`
    /// and the negated RREF entries of column `f` at the pivot positions.
    pub fn nullspace_basis(&self) -> Matrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            basis.set(f, j, self.field.one());
            for (r, &p) in pivots.iter().enumerate() {
                basis.set(p, j, -rref.get(r, f));
            }
        }
        basis
    }

    /// Runs elimination; returns the (reduced if `full`) echelon rows padded
    /// with zero rows, and the pivot columns.
    fn eliminate(&self, full: bool) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        match self.field {
            FieldSpec::Rational => {
                let rows = (0..self.rows).map(|r| primitive_integer_row(self.row(r))).collect();
                let (rows, pivots) = integer_echelon(rows, self.cols, full);
                let mut out: Vec<Vec<Scalar>> = rows
                    .into_iter()
                    .zip(&pivots)
                    .map(|(row, &p)| {
                        if full {
                            let lead = row[p].clone();
                            row.into_iter()
                                .map(|v| Scalar::Rational(BigRational::new(v, lead.clone())))
                                .collect()
                        } else {
                            row.into_iter()
                                .map(|v| Scalar::Rational(BigRational::from_integer(v)))
                                .collect()
                        }
                    })
                    .collect();
                out.resize(self.rows, vec![self.field.zero(); self.cols]);
                (out, pivots)
            }
            FieldSpec::Prime(p) => {
                let rows = (0..self.rows)
                    .map(|r| self.row(r).iter().map(|v| v.residue().expect("prime entry")).collect())
                    .collect();
                let (rows, pivots) = modular_echelon(rows, self.cols, p as u64, full);
                let mut out: Vec<Vec<Scalar>> = rows
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|value| Scalar::Prime { value, modulus: p })
                            .collect()
                    })
                    .collect();
                out.resize(self.rows, vec![self.field.zero(); self.cols]);
                (out, pivots)
            }
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Scales a rational row to a primitive integer row with the same span.
fn primitive_integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, v| {
        let q = v.as_rational().expect("rational entry");
        acc.lcm(q.denom())
    });
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|v| {
            let q = v.as_rational().expect("rational entry");
            q.numer() * (&lcm / q.denom())
        })
        .collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v /= &g;
    }
}

/// Fraction-free elimination over ℤ with content removal after every row
/// update. The pivot in each column is the first nonzero entry at or below the
/// current row. Returns only the nonzero rows.
fn integer_echelon(mut rows: Vec<Vec<BigInt>>, cols: usize, full: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c].is_negative() {
            for v in rows[r].iter_mut() {
                *v = -&*v;
            }
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let (above, pivot) = head.split_at_mut(r);
        let pivot_row = &pivot[0];
        let above: &mut [Vec<BigInt>] = if full { above } else { &mut [] };
        for row in tail.iter_mut().chain(above.iter_mut()) {
            eliminate_with(row, pivot_row, c);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// `row ← pivot[c]·row − row[c]·pivot`, then divide out the content.
fn eliminate_with(row: &mut [BigInt], pivot_row: &[BigInt], c: usize) {
    if row[c].is_zero() {
        return;
    }
    let g = pivot_row[c].gcd(&row[c]);
    let a = &pivot_row[c] / &g;
    let b = &row[c] / &g;
    for (v, pv) in row.iter_mut().zip(pivot_row) {
        if pv.is_zero() {
            if !v.is_zero() {
                *v *= &a;
            }
        } else {
            *v = &*v * &a - &b * pv;
        }
    }
    make_primitive(row);
}

fn modular_echelon(mut rows: Vec<Vec<u64>>, cols: usize, p: u64, full: bool) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pi) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pi);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || (!full && i < r) || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + p - f * pv % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}
