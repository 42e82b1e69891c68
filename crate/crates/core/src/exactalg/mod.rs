//! Exact dense linear algebra over ℚ and GF(p).
//!
//! Rational elimination runs fraction-free on primitive integer rows (each row
//! is divided by its content after every update), which keeps the
//! interpolation matrices of the higher-degree fat point computations from
//! blowing up. Pivots are chosen as the first nonzero entry scanning down the
//! column, so every result is deterministic.

mod field;
mod matrix;

pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;

use num_integer::Integer;

use crate::{Error, Result};

/// `C(n, k)` in 128-bit arithmetic, failing on overflow.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n−i)/(i+1) is integral; cancel the common factor first so the
        // product only overflows when the result would
        let (num, den) = ((n - i) as u128, i as u128 + 1);
        let g = acc.gcd(&den);
        acc = (acc / g).checked_mul(num / (den / g)).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// `C(n, k)` as a `usize`, for dimension counts.
pub fn binomial_usize(n: usize, k: usize) -> Result<usize> {
    usize::try_from(binomial(n as u64, k as u64)?).map_err(|_| Error::Overflow)
}
