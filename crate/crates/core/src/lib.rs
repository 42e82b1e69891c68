//! Exact invariants of fat point schemes in projective space.
//!
//! A fat point scheme `Z = m₁P₁ + ⋯ + m_sP_s` carries two kinds of data that
//! this crate computes side by side:
//!
//! * coding-theoretic: the generator matrix `A(Z)` (each point's coordinates
//!   repeated `mᵢ` times) and its minimum Hamming distance `d(Z)`, plus the
//!   Veronese distances `d(X)_a` of the support;
//! * homological: the α-invariant, the Hilbert function, the socle of an
//!   Artinian reduction (hence the minimum socle degree `s_n(Z)`), and the
//!   degrees of separators.
//!
//! Every computation is exact, over ℚ or a prime field GF(p). The [`bounds`]
//! module compares the two sides through a family of inequality checkers that
//! each emit a [`bounds::BoundReport`].
//!
//! ```
//! use fatcode::{codes, geometry::FatPointScheme, ideals};
//!
//! // Z = 2P₁ + 2P₂ + P₃ + P₄ in P².
//! let z = FatPointScheme::from_integer_points(
//!     2,
//!     &[(&[0, 1, 0], 2), (&[1, 0, 0], 2), (&[1, 1, 0], 1), (&[0, 0, 1], 1)],
//! )
//! .unwrap();
//! assert_eq!(codes::minimum_distance(&z).unwrap().d, 1);
//! assert_eq!(ideals::alpha(&z, ideals::DEFAULT_DEGREE_CAP).unwrap(), 3);
//! ```

pub mod bounds;
pub mod cli;
pub mod codes;
mod error;
pub mod exactalg;
pub mod fps;
pub mod geometry;
pub mod ideals;
pub mod rng;
pub mod socle;

pub use error::{Error, Result};
