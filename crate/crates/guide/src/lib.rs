//! Runs the code in the guide under `book/` as doctests.
//!
//! mdbook cannot link snippets against workspace crates, so each chapter is
//! pulled in as the documentation of an empty module and `cargo test` checks
//! it like any other doc comment.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/schemes.md")]
pub mod schemes {}

#[doc = include_str!("../../../book/src/codes.md")]
pub mod codes {}

#[doc = include_str!("../../../book/src/ideals.md")]
pub mod ideals {}

#[doc = include_str!("../../../book/src/socle.md")]
pub mod socle {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/complete-intersections.md")]
pub mod complete_intersections {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
