//! Runs every Rust listing of the guide in `book/` as a doctest, so the
//! guide cannot drift from the API. mdbook cannot link against `bs1n`
//! itself, so each chapter is pulled in here as the docs of an empty
//! module.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/normal-forms.md")]
pub mod normal_forms {}
#[doc = include_str!("../../../book/src/endomorphisms.md")]
pub mod endomorphisms {}
#[doc = include_str!("../../../book/src/diophantine.md")]
pub mod diophantine {}
#[doc = include_str!("../../../book/src/twisted-conjugacy.md")]
pub mod twisted_conjugacy {}
#[doc = include_str!("../../../book/src/fixed-points.md")]
pub mod fixed_points {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/testing.md")]
pub mod testing {}
