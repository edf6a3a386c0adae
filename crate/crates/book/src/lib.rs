//! The guide's chapters, compiled as doc comments so that `cargo test` runs
//! every snippet in the book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/problem.md")]
pub mod problem {}
#[doc = include_str!("../../../book/src/lifting.md")]
pub mod lifting {}
#[doc = include_str!("../../../book/src/gaec.md")]
pub mod gaec {}
#[doc = include_str!("../../../book/src/klj.md")]
pub mod klj {}
#[doc = include_str!("../../../book/src/metrics.md")]
pub mod metrics {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
