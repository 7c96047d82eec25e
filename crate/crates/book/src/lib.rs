//! The guide's chapters as doc modules, so `cargo test --doc` runs every
//! listing against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/bundles.md")]
pub mod bundles {}
#[doc = include_str!("../../../book/src/cone.md")]
pub mod cone {}
#[doc = include_str!("../../../book/src/width.md")]
pub mod width {}
#[doc = include_str!("../../../book/src/height.md")]
pub mod height {}
#[doc = include_str!("../../../book/src/scanning.md")]
pub mod scanning {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
