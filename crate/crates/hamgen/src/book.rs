//! The guide's chapters as documented modules, so every code block in
//! `book/src` compiles and runs under `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/canonical-labeling.md")]
pub mod canonical_labeling {}

#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}

#[doc = include_str!("../../../book/src/planarity.md")]
pub mod planarity {}

#[doc = include_str!("../../../book/src/generation.md")]
pub mod generation {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
