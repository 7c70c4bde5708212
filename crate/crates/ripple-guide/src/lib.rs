//! Doc-test shim for the guide in `book/`.
//!
//! mdBook renders the chapters but cannot execute their Rust snippets
//! against this workspace, so each chapter is also included here as a module
//! doc: `cargo test --doc -p ripple-guide` compiles and runs every code
//! block in the book, keeping prose and library in lock step. A failing
//! doctest names the chapter module it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/mode-space.md")]
pub mod mode_space {}

#[doc = include_str!("../../../book/src/zero-mode.md")]
pub mod zero_mode {}

#[doc = include_str!("../../../book/src/picard.md")]
pub mod picard {}

#[doc = include_str!("../../../book/src/evolution.md")]
pub mod evolution {}

#[doc = include_str!("../../../book/src/diagnostics.md")]
pub mod diagnostics {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
