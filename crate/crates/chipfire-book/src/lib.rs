//! Doc-test shim that runs every code block of the guide in `book/` as a
//! rustdoc test, so `cargo test --doc -p chipfire-book` fails whenever the
//! guide drifts out of sync with the library. mdbook itself cannot run
//! examples against path dependencies, hence this crate.
//!
//! One module per chapter keeps test failures attributable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/weighted-graphs.md")]
pub mod weighted_graphs {}

#[doc = include_str!("../../../book/src/chip-firing.md")]
pub mod chip_firing {}

#[doc = include_str!("../../../book/src/winnability.md")]
pub mod winnability {}

#[doc = include_str!("../../../book/src/q-classes.md")]
pub mod q_classes {}

#[doc = include_str!("../../../book/src/jacobian.md")]
pub mod jacobian {}

#[doc = include_str!("../../../book/src/quotients.md")]
pub mod quotients {}

#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
