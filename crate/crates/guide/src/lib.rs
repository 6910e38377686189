//! Doctest shim for the book under `book/`.
//!
//! mdBook renders the chapters but does not execute their Rust blocks; this
//! crate includes each chapter as a doc comment so `cargo test --doc -p
//! guide` compiles and runs every snippet. One module per chapter keeps
//! failures attributable to their source file.

#[doc = include_str!("../../../book/src/ch01-overview.md")]
pub mod ch01_overview {}

#[doc = include_str!("../../../book/src/ch02-symbols.md")]
pub mod ch02_symbols {}

#[doc = include_str!("../../../book/src/ch03-indices.md")]
pub mod ch03_indices {}

#[doc = include_str!("../../../book/src/ch04-potential.md")]
pub mod ch04_potential {}

#[doc = include_str!("../../../book/src/ch05-simulation.md")]
pub mod ch05_simulation {}

#[doc = include_str!("../../../book/src/ch06-dimension.md")]
pub mod ch06_dimension {}

#[doc = include_str!("../../../book/src/ch07-experiments.md")]
pub mod ch07_experiments {}
