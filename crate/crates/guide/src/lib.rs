//! Book chapters as doc modules, so their snippets run under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/field.md")]
pub mod field {}

#[doc = include_str!("../../../book/src/operators.md")]
pub mod operators {}

#[doc = include_str!("../../../book/src/transformations.md")]
pub mod transformations {}

#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}

#[doc = include_str!("../../../book/src/orbits.md")]
pub mod orbits {}

#[doc = include_str!("../../../book/src/fixtures.md")]
pub mod fixtures {}
