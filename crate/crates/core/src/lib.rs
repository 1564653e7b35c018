//! Locality and independence conditions for pairs of finite-dimensional
//! algebras, and the sheaf condition on their context posets.
//!
//! Commutative algebras are handled exactly through set partitions: the
//! algebra of functions constant on the blocks of `P`. Noncommutative
//! *-subalgebras of `M_n` are handled with exact Gaussian-rational linear
//! algebra.

pub mod algebra;
pub mod cli;
pub mod contexts;
pub mod descent;
pub mod error;
pub mod independence;
pub mod net;
pub mod valuations;

pub use error::{Error, Result};
