//! Numerical calculus for one-parameter operator semigroups acting on
//! finite-atom random normed modules.
//!
//! The base space is a finite probability space (atoms with strictly
//! positive weights). Scalars are random variables over that space
//! ([`L0Scalar`]), module elements are atom-indexed stacks of complex
//! vectors ([`RNVector`]), and operators are atom-indexed stacks of
//! square complex matrices ([`ModuleHom`]). All norms are computed
//! pointwise per atom, so the module norm of a vector is itself a
//! scalar random variable.
//!
//! On top of the module layer the crate provides:
//!
//! * matrix-exponential semigroups `t -> exp(tA)` with certified growth
//!   envelopes ([`semigroup`]),
//! * resolvents through direct shifted solves and through truncated
//!   Laplace transforms with quadrature and tail certificates
//!   ([`resolvent`]),
//! * the equivalent renormalizations built from resolvent powers and
//!   orbit suprema ([`renorm`]),
//! * generation-theorem condition checks tying the three together
//!   ([`checker`]),
//! * an exact rational model of the interval-indicator family whose
//!   pointwise derivative vanishes in probability while the fundamental
//!   theorem of calculus fails ([`counterexample`]).
//!
//! The crate is `no_std` (with `alloc`); all file and terminal handling
//! lives in the companion command-line crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod checker;
pub mod counterexample;
pub mod error;
pub mod hom;
pub mod linalg;
pub mod renorm;
pub mod resolvent;
pub mod sampling;
pub mod scalar;
pub mod semigroup;
pub mod space;
pub mod vector;

pub use error::Error;
pub use hom::ModuleHom;
pub use scalar::L0Scalar;
pub use semigroup::{Generator, GrowthEnvelope, TimeGrid};
pub use space::AtomSpace;
pub use vector::RNVector;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
