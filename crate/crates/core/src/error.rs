//! Error type shared by all modules of the crate.

use alloc::vec::Vec;
use thiserror::Error;

/// Failure modes of constructors and numerical routines.
///
/// Variants carry enough data to point at the offending atom or value;
/// they are intended to be surfaced verbatim by callers.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    /// A probability space needs at least one atom.
    #[error("atom space must contain at least one atom")]
    EmptySpace,

    /// Every atom must carry strictly positive mass.
    #[error("atom {index} has nonpositive probability {value}")]
    NonpositiveProbability { index: usize, value: f64 },

    /// Atom masses must sum to one within the normalization tolerance.
    #[error("atom probabilities sum to {sum}, not 1")]
    UnnormalizedProbabilities { sum: f64 },

    /// Two operands live over different atom spaces.
    #[error("operands are defined over different atom spaces")]
    SpaceMismatch,

    /// A lattice supremum or infimum of an empty family is undefined.
    #[error("supremum/infimum of an empty family")]
    EmptyFamily,

    /// A lattice operation requires real-valued scalars.
    #[error("lattice operation on a complex-valued scalar")]
    ComplexValued,

    /// Exceedance probabilities are only defined for eps > 0.
    #[error("exceedance threshold must be strictly positive, got {eps}")]
    NonpositiveEpsilon { eps: f64 },

    /// Vector or matrix dimensions do not line up.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// Semigroup evaluation is restricted to t >= 0.
    #[error("semigroup parameter must be nonnegative, got {t}")]
    NegativeTime { t: f64 },

    /// A shifted operator xi - A is numerically singular at some atom.
    /// Carries (atom, spectral distance) pairs for the failing atoms.
    #[error("shift is numerically in the spectrum at {0:?} (atom, distance)")]
    SingularShift(Vec<(usize, f64)>),

    /// The Laplace integrand does not decay: Re xi - tau is not
    /// strictly positive at the named atom.
    #[error("Laplace integral diverges at atom {atom}: Re xi - tau = {gap}")]
    NonconvergentIntegral { atom: usize, gap: f64 },

    /// A shift or threshold must be strictly positive at every atom.
    #[error("scalar is not strictly positive at every atom")]
    NotStrictlyPositive,

    /// Orbit suprema exist only for almost surely uniformly bounded
    /// semigroups; the spectral test failed at the named atom.
    #[error("semigroup is not a.s.u. bounded at atom {atom}")]
    NotAsuBounded { atom: usize },

    /// A shift lies outside the range a routine can handle at the
    /// named atom: generation-theorem checks need xi - tau > 0, and
    /// renorm contraction checks need the shift below the family.
    #[error("shift is not admissible at atom {atom}")]
    ShiftNotAdmissible { atom: usize },

    /// A difference quotient with zero time increment is undefined.
    #[error("difference quotient over a zero time increment")]
    DegenerateQuotient,

    /// Counterexample times must stay inside the unit interval.
    #[error("argument lies outside the unit interval domain")]
    OutOfDomain,

    /// A grid must contain at least two points.
    #[error("grid must contain at least two points")]
    EmptyGrid,

    /// An iterative kernel failed to converge; indicates input far
    /// outside the supported desk scale.
    #[error("linear algebra kernel failed: {0}")]
    LinalgFailure(&'static str),
}
