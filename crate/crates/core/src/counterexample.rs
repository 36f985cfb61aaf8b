//! Exact witness that differentiability in probability is weaker than
//! the calculus it suggests.
//!
//! The family `f(t) = indicator of (t, 1]`, viewed as a curve in the
//! scalar module over the unit interval with Lebesgue measure, has
//! difference quotients of modulus `1 / |t - s|` supported on a set of
//! measure `|t - s|`. Every exceedance probability therefore vanishes
//! in the limit, so the curve is differentiable in probability with
//! derivative zero; yet its endpoint increment is `-1`, so the
//! fundamental theorem of calculus fails by exactly one, and no almost
//! surely finite Lipschitz modulus exists. Everything here is exact
//! rational arithmetic; no floating point enters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn in_unit_interval(t: &BigRational) -> bool {
    !t.is_negative() && *t <= BigRational::one()
}

/// Indicator of `(t, 1]` as an element of the scalar module over the
/// unit interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalIndicator {
    t: BigRational,
}

impl IntervalIndicator {
    /// The family is only defined for `t` in the unit interval.
    pub fn new(t: BigRational) -> Result<Self> {
        if !in_unit_interval(&t) {
            return Err(Error::OutOfDomain);
        }
        Ok(Self { t })
    }

    pub fn time(&self) -> &BigRational {
        &self.t
    }

    /// Pointwise value at a sample point of the unit interval.
    pub fn value_at(&self, omega: &BigRational) -> Result<BigRational> {
        if !in_unit_interval(omega) {
            return Err(Error::OutOfDomain);
        }
        if *omega > self.t {
            Ok(BigRational::one())
        } else {
            Ok(BigRational::zero())
        }
    }

    /// Exact measure of the support `(t, 1]`.
    pub fn support_measure(&self) -> BigRational {
        BigRational::one() - &self.t
    }
}

/// Exact description of one difference quotient
/// `(f(t) - f(s)) / (t - s)`: a function of constant modulus on an
/// interval, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceQuotient {
    pub s: BigRational,
    pub t: BigRational,
    /// Modulus on the support, `1 / |t - s|`.
    pub modulus: BigRational,
    /// Measure of the support, `|t - s|`.
    pub support: BigRational,
}

impl DifferenceQuotient {
    /// Exceedance probability `P(|quotient| > eps)`, exactly: the
    /// whole support when the modulus exceeds `eps`, nothing
    /// otherwise.
    pub fn exceedance(&self, eps: &BigRational) -> Result<BigRational> {
        if !eps.is_positive() {
            return Err(Error::NonpositiveEpsilon {
                eps: eps.to_f64().unwrap_or(f64::NAN),
            });
        }
        if self.modulus > *eps {
            Ok(self.support.clone())
        } else {
            Ok(BigRational::zero())
        }
    }
}

/// Difference quotient of the indicator family between two distinct
/// times of the unit interval.
pub fn difference_quotient(s: &BigRational, t: &BigRational) -> Result<DifferenceQuotient> {
    if !in_unit_interval(s) || !in_unit_interval(t) {
        return Err(Error::OutOfDomain);
    }
    if s == t {
        return Err(Error::DegenerateQuotient);
    }
    let gap = (t - s).abs();
    Ok(DifferenceQuotient {
        s: s.clone(),
        t: t.clone(),
        modulus: gap.recip(),
        support: gap,
    })
}

/// Modulus of differentiability in probability: for any exceedance
/// threshold and any probability target `lambda > 0`, every pair of
/// times closer than the returned `delta` has exceedance at most
/// `lambda`. The modulus is `delta = lambda` itself, independent of
/// the threshold, because the exceedance of a quotient never exceeds
/// its support measure.
pub fn derivative_certificate(eps: &BigRational, lambda: &BigRational) -> Result<BigRational> {
    if !eps.is_positive() {
        return Err(Error::NonpositiveEpsilon {
            eps: eps.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !lambda.is_positive() {
        return Err(Error::NonpositiveEpsilon {
            eps: lambda.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(lambda.clone())
}

/// Almost sure value of the endpoint increment `f(1) - f(0)`.
pub fn endpoint_increment() -> BigRational {
    -BigRational::one()
}

/// Riemann integral over the unit interval of the derivative in
/// probability, which is identically zero.
pub fn derivative_integral() -> BigRational {
    BigRational::zero()
}

/// Defect of the fundamental theorem of calculus for the family:
/// `f(1) - f(0) - int_0^1 f'(t) dt`, exactly `-1`.
pub fn ftc_gap() -> BigRational {
    endpoint_increment() - derivative_integral()
}

/// A pair of times whose difference quotient exceeds a candidate
/// Lipschitz bound on a set of positive measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LipschitzWitness {
    pub s: BigRational,
    pub t: BigRational,
    /// Quotient modulus forced on the support, a power of two.
    pub modulus: BigRational,
    /// Measure of the set where the candidate bound fails.
    pub support: BigRational,
}

/// Defeats any proposed almost sure Lipschitz bound: returns a dyadic
/// pair `(0, 2^-k)` whose quotient modulus `2^k` strictly exceeds the
/// candidate on a set of measure `2^-k > 0`. Since the candidate was
/// arbitrary, the family admits no almost surely finite Lipschitz
/// modulus.
pub fn lipschitz_violation(candidate: &BigRational) -> LipschitzWitness {
    let mut modulus = BigRational::one();
    while modulus <= *candidate {
        modulus = modulus * ratio(2, 1);
    }
    let support = modulus.recip();
    LipschitzWitness {
        s: BigRational::zero(),
        t: support.clone(),
        modulus,
        support,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_values_and_support() {
        let f = IntervalIndicator::new(ratio(1, 3)).unwrap();
        assert_eq!(f.value_at(&ratio(1, 2)).unwrap(), BigRational::one());
        assert_eq!(f.value_at(&ratio(1, 4)).unwrap(), BigRational::zero());
        // The interval is open at its left endpoint.
        assert_eq!(f.value_at(&ratio(1, 3)).unwrap(), BigRational::zero());
        assert_eq!(f.support_measure(), ratio(2, 3));
    }

    #[test]
    fn domain_is_the_unit_interval() {
        assert_eq!(
            IntervalIndicator::new(ratio(3, 2)).unwrap_err(),
            Error::OutOfDomain
        );
        let f = IntervalIndicator::new(ratio(1, 2)).unwrap();
        assert_eq!(f.value_at(&ratio(-1, 4)).unwrap_err(), Error::OutOfDomain);
        assert_eq!(
            difference_quotient(&ratio(0, 1), &ratio(2, 1)).unwrap_err(),
            Error::OutOfDomain
        );
    }

    #[test]
    fn quotient_modulus_and_exceedance_are_exact() {
        let q = difference_quotient(&ratio(1, 4), &ratio(1, 3)).unwrap();
        assert_eq!(q.modulus, ratio(12, 1));
        assert_eq!(q.support, ratio(1, 12));
        // Strictly below the modulus: the whole support exceeds.
        assert_eq!(q.exceedance(&ratio(11, 1)).unwrap(), ratio(1, 12));
        // At or above the modulus: nothing exceeds.
        assert_eq!(q.exceedance(&ratio(12, 1)).unwrap(), BigRational::zero());
        assert_eq!(
            difference_quotient(&ratio(1, 4), &ratio(1, 4)).unwrap_err(),
            Error::DegenerateQuotient
        );
    }

    #[test]
    fn derivative_in_probability_is_zero_with_explicit_modulus() {
        let eps = ratio(1, 1000);
        let lambda = ratio(1, 100);
        let delta = derivative_certificate(&eps, &lambda).unwrap();
        assert_eq!(delta, lambda);
        // Any pair within delta keeps the exceedance below lambda.
        let q = difference_quotient(&ratio(1, 2), &(ratio(1, 2) + ratio(1, 150))).unwrap();
        assert!(q.exceedance(&eps).unwrap() <= lambda);
        // The modulus does not depend on the threshold.
        assert_eq!(
            derivative_certificate(&ratio(1, 1_000_000), &lambda).unwrap(),
            delta
        );
    }

    #[test]
    fn ftc_fails_by_exactly_one() {
        assert_eq!(endpoint_increment(), ratio(-1, 1));
        assert_eq!(derivative_integral(), ratio(0, 1));
        assert_eq!(ftc_gap(), ratio(-1, 1));
    }

    #[test]
    fn no_candidate_lipschitz_bound_survives() {
        let witness = lipschitz_violation(&ratio(1000, 1));
        assert_eq!(witness.modulus, ratio(1024, 1));
        assert_eq!(witness.support, ratio(1, 1024));
        assert!(witness.modulus > ratio(1000, 1));
        assert!(witness.support.is_positive());
        // The forced modulus times the violating measure is exactly 1.
        assert_eq!(&witness.modulus * &witness.support, BigRational::one());
        // The witness is a genuine quotient of the family.
        let q = difference_quotient(&witness.s, &witness.t).unwrap();
        assert_eq!(q.modulus, witness.modulus);
    }
}
