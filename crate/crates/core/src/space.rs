//! Finite atomic probability spaces.

use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

/// Tolerated drift of the probability sum before construction fails.
pub const SUM_REJECT_TOL: f64 = 1e-9;
/// Guaranteed normalization of a constructed space.
pub const SUM_INVARIANT_TOL: f64 = 1e-12;

/// A finite probability space given by the masses of its atoms.
///
/// Every atom has strictly positive mass and the masses sum to one
/// within [`SUM_INVARIANT_TOL`]; inputs off by at most
/// [`SUM_REJECT_TOL`] are renormalized on construction. Since every
/// atom is charged, essential suprema over the space coincide with
/// plain maxima over atoms.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomSpace {
    probs: Vec<f64>,
}

impl AtomSpace {
    /// Builds a space from atom masses.
    pub fn new(probs: &[f64]) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonpositiveProbability { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_REJECT_TOL {
            return Err(Error::UnnormalizedProbabilities { sum });
        }
        let normalized = probs.iter().map(|p| p / sum).collect();
        Ok(AtomSpace { probs: normalized })
    }

    /// Uniform space with `n` atoms.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let p = 1.0 / n as f64;
        AtomSpace::new(&alloc::vec![p; n])
    }

    pub fn atoms(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of the set of atoms selected by the predicate.
    pub fn measure<F: FnMut(usize) -> bool>(&self, mut pred: F) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(i, _)| pred(*i))
            .map(|(_, p)| p)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty() {
        assert_eq!(AtomSpace::new(&[]), Err(Error::EmptySpace));
    }

    #[test]
    fn rejects_nonpositive_mass() {
        assert_eq!(
            AtomSpace::new(&[0.5, 0.0, 0.5]),
            Err(Error::NonpositiveProbability {
                index: 1,
                value: 0.0
            })
        );
        assert!(matches!(
            AtomSpace::new(&[0.5, -0.1, 0.6]),
            Err(Error::NonpositiveProbability { index: 1, .. })
        ));
    }

    #[test]
    fn rejects_badly_normalized() {
        assert!(matches!(
            AtomSpace::new(&[0.5, 0.4]),
            Err(Error::UnnormalizedProbabilities { .. })
        ));
    }

    #[test]
    fn renormalizes_small_drift() {
        let drift = 1e-10;
        let s = AtomSpace::new(&[0.5 + drift, 0.5]).unwrap();
        let total: f64 = s.probs().iter().sum();
        assert!((total - 1.0).abs() <= super::SUM_INVARIANT_TOL);
    }

    #[test]
    fn measure_of_selected_atoms() {
        let s = AtomSpace::new(&[0.25, 0.25, 0.5]).unwrap();
        assert_eq!(s.measure(|i| i != 1), 0.75);
        assert_eq!(s.measure(|_| false), 0.0);
    }
}
