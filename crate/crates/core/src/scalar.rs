//! Scalar random variables over a finite atom space, with the
//! pointwise lattice structure of their real-valued sublattice.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;
use crate::space::AtomSpace;
use crate::Result;

/// A complex-valued random variable over a finite atom space, stored
/// as one value per atom.
///
/// Arithmetic is pointwise. Lattice operations (suprema, infima,
/// order comparisons) are defined only on the real sublattice and
/// fail with [`Error::ComplexValued`] otherwise; realness means an
/// exactly zero imaginary part, which all norm-producing operations
/// in this crate guarantee by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct L0Scalar {
    space: AtomSpace,
    values: Vec<Complex64>,
}

impl L0Scalar {
    pub fn from_complex(space: AtomSpace, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != space.atoms() {
            return Err(Error::ShapeMismatch {
                expected: space.atoms(),
                got: values.len(),
            });
        }
        Ok(L0Scalar { space, values })
    }

    pub fn from_real(space: AtomSpace, values: &[f64]) -> Result<Self> {
        if values.len() != space.atoms() {
            return Err(Error::ShapeMismatch {
                expected: space.atoms(),
                got: values.len(),
            });
        }
        let values = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(L0Scalar { space, values })
    }

    /// Constant random variable.
    pub fn constant(space: AtomSpace, v: f64) -> Self {
        let n = space.atoms();
        L0Scalar {
            space,
            values: vec![Complex64::new(v, 0.0); n],
        }
    }

    pub fn zero(space: AtomSpace) -> Self {
        L0Scalar::constant(space, 0.0)
    }

    pub fn one(space: AtomSpace) -> Self {
        L0Scalar::constant(space, 1.0)
    }

    pub fn space(&self) -> &AtomSpace {
        &self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, atom: usize) -> Complex64 {
        self.values[atom]
    }

    pub fn atoms(&self) -> usize {
        self.values.len()
    }

    /// True when every atom value has exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    fn require_real(&self) -> Result<()> {
        if self.is_real() {
            Ok(())
        } else {
            Err(Error::ComplexValued)
        }
    }

    fn require_same_space(&self, other: &L0Scalar) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Real part at an atom; callers use this after checking realness.
    pub fn re(&self, atom: usize) -> f64 {
        self.values[atom].re
    }

    /// Pointwise modulus, always real.
    pub fn abs(&self) -> L0Scalar {
        L0Scalar {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .map(|v| Complex64::new(v.norm(), 0.0))
                .collect(),
        }
    }

    /// Pointwise real-part projection.
    pub fn real_part(&self) -> L0Scalar {
        L0Scalar {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .map(|v| Complex64::new(v.re, 0.0))
                .collect(),
        }
    }

    /// Applies a real function pointwise; requires a real scalar.
    pub fn map_real<F: Fn(f64) -> f64>(&self, f: F) -> Result<L0Scalar> {
        self.require_real()?;
        Ok(L0Scalar {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .map(|v| Complex64::new(f(v.re), 0.0))
                .collect(),
        })
    }

    /// Pointwise binary supremum.
    pub fn sup_pair(&self, other: &L0Scalar) -> Result<L0Scalar> {
        self.require_same_space(other)?;
        self.require_real()?;
        other.require_real()?;
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| Complex64::new(a.re.max(b.re), 0.0))
            .collect();
        Ok(L0Scalar {
            space: self.space.clone(),
            values,
        })
    }

    /// Pointwise binary infimum.
    pub fn inf_pair(&self, other: &L0Scalar) -> Result<L0Scalar> {
        self.require_same_space(other)?;
        self.require_real()?;
        other.require_real()?;
        let values = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| Complex64::new(a.re.min(b.re), 0.0))
            .collect();
        Ok(L0Scalar {
            space: self.space.clone(),
            values,
        })
    }

    /// Pointwise order: self <= other at every atom.
    pub fn leq(&self, other: &L0Scalar) -> Result<bool> {
        self.require_same_space(other)?;
        self.require_real()?;
        other.require_real()?;
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .all(|(a, b)| a.re <= b.re))
    }

    /// Largest pointwise excess of self over other, max_i (self - other).
    /// Nonpositive iff self <= other in the lattice order.
    pub fn excess_over(&self, other: &L0Scalar) -> Result<f64> {
        self.require_same_space(other)?;
        self.require_real()?;
        other.require_real()?;
        let mut worst = f64::NEG_INFINITY;
        for (a, b) in self.values.iter().zip(other.values.iter()) {
            let d = a.re - b.re;
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }

    pub fn is_nonneg(&self) -> Result<bool> {
        self.require_real()?;
        Ok(self.values.iter().all(|v| v.re >= 0.0))
    }

    pub fn is_strictly_positive(&self) -> Result<bool> {
        self.require_real()?;
        Ok(self.values.iter().all(|v| v.re > 0.0))
    }

    /// Maximum over atoms of a real scalar. Because all atoms carry
    /// positive mass this is the essential supremum.
    pub fn max_over_atoms(&self) -> Result<f64> {
        self.require_real()?;
        Ok(self
            .values
            .iter()
            .fold(f64::NEG_INFINITY, |m, v| m.max(v.re)))
    }

    pub fn min_over_atoms(&self) -> Result<f64> {
        self.require_real()?;
        Ok(self.values.iter().fold(f64::INFINITY, |m, v| m.min(v.re)))
    }

    fn zip_with<F: Fn(Complex64, Complex64) -> Complex64>(
        &self,
        other: &L0Scalar,
        f: F,
    ) -> L0Scalar {
        assert_eq!(
            self.space, other.space,
            "scalar arithmetic across different atom spaces"
        );
        L0Scalar {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &L0Scalar) -> L0Scalar {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &L0Scalar) -> L0Scalar {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &L0Scalar) -> L0Scalar {
        self.zip_with(other, |a, b| a * b)
    }

    /// Pointwise division; the caller is responsible for keeping the
    /// divisor away from zero (see [`L0Scalar::is_strictly_positive`]).
    pub fn div(&self, other: &L0Scalar) -> L0Scalar {
        self.zip_with(other, |a, b| a / b)
    }

    pub fn scale(&self, c: f64) -> L0Scalar {
        L0Scalar {
            space: self.space.clone(),
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn shift(&self, c: f64) -> L0Scalar {
        L0Scalar {
            space: self.space.clone(),
            values: self.values.iter().map(|&v| v + c).collect(),
        }
    }
}

/// Pointwise supremum of a nonempty family of real scalars.
pub fn l0_sup(family: &[L0Scalar]) -> Result<L0Scalar> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    let mut acc = first.clone();
    acc = acc.sup_pair(&acc)?; // realness check on the first element
    for s in rest {
        acc = acc.sup_pair(s)?;
    }
    Ok(acc)
}

/// Pointwise infimum of a nonempty family of real scalars.
pub fn l0_inf(family: &[L0Scalar]) -> Result<L0Scalar> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    let mut acc = first.clone();
    acc = acc.inf_pair(&acc)?;
    for s in rest {
        acc = acc.inf_pair(s)?;
    }
    Ok(acc)
}
