//! Elements of the free module over a finite-atom scalar algebra:
//! one complex coordinate vector per atom, with the pointwise
//! Euclidean norm as the module norm.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;
use crate::linalg::mat::vec_norm;
use crate::scalar::L0Scalar;
use crate::space::AtomSpace;
use crate::Result;

/// A module element: a complex vector of fixed dimension attached to
/// every atom of the space.
#[derive(Clone, Debug, PartialEq)]
pub struct RNVector {
    space: AtomSpace,
    dim: usize,
    data: Vec<Complex64>,
}

impl RNVector {
    pub fn zeros(space: AtomSpace, dim: usize) -> Self {
        let n = space.atoms();
        RNVector {
            space,
            dim,
            data: vec![Complex64::new(0.0, 0.0); n * dim],
        }
    }

    /// Builds a vector from one coordinate row per atom.
    pub fn from_rows(space: AtomSpace, rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.len() != space.atoms() {
            return Err(Error::ShapeMismatch {
                expected: space.atoms(),
                got: rows.len(),
            });
        }
        let dim = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::ShapeMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(RNVector { space, dim, data })
    }

    pub fn space(&self) -> &AtomSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, atom: usize) -> &[Complex64] {
        &self.data[atom * self.dim..(atom + 1) * self.dim]
    }

    pub fn row_mut(&mut self, atom: usize) -> &mut [Complex64] {
        &mut self.data[atom * self.dim..(atom + 1) * self.dim]
    }

    /// Module norm: the Euclidean norm per atom, as a real scalar.
    pub fn norm(&self) -> L0Scalar {
        let vals: Vec<f64> = (0..self.space.atoms())
            .map(|i| vec_norm(self.row(i)))
            .collect();
        L0Scalar::from_real(self.space.clone(), &vals).expect("norm length matches space")
    }

    fn require_compatible(&self, other: &RNVector) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RNVector) -> Result<RNVector> {
        self.require_compatible(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(RNVector {
            space: self.space.clone(),
            dim: self.dim,
            data,
        })
    }

    pub fn sub(&self, other: &RNVector) -> Result<RNVector> {
        self.require_compatible(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a - b)
            .collect();
        Ok(RNVector {
            space: self.space.clone(),
            dim: self.dim,
            data,
        })
    }

    /// Scaling by a deterministic complex constant.
    pub fn scale(&self, c: Complex64) -> RNVector {
        RNVector {
            space: self.space.clone(),
            dim: self.dim,
            data: self.data.iter().map(|&v| v * c).collect(),
        }
    }

    /// Module action of a scalar random variable: pointwise scaling of
    /// the atom rows.
    pub fn scalar_mul(&self, xi: &L0Scalar) -> Result<RNVector> {
        if self.space != *xi.space() {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.clone();
        for atom in 0..self.space.atoms() {
            let c = xi.value(atom);
            for v in out.row_mut(atom) {
                *v *= c;
            }
        }
        Ok(out)
    }

    /// Distance in the module norm.
    pub fn distance(&self, other: &RNVector) -> Result<L0Scalar> {
        Ok(self.sub(other)?.norm())
    }
}

/// Probability that the module norm of `x` exceeds `eps`.
pub fn exceedance(x: &RNVector, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::NonpositiveEpsilon { eps });
    }
    let norms = x.norm();
    Ok(x.space().measure(|i| norms.re(i) > eps))
}

/// Exceedance sequence of `seq` against a candidate limit: the n-th
/// entry is P(norm(seq[n] - limit) > eps). The sequence converges in
/// probability along the sampled family iff these tend to zero.
pub fn converges_in_probability(seq: &[RNVector], limit: &RNVector, eps: f64) -> Result<Vec<f64>> {
    if !(eps > 0.0) {
        return Err(Error::NonpositiveEpsilon { eps });
    }
    let mut out = Vec::with_capacity(seq.len());
    for x in seq {
        let diff = x.sub(limit)?;
        out.push(exceedance(&diff, eps)?);
    }
    Ok(out)
}
