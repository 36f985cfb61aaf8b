//! Module homomorphisms: one square complex matrix per atom, acting
//! pointwise on module elements.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Error;
use crate::linalg::mat::CMatrix;
use crate::linalg::svd::{jacobi_svd, numerical_rank, spectral_norm};
use crate::scalar::L0Scalar;
use crate::space::AtomSpace;
use crate::vector::RNVector;
use crate::Result;

/// A continuous module homomorphism on the finite-atom module: the
/// action is an independent linear map on every atom's coordinate
/// space. Its operator norm is the scalar random variable whose value
/// at an atom is the spectral norm of that atom's matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleHom {
    space: AtomSpace,
    dim: usize,
    mats: Vec<CMatrix>,
}

impl ModuleHom {
    pub fn from_mats(space: AtomSpace, mats: Vec<CMatrix>) -> Result<Self> {
        if mats.len() != space.atoms() {
            return Err(Error::ShapeMismatch {
                expected: space.atoms(),
                got: mats.len(),
            });
        }
        let dim = mats.first().map(|m| m.dim()).unwrap_or(0);
        for m in &mats {
            if m.dim() != dim {
                return Err(Error::ShapeMismatch {
                    expected: dim,
                    got: m.dim(),
                });
            }
        }
        Ok(ModuleHom { space, dim, mats })
    }

    /// The same matrix on every atom.
    pub fn broadcast(space: AtomSpace, mat: CMatrix) -> Self {
        let n = space.atoms();
        ModuleHom {
            space,
            dim: mat.dim(),
            mats: alloc::vec![mat; n],
        }
    }

    pub fn identity(space: AtomSpace, dim: usize) -> Self {
        ModuleHom::broadcast(space, CMatrix::identity(dim))
    }

    pub fn zero(space: AtomSpace, dim: usize) -> Self {
        ModuleHom::broadcast(space, CMatrix::zeros(dim))
    }

    pub fn space(&self) -> &AtomSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self, atom: usize) -> &CMatrix {
        &self.mats[atom]
    }

    pub fn mats(&self) -> &[CMatrix] {
        &self.mats
    }

    fn require_compatible(&self, other: &ModuleHom) -> Result<()> {
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

    /// Applies the homomorphism to a module element.
    pub fn apply(&self, x: &RNVector) -> Result<RNVector> {
        if self.space != *x.space() {
            return Err(Error::SpaceMismatch);
        }
        if self.dim != x.dim() {
            return Err(Error::ShapeMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        let mut out = RNVector::zeros(self.space.clone(), self.dim);
        for atom in 0..self.space.atoms() {
            let y = self.mats[atom].matvec(x.row(atom));
            out.row_mut(atom).copy_from_slice(&y);
        }
        Ok(out)
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        self.require_compatible(other)?;
        let mats = self
            .mats
            .iter()
            .zip(other.mats.iter())
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(ModuleHom {
            space: self.space.clone(),
            dim: self.dim,
            mats,
        })
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        self.require_compatible(other)?;
        let mats = self
            .mats
            .iter()
            .zip(other.mats.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(ModuleHom {
            space: self.space.clone(),
            dim: self.dim,
            mats,
        })
    }

    pub fn sub(&self, other: &ModuleHom) -> Result<ModuleHom> {
        self.require_compatible(other)?;
        let mats = self
            .mats
            .iter()
            .zip(other.mats.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(ModuleHom {
            space: self.space.clone(),
            dim: self.dim,
            mats,
        })
    }

    /// Scaling by a deterministic complex constant.
    pub fn scale(&self, c: Complex64) -> ModuleHom {
        ModuleHom {
            space: self.space.clone(),
            dim: self.dim,
            mats: self.mats.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// Module action of a scalar: scales every atom's matrix by the
    /// scalar's value at that atom.
    pub fn scalar_mul(&self, xi: &L0Scalar) -> Result<ModuleHom> {
        if self.space != *xi.space() {
            return Err(Error::SpaceMismatch);
        }
        let mats = self
            .mats
            .iter()
            .enumerate()
            .map(|(atom, m)| m.scale(xi.value(atom)))
            .collect();
        Ok(ModuleHom {
            space: self.space.clone(),
            dim: self.dim,
            mats,
        })
    }

    /// Adds `xi(atom) * I` to every atom's matrix; the operator
    /// `self + xi * id`.
    pub fn shift_by_scalar(&self, xi: &L0Scalar) -> Result<ModuleHom> {
        if self.space != *xi.space() {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.clone();
        for (atom, m) in out.mats.iter_mut().enumerate() {
            m.shift_diagonal(xi.value(atom));
        }
        Ok(out)
    }

    /// Operator norm as a real scalar random variable: the largest
    /// singular value per atom.
    pub fn op_norm(&self) -> L0Scalar {
        let vals: Vec<f64> = self.mats.iter().map(spectral_norm).collect();
        L0Scalar::from_real(self.space.clone(), &vals).expect("one norm value per atom")
    }

    /// Distance to another homomorphism in the operator norm.
    pub fn op_distance(&self, other: &ModuleHom) -> Result<L0Scalar> {
        Ok(self.sub(other)?.op_norm())
    }

    /// Per-atom unit vectors achieving the operator norm: the top
    /// right singular vector of each atom's matrix.
    pub fn top_right_singular_vectors(&self) -> RNVector {
        let mut out = RNVector::zeros(self.space.clone(), self.dim);
        for atom in 0..self.space.atoms() {
            let svd = jacobi_svd(&self.mats[atom]);
            for i in 0..self.dim {
                out.row_mut(atom)[i] = svd.v.at(i, 0);
            }
        }
        out
    }

    /// Tests whether `lambda` is a semisimple eigenvalue of the atom's
    /// matrix given its algebraic multiplicity: the numerical rank of
    /// `A - lambda I` (singular values above `rel_tol * max(1, |A|)`)
    /// must equal `dim - multiplicity`.
    pub fn is_semisimple(
        &self,
        atom: usize,
        lambda: Complex64,
        multiplicity: usize,
        rel_tol: f64,
    ) -> bool {
        let mut shifted = self.mats[atom].clone();
        shifted.shift_diagonal(-lambda);
        let svd = jacobi_svd(&shifted);
        let scale = spectral_norm(&self.mats[atom]).max(1.0);
        let rank = numerical_rank(&svd.sigma, rel_tol * scale);
        rank == self.dim.saturating_sub(multiplicity)
    }
}
