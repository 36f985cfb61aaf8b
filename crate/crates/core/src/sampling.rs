//! Seeded random instances: atom spaces, module elements, and
//! generators with prescribed spectral placement.
//!
//! Everything is driven by one counter-based stream cipher RNG so that
//! a report produced from a seed can be reproduced bit for bit. The
//! generator constructors control where the spectrum lands: plain
//! samples leave it free, stable samples pin the spectral abscissa,
//! normal samples additionally make every atom matrix normal, and
//! diagonalizable samples keep the eigenvector basis well conditioned.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math resolves through this trait when no dependency links std
use num_traits::Float;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::hom::ModuleHom;
use crate::linalg::expm::expm;
use crate::linalg::lu::inverse;
use crate::linalg::mat::CMatrix;
use crate::linalg::svd::spectral_norm;
use crate::scalar::L0Scalar;
use crate::semigroup::Generator;
use crate::space::AtomSpace;
use crate::vector::RNVector;
use crate::Result;

const TWO_PI: f64 = 6.283_185_307_179_586;

/// Deterministic sampler over a seeded ChaCha stream.
pub struct Sampler {
    rng: ChaCha12Rng,
    spare_normal: Option<f64>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha12Rng::seed_from_u64(seed),
            spare_normal: None,
        }
    }

    /// Uniform draw from `[0, 1)` with 53 random mantissa bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal draw via the Box-Muller transform.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        // 1 - u keeps the logarithm away from zero.
        let r = (-2.0 * (1.0 - self.uniform()).ln()).sqrt();
        let theta = TWO_PI * self.uniform();
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Complex draw with independent standard normal parts.
    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal())
    }

    /// Atom space with masses bounded away from zero.
    pub fn space(&mut self, atoms: usize) -> Result<AtomSpace> {
        let mut masses: Vec<f64> = (0..atoms).map(|_| self.uniform_in(0.2, 1.0)).collect();
        let total: f64 = masses.iter().sum();
        for m in &mut masses {
            *m /= total;
        }
        AtomSpace::new(&masses)
    }

    /// Module element with complex normal coordinates.
    pub fn vector(&mut self, space: &AtomSpace, dim: usize) -> RNVector {
        let mut x = RNVector::zeros(space.clone(), dim);
        for atom in 0..space.atoms() {
            for v in x.row_mut(atom) {
                *v = self.complex_normal();
            }
        }
        x
    }

    /// Module element of norm one at every atom.
    pub fn unit_vector(&mut self, space: &AtomSpace, dim: usize) -> RNVector {
        let mut x = self.vector(space, dim);
        for atom in 0..space.atoms() {
            let row = x.row_mut(atom);
            let norm = row.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.0 {
                for v in row.iter_mut() {
                    *v /= norm;
                }
            } else {
                row[0] = Complex64::new(1.0, 0.0);
            }
        }
        x
    }

    /// Real module scalar uniform in `[lo, hi)` per atom.
    pub fn scalar_in(&mut self, space: &AtomSpace, lo: f64, hi: f64) -> L0Scalar {
        let values: Vec<f64> = (0..space.atoms())
            .map(|_| self.uniform_in(lo, hi))
            .collect();
        L0Scalar::from_real(space.clone(), &values).expect("matching lengths")
    }

    /// Dense complex matrix with normal entries scaled by `scale`.
    pub fn matrix(&mut self, dim: usize, scale: f64) -> CMatrix {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, self.complex_normal() * scale);
            }
        }
        m
    }

    /// Unitary matrix, the exponential of a random skew-Hermitian one.
    pub fn unitary(&mut self, dim: usize) -> CMatrix {
        let b = self.matrix(dim, 0.7);
        let bh = b.adjoint();
        let skew = b.sub(&bh).scale(Complex64::new(0.5, 0.0));
        expm(&skew)
    }

    /// Module homomorphism with independent random atom matrices.
    pub fn hom(&mut self, space: &AtomSpace, dim: usize, scale: f64) -> ModuleHom {
        let mats = (0..space.atoms())
            .map(|_| self.matrix(dim, scale))
            .collect();
        ModuleHom::from_mats(space.clone(), mats).expect("consistent dimensions")
    }

    /// Generator with unconstrained spectrum.
    pub fn generator(&mut self, space: &AtomSpace, dim: usize) -> Result<Generator> {
        Generator::new(self.hom(space, dim, 1.0))
    }

    /// Generator whose spectral abscissa equals `-margin` at every
    /// atom, obtained by shifting a random sample by its own abscissa.
    pub fn stable_generator(
        &mut self,
        space: &AtomSpace,
        dim: usize,
        margin: f64,
    ) -> Result<Generator> {
        let raw = self.generator(space, dim)?;
        let shift = raw.spectral_abscissa().shift(margin).scale(-1.0);
        let hom = raw.hom().shift_by_scalar(&shift)?;
        Generator::new(hom)
    }

    /// Diagonal spectrum draw: real parts in `[re_lo, re_hi]` with the
    /// first entry pinned to `re_hi`, imaginary parts in `[-3, 3]`.
    fn spectrum(&mut self, dim: usize, re_lo: f64, re_hi: f64) -> Vec<Complex64> {
        (0..dim)
            .map(|k| {
                let re = if k == 0 {
                    re_hi
                } else {
                    self.uniform_in(re_lo, re_hi)
                };
                Complex64::new(re, self.uniform_in(-3.0, 3.0))
            })
            .collect()
    }

    /// Generator that is normal at every atom, with spectral abscissa
    /// exactly `re_hi` per atom.
    pub fn normal_generator(
        &mut self,
        space: &AtomSpace,
        dim: usize,
        re_lo: f64,
        re_hi: f64,
    ) -> Result<Generator> {
        let mats = (0..space.atoms())
            .map(|_| {
                let q = self.unitary(dim);
                let d = CMatrix::diagonal(&self.spectrum(dim, re_lo, re_hi));
                q.mul(&d).mul(&q.adjoint())
            })
            .collect();
        Generator::new(ModuleHom::from_mats(space.clone(), mats)?)
    }

    /// Diagonalizable generator with eigenvector bases of condition
    /// number at most three and spectral abscissa `re_hi` per atom.
    pub fn diagonalizable_generator(
        &mut self,
        space: &AtomSpace,
        dim: usize,
        re_lo: f64,
        re_hi: f64,
    ) -> Result<Generator> {
        let mats = (0..space.atoms())
            .map(|_| {
                // V = I + N with ||N|| = 0.4 keeps cond(V) <= 7/3.
                let raw = self.matrix(dim, 1.0);
                let norm = spectral_norm(&raw).max(f64::MIN_POSITIVE);
                let mut v = raw.scale(Complex64::new(0.4 / norm, 0.0));
                for i in 0..dim {
                    v.set(i, i, v.at(i, i) + Complex64::new(1.0, 0.0));
                }
                let d = CMatrix::diagonal(&self.spectrum(dim, re_lo, re_hi));
                let vinv = inverse(&v)?;
                Ok(v.mul(&d).mul(&vinv))
            })
            .collect::<Result<Vec<CMatrix>>>()?;
        Generator::new(ModuleHom::from_mats(space.clone(), mats)?)
    }
}
