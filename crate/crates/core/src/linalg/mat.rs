//! Row-major square complex matrices.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math resolves through this trait when no dependency links std
use num_traits::Float;

use crate::error::Error;
use crate::Result;

/// Square complex matrix with row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Zero matrix of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ShapeMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(CMatrix { n, data })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = CMatrix::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Matrix product `self * rhs`; dimensions must agree.
    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix product dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.n, x.len(), "matvec dimension mismatch");
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.data[i * n + j] * x[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix sum dimension mismatch");
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o += *r;
        }
        out
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix difference dimension mismatch");
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(rhs.data.iter()) {
            *o -= *r;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o *= c;
        }
        out
    }

    /// Adds `c` to every diagonal entry in place.
    pub fn shift_diagonal(&mut self, c: Complex64) {
        let n = self.n;
        for i in 0..n {
            self.data[i * n + i] += c;
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn one_norm(&self) -> f64 {
        let n = self.n;
        let mut best = 0.0f64;
        for j in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                s += self.data[i * n + j].norm();
            }
            if s > best {
                best = s;
            }
        }
        best
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        let mut best = 0.0f64;
        for v in &self.data {
            let a = v.norm();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0f64;
        for v in &self.data {
            s += v.norm_sqr();
        }
        s.sqrt()
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(x: &[Complex64]) -> f64 {
    let mut s = 0.0f64;
    for v in x {
        s += v.norm_sqr();
    }
    s.sqrt()
}

/// Hermitian inner product `<x, y> = sum conj(x_i) y_i`.
pub fn vec_dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (a, b) in x.iter().zip(y.iter()) {
        s += a.conj() * b;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_against_hand_computation() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 1.0)],
            vec![c(0.0, -1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        let b = CMatrix::from_rows(&[
            vec![c(0.0, 1.0), c(1.0, 0.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let p = a.mul(&b);
        // row 0: [1*(i) + (2+i)*2, 1*1 + 0] = [4 + 3i, 1]
        assert_eq!(p.at(0, 0), c(4.0, 3.0));
        assert_eq!(p.at(0, 1), c(1.0, 0.0));
        // row 1: [(-i)*i + 3*2, -i] = [1 + 6, -i]
        assert_eq!(p.at(1, 0), c(7.0, 0.0));
        assert_eq!(p.at(1, 1), c(0.0, -1.0));
    }

    #[test]
    fn one_norm_is_max_column_sum() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(-2.0, 0.0)],
            vec![c(0.0, 3.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(a.one_norm(), 4.0);
    }

    #[test]
    fn adjoint_conjugates_and_transposes() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(3.0, -1.0)],
            vec![c(0.0, 0.0), c(5.0, 5.0)],
        ])
        .unwrap();
        let ah = a.adjoint();
        assert_eq!(ah.at(0, 0), c(1.0, -2.0));
        assert_eq!(ah.at(1, 0), c(3.0, 1.0));
        assert_eq!(ah.at(0, 1), c(0.0, 0.0));
        assert_eq!(ah.at(1, 1), c(5.0, -5.0));
    }
}
