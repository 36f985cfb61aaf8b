//! LU factorization with partial pivoting and one step of iterative
//! refinement for linear solves.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::mat::CMatrix;
use crate::error::Error;
use crate::Result;

/// Packed LU factors of a square matrix with the pivot permutation.
pub struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    piv: Vec<usize>,
    /// Smallest absolute pivot encountered; a measure of how close the
    /// matrix came to singularity.
    pub min_pivot: f64,
}

/// Factors `a` as `P a = L U`. Fails when a pivot column is exactly
/// zero below the diagonal (structural singularity).
pub fn lu_factor(a: &CMatrix) -> Result<LuFactors> {
    let n = a.dim();
    let mut lu = a.data().to_vec();
    let mut piv: Vec<usize> = (0..n).collect();
    let mut min_pivot = f64::INFINITY;

    for k in 0..n {
        // pick the largest remaining entry in column k
        let mut p = k;
        let mut best = lu[k * n + k].norm();
        for i in (k + 1)..n {
            let v = lu[i * n + k].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return Err(Error::LinalgFailure("exactly singular matrix in LU solve"));
        }
        if p != k {
            piv.swap(k, p);
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
        }
        if best < min_pivot {
            min_pivot = best;
        }
        let inv = Complex64::new(1.0, 0.0) / lu[k * n + k];
        for i in (k + 1)..n {
            let m = lu[i * n + k] * inv;
            lu[i * n + k] = m;
            for j in (k + 1)..n {
                let u = lu[k * n + j];
                lu[i * n + j] -= m * u;
            }
        }
    }

    Ok(LuFactors {
        n,
        lu,
        piv,
        min_pivot,
    })
}

impl LuFactors {
    /// Solves `a x = b` using the stored factors (no refinement).
    pub fn solve_raw(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        assert_eq!(b.len(), n, "solve dimension mismatch");
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            x[i] = b[self.piv[i]];
        }
        // forward substitution, unit lower triangle
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        // back substitution
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let u = self.lu[i * n + j];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    /// Solves `a x = b` with one pass of iterative refinement against
    /// the original matrix.
    pub fn solve(&self, a: &CMatrix, b: &[Complex64]) -> Vec<Complex64> {
        let mut x = self.solve_raw(b);
        let ax = a.matvec(&x);
        let mut r = Vec::with_capacity(b.len());
        for (bi, axi) in b.iter().zip(ax.iter()) {
            r.push(bi - axi);
        }
        let dx = self.solve_raw(&r);
        for (xi, di) in x.iter_mut().zip(dx.iter()) {
            *xi += *di;
        }
        x
    }

    /// Solves `a X = B` column by column with refinement.
    pub fn solve_mat(&self, a: &CMatrix, b: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            for i in 0..n {
                col[i] = b.at(i, j);
            }
            let x = self.solve(a, &col);
            for i in 0..n {
                out.set(i, j, x[i]);
            }
        }
        out
    }
}

/// Inverse through LU; intended for small, well-conditioned inputs.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    let f = lu_factor(a)?;
    Ok(f.solve_mat(a, &CMatrix::identity(a.dim())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_known_system() {
        // a = [[2, 1], [1, 3]], b = [5, 10] => x = [1, 3]
        let a = CMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(3.0, 0.0)],
        ])
        .unwrap();
        let f = lu_factor(&a).unwrap();
        let x = f.solve(&a, &[c(5.0, 0.0), c(10.0, 0.0)]);
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((x[1] - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn complex_inverse_roundtrip() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, -1.0), c(3.0, 0.0), c(1.0, 0.5)],
            vec![c(2.0, 0.0), c(0.0, 0.0), c(1.0, -2.0)],
        ])
        .unwrap();
        let inv = inverse(&a).unwrap();
        let prod = a.mul(&inv);
        let id = CMatrix::identity(3);
        assert!(prod.sub(&id).max_abs() < 1e-13);
    }

    #[test]
    fn rejects_singular() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        assert!(lu_factor(&a).is_err());
    }

    #[test]
    fn refinement_helps_graded_system() {
        // Badly scaled but solvable system.
        let a = CMatrix::from_rows(&[
            vec![c(1e-8, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let f = lu_factor(&a).unwrap();
        // exact solution x = [1, 1e-8] for b = a * x
        let xe = [c(1.0, 0.0), c(1e-8, 0.0)];
        let b = a.matvec(&xe);
        let x = f.solve(&a, &b);
        assert!((x[0] - xe[0]).norm() < 1e-12);
        assert!((x[1] - xe[1]).norm() < 1e-12);
    }
}
