//! Singular value decomposition by one-sided Jacobi rotations.
//!
//! The one-sided sweep orthogonalizes the columns of a working copy of
//! the matrix; it delivers small singular values with high relative
//! accuracy, which matters because numerical ranks are read off
//! directly from the sigma vector.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math resolves through this trait when no dependency links std
use num_traits::Float;

use super::mat::{vec_norm, CMatrix};

/// Result of [`jacobi_svd`]: `a = u * diag(sigma) * v^H` with `sigma`
/// sorted in descending order. Columns of `u` belonging to exactly
/// zero singular values are left as zero vectors.
pub struct Svd {
    pub sigma: Vec<f64>,
    pub u: CMatrix,
    pub v: CMatrix,
}

const MAX_SWEEPS: usize = 64;
const OFFDIAG_TOL: f64 = 1e-15;

/// One-sided Jacobi SVD of a square complex matrix.
pub fn jacobi_svd(a: &CMatrix) -> Svd {
    let n = a.dim();
    if n == 1 {
        let x = a.at(0, 0);
        let s = x.norm();
        let mut u = CMatrix::zeros(1);
        if s > 0.0 {
            u.set(0, 0, x / Complex64::new(s, 0.0));
        }
        return Svd {
            sigma: vec![s],
            u,
            v: CMatrix::identity(1),
        };
    }

    // w[j] is the j-th column of the working matrix; v[j] accumulates
    // the applied rotations so that original_a * v = w throughout.
    let mut w: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| a.at(i, j)).collect())
        .collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (alpha, beta, gamma) = column_moments(&w[p], &w[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let g = gamma.norm();
                if g <= OFFDIAG_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / Complex64::new(g, 0.0);
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // column rotation (wp, wq) <- (c wp - s e^{-i phi} wq,
                //                              s wp + c e^{-i phi} wq)
                // zeroing the Gram off-diagonal <wp', wq'>
                let sph = phase.conj() * Complex64::new(s, 0.0);
                let cph = phase.conj() * Complex64::new(c, 0.0);
                rotate_pair(&mut w, p, q, c, s, sph, cph);
                rotate_pair(&mut v, p, q, c, s, sph, cph);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w.iter().map(|col| vec_norm(col)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());

    let mut sigma = Vec::with_capacity(n);
    let mut u = CMatrix::zeros(n);
    let mut vm = CMatrix::zeros(n);
    for (slot, &j) in order.iter().enumerate() {
        let sv = norms[j];
        sigma.push(sv);
        for i in 0..n {
            if sv > 0.0 {
                u.set(i, slot, w[j][i] / Complex64::new(sv, 0.0));
            }
            vm.set(i, slot, v[j][i]);
        }
    }
    Svd { sigma, u, v: vm }
}

fn column_moments(wp: &[Complex64], wq: &[Complex64]) -> (f64, f64, Complex64) {
    let mut alpha = 0.0f64;
    let mut beta = 0.0f64;
    let mut gamma = Complex64::new(0.0, 0.0);
    for (a, b) in wp.iter().zip(wq.iter()) {
        alpha += a.norm_sqr();
        beta += b.norm_sqr();
        gamma += a.conj() * b;
    }
    (alpha, beta, gamma)
}

fn rotate_pair(
    cols: &mut [Vec<Complex64>],
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    sph: Complex64,
    cph: Complex64,
) {
    let n = cols[p].len();
    for i in 0..n {
        let a = cols[p][i];
        let b = cols[q][i];
        cols[p][i] = Complex64::new(c, 0.0) * a - sph * b;
        cols[q][i] = Complex64::new(s, 0.0) * a + cph * b;
    }
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(a: &CMatrix) -> f64 {
    jacobi_svd(a).sigma[0]
}

/// Number of singular values strictly above `tol`.
pub fn numerical_rank(sigma: &[f64], tol: f64) -> usize {
    sigma.iter().filter(|&&s| s > tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_upper_triangular_block() {
        // singular values of [[1,1],[0,1]] are the golden ratio and its
        // reciprocal: (1 + sqrt 5)/2 and (sqrt 5 - 1)/2
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let svd = jacobi_svd(&a);
        assert!((svd.sigma[0] - 1.618_033_988_749_894_9).abs() < 1e-14);
        assert!((svd.sigma[1] - 0.618_033_988_749_894_9).abs() < 1e-14);
    }

    #[test]
    fn shear_block_norm_grows_linearly() {
        // sigma_max of [[1,t],[0,1]] = (t + sqrt(t^2+4))/2; at t = 10
        // this is 5 + sqrt(26)
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(10.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!((spectral_norm(&a) - 10.099_019_513_592_784).abs() < 1e-13);
    }

    #[test]
    fn unitary_input_has_unit_spectrum() {
        let a = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let svd = jacobi_svd(&a);
        assert!((svd.sigma[0] - 1.0).abs() < 1e-14);
        assert!((svd.sigma[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_and_orthogonality() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(0.5, -1.0), c(0.0, 0.3)],
            vec![c(-2.0, 0.0), c(3.0, 1.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.25, 0.0), c(-1.0, -1.0)],
        ])
        .unwrap();
        let svd = jacobi_svd(&a);
        // v^H v = I
        let vhv = svd.v.adjoint().mul(&svd.v);
        assert!(vhv.sub(&CMatrix::identity(3)).max_abs() < 1e-13);
        // a v = u diag(sigma)
        let av = a.mul(&svd.v);
        let us = svd.u.mul(&CMatrix::diagonal(&[
            c(svd.sigma[0], 0.0),
            c(svd.sigma[1], 0.0),
            c(svd.sigma[2], 0.0),
        ]));
        assert!(av.sub(&us).max_abs() < 1e-12);
        // descending order
        assert!(svd.sigma[0] >= svd.sigma[1] && svd.sigma[1] >= svd.sigma[2]);
    }

    #[test]
    fn exact_rank_deficiency() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let svd = jacobi_svd(&a);
        assert!(svd.sigma[1] < 1e-15 * svd.sigma[0]);
        assert_eq!(numerical_rank(&svd.sigma, 1e-8 * svd.sigma[0]), 1);
    }

    #[test]
    fn known_spectrum_through_exact_rotations() {
        // u diag(3,1) v^T with u, v rotations by 3-4-5 angles keeps the
        // singular values {3, 1} exactly representable inputs
        let (cu, su) = (0.6, 0.8);
        let u = CMatrix::from_rows(&[vec![c(cu, 0.0), c(-su, 0.0)], vec![c(su, 0.0), c(cu, 0.0)]])
            .unwrap();
        let d = CMatrix::diagonal(&[c(3.0, 0.0), c(1.0, 0.0)]);
        let a = u.mul(&d).mul(&u.adjoint());
        let svd = jacobi_svd(&a);
        assert!((svd.sigma[0] - 3.0).abs() < 1e-14);
        assert!((svd.sigma[1] - 1.0).abs() < 1e-14);
    }
}
