//! Eigenvalues of general complex matrices: closed forms for dimension
//! one and two, Hessenberg reduction followed by a shifted QR iteration
//! with deflation above that.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math resolves through this trait when no dependency links std
use num_traits::Float;

use super::mat::CMatrix;
use crate::error::Error;
use crate::Result;

const EPS: f64 = f64::EPSILON;

/// Eigenvalues of a square complex matrix, with multiplicity, in a
/// deterministic (deflation) order.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    let n = a.dim();
    match n {
        0 => Ok(Vec::new()),
        1 => Ok(vec![a.at(0, 0)]),
        2 => {
            let (l1, l2) = two_by_two(a.at(0, 0), a.at(0, 1), a.at(1, 0), a.at(1, 1));
            Ok(vec![l1, l2])
        }
        _ => {
            let h = hessenberg(a);
            qr_eigenvalues(h)
        }
    }
}

/// Closed-form eigenvalues of a 2x2 block; the larger root comes from
/// the quadratic formula, the smaller from the determinant to avoid
/// cancellation.
fn two_by_two(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * Complex64::new(0.5, 0.0);
    let half_diff = (a - d) * Complex64::new(0.5, 0.0);
    let root = (half_diff * half_diff + b * c).sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    let det = a * d - b * c;
    if l1.norm() >= l2.norm() {
        if l1.norm() > 0.0 {
            (l1, det / l1)
        } else {
            (l1, l2)
        }
    } else if l2.norm() > 0.0 {
        (det / l2, l2)
    } else {
        (l1, l2)
    }
}

/// Reduces `a` to upper Hessenberg form by Householder similarity.
fn hessenberg(a: &CMatrix) -> CMatrix {
    let n = a.dim();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        // build the reflector for column k below the subdiagonal
        let mut col_norm_sq = 0.0f64;
        for i in (k + 1)..n {
            col_norm_sq += h.at(i, k).norm_sqr();
        }
        let col_norm = col_norm_sq.sqrt();
        if col_norm == 0.0 {
            continue;
        }
        let alpha = h.at(k + 1, k);
        let phase = if alpha.norm() > 0.0 {
            alpha / Complex64::new(alpha.norm(), 0.0)
        } else {
            Complex64::new(1.0, 0.0)
        };
        let beta = -phase * Complex64::new(col_norm, 0.0);
        let mut v = vec![Complex64::new(0.0, 0.0); n - k - 1];
        v[0] = alpha - beta;
        for i in (k + 2)..n {
            v[i - k - 1] = h.at(i, k);
        }
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vv == 0.0 {
            continue;
        }
        let scale = Complex64::new(2.0 / vv, 0.0);

        // left: h <- (I - 2 v v^H / v^H v) h on rows k+1..n
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in 0..v.len() {
                dot += v[i].conj() * h.at(k + 1 + i, j);
            }
            let w = scale * dot;
            for i in 0..v.len() {
                let cur = h.at(k + 1 + i, j);
                h.set(k + 1 + i, j, cur - w * v[i]);
            }
        }
        // right: h <- h (I - 2 v v^H / v^H v) on columns k+1..n
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in 0..v.len() {
                dot += h.at(i, k + 1 + j) * v[j];
            }
            let w = scale * dot;
            for j in 0..v.len() {
                let cur = h.at(i, k + 1 + j);
                h.set(i, k + 1 + j, cur - w * v[j].conj());
            }
        }
        // the column is now exactly (beta, 0, ..., 0)
        h.set(k + 1, k, beta);
        for i in (k + 2)..n {
            h.set(i, k, Complex64::new(0.0, 0.0));
        }
    }
    h
}

/// Complex Givens rotation g = [[c, s], [-conj(s), c]] with real c
/// mapping (a, b) to (r, 0).
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = (an * an + bn * bn).sqrt();
    let c = an / r;
    let s = (a / Complex64::new(an, 0.0)) * b.conj() / Complex64::new(r, 0.0);
    (c, s)
}

/// Shifted QR iteration with deflation on an upper Hessenberg matrix.
fn qr_eigenvalues(mut h: CMatrix) -> Result<Vec<Complex64>> {
    let n = h.dim();
    let hnorm = h.one_norm().max(EPS);
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut stall = 0usize;
    let mut budget = 40 * n;

    // deflate trailing 1x1 and 2x2 blocks as subdiagonals vanish
    'deflate: loop {
        if hi == 0 {
            eig[0] = h.at(0, 0);
            return Ok(eig);
        }
        let mut lo = hi;
        while lo > 0 {
            let sub = h.at(lo, lo - 1).norm();
            let mut tol = EPS * (h.at(lo - 1, lo - 1).norm() + h.at(lo, lo).norm());
            if tol == 0.0 {
                tol = EPS * hnorm;
            }
            if sub <= tol {
                h.set(lo, lo - 1, Complex64::new(0.0, 0.0));
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h.at(hi, hi);
            hi -= 1;
            stall = 0;
            continue 'deflate;
        }
        if lo + 1 == hi {
            let (l1, l2) = two_by_two(h.at(lo, lo), h.at(lo, hi), h.at(hi, lo), h.at(hi, hi));
            eig[lo] = l1;
            eig[hi] = l2;
            stall = 0;
            if lo == 0 {
                return Ok(eig);
            }
            hi = lo - 1;
            continue 'deflate;
        }

        // one shifted QR sweep on the active window [lo, hi]
        if budget == 0 {
            return Err(Error::LinalgFailure(
                "eigenvalue iteration did not converge",
            ));
        }
        budget -= 1;
        stall += 1;
        let mu = if stall % 12 == 0 {
            // exceptional shift breaks symmetric stagnation
            h.at(hi, hi) + Complex64::new(0.75 * h.at(hi, hi - 1).norm(), 0.0)
        } else {
            let (l1, l2) = two_by_two(
                h.at(hi - 1, hi - 1),
                h.at(hi - 1, hi),
                h.at(hi, hi - 1),
                h.at(hi, hi),
            );
            let target = h.at(hi, hi);
            if (l1 - target).norm() <= (l2 - target).norm() {
                l1
            } else {
                l2
            }
        };

        for i in lo..=hi {
            let cur = h.at(i, i);
            h.set(i, i, cur - mu);
        }
        let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h.at(k, k), h.at(k + 1, k));
            let cc = Complex64::new(c, 0.0);
            for j in k..=hi {
                let a = h.at(k, j);
                let b = h.at(k + 1, j);
                h.set(k, j, cc * a + s * b);
                h.set(k + 1, j, -s.conj() * a + cc * b);
            }
            h.set(k + 1, k, Complex64::new(0.0, 0.0));
            rots.push((c, s));
        }
        for (idx, (c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            let cc = Complex64::new(*c, 0.0);
            let top = (k + 1).min(hi);
            for i in lo..=top {
                let a = h.at(i, k);
                let b = h.at(i, k + 1);
                h.set(i, k, cc * a + s.conj() * b);
                h.set(i, k + 1, -*s * a + cc * b);
            }
        }
        for i in lo..=hi {
            let cur = h.at(i, i);
            h.set(i, i, cur + mu);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::expm::expm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Greedy multiset match: every expected eigenvalue must have a
    /// distinct computed partner within tol.
    fn assert_spectrum(mut got: Vec<Complex64>, expected: &[Complex64], tol: f64) {
        assert_eq!(got.len(), expected.len());
        for &e in expected {
            let (idx, dist) = got
                .iter()
                .enumerate()
                .map(|(i, g)| (i, (g - e).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(
                dist < tol,
                "no partner for {e} within {tol}, closest {dist}"
            );
            got.swap_remove(idx);
        }
    }

    #[test]
    fn triangular_spectrum_is_diagonal() {
        let a = CMatrix::from_rows(&[
            vec![c(2.0, 1.0), c(5.0, 0.0), c(-1.0, 2.0)],
            vec![c(0.0, 0.0), c(-0.5, 0.0), c(3.0, 3.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, -2.0)],
        ])
        .unwrap();
        let eig = eigenvalues(&a).unwrap();
        assert_spectrum(eig, &[c(2.0, 1.0), c(-0.5, 0.0), c(0.0, -2.0)], 1e-10);
    }

    #[test]
    fn rotation_block_has_imaginary_pair() {
        let a = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let eig = eigenvalues(&a).unwrap();
        assert_spectrum(eig, &[c(0.0, 1.0), c(0.0, -1.0)], 1e-14);
    }

    #[test]
    fn jordan_block_repeats_its_eigenvalue() {
        let a = CMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let eig = eigenvalues(&a).unwrap();
        assert_spectrum(eig, &[c(0.5, 0.0), c(0.5, 0.0)], 1e-7);
    }

    #[test]
    fn unitary_similarity_preserves_spectrum() {
        // q = exp(skew-Hermitian) is unitary; spectrum of q t q^H is
        // the diagonal of the triangular factor t
        let s = CMatrix::from_rows(&[
            vec![c(0.0, 0.3), c(0.7, 0.2), c(-0.1, 0.5), c(0.0, 0.0)],
            vec![c(-0.7, 0.2), c(0.0, -0.4), c(0.2, 0.0), c(0.3, 0.1)],
            vec![c(0.1, 0.5), c(-0.2, 0.0), c(0.0, 0.9), c(-0.6, 0.0)],
            vec![c(0.0, 0.0), c(-0.3, 0.1), c(0.6, 0.0), c(0.0, -0.2)],
        ])
        .unwrap();
        // enforce s = -s^H exactly on the stored entries
        let skew = s.sub(&s.adjoint()).scale(c(0.5, 0.0));
        let q = expm(&skew);
        let diag = [c(1.5, 0.0), c(-1.0, 0.5), c(0.25, -0.75), c(0.0, 2.0)];
        let mut t = CMatrix::diagonal(&diag);
        t.set(0, 1, c(2.0, 0.0));
        t.set(0, 3, c(-1.0, 1.0));
        t.set(1, 2, c(0.5, 0.5));
        t.set(2, 3, c(1.0, 0.0));
        let a = q.mul(&t).mul(&q.adjoint());
        let eig = eigenvalues(&a).unwrap();
        assert_spectrum(eig, &diag, 1e-9);
    }

    #[test]
    fn defective_nilpotent_collapses_to_zero() {
        // transpose of a 3x3 nilpotent Jordan block; eigenvalues are
        // only determined to roughly eps^(1/3)
        let a = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let eig = eigenvalues(&a).unwrap();
        for l in eig {
            assert!(l.norm() < 1e-4, "nilpotent eigenvalue too large: {l}");
        }
    }

    #[test]
    fn hessenberg_similarity_keeps_triangular_spectrum() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)],
            vec![c(5.0, 0.0), c(6.0, 0.0), c(7.0, 0.0), c(8.0, 0.0)],
            vec![c(9.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)],
            vec![c(4.0, 0.0), c(5.0, 0.0), c(6.0, 0.0), c(7.0, 0.0)],
        ])
        .unwrap();
        let h = hessenberg(&a);
        // similarity preserves the trace
        let tr_a: Complex64 = (0..4).map(|i| a.at(i, i)).sum();
        let tr_h: Complex64 = (0..4).map(|i| h.at(i, i)).sum();
        assert!((tr_a - tr_h).norm() < 1e-12);
        // Hessenberg: everything below the first subdiagonal is zero
        for i in 2..4 {
            for j in 0..(i - 1) {
                assert_eq!(h.at(i, j), c(0.0, 0.0));
            }
        }
    }
}
