//! Matrix exponential by scaling and squaring with diagonal Pade
//! approximants of degrees 3, 5, 7, 9 and 13.
//!
//! Degree selection follows the standard double-precision thresholds on
//! the 1-norm; inputs above the largest threshold are scaled by a power
//! of two, approximated at degree 13 and squared back.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math resolves through this trait when no dependency links std
use num_traits::Float;

use super::lu::lu_factor;
use super::mat::CMatrix;

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.539398330063230e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068e0;
const THETA13: f64 = 5.371920351148152e0;

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Evaluates the degree-m Pade approximant given precomputed even
/// powers of `a`: returns (u, v) with u odd part * a, v even part.
fn pade_uv(a: &CMatrix, powers: &[CMatrix], coeffs: &[f64]) -> (CMatrix, CMatrix) {
    let n = a.dim();
    // powers[k] = a^(2k), k = 0..
    let mut u_inner = CMatrix::zeros(n);
    let mut v = CMatrix::zeros(n);
    for (k, p) in powers.iter().enumerate() {
        let odd = 2 * k + 1;
        let even = 2 * k;
        if odd < coeffs.len() {
            u_inner = u_inner.add(&p.scale(real(coeffs[odd])));
        }
        if even < coeffs.len() {
            v = v.add(&p.scale(real(coeffs[even])));
        }
    }
    (a.mul(&u_inner), v)
}

/// Matrix exponential of a square complex matrix.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.dim();
    if n == 1 {
        let mut out = CMatrix::zeros(1);
        out.set(0, 0, a.at(0, 0).exp());
        return out;
    }
    let norm = a.one_norm();
    if norm == 0.0 {
        return CMatrix::identity(n);
    }

    let a2 = a.mul(a);
    if norm <= THETA9 {
        let coeffs: &[f64] = if norm <= THETA3 {
            &PADE3
        } else if norm <= THETA5 {
            &PADE5
        } else if norm <= THETA7 {
            &PADE7
        } else {
            &PADE9
        };
        let mut powers: Vec<CMatrix> = vec![CMatrix::identity(n), a2.clone()];
        let needed = coeffs.len() / 2;
        while powers.len() < needed {
            let next = powers.last().unwrap().mul(&a2);
            powers.push(next);
        }
        let (u, v) = pade_uv(a, &powers, coeffs);
        return pade_solve(&u, &v);
    }

    // scaling and squaring with degree 13
    let s = ((norm / THETA13).log2().ceil()).max(0.0) as u32;
    let scale = real((0.5f64).powi(s as i32));
    let b = a.scale(scale);
    let b2 = b.mul(&b);
    let b4 = b2.mul(&b2);
    let b6 = b4.mul(&b2);

    // u = b * (b6*(c13 b6 + c11 b4 + c9 b2) + c7 b6 + c5 b4 + c3 b2 + c1 I)
    let w1 = b6
        .scale(real(PADE13[13]))
        .add(&b4.scale(real(PADE13[11])))
        .add(&b2.scale(real(PADE13[9])));
    let mut w2 = b6
        .scale(real(PADE13[7]))
        .add(&b4.scale(real(PADE13[5])))
        .add(&b2.scale(real(PADE13[3])));
    w2.shift_diagonal(real(PADE13[1]));
    let u = b.mul(&b6.mul(&w1).add(&w2));

    // v = b6*(c12 b6 + c10 b4 + c8 b2) + c6 b6 + c4 b4 + c2 b2 + c0 I
    let z1 = b6
        .scale(real(PADE13[12]))
        .add(&b4.scale(real(PADE13[10])))
        .add(&b2.scale(real(PADE13[8])));
    let mut z2 = b6
        .scale(real(PADE13[6]))
        .add(&b4.scale(real(PADE13[4])))
        .add(&b2.scale(real(PADE13[2])));
    z2.shift_diagonal(real(PADE13[0]));
    let v = b6.mul(&z1).add(&z2);

    let mut x = pade_solve(&u, &v);
    for _ in 0..s {
        x = x.mul(&x);
    }
    x
}

/// Solves (v - u) x = (v + u), the rational step of the approximant.
fn pade_solve(u: &CMatrix, v: &CMatrix) -> CMatrix {
    let p = v.add(u);
    let q = v.sub(u);
    let f = lu_factor(&q).expect("Pade denominator is nonsingular for scaled inputs");
    f.solve_mat(&q, &p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_zero_is_exact_identity() {
        let z = CMatrix::zeros(4);
        let e = expm(&z);
        assert_eq!(e, CMatrix::identity(4));
    }

    #[test]
    fn exp_of_nilpotent_block() {
        // exp([[0,1],[0,0]]) = [[1,1],[0,1]] exactly
        let mut a = CMatrix::zeros(2);
        a.set(0, 1, c(1.0, 0.0));
        let e = expm(&a);
        assert!((e.at(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((e.at(0, 1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(e.at(1, 0).norm() < 1e-15);
        assert!((e.at(1, 1) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exp_of_diagonal_matches_scalar_exp() {
        let a = CMatrix::diagonal(&[c(-1.0, 0.0), c(0.5, 2.0), c(3.0, -1.0)]);
        let e = expm(&a);
        for (i, &d) in [c(-1.0, 0.0), c(0.5, 2.0), c(3.0, -1.0)].iter().enumerate() {
            assert!((e.at(i, i) - d.exp()).norm() < 1e-13 * d.exp().norm());
        }
        assert!(e.at(0, 1).norm() < 1e-14);
        assert!(e.at(2, 0).norm() < 1e-14);
    }

    #[test]
    fn exp_of_rotation_generator() {
        // exp(t[[0,1],[-1,0]]) = [[cos t, sin t], [-sin t, cos t]]
        let t = 0.7f64;
        let a = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(t, 0.0)], vec![c(-t, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let e = expm(&a);
        assert!((e.at(0, 0) - c(t.cos(), 0.0)).norm() < 1e-14);
        assert!((e.at(0, 1) - c(t.sin(), 0.0)).norm() < 1e-14);
        assert!((e.at(1, 0) - c(-t.sin(), 0.0)).norm() < 1e-14);
        assert!((e.at(1, 1) - c(t.cos(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn large_norm_goes_through_squaring() {
        // exp(diag(10, -10)) needs scaling; compare against scalar exp.
        let a = CMatrix::diagonal(&[c(10.0, 0.0), c(-10.0, 0.0)]);
        let e = expm(&a);
        assert!((e.at(0, 0).re - 10.0f64.exp()).abs() < 1e-9 * 10.0f64.exp());
        assert!((e.at(1, 1).re - (-10.0f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn additivity_on_commuting_pair() {
        // exp(A) exp(B) = exp(A+B) when AB = BA; take B = A.
        let a = CMatrix::from_rows(&[
            vec![c(0.1, 0.2), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-0.3, 0.0), c(2.0, -1.0)],
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.2, 0.1)],
        ])
        .unwrap();
        let e1 = expm(&a);
        let e2 = expm(&a.scale(c(2.0, 0.0)));
        let diff = e1.mul(&e1).sub(&e2).max_abs();
        assert!(diff < 1e-13 * e2.max_abs(), "diff = {diff}");
    }
}
