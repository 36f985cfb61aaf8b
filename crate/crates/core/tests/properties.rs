//! Randomized invariants of the module layer: lattice laws for the
//! scalar algebra, the random-norm axioms, operator-norm consistency,
//! and exceedance monotonicity.

use num_complex::Complex64;
use proptest::prelude::*;

use yosida_core::sampling::Sampler;
use yosida_core::vector::exceedance;
use yosida_core::{AtomSpace, L0Scalar, RNVector};

const NORM_TOL: f64 = 1e-12;

fn real_scalar(space: &AtomSpace, values: &[f64]) -> L0Scalar {
    L0Scalar::from_real(space.clone(), values).unwrap()
}

/// Three real scalar value vectors over a shared atom count.
fn scalar_triple() -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>, Vec<f64>)> {
    (1usize..=5).prop_flat_map(|n| {
        let values = || proptest::collection::vec(-100.0f64..100.0, n);
        (Just(n), values(), values(), values())
    })
}

/// Two complex stacks plus a complex scalar over shared shape (n, d).
#[allow(clippy::type_complexity)]
fn vector_pair() -> impl Strategy<
    Value = (
        usize,
        usize,
        Vec<(f64, f64)>,
        Vec<(f64, f64)>,
        Vec<(f64, f64)>,
    ),
> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(n, d)| {
        let entries = || proptest::collection::vec(((-50.0f64..50.0), (-50.0f64..50.0)), n * d);
        let scalars = proptest::collection::vec(((-10.0f64..10.0), (-10.0f64..10.0)), n);
        (Just(n), Just(d), entries(), entries(), scalars)
    })
}

fn stack(space: &AtomSpace, dim: usize, entries: &[(f64, f64)]) -> RNVector {
    let rows: Vec<Vec<Complex64>> = entries
        .chunks(dim)
        .map(|row| row.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
        .collect();
    RNVector::from_rows(space.clone(), &rows).unwrap()
}

proptest! {
    #[test]
    fn lattice_sup_commutes_and_associates((n, a, b, c) in scalar_triple()) {
        let space = AtomSpace::uniform(n).unwrap();
        let (a, b, c) = (
            real_scalar(&space, &a),
            real_scalar(&space, &b),
            real_scalar(&space, &c),
        );
        let ab = a.sup_pair(&b).unwrap();
        let ba = b.sup_pair(&a).unwrap();
        prop_assert_eq!(ab.sub(&ba).abs().max_over_atoms().unwrap(), 0.0);
        let left = ab.sup_pair(&c).unwrap();
        let right = a.sup_pair(&b.sup_pair(&c).unwrap()).unwrap();
        prop_assert_eq!(left.sub(&right).abs().max_over_atoms().unwrap(), 0.0);
    }

    #[test]
    fn lattice_absorption_is_exact((n, a, b, _c) in scalar_triple()) {
        let space = AtomSpace::uniform(n).unwrap();
        let (a, b) = (real_scalar(&space, &a), real_scalar(&space, &b));
        let down_up = a.sup_pair(&a.inf_pair(&b).unwrap()).unwrap();
        let up_down = a.inf_pair(&a.sup_pair(&b).unwrap()).unwrap();
        prop_assert_eq!(down_up.sub(&a).abs().max_over_atoms().unwrap(), 0.0);
        prop_assert_eq!(up_down.sub(&a).abs().max_over_atoms().unwrap(), 0.0);
    }

    #[test]
    fn sup_is_the_least_upper_bound((n, a, b, c) in scalar_triple()) {
        let space = AtomSpace::uniform(n).unwrap();
        let (a, b, c) = (
            real_scalar(&space, &a),
            real_scalar(&space, &b),
            real_scalar(&space, &c),
        );
        let sup = a.sup_pair(&b).unwrap();
        prop_assert!(a.leq(&sup).unwrap());
        prop_assert!(b.leq(&sup).unwrap());
        // c dominates both operands exactly when it dominates the sup.
        let dominates_both = a.leq(&c).unwrap() && b.leq(&c).unwrap();
        prop_assert_eq!(dominates_both, sup.leq(&c).unwrap());
    }

    #[test]
    fn norm_is_nonnegative_and_definite((n, d, xs, _ys, _s) in vector_pair()) {
        let space = AtomSpace::uniform(n).unwrap();
        let x = stack(&space, d, &xs);
        let norm = x.norm();
        prop_assert!(norm.is_nonneg().unwrap());
        prop_assert_eq!(
            x.sub(&x).unwrap().norm().max_over_atoms().unwrap(),
            0.0
        );
        let largest_entry = xs
            .iter()
            .map(|&(re, im)| re.abs().max(im.abs()))
            .fold(0.0f64, f64::max);
        if largest_entry > 1e-9 {
            prop_assert!(norm.max_over_atoms().unwrap() > 0.0);
        }
    }

    #[test]
    fn norm_is_scalar_homogeneous((n, d, xs, _ys, s) in vector_pair()) {
        let space = AtomSpace::uniform(n).unwrap();
        let x = stack(&space, d, &xs);
        let xi = L0Scalar::from_complex(
            space.clone(),
            s.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
        )
        .unwrap();
        let scaled = x.scalar_mul(&xi).unwrap().norm();
        let factored = xi.abs().mul(&x.norm());
        let gap = scaled.sub(&factored).abs().max_over_atoms().unwrap();
        let scale = 1.0 + factored.max_over_atoms().unwrap();
        prop_assert!(gap <= NORM_TOL * scale);
    }

    #[test]
    fn norm_satisfies_the_triangle_inequality((n, d, xs, ys, _s) in vector_pair()) {
        let space = AtomSpace::uniform(n).unwrap();
        let x = stack(&space, d, &xs);
        let y = stack(&space, d, &ys);
        let lhs = x.add(&y).unwrap().norm();
        let rhs = x.norm().add(&y.norm());
        let scale = 1.0 + rhs.max_over_atoms().unwrap();
        prop_assert!(lhs.excess_over(&rhs).unwrap() <= NORM_TOL * scale);
    }

    #[test]
    fn op_norm_is_submultiplicative(
        seed in 0u64..(1 << 48),
        atoms in 1usize..=3,
        dim in 1usize..=4,
    ) {
        let mut sampler = Sampler::new(seed);
        let space = sampler.space(atoms).unwrap();
        let a = sampler.hom(&space, dim, 1.5);
        let b = sampler.hom(&space, dim, 1.5);
        let composed = a.compose(&b).unwrap().op_norm();
        let product = a.op_norm().mul(&b.op_norm());
        let slack = 1e-6 * (1.0 + product.max_over_atoms().unwrap());
        prop_assert!(composed.excess_over(&product).unwrap() <= slack);
    }

    #[test]
    fn op_norm_dominates_every_image(
        seed in 0u64..(1 << 48),
        atoms in 1usize..=3,
        dim in 1usize..=4,
    ) {
        let mut sampler = Sampler::new(seed);
        let space = sampler.space(atoms).unwrap();
        let a = sampler.hom(&space, dim, 1.5);
        let x = sampler.vector(&space, dim);
        let image = a.apply(&x).unwrap().norm();
        let bound = a.op_norm().mul(&x.norm());
        let slack = 1e-9 * (1.0 + bound.max_over_atoms().unwrap());
        prop_assert!(image.excess_over(&bound).unwrap() <= slack);
    }

    #[test]
    fn exceedance_is_monotone_and_a_probability(
        seed in 0u64..(1 << 48),
        atoms in 1usize..=4,
        dim in 1usize..=3,
        eps in 0.01f64..1.0,
        gap in 0.0f64..2.0,
    ) {
        let mut sampler = Sampler::new(seed);
        let space = sampler.space(atoms).unwrap();
        let x = sampler.vector(&space, dim);
        let low = exceedance(&x, eps).unwrap();
        let high = exceedance(&x, eps + gap).unwrap();
        // Atom masses sum to one only up to rounding, so a full-measure
        // event can read a few ulps above it.
        prop_assert!((0.0..=1.0 + 1e-12).contains(&low));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&high));
        prop_assert!(high <= low);
    }
}
