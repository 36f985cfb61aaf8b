//! Exact data for the interval-indicator family: derivative zero in
//! probability everywhere, endpoint increment -1, no almost surely
//! finite Lipschitz modulus. Every printed quantity is an exact
//! rational.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use yosida_core::counterexample::{
    derivative_certificate, derivative_integral, difference_quotient, endpoint_increment, ftc_gap,
    lipschitz_violation,
};

use crate::config::SCHEMA_VERSION;
use crate::report::Report;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn run(out: Option<PathBuf>, candidate: u64) -> anyhow::Result<u8> {
    let mut rep = Report::new("counterexample");
    rep.comment("family: indicator of (t, 1] over the unit interval with uniform measure");
    rep.comment("all values below are exact rationals");
    rep.kv("schema_version", SCHEMA_VERSION);

    // One concrete difference quotient.
    let (s, t) = (ratio(1, 4), ratio(1, 3));
    let quotient = difference_quotient(&s, &t)?;
    rep.kv("quotient.s", &quotient.s);
    rep.kv("quotient.t", &quotient.t);
    rep.kv("quotient.modulus", &quotient.modulus);
    rep.kv("quotient.support_measure", &quotient.support);
    let eps = ratio(5, 1);
    rep.kv("quotient.exceedance.eps", &eps);
    rep.kv("quotient.exceedance.value", quotient.exceedance(&eps)?);

    // Exceedance along a shrinking sequence of steps at t0 = 1/2.
    let t0 = ratio(1, 2);
    let eps_small = ratio(1, 1000);
    let mut shrink = Vec::new();
    for k in 1..=4u32 {
        let step = BigRational::new(BigInt::one(), BigInt::from(10u32.pow(k)));
        let q = difference_quotient(&t0, &(&t0 + &step))?;
        shrink.push(q.exceedance(&eps_small)?.to_string());
    }
    rep.kv("derivative.eps", &eps_small);
    rep.kv_list("derivative.shrinking_exceedances", shrink);

    // Modulus of differentiability: delta = lambda, threshold-free.
    let lambda = ratio(1, 100);
    let delta = derivative_certificate(&eps_small, &lambda)?;
    rep.kv("derivative.lambda", &lambda);
    rep.kv("derivative.delta", &delta);

    // The fundamental theorem of calculus fails by exactly one.
    rep.kv("ftc.endpoint_increment", endpoint_increment());
    rep.kv("ftc.derivative_integral", derivative_integral());
    rep.kv("ftc.gap", ftc_gap());

    // No candidate Lipschitz bound survives.
    let bound = BigRational::from_integer(BigInt::from(candidate));
    let witness = lipschitz_violation(&bound);
    rep.kv("lipschitz.candidate", &bound);
    rep.kv("lipschitz.pair.s", &witness.s);
    rep.kv("lipschitz.pair.t", &witness.t);
    rep.kv("lipschitz.modulus", &witness.modulus);
    rep.kv("lipschitz.violation_measure", &witness.support);

    // The whole point of the example: these identities are exact.
    let consistent = ftc_gap() == -BigRational::one()
        && derivative_integral() == BigRational::zero()
        && witness.modulus > bound
        && witness.support > BigRational::zero()
        && delta == lambda;
    rep.kv("consistent", consistent);
    let code = if consistent { 0 } else { 2 };
    rep.kv("exit_code", code);

    print!("{}", rep.render());
    if let Some(dir) = out {
        let path = rep.write(&dir, "counterexample.txt")?;
        eprintln!("wrote {}", path.display());
    }
    Ok(code)
}
