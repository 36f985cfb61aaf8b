//! Generation-theorem condition checks.
//!
//! For a claimed envelope `||T(t)|| <= M e^(tau t)` the theorem makes
//! three statements equivalent:
//!
//! * (a) the envelope itself;
//! * (b) for every real module shift with `xi - tau > 0`, the shift is
//!   in the resolvent set and `||[(xi - tau) R(xi)]^n|| <= M`;
//! * (c) for every complex module shift with `Re xi - tau > 0`, the
//!   shift is in the resolvent set and
//!   `||R(xi)^n|| <= M / (Re xi - tau)^n`.
//!
//! The checker certifies (or verifies) the envelope, then samples
//! module shifts, including ones that genuinely vary across atoms, and
//! measures the worst relative defect of each power inequality. A
//! certified envelope whose resolvent conditions fail raises the
//! consistency alert: that combination would contradict the theorem.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // f64 math resolves through this trait when no dependency links std
use num_traits::Float;

use crate::error::Error;
use crate::resolvent::{in_resolvent_set, resolve_direct};
use crate::sampling::Sampler;
use crate::scalar::L0Scalar;
use crate::semigroup::{Generator, GrowthEnvelope, TimeGrid};
use crate::Result;

/// Slack factor accepted between the inflated window bound and the
/// claimed constant when certifying a supplied envelope; covers the
/// at most two percent grid inflation.
const CERT_SLACK: f64 = 0.03;

/// Slack admitted when testing `||T(L)|| <= 1` at the window end.
const END_SLACK: f64 = 1e-9;

/// Tuning for the generation-theorem checks.
#[derive(Clone, Debug)]
pub struct CheckerConfig {
    /// Window length for envelope certification and the direct
    /// envelope margin.
    pub horizon: f64,
    /// Sample count for the direct envelope margin grid.
    pub grid_points: usize,
    /// Exponent-raising rounds allowed during auto-certification.
    pub max_rounds: usize,
    /// Largest resolvent power tested in conditions (b) and (c).
    pub n_max: usize,
    /// Real offsets above tau, log-spaced over two decades.
    pub real_offsets: usize,
    /// Imaginary magnitudes per real offset for condition (c).
    pub imag_offsets: usize,
    /// Seed for the per-atom jitter of sampled shifts.
    pub seed: u64,
    /// Relative tolerance separating roundoff from violation.
    pub tolerance: f64,
}

impl Default for CheckerConfig {
    fn default() -> Self {
        Self {
            horizon: 6.0,
            grid_points: 96,
            max_rounds: 4,
            n_max: 24,
            real_offsets: 6,
            imag_offsets: 3,
            seed: 7,
            tolerance: 1e-9,
        }
    }
}

/// Direct envelope margin on a sample grid.
#[derive(Clone, Debug)]
pub struct EnvelopeCheck {
    /// Worst over times and atoms of
    /// `(||T(t)|| - M e^(tau t)) / (1 + M e^(tau t))`.
    pub margin: f64,
    /// Time and atom achieving the worst margin.
    pub worst_time: f64,
    pub worst_atom: usize,
    /// Margin stayed below the tolerance.
    pub holds: bool,
}

/// One sampled shift with its worst power defect.
#[derive(Clone, Debug)]
pub struct ShiftCheck {
    /// The sampled module shift.
    pub shift: L0Scalar,
    /// Worst over powers and atoms of the relative condition defect;
    /// infinite when the shift left the resolvent set at some atom.
    pub margin: f64,
    /// Power and atom achieving the worst defect.
    pub worst_power: usize,
    pub worst_atom: usize,
    /// The shift stayed inside the resolvent set at every atom.
    pub resolvent_ok: bool,
}

/// Aggregate over a sampled shift family.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub holds: bool,
    /// Largest margin over all sampled shifts.
    pub worst_margin: f64,
    pub shifts: Vec<ShiftCheck>,
}

/// Outcome of a full check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Envelope certified for all time and every condition holds.
    Consistent,
    /// The claimed envelope already fails on the sample grid.
    EnvelopeRejected,
    /// Envelope certified, yet a resolvent condition failed; this
    /// combination contradicts the generation theorem.
    Inconsistent,
    /// Conditions were measured but the envelope certificate is
    /// incomplete, so no equivalence claim is made.
    Undecided,
}

/// Full account of one generation-theorem check.
#[derive(Clone, Debug)]
pub struct HyReport {
    /// Envelope the conditions were tested against.
    pub envelope: GrowthEnvelope,
    /// Per-atom global certificate for the envelope.
    pub certified: Vec<bool>,
    pub condition_a: EnvelopeCheck,
    pub condition_b: ConditionReport,
    pub condition_c: ConditionReport,
    pub verdict: Verdict,
    /// True exactly in the [`Verdict::Inconsistent`] case.
    pub consistency_alert: bool,
}

/// Worst relative defect of `||T(t)|| <= M e^(tau t)` over a plain
/// sample grid; grid values are exact evaluations, so a positive
/// margin beyond roundoff is a genuine envelope violation.
pub fn check_condition_a(
    gen: &Generator,
    m: &L0Scalar,
    tau: &L0Scalar,
    config: &CheckerConfig,
) -> Result<EnvelopeCheck> {
    if gen.space() != m.space() || gen.space() != tau.space() {
        return Err(Error::SpaceMismatch);
    }
    if !m.is_real() {
        return Err(Error::ComplexValued);
    }
    let rescaled = gen.rescale(tau)?;
    let grid = TimeGrid::new(config.horizon, config.grid_points.max(2))?;
    let mut worst = f64::NEG_INFINITY;
    let mut worst_time = 0.0;
    let mut worst_atom = 0;
    for t in grid.times() {
        let norms = rescaled.evaluate(t)?.op_norm();
        for atom in 0..gen.space().atoms() {
            let bound = m.re(atom);
            let margin = (norms.re(atom) - bound) / (1.0 + bound);
            if margin > worst {
                worst = margin;
                worst_time = t;
                worst_atom = atom;
            }
        }
    }
    Ok(EnvelopeCheck {
        margin: worst,
        worst_time,
        worst_atom,
        holds: worst <= config.tolerance,
    })
}

/// Worst relative defect of one power condition at one shift: with
/// `K = weight * R(xi)` the defect is `(||K^n|| - M) / (1 + M)`.
///
/// With `weight = xi - tau` this is condition (b); with
/// `weight = Re xi - tau` it is condition (c), since a positive real
/// module scalar commutes through powers and scales norms exactly.
pub fn check_power_condition(
    gen: &Generator,
    xi: &L0Scalar,
    weight: &L0Scalar,
    m: &L0Scalar,
    n_max: usize,
) -> Result<ShiftCheck> {
    if gen.space() != m.space() {
        return Err(Error::SpaceMismatch);
    }
    for atom in 0..weight.atoms() {
        if !(weight.re(atom) > 0.0) || !weight.is_real() {
            return Err(Error::ShiftNotAdmissible { atom });
        }
    }
    let atoms = gen.space().atoms();
    if in_resolvent_set(gen, xi)?.iter().any(|ok| !ok) {
        return Ok(ShiftCheck {
            shift: xi.clone(),
            margin: f64::INFINITY,
            worst_power: 0,
            worst_atom: in_resolvent_set(gen, xi)?
                .iter()
                .position(|ok| !ok)
                .unwrap_or(0),
            resolvent_ok: false,
        });
    }
    let step = resolve_direct(gen, xi)?.scalar_mul(weight)?;
    let mut power = step.clone();
    let mut worst = f64::NEG_INFINITY;
    let mut worst_power = 1;
    let mut worst_atom = 0;
    for n in 1..=n_max.max(1) {
        let norms = power.op_norm();
        for atom in 0..atoms {
            let bound = m.re(atom);
            let margin = (norms.re(atom) - bound) / (1.0 + bound);
            if margin > worst {
                worst = margin;
                worst_power = n;
                worst_atom = atom;
            }
        }
        if n < n_max {
            power = power.compose(&step)?;
        }
    }
    Ok(ShiftCheck {
        shift: xi.clone(),
        margin: worst,
        worst_power,
        worst_atom,
        resolvent_ok: true,
    })
}

/// Real module shifts above `tau`: log-spaced base offsets over
/// `[0.1, 10]`, each jittered independently per atom so the sample
/// genuinely varies across the algebra.
pub fn sample_real_shifts(tau: &L0Scalar, count: usize, sampler: &mut Sampler) -> Vec<L0Scalar> {
    let atoms = tau.atoms();
    let mut shifts = Vec::with_capacity(count);
    for k in 0..count {
        let exponent = if count <= 1 {
            0.0
        } else {
            -1.0 + 2.0 * k as f64 / (count - 1) as f64
        };
        let base = 10.0f64.powf(exponent);
        let values: Vec<f64> = (0..atoms)
            .map(|atom| tau.re(atom) + base * sampler.uniform_in(0.8, 1.2))
            .collect();
        shifts.push(L0Scalar::from_real(tau.space().clone(), &values).expect("matching lengths"));
    }
    shifts
}

/// Complex module shifts with `Re xi > tau`: every real offset paired
/// with jittered imaginary magnitudes spanning `[-2, 2]`.
pub fn sample_complex_shifts(
    tau: &L0Scalar,
    real_count: usize,
    imag_count: usize,
    sampler: &mut Sampler,
) -> Vec<L0Scalar> {
    let atoms = tau.atoms();
    let mut shifts = Vec::new();
    for real in sample_real_shifts(tau, real_count, sampler) {
        for j in 0..imag_count.max(1) {
            let base = if imag_count <= 1 {
                0.0
            } else {
                -2.0 + 4.0 * j as f64 / (imag_count - 1) as f64
            };
            let values: Vec<Complex64> = (0..atoms)
                .map(|atom| Complex64::new(real.re(atom), base * sampler.uniform_in(0.9, 1.1)))
                .collect();
            shifts.push(
                L0Scalar::from_complex(tau.space().clone(), values).expect("matching lengths"),
            );
        }
    }
    shifts
}

/// Runs one power condition over a sampled shift family.
fn condition_over_shifts(
    gen: &Generator,
    shifts: &[L0Scalar],
    tau: &L0Scalar,
    m: &L0Scalar,
    config: &CheckerConfig,
) -> Result<ConditionReport> {
    let mut checks = Vec::with_capacity(shifts.len());
    let mut worst = f64::NEG_INFINITY;
    for xi in shifts {
        let weight = xi.real_part().sub(tau);
        let check = check_power_condition(gen, xi, &weight, m, config.n_max)?;
        worst = worst.max(check.margin);
        checks.push(check);
    }
    Ok(ConditionReport {
        holds: worst <= config.tolerance,
        worst_margin: worst,
        shifts: checks,
    })
}

/// Full check against an automatically certified envelope. The
/// exponent starts at the spectral abscissa and is raised until the
/// window certificate closes, so the reported envelope is both
/// data-derived and valid for all time wherever `certified` is set.
pub fn full_report(gen: &Generator, config: &CheckerConfig) -> Result<HyReport> {
    let grid = TimeGrid::new(config.horizon, config.grid_points.max(2))?;
    let cert = gen.certified_envelope(&grid, config.max_rounds)?;
    assemble(gen, cert.envelope, cert.certified, config)
}

/// Full check against a caller-supplied envelope. The claim is first
/// verified on the window and certified when the window bound stays
/// within the certification slack of `M` and the rescaled semigroup
/// does not expand across the window.
pub fn full_report_with_envelope(
    gen: &Generator,
    m: &L0Scalar,
    tau: &L0Scalar,
    config: &CheckerConfig,
) -> Result<HyReport> {
    if gen.space() != m.space() || gen.space() != tau.space() {
        return Err(Error::SpaceMismatch);
    }
    if !m.is_real() {
        return Err(Error::ComplexValued);
    }
    let rescaled = gen.rescale(tau)?;
    let window = rescaled.bound_on_interval(config.horizon, config.grid_points)?;
    let end_norm = rescaled.evaluate(config.horizon)?.op_norm();
    let certified = (0..gen.space().atoms())
        .map(|atom| {
            window.re(atom) <= m.re(atom) * (1.0 + CERT_SLACK)
                && end_norm.re(atom) <= 1.0 + END_SLACK
        })
        .collect();
    let envelope = GrowthEnvelope {
        m: m.clone(),
        tau: tau.clone(),
        t_max: config.horizon,
    };
    assemble(gen, envelope, certified, config)
}

fn assemble(
    gen: &Generator,
    envelope: GrowthEnvelope,
    certified: Vec<bool>,
    config: &CheckerConfig,
) -> Result<HyReport> {
    let condition_a = check_condition_a(gen, &envelope.m, &envelope.tau, config)?;
    let mut sampler = Sampler::new(config.seed);
    let real_shifts = sample_real_shifts(&envelope.tau, config.real_offsets, &mut sampler);
    let complex_shifts = sample_complex_shifts(
        &envelope.tau,
        config.real_offsets,
        config.imag_offsets,
        &mut sampler,
    );
    let condition_b = condition_over_shifts(gen, &real_shifts, &envelope.tau, &envelope.m, config)?;
    let condition_c =
        condition_over_shifts(gen, &complex_shifts, &envelope.tau, &envelope.m, config)?;

    let fully_certified = certified.iter().all(|&c| c);
    let bc_hold = condition_b.holds && condition_c.holds;
    let (verdict, consistency_alert) = if !condition_a.holds {
        (Verdict::EnvelopeRejected, false)
    } else if fully_certified && bc_hold {
        (Verdict::Consistent, false)
    } else if fully_certified {
        (Verdict::Inconsistent, true)
    } else {
        (Verdict::Undecided, false)
    };
    Ok(HyReport {
        envelope,
        certified,
        condition_a,
        condition_b,
        condition_c,
        verdict,
        consistency_alert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::ModuleHom;
    use crate::linalg::mat::CMatrix;
    use crate::space::AtomSpace;

    fn one_atom() -> AtomSpace {
        AtomSpace::uniform(1).unwrap()
    }

    fn generator(space: AtomSpace, rows: &[&[f64]]) -> Generator {
        let n = rows.len();
        let mut m = CMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(v, 0.0));
            }
        }
        Generator::new(ModuleHom::broadcast(space, m)).unwrap()
    }

    #[test]
    fn rotation_with_flat_envelope_is_consistent() {
        let gen = generator(one_atom(), &[&[0.0, 1.0], &[-1.0, 0.0]]);
        let m = L0Scalar::one(one_atom());
        let tau = L0Scalar::zero(one_atom());
        let report = full_report_with_envelope(&gen, &m, &tau, &CheckerConfig::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent);
        assert!(!report.consistency_alert);
        assert!(report.certified.iter().all(|&c| c));
        assert!(report.condition_a.margin <= 1e-9);
        assert!(report.condition_b.worst_margin <= 1e-9);
        assert!(report.condition_c.worst_margin <= 1e-9);
    }

    #[test]
    fn nilpotent_block_fails_every_condition_for_a_flat_claim() {
        // ||T(t)|| grows linearly, so the flat claim M = 1, tau = 0 is
        // false and both resolvent conditions inherit the violation.
        let gen = generator(one_atom(), &[&[0.0, 1.0], &[0.0, 0.0]]);
        let m = L0Scalar::one(one_atom());
        let tau = L0Scalar::zero(one_atom());
        let report = full_report_with_envelope(&gen, &m, &tau, &CheckerConfig::default()).unwrap();
        assert_eq!(report.verdict, Verdict::EnvelopeRejected);
        assert!(!report.consistency_alert);
        assert!(report.condition_a.margin > 0.1);
        assert!(report.condition_b.worst_margin > 0.1);
        assert!(report.condition_c.worst_margin > 0.1);
    }

    #[test]
    fn auto_report_on_random_stable_instance_is_consistent() {
        let mut sampler = Sampler::new(271);
        let space = sampler.space(3).unwrap();
        let gen = sampler.stable_generator(&space, 4, 0.6).unwrap();
        let report = full_report(&gen, &CheckerConfig::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent, "report {report:?}");
        assert!(!report.consistency_alert);
        assert!(report.condition_b.worst_margin <= 1e-9);
        assert!(report.condition_c.worst_margin <= 1e-9);
    }

    #[test]
    fn sampled_shifts_vary_across_atoms() {
        let space = AtomSpace::uniform(3).unwrap();
        let tau = L0Scalar::zero(space);
        let mut sampler = Sampler::new(5);
        let shifts = sample_real_shifts(&tau, 4, &mut sampler);
        assert_eq!(shifts.len(), 4);
        let s = &shifts[0];
        assert!(
            (s.re(0) - s.re(1)).abs() > 1e-6 || (s.re(1) - s.re(2)).abs() > 1e-6,
            "jitter should separate atoms"
        );
    }

    #[test]
    fn inadmissible_weight_is_refused() {
        let gen = generator(one_atom(), &[&[-1.0]]);
        let xi = L0Scalar::one(one_atom());
        let weight = L0Scalar::zero(one_atom());
        let m = L0Scalar::one(one_atom());
        assert_eq!(
            check_power_condition(&gen, &xi, &weight, &m, 4).unwrap_err(),
            Error::ShiftNotAdmissible { atom: 0 }
        );
    }
}
