//! Equivalent-norm constructions used by the generation theorem, in
//! truncated numerical form.
//!
//! Two families are provided, both for a generator in its bounded
//! normalization (rescale quasi-bounded semigroups first):
//!
//! * the resolvent-power norm at a shift `eta > 0`, the supremum over
//!   `n` of `||(eta R(eta))^n x||`, truncated at a power budget with
//!   per-atom stabilization flags;
//! * the orbit supremum `sup_t ||T(t) x||`, evaluated on a refined
//!   grid with a Lipschitz inflation over the window and an explicit
//!   certificate that the tail beyond the window cannot exceed it.
//!
//! Truncated suprema are lower bounds of the exact ones, so each
//! routine also reports the data needed to interpret a comparison:
//! stabilization flags for power norms, certification flags for orbit
//! suprema.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // f64 math resolves through this trait when no dependency links std
use num_traits::Float;

use crate::error::Error;
use crate::resolvent::resolve_direct;
use crate::scalar::{l0_sup, L0Scalar};
use crate::semigroup::{Generator, TimeGrid};
use crate::vector::RNVector;
use crate::Result;

/// Relative threshold below which a running maximum counts as stalled.
const STALL_TOL: f64 = 1e-12;

/// Slack admitted when testing `||T(L)|| <= 1` for tail certification.
const TAIL_SLACK: f64 = 1e-9;

/// Iteration controls for the resolvent-power norm.
#[derive(Clone, Debug)]
pub struct EtaNormOptions {
    /// Largest resolvent power evaluated.
    pub n_max: usize,
    /// Consecutive non-improving powers required to call the running
    /// maximum stabilized.
    pub stall: usize,
}

impl Default for EtaNormOptions {
    fn default() -> Self {
        Self {
            n_max: 64,
            stall: 8,
        }
    }
}

/// Truncated resolvent-power norm `sup_n ||(eta R(eta))^n x||`.
#[derive(Clone, Debug)]
pub struct EtaNorm {
    /// Running pointwise maximum over the evaluated powers.
    pub value: L0Scalar,
    /// Per atom: the maximum did not move for the configured number of
    /// trailing powers, so the truncation is believed converged.
    pub stabilized: Vec<bool>,
    /// Number of powers actually evaluated past `n = 0`.
    pub terms: usize,
}

/// Resolvent-power norm at a fixed real shift `eta > 0`.
///
/// The `n = 0` term makes `||x|| <= value` exact by construction; the
/// upper half of the sandwich, `value <= M ||x||`, is inherited from
/// the power bound hypothesis and checked by [`renorm_report`].
pub fn eta_norm(
    gen: &Generator,
    eta: &L0Scalar,
    x: &RNVector,
    options: &EtaNormOptions,
) -> Result<EtaNorm> {
    if gen.space() != x.space() {
        return Err(Error::SpaceMismatch);
    }
    if !eta.is_strictly_positive()? {
        return Err(Error::NotStrictlyPositive);
    }
    let iterate = resolve_direct(gen, eta)?.scalar_mul(eta)?;
    let atoms = gen.space().atoms();
    let mut value = x.norm();
    let mut since_gain = vec![0usize; atoms];
    let mut terms = 0;
    let mut y = x.clone();
    for n in 1..=options.n_max {
        y = iterate.apply(&y)?;
        let candidate = y.norm();
        for atom in 0..atoms {
            if candidate.re(atom) > value.re(atom) + STALL_TOL * (1.0 + value.re(atom)) {
                since_gain[atom] = 0;
            } else {
                since_gain[atom] += 1;
            }
        }
        value = value.sup_pair(&candidate)?;
        terms = n;
        if since_gain.iter().all(|&s| s >= options.stall) {
            break;
        }
    }
    let stabilized = since_gain.iter().map(|&s| s >= options.stall).collect();
    Ok(EtaNorm {
        value,
        stabilized,
        terms,
    })
}

/// Pointwise supremum of eta-norms over a finite family of shifts.
#[derive(Clone, Debug)]
pub struct FamilyNorm {
    /// Lattice supremum of the member norms.
    pub value: L0Scalar,
    /// Member norms, in the order the shifts were supplied.
    pub eta_norms: Vec<EtaNorm>,
    /// True when the family has a pointwise largest shift and the
    /// supremum already equals that member, the behavior monotonicity
    /// predicts for comparable shifts.
    pub attained_at_top: bool,
    /// Every member stabilized at every atom.
    pub all_stabilized: bool,
}

/// Supremum of resolvent-power norms over a family of shifts, the
/// finite stand-in for the supremum over all strictly positive
/// scalars.
pub fn family_norm(
    gen: &Generator,
    etas: &[L0Scalar],
    x: &RNVector,
    options: &EtaNormOptions,
) -> Result<FamilyNorm> {
    if etas.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let eta_norms = etas
        .iter()
        .map(|eta| eta_norm(gen, eta, x, options))
        .collect::<Result<Vec<EtaNorm>>>()?;
    let values: Vec<L0Scalar> = eta_norms.iter().map(|e| e.value.clone()).collect();
    let value = l0_sup(&values)?;

    let mut top = None;
    'candidates: for (j, candidate) in etas.iter().enumerate() {
        for eta in etas {
            if !eta.leq(candidate)? {
                continue 'candidates;
            }
        }
        top = Some(j);
        break;
    }
    let attained_at_top = match top {
        Some(j) => {
            let scale = 1.0 + value.max_over_atoms()?;
            value.excess_over(&eta_norms[j].value)? <= STALL_TOL * scale
        }
        None => false,
    };
    let all_stabilized = eta_norms.iter().all(|e| e.stabilized.iter().all(|&s| s));
    Ok(FamilyNorm {
        value,
        eta_norms,
        attained_at_top,
        all_stabilized,
    })
}

/// Monotonicity defect of the eta-norm along a comparable pair of
/// shifts: the positive part of `||x||_lo - ||x||_hi`, which exact
/// arithmetic keeps nonpositive whenever `lo <= hi`.
pub fn eta_monotonicity_defect(
    gen: &Generator,
    lo: &L0Scalar,
    hi: &L0Scalar,
    x: &RNVector,
    options: &EtaNormOptions,
) -> Result<f64> {
    require_leq(lo, hi)?;
    let low = eta_norm(gen, lo, x, options)?;
    let high = eta_norm(gen, hi, x, options)?;
    low.value.excess_over(&high.value)
}

/// Contraction defect of the family norm under `xi R(xi)`: the excess
/// of `|xi R(xi) x|` over `|x|`. The shift must sit below every
/// member, which is what lets the per-member contraction survive the
/// finite supremum. The defect is meaningful when both family norms
/// stabilized.
pub fn family_contraction_defect(
    gen: &Generator,
    etas: &[L0Scalar],
    xi: &L0Scalar,
    x: &RNVector,
    options: &EtaNormOptions,
) -> Result<f64> {
    for eta in etas {
        require_leq(xi, eta)?;
    }
    if !xi.is_strictly_positive()? {
        return Err(Error::NotStrictlyPositive);
    }
    let image = resolve_direct(gen, xi)?.scalar_mul(xi)?.apply(x)?;
    let of_image = family_norm(gen, etas, &image, options)?;
    let of_x = family_norm(gen, etas, x, options)?;
    of_image.value.excess_over(&of_x.value)
}

/// Combined sandwich report for the family norm: `||x|| <= |x|` holds
/// by construction, `|x| <= M ||x||` inherits the supplied power
/// bound.
#[derive(Clone, Debug)]
pub struct RenormReport {
    /// Original module norm of the probe element.
    pub base_norm: L0Scalar,
    /// Family norm data for the probe element.
    pub family: FamilyNorm,
    /// Positive part of `||x|| - |x|`; nonpositive by construction.
    pub lower_defect: f64,
    /// Positive part of `|x| - M ||x||` for the supplied bound.
    pub upper_defect: f64,
}

/// Evaluates the renorm sandwich for one probe element against a
/// caller-certified power bound `M`.
pub fn renorm_report(
    gen: &Generator,
    etas: &[L0Scalar],
    x: &RNVector,
    m: &L0Scalar,
    options: &EtaNormOptions,
) -> Result<RenormReport> {
    if gen.space() != m.space() {
        return Err(Error::SpaceMismatch);
    }
    let family = family_norm(gen, etas, x, options)?;
    let base_norm = x.norm();
    let lower_defect = base_norm.excess_over(&family.value)?;
    let upper_defect = family.value.excess_over(&base_norm.mul(m))?;
    Ok(RenormReport {
        base_norm,
        family,
        lower_defect,
        upper_defect,
    })
}

/// Certified orbit supremum `sup_t ||T(t) x||`.
#[derive(Clone, Debug)]
pub struct OrbitSup {
    /// Certified upper bound for the supremum: the inflated window
    /// maximum, joined with the tail bound where the tail certifies.
    pub value: L0Scalar,
    /// Raw grid maximum, an exact lower bound for the supremum that
    /// contains the `t = 0` term.
    pub grid_max: L0Scalar,
    /// Envelope bound `m_L ||T(L) x||` for the orbit past the window.
    pub tail_bound: L0Scalar,
    /// Per atom: `||T(L)|| <= 1` within slack, so every time past the
    /// window factors through the window and `value` covers all of
    /// `t >= 0`. Where false, `value` only covers `[0, L]`.
    pub tail_certified: Vec<bool>,
    /// Window length `L`.
    pub horizon: f64,
}

/// Orbit supremum over `t >= 0` with a certified window bound and a
/// tail certificate.
///
/// Refuses semigroups that are not almost surely uniformly bounded,
/// since the supremum then fails to exist as a module scalar. The
/// window grid is refined until the Lipschitz inflation
/// `1 / (1 - h ||A|| / 2)` stays tame, exactly as for operator-norm
/// interval bounds.
pub fn orbit_sup_norm(
    gen: &Generator,
    x: &RNVector,
    horizon: f64,
    points: usize,
) -> Result<OrbitSup> {
    if gen.space() != x.space() {
        return Err(Error::SpaceMismatch);
    }
    for (atom, ok) in gen.is_asu_bounded().iter().enumerate() {
        if !ok {
            return Err(Error::NotAsuBounded { atom });
        }
    }
    let max_norm = gen.op_norms().max_over_atoms()?;
    // keep h ||A|| / 2 <= 0.02 so the inflation factor is tame
    let needed = (25.0 * horizon * max_norm).ceil() as usize + 2;
    let points = points.max(needed).max(2).min(1 << 17);
    let grid = TimeGrid::new(horizon, points)?;
    let h = grid.step();
    let orbit = gen.orbit_norms(x, &grid)?;

    let window_bound = gen.bound_on_interval(horizon, points)?;
    let at_horizon = gen.evaluate(horizon)?;
    let end_op = at_horizon.op_norm();
    let end_orbit = at_horizon.apply(x)?.norm();

    let atoms = gen.space().atoms();
    let mut grid_max = Vec::with_capacity(atoms);
    let mut value = Vec::with_capacity(atoms);
    let mut tail = Vec::with_capacity(atoms);
    let mut tail_certified = Vec::with_capacity(atoms);
    for atom in 0..atoms {
        let raw = orbit[atom].iter().cloned().fold(0.0f64, f64::max);
        let denom = 1.0 - 0.5 * h * gen.op_norms().re(atom);
        if denom <= 0.0 {
            return Err(Error::LinalgFailure(
                "orbit bound needs a finer grid than the refinement cap",
            ));
        }
        let window = raw / denom;
        let tail_atom = window_bound.re(atom) * end_orbit.re(atom);
        let certified = end_op.re(atom) <= 1.0 + TAIL_SLACK;
        grid_max.push(raw);
        tail.push(tail_atom);
        tail_certified.push(certified);
        value.push(if certified {
            window.max(tail_atom)
        } else {
            window
        });
    }
    let space = gen.space().clone();
    Ok(OrbitSup {
        value: L0Scalar::from_real(space.clone(), &value)?,
        grid_max: L0Scalar::from_real(space.clone(), &grid_max)?,
        tail_bound: L0Scalar::from_real(space, &tail)?,
        tail_certified,
        horizon,
    })
}

/// Contraction defect of the orbit norm: the excess of the shifted
/// orbit's exact grid maximum over the certified supremum of the
/// original orbit. Nonpositive up to roundoff whenever the original
/// supremum's tail certified, because shifting an orbit only removes
/// candidates from its supremum.
pub fn orbit_contraction_defect(
    gen: &Generator,
    x: &RNVector,
    t: f64,
    horizon: f64,
    points: usize,
) -> Result<f64> {
    let of_x = orbit_sup_norm(gen, x, horizon, points)?;
    let shifted = gen.evaluate(t)?.apply(x)?;
    let of_shifted = orbit_sup_norm(gen, &shifted, horizon, points)?;
    of_shifted.grid_max.excess_over(&of_x.value)
}

/// Sandwich defects of the orbit norm against a caller-certified
/// uniform bound `M`: positive parts of `||x|| - |x|` and of
/// `|x| - M ||x||`, both evaluated on the exact grid maximum so that
/// each is a rigorous inequality rather than an inflated estimate.
pub fn orbit_sandwich_defects(
    gen: &Generator,
    x: &RNVector,
    m: &L0Scalar,
    horizon: f64,
    points: usize,
) -> Result<(f64, f64)> {
    if gen.space() != m.space() {
        return Err(Error::SpaceMismatch);
    }
    let sup = orbit_sup_norm(gen, x, horizon, points)?;
    let base = x.norm();
    let lower = base.excess_over(&sup.grid_max)?;
    let upper = sup.grid_max.excess_over(&base.mul(m))?;
    Ok((lower, upper))
}

/// Error out with the first atom violating `lo <= hi`.
fn require_leq(lo: &L0Scalar, hi: &L0Scalar) -> Result<()> {
    if lo.leq(hi)? {
        return Ok(());
    }
    for atom in 0..lo.atoms() {
        if lo.re(atom) > hi.re(atom) {
            return Err(Error::ShiftNotAdmissible { atom });
        }
    }
    Err(Error::SpaceMismatch)
}
