//! Equivalent renormalizations for one generator stack: the
//! resolvent-power family norm and the orbit supremum norm, with their
//! sandwich, monotonicity and contraction defects.
//!
//! The flow is first rescaled by its certified exponent so that the
//! renormalizations apply to a bounded semigroup; the certified bound
//! plays the sandwich constant.

use std::path::PathBuf;

use yosida_core::renorm::{
    eta_monotonicity_defect, family_contraction_defect, orbit_contraction_defect,
    orbit_sandwich_defects, orbit_sup_norm, renorm_report, EtaNormOptions,
};
use yosida_core::sampling::Sampler;
use yosida_core::semigroup::TimeGrid;
use yosida_core::L0Scalar;

use crate::config::{Config, SCHEMA_VERSION};
use crate::report::Report;

pub fn run(config: &Config, out: Option<PathBuf>) -> anyhow::Result<u8> {
    let space = config.space()?;
    let gen = config.build_generator(&space)?;
    let seed = config.seed.unwrap_or(7);
    let mut sampler = Sampler::new(seed);
    let x = sampler.unit_vector(&space, gen.dim());

    let grid = TimeGrid::new(config.grids.horizon, config.grids.points.max(2))?;
    let cert = gen.certified_envelope(&grid, config.grids.max_rounds)?;
    let bounded = gen.rescale(&cert.envelope.tau)?;
    let m = &cert.envelope.m;

    let options = EtaNormOptions {
        n_max: config.renorm.n_max,
        stall: config.renorm.stabilization_k,
    };
    let etas: Vec<L0Scalar> = config
        .renorm
        .eta_grid
        .iter()
        .map(|&eta| L0Scalar::constant(space.clone(), eta))
        .collect();

    let family = renorm_report(&bounded, &etas, &x, m, &options)?;
    let mut monotonicity = Vec::new();
    for pair in etas.windows(2) {
        monotonicity.push(eta_monotonicity_defect(
            &bounded, &pair[0], &pair[1], &x, &options,
        )?);
    }
    let contraction = family_contraction_defect(&bounded, &etas, &etas[0], &x, &options)?;

    let horizon = config.renorm.orbit_horizon;
    let points = config.renorm.orbit_points;
    let orbit = orbit_sup_norm(&bounded, &x, horizon, points)?;
    let orbit_contraction = orbit_contraction_defect(&bounded, &x, horizon / 3.0, horizon, points)?;
    let (orbit_lower, orbit_upper) = orbit_sandwich_defects(&bounded, &x, m, horizon, points)?;

    let atoms = space.atoms();
    let mut rep = Report::new("renorm");
    rep.comment("defects are worst-case over atoms; nonpositive means the law holds");
    rep.kv("schema_version", SCHEMA_VERSION);
    rep.kv("field", config.field.as_str());
    rep.kv("atoms", atoms);
    rep.kv("dim", gen.dim());
    rep.kv("seed", seed);
    rep.kv("tolerance", config.tolerances.tolerance);
    rep.kv_list("rescale.tau", (0..atoms).map(|a| cert.envelope.tau.re(a)));
    rep.kv_list("rescale.m", (0..atoms).map(|a| m.re(a)));
    rep.kv_list("rescale.certified", cert.certified.iter());
    rep.kv_list("eta_grid", config.renorm.eta_grid.iter());
    rep.kv("family.n_max", options.n_max);
    rep.kv("family.stabilization_k", options.stall);
    rep.kv_list("base_norm", (0..atoms).map(|a| family.base_norm.re(a)));
    rep.kv_list(
        "family.value",
        (0..atoms).map(|a| family.family.value.re(a)),
    );
    rep.kv("family.all_stabilized", family.family.all_stabilized);
    rep.kv("family.attained_at_top", family.family.attained_at_top);
    rep.kv("family.lower_defect", family.lower_defect);
    rep.kv("family.upper_defect", family.upper_defect);
    rep.kv_list("family.monotonicity_defects", monotonicity.iter());
    rep.kv("family.contraction_defect", contraction);
    rep.kv("orbit.horizon", orbit.horizon);
    rep.kv_list("orbit.value", (0..atoms).map(|a| orbit.value.re(a)));
    rep.kv_list("orbit.grid_max", (0..atoms).map(|a| orbit.grid_max.re(a)));
    rep.kv_list(
        "orbit.tail_bound",
        (0..atoms).map(|a| orbit.tail_bound.re(a)),
    );
    rep.kv_list("orbit.tail_certified", orbit.tail_certified.iter());
    rep.kv("orbit.contraction_defect", orbit_contraction);
    rep.kv("orbit.lower_defect", orbit_lower);
    rep.kv("orbit.upper_defect", orbit_upper);

    let tolerance = config.tolerances.tolerance;
    let mut defects = vec![
        family.lower_defect,
        family.upper_defect,
        contraction,
        orbit_contraction,
        orbit_lower,
        orbit_upper,
    ];
    defects.extend(monotonicity.iter().copied());
    let violated = defects.iter().any(|d| *d > tolerance);
    let fully_certified = cert.certified.iter().all(|&c| c)
        && family.family.all_stabilized
        && orbit.tail_certified.iter().all(|&c| c);
    let code = if violated {
        2
    } else if !fully_certified {
        3
    } else {
        0
    };
    rep.kv("violated", violated);
    rep.kv("fully_certified", fully_certified);
    rep.kv("exit_code", code);

    print!("{}", rep.render());
    if let Some(dir) = out {
        let path = rep.write(&dir, "renorm.txt")?;
        eprintln!("wrote {}", path.display());
    }
    Ok(code)
}
