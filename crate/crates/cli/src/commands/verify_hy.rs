//! The generation-theorem check: growth envelope against resolvent
//! power conditions, with a consistency verdict.

use std::path::PathBuf;

use yosida_core::checker::{full_report, full_report_with_envelope, ConditionReport, Verdict};

use crate::config::{Config, SCHEMA_VERSION};
use crate::report::Report;

fn verdict_name(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::Consistent => "consistent",
        Verdict::EnvelopeRejected => "envelope-rejected",
        Verdict::Inconsistent => "inconsistent",
        Verdict::Undecided => "undecided",
    }
}

fn condition_lines(rep: &mut Report, name: &str, cond: &ConditionReport) {
    rep.kv(&format!("{name}.holds"), cond.holds);
    rep.kv(&format!("{name}.worst_margin"), cond.worst_margin);
    rep.kv(&format!("{name}.shifts"), cond.shifts.len());
    rep.kv_list(
        &format!("{name}.margins"),
        cond.shifts.iter().map(|s| s.margin),
    );
    rep.kv_list(
        &format!("{name}.resolvent_ok"),
        cond.shifts.iter().map(|s| s.resolvent_ok),
    );
}

pub fn run(config: &Config, out: Option<PathBuf>) -> anyhow::Result<u8> {
    let space = config.space()?;
    let gen = config.build_generator(&space)?;
    let checker_config = config.checker_config();
    let (hy, claimed) = match config.envelope_claim(&space)? {
        Some((m, tau)) => (
            full_report_with_envelope(&gen, &m, &tau, &checker_config)?,
            true,
        ),
        None => (full_report(&gen, &checker_config)?, false),
    };

    let atoms = space.atoms();
    let mut rep = Report::new("verify-hy");
    rep.comment(format!(
        "envelope source: {}",
        if claimed {
            "config claim"
        } else {
            "auto-certified"
        }
    ));
    rep.kv("schema_version", SCHEMA_VERSION);
    rep.kv("field", config.field.as_str());
    rep.kv("atoms", atoms);
    rep.kv("dim", gen.dim());
    rep.kv_list("space.probs", space.probs().iter().copied());
    rep.kv("window.horizon", checker_config.horizon);
    rep.kv("window.points", checker_config.grid_points);
    rep.kv("shift.seed", checker_config.seed);
    rep.kv("tolerance", checker_config.tolerance);
    rep.kv("envelope.claimed", claimed);
    rep.kv_list("envelope.m", (0..atoms).map(|a| hy.envelope.m.re(a)));
    rep.kv_list("envelope.tau", (0..atoms).map(|a| hy.envelope.tau.re(a)));
    rep.kv_list("envelope.certified", hy.certified.iter());
    rep.kv_list(
        "spectral_abscissa",
        (0..atoms).map(|a| gen.spectral_abscissa().re(a)),
    );
    rep.kv("condition_a.margin", hy.condition_a.margin);
    rep.kv("condition_a.worst_time", hy.condition_a.worst_time);
    rep.kv("condition_a.worst_atom", hy.condition_a.worst_atom);
    rep.kv("condition_a.holds", hy.condition_a.holds);
    condition_lines(&mut rep, "condition_b", &hy.condition_b);
    condition_lines(&mut rep, "condition_c", &hy.condition_c);
    rep.kv("verdict", verdict_name(&hy.verdict));
    rep.kv("consistency_alert", hy.consistency_alert);

    let code = match hy.verdict {
        Verdict::Consistent => 0,
        Verdict::EnvelopeRejected | Verdict::Inconsistent => 2,
        Verdict::Undecided => 3,
    };
    rep.kv("exit_code", code);

    print!("{}", rep.render());
    if let Some(dir) = out {
        let path = rep.write(&dir, "verify_hy.txt")?;
        eprintln!("wrote {}", path.display());
    }
    Ok(code)
}
