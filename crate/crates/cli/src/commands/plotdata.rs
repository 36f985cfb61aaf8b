//! CSV exports for plotting: semigroup norm curves, resolvent power
//! norms at a representative shift, and the sampled shift margins of
//! the generation-theorem conditions.

use std::path::PathBuf;

use yosida_core::checker::{full_report, full_report_with_envelope, ConditionReport};
use yosida_core::resolvent::resolvent_power_norms;
use yosida_core::semigroup::TimeGrid;

use crate::config::Config;
use crate::report::write_csv;

fn atom_header(prefix: &str, atoms: usize) -> String {
    let mut header = String::from(prefix);
    for atom in 0..atoms {
        header.push_str(&format!(",atom{atom}"));
    }
    header
}

fn margin_rows(condition: &ConditionReport, label: &str, rows: &mut Vec<Vec<String>>) {
    for (index, shift) in condition.shifts.iter().enumerate() {
        let representative = shift.shift.value(0);
        rows.push(vec![
            label.to_string(),
            index.to_string(),
            representative.re.to_string(),
            representative.im.to_string(),
            shift.margin.to_string(),
            shift.resolvent_ok.to_string(),
        ]);
    }
}

pub fn run(config: &Config, out: Option<PathBuf>) -> anyhow::Result<u8> {
    let dir = out.unwrap_or_else(|| PathBuf::from("plots"));
    let space = config.space()?;
    let gen = config.build_generator(&space)?;
    let atoms = space.atoms();
    let checker_config = config.checker_config();

    // Norm curve of the semigroup on the window.
    let grid = TimeGrid::new(checker_config.horizon, checker_config.grid_points.max(2))?;
    let mut norm_rows = Vec::with_capacity(grid.points);
    for t in grid.times() {
        let norms = gen.evaluate(t)?.op_norm();
        let mut row = vec![t.to_string()];
        row.extend((0..atoms).map(|a| norms.re(a).to_string()));
        norm_rows.push(row);
    }
    let norms_path = write_csv(
        &dir,
        "semigroup_norms.csv",
        &atom_header("t", atoms),
        &norm_rows,
    )?;
    println!("wrote {}", norms_path.display());

    // Resolvent power norms one unit above the spectral abscissa, so
    // the power weight is exactly one.
    let xi = gen.spectral_abscissa().shift(1.0);
    let powers = resolvent_power_norms(&gen, &xi, checker_config.n_max)?;
    let mut power_rows = Vec::with_capacity(powers.len());
    for (k, norm) in powers.iter().enumerate() {
        let mut row = vec![(k + 1).to_string()];
        row.extend((0..atoms).map(|a| norm.re(a).to_string()));
        power_rows.push(row);
    }
    let powers_path = write_csv(
        &dir,
        "resolvent_powers.csv",
        &atom_header("n", atoms),
        &power_rows,
    )?;
    println!("wrote {}", powers_path.display());

    // Margins of the sampled shifts from a full check.
    let hy = match config.envelope_claim(&space)? {
        Some((m, tau)) => full_report_with_envelope(&gen, &m, &tau, &checker_config)?,
        None => full_report(&gen, &checker_config)?,
    };
    let mut margin_data = Vec::new();
    margin_rows(&hy.condition_b, "b", &mut margin_data);
    margin_rows(&hy.condition_c, "c", &mut margin_data);
    let margins_path = write_csv(
        &dir,
        "shift_margins.csv",
        "condition,index,re,im,margin,resolvent_ok",
        &margin_data,
    )?;
    println!("wrote {}", margins_path.display());

    Ok(0)
}
