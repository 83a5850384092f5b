//! Point evaluations and CSV sweeps.

use std::io::Write;

use fso_capacity::capacity::{
    high_snr_asymptote, ln_capacity_gauss_hermite, low_snr_asymptote, malaga_meijer_expansion_asymptote,
    CapacityEstimate, Method, Units, DEFAULT_HERMITE_POINTS,
};
use fso_capacity::channel::LinkScenario;
use fso_capacity::montecarlo::estimate_capacity;

use crate::config::{McConfig, SweepSpec};
use crate::error::CliError;

/// Runs one engine on one scenario.
pub fn evaluate(
    sc: &LinkScenario,
    method: Method,
    mc: &McConfig,
    seed: Option<u64>,
) -> Result<CapacityEstimate, CliError> {
    let est = match method {
        Method::HighSnr => high_snr_asymptote(sc)?,
        Method::LowSnr => low_snr_asymptote(sc)?,
        Method::GaussHermite => ln_capacity_gauss_hermite(sc, DEFAULT_HERMITE_POINTS)?,
        Method::MeijerExpansion => malaga_meijer_expansion_asymptote(sc)?,
        Method::MonteCarlo => estimate_capacity(&mc.plan(*sc, seed)?)?,
    };
    Ok(est)
}

/// Formats `x` with nine significant digits; non-finite values print as `NaN`.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return "NaN".to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-4..=8).contains(&magnitude) {
        return format!("{x:.8e}");
    }
    let decimals = (8 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// One evaluated row of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub engine: Method,
    pub capacity: f64,
    pub stderr: Option<f64>,
}

/// Outcome of a sweep: the rows written plus one warning per failed cell.
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub warnings: Vec<String>,
}

pub const CSV_HEADER: &str = "snr_db,engine,capacity,stderr,units";

/// Evaluates every (grid point, engine) pair and writes the CSV table.
///
/// A cell whose engine fails is written with a `NaN` capacity and reported
/// in [`SweepReport::warnings`]; the sweep carries on.
pub fn run_sweep(spec: &SweepSpec, out: &mut impl Write) -> Result<SweepReport, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: "sweep output".to_string(),
        source: e,
    };
    writeln!(out, "{CSV_HEADER}").map_err(io)?;
    let mut report = SweepReport::default();
    for &db in &spec.grid_db {
        let sc = spec.template.at(spec.axis, db)?;
        for &engine in &spec.engines {
            let row = match evaluate(&sc, engine, &spec.mc, None) {
                Ok(est) => SweepRow {
                    snr_db: db,
                    engine,
                    capacity: spec.units.from_nats(est.value),
                    stderr: est.stderr.map(|s| spec.units.from_nats(s)),
                },
                Err(e) => {
                    report.warnings.push(format!("{engine} at {db} dB: {e}"));
                    SweepRow {
                        snr_db: db,
                        engine,
                        capacity: f64::NAN,
                        stderr: None,
                    }
                }
            };
            writeln!(
                out,
                "{},{},{},{},{}",
                sig9(row.snr_db),
                row.engine,
                sig9(row.capacity),
                row.stderr.map(sig9).unwrap_or_default(),
                spec.units.as_str()
            )
            .map_err(io)?;
            report.rows.push(row);
        }
    }
    Ok(report)
}

/// Single-line rendering of a point estimate: value, units, method and,
/// for Monte-Carlo, the standard error.
pub fn format_point(est: &CapacityEstimate, units: Units) -> String {
    let mut line = format!("{} {} {}", sig9(est.in_units(units)), units.as_str(), est.method);
    if let Some(se) = est.stderr {
        line.push_str(&format!(" stderr={}", sig9(units.from_nats(se))));
    }
    line
}
