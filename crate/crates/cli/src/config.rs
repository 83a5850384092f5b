//! JSON scenario and sweep configuration.
//!
//! ```json
//! {
//!   "turbulence": { "model": "rician_lognormal", "k": 5.0, "sigma": 0.35 },
//!   "pointing": { "xi": 1.1, "sigma_s": 3.0, "s": 3.0 },
//!   "detection": "im_dd",
//!   "snr": { "axis": "average_snr_db", "db": 30.0 },
//!   "sweep": {
//!     "axis": "average_snr_db", "start": 0.0, "stop": 40.0, "step": 5.0,
//!     "engines": ["high_snr", "monte_carlo"], "units": "nats",
//!     "mc": { "n_samples": 1000000, "seed": 7 }
//!   }
//! }
//! ```
//!
//! `pointing` may be omitted or `null` for a link without pointing error.

use std::path::Path;

use fso_capacity::capacity::{Method, Units};
use fso_capacity::channel::{
    average_to_electrical_snr, db_to_linear, Detection, LinkScenario, PointingErrorParams, TurbulenceModel,
};
use fso_capacity::montecarlo::SimulationPlan;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum TurbulenceConfig {
    Lognormal {
        sigma: f64,
        lambda: Option<f64>,
    },
    RicianLognormal {
        k: f64,
        sigma: f64,
        omega: Option<f64>,
        lambda: Option<f64>,
    },
    Malaga {
        alpha: f64,
        beta: u32,
        b0: f64,
        rho: f64,
        omega: f64,
        delta_phi: f64,
    },
    GammaGamma {
        alpha: f64,
        beta: f64,
    },
}

impl TurbulenceConfig {
    fn build(self) -> Result<TurbulenceModel, CliError> {
        let unit_mean = |sigma: f64| -0.5 * sigma * sigma;
        let m = match self {
            Self::Lognormal { sigma, lambda } => TurbulenceModel::Lognormal {
                sigma,
                lambda: lambda.unwrap_or(unit_mean(sigma)),
            },
            Self::RicianLognormal {
                k,
                sigma,
                omega,
                lambda,
            } => TurbulenceModel::RicianLognormal {
                k,
                omega: omega.unwrap_or(1.0),
                sigma,
                lambda: lambda.unwrap_or(unit_mean(sigma)),
            },
            Self::Malaga {
                alpha,
                beta,
                b0,
                rho,
                omega,
                delta_phi,
            } => TurbulenceModel::Malaga {
                alpha,
                beta,
                b0,
                rho,
                omega,
                delta_phi,
            },
            Self::GammaGamma { alpha, beta } => TurbulenceModel::GammaGamma { alpha, beta },
        };
        m.validate().map_err(|e| CliError::field("turbulence", e))?;
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointingConfig {
    pub xi: f64,
    #[serde(default = "one")]
    pub sigma_s: f64,
    #[serde(default)]
    pub s: f64,
    #[serde(default = "one")]
    pub a0: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectionConfig {
    Heterodyne,
    ImDd,
}

impl From<DetectionConfig> for Detection {
    fn from(d: DetectionConfig) -> Self {
        match d {
            DetectionConfig::Heterodyne => Detection::Heterodyne,
            DetectionConfig::ImDd => Detection::ImDd,
        }
    }
}

/// How an SNR value in dB is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SnrAxis {
    /// Electrical SNR μ_r.
    #[default]
    MuRDb,
    /// Average SNR γ̄_r, converted to μ_r through E[I²]/E²[I] for IM/DD.
    AverageSnrDb,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnrConfig {
    #[serde(default)]
    pub axis: SnrAxis,
    pub db: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct McConfig {
    pub n_samples: Option<u64>,
    pub seed: Option<u64>,
    pub batch: Option<u64>,
}

pub const DEFAULT_MC_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_MC_BATCH: u64 = 10_000;

impl McConfig {
    pub fn plan(&self, scenario: LinkScenario, seed_override: Option<u64>) -> Result<SimulationPlan, CliError> {
        let n = self.n_samples.unwrap_or(DEFAULT_MC_SAMPLES);
        let batch = self.batch.unwrap_or(if n.is_multiple_of(DEFAULT_MC_BATCH) { DEFAULT_MC_BATCH } else { n });
        let seed = seed_override.or(self.seed).unwrap_or(0);
        SimulationPlan::new(scenario, n, seed, batch).map_err(|e| CliError::field("sweep.mc", e))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub axis: SnrAxis,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub engines: Vec<String>,
    #[serde(default = "default_units")]
    pub units: String,
    #[serde(default)]
    pub mc: McConfig,
}

fn default_units() -> String {
    "nats".to_string()
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub turbulence: TurbulenceConfig,
    #[serde(default)]
    pub pointing: Option<PointingConfig>,
    pub detection: DetectionConfig,
    #[serde(default)]
    pub snr: Option<SnrConfig>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub mc: McConfig,
}

/// A validated scenario with every field resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioTemplate {
    pub turbulence: TurbulenceModel,
    pub pointing: PointingErrorParams,
    pub detection: Detection,
}

impl ScenarioTemplate {
    /// Scenario at the given SNR, converting average SNR to μ_r when needed.
    pub fn at(&self, axis: SnrAxis, db: f64) -> Result<LinkScenario, CliError> {
        let base = LinkScenario::new(self.turbulence, self.pointing, self.detection, 1.0)
            .map_err(|e| CliError::field("scenario", e))?;
        let mu_r = match axis {
            SnrAxis::MuRDb => db_to_linear(db),
            SnrAxis::AverageSnrDb => average_to_electrical_snr(&base, db_to_linear(db))?,
        };
        base.at_mu_r(mu_r).map_err(|e| CliError::field("snr", e))
    }
}

/// Validated sweep specification.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub template: ScenarioTemplate,
    pub axis: SnrAxis,
    pub grid_db: Vec<f64>,
    pub engines: Vec<Method>,
    pub units: Units,
    pub mc: McConfig,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_json(&text)
    }

    pub fn template(&self) -> Result<ScenarioTemplate, CliError> {
        let turbulence = self.turbulence.build()?;
        let pointing = match self.pointing {
            None => PointingErrorParams::none(),
            Some(p) => PointingErrorParams::new(p.xi, p.sigma_s, p.s, p.a0).map_err(|e| CliError::field("pointing", e))?,
        };
        Ok(ScenarioTemplate {
            turbulence,
            pointing,
            detection: self.detection.into(),
        })
    }

    /// Scenario at the configured `snr` point.
    pub fn point_scenario(&self) -> Result<LinkScenario, CliError> {
        let snr = self.snr.ok_or_else(|| CliError::Config {
            location: "snr".to_string(),
            message: "a point evaluation needs an `snr` entry".to_string(),
        })?;
        self.template()?.at(snr.axis, snr.db)
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec, CliError> {
        let sweep = self.sweep.as_ref().ok_or_else(|| CliError::Config {
            location: "sweep".to_string(),
            message: "a sweep needs a `sweep` entry".to_string(),
        })?;
        let template = self.template()?;
        let bad = |field: &str, message: &str| CliError::Config {
            location: format!("sweep.{field}"),
            message: message.to_string(),
        };
        if sweep.step.is_nan() || sweep.step <= 0.0 || sweep.step.is_infinite() {
            return Err(bad("step", "must be positive"));
        }
        if sweep.start.is_nan() || sweep.start >= sweep.stop || !sweep.stop.is_finite() {
            return Err(bad("stop", "must be finite and greater than start"));
        }
        if sweep.engines.is_empty() {
            return Err(bad("engines", "at least one engine is required"));
        }
        let mut engines = Vec::new();
        for name in &sweep.engines {
            let method: Method = name
                .parse()
                .map_err(|_| bad("engines", &format!("unknown engine `{name}`")))?;
            check_engine(method, &template).map_err(|m| bad("engines", &m))?;
            if !engines.contains(&method) {
                engines.push(method);
            }
        }
        engines.sort_by_key(|m| m.as_str());
        let units: Units = sweep.units.parse().map_err(|_| bad("units", "expected `nats` or `bits`"))?;
        let steps = ((sweep.stop - sweep.start) / sweep.step + 1e-9).floor() as usize;
        let grid_db = (0..=steps).map(|i| sweep.start + i as f64 * sweep.step).collect();
        let mut mc = self.mc;
        mc.n_samples = sweep.mc.n_samples.or(mc.n_samples);
        mc.seed = sweep.mc.seed.or(mc.seed);
        mc.batch = sweep.mc.batch.or(mc.batch);
        Ok(SweepSpec {
            template,
            axis: sweep.axis,
            grid_db,
            engines,
            units,
            mc,
        })
    }
}

/// Scenario-level compatibility of an engine, independent of SNR.
pub fn check_engine(method: Method, t: &ScenarioTemplate) -> Result<(), String> {
    let zero_bs = t.pointing.is_zero_boresight();
    match method {
        Method::GaussHermite => {
            if !matches!(t.turbulence, TurbulenceModel::Lognormal { .. }) || !zero_bs {
                return Err("gauss_hermite needs lognormal turbulence with s = 0".to_string());
            }
        }
        Method::MeijerExpansion => {
            let family = matches!(t.turbulence, TurbulenceModel::Malaga { .. } | TurbulenceModel::GammaGamma { .. });
            if !family || !zero_bs {
                return Err("meijer_expansion needs malaga or gamma_gamma turbulence with s = 0".to_string());
            }
        }
        Method::HighSnr | Method::LowSnr | Method::MonteCarlo => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const RLN: &str = r#"{
        "turbulence": { "model": "rician_lognormal", "k": 5.0, "sigma": 0.35 },
        "pointing": { "xi": 1.1, "sigma_s": 3.0, "s": 3.0 },
        "detection": "im_dd",
        "snr": { "axis": "average_snr_db", "db": 30.0 },
        "sweep": { "start": 0, "stop": 40, "step": 10, "engines": ["monte_carlo", "high_snr"] }
    }"#;

    #[test]
    fn parses_and_resolves_defaults() {
        let cfg = Config::from_json(RLN).unwrap();
        let t = cfg.template().unwrap();
        assert_eq!(t.detection, Detection::ImDd);
        assert_eq!(t.pointing.a0, 1.0);
        match t.turbulence {
            TurbulenceModel::RicianLognormal { omega, lambda, .. } => {
                assert_eq!(omega, 1.0);
                assert!((lambda + 0.35 * 0.35 / 2.0).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        let spec = cfg.sweep_spec().unwrap();
        assert_eq!(spec.grid_db, vec![0.0, 10.0, 20.0, 30.0, 40.0]);
        assert_eq!(spec.engines, vec![Method::HighSnr, Method::MonteCarlo]);
        assert_eq!(spec.units, Units::Nats);
    }

    #[test]
    fn average_snr_axis_converts_for_im_dd() {
        let cfg = Config::from_json(RLN).unwrap();
        let sc = cfg.point_scenario().unwrap();
        assert!(sc.mu_r < 1000.0 && sc.mu_r > 100.0, "{}", sc.mu_r);
    }

    #[test]
    fn rejects_bad_input_with_location() {
        let err = Config::from_json(&RLN.replace("\"k\": 5.0", "\"k\": 5.0, \"kk\": 1")).unwrap_err();
        assert!(matches!(err, CliError::Config { ref location, .. } if location.starts_with("line 2")), "{err}");

        let empty = Config::from_json(&RLN.replace("[\"monte_carlo\", \"high_snr\"]", "[]")).unwrap();
        let err = empty.sweep_spec().unwrap_err();
        assert!(err.to_string().contains("sweep.engines"), "{err}");

        let gh = Config::from_json(&RLN.replace("\"high_snr\"", "\"gauss_hermite\"")).unwrap();
        assert!(gh.sweep_spec().unwrap_err().to_string().contains("gauss_hermite"));

        let sigma = Config::from_json(&RLN.replace("\"sigma\": 0.35", "\"sigma\": -1")).unwrap();
        let err = sigma.template().unwrap_err();
        assert!(err.to_string().contains("turbulence") && err.to_string().contains("sigma"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }
}
