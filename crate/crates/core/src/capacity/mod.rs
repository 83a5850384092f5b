//! Ergodic-capacity engines.
//!
//! All values are in nats per channel use; [`CapacityEstimate::bits`]
//! converts.

mod asymptotes;
mod gauss_hermite;
mod meijer;
mod special_cases;

use std::fmt;
use std::str::FromStr;

pub use asymptotes::{high_snr_asymptote, log_moment_slope, low_snr_asymptote};
pub use gauss_hermite::{ln_capacity_gauss_hermite, DEFAULT_HERMITE_POINTS};
pub use meijer::{malaga_meijer_expansion_asymptote, meijer_expansion_terms, ExpansionTerm};
pub use special_cases::{special_case_asymptote, TableColumn, TableRow};

/// Which engine produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    GaussHermite,
    HighSnr,
    LowSnr,
    MeijerExpansion,
    MonteCarlo,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::GaussHermite,
        Method::HighSnr,
        Method::LowSnr,
        Method::MeijerExpansion,
        Method::MonteCarlo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::GaussHermite => "gauss_hermite",
            Method::HighSnr => "high_snr",
            Method::LowSnr => "low_snr",
            Method::MeijerExpansion => "meijer_expansion",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown engine `{s}`"))
    }
}

/// Unit of information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

impl Units {
    pub fn as_str(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }

    /// Converts a value in nats into this unit.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

impl FromStr for Units {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nats" => Ok(Units::Nats),
            "bits" => Ok(Units::Bits),
            other => Err(format!("unknown units `{other}` (expected nats or bits)")),
        }
    }
}

/// Ergodic capacity in nats per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    pub value: f64,
    pub method: Method,
    /// Standard error of a Monte-Carlo estimate.
    pub stderr: Option<f64>,
}

impl CapacityEstimate {
    pub(crate) fn exact(value: f64, method: Method) -> Self {
        Self {
            value,
            method,
            stderr: None,
        }
    }

    pub fn nats(&self) -> f64 {
        self.value
    }

    pub fn bits(&self) -> f64 {
        self.value / std::f64::consts::LN_2
    }

    pub fn in_units(&self, units: Units) -> f64 {
        units.from_nats(self.value)
    }
}
