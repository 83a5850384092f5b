//! Channel parameters, densities and random-variate generators.

mod params;
mod pdf;
mod sample;

pub use params::{db_to_linear, linear_to_db, Detection, LinkScenario, PointingErrorParams, TurbulenceModel};
pub use pdf::{composite_pdf, malaga_pdf_coefficients, pointing_pdf, turbulence_pdf};
pub use sample::{sample_pointing, sample_turbulence, snr_sample, SnrSampler, TurbulenceSampler};

use crate::error::{domain, Result};
use crate::moments::ln_irradiance_moment_ratio;

/// E²[I] / E[I²] for the scenario's composite irradiance.
fn electrical_factor(sc: &LinkScenario) -> Result<f64> {
    Ok((-ln_irradiance_moment_ratio(&sc.turbulence, &sc.pointing, 2.0)?).exp())
}

/// Converts the average SNR γ̄_r into the electrical SNR μ_r.
///
/// Identity for heterodyne detection; μ₂ = γ̄₂ E²[I] / E[I²] for IM/DD.
pub fn average_to_electrical_snr(sc: &LinkScenario, gamma_bar: f64) -> Result<f64> {
    if !(gamma_bar > 0.0) || !gamma_bar.is_finite() {
        return Err(domain("average_to_electrical_snr", gamma_bar, "gamma_bar > 0"));
    }
    match sc.detection {
        Detection::Heterodyne => Ok(gamma_bar),
        Detection::ImDd => Ok(gamma_bar * electrical_factor(sc)?),
    }
}

/// Inverse of [`average_to_electrical_snr`].
pub fn electrical_to_average_snr(sc: &LinkScenario, mu_r: f64) -> Result<f64> {
    if !(mu_r > 0.0) || !mu_r.is_finite() {
        return Err(domain("electrical_to_average_snr", mu_r, "mu_r > 0"));
    }
    match sc.detection {
        Detection::Heterodyne => Ok(mu_r),
        Detection::ImDd => Ok(mu_r / electrical_factor(sc)?),
    }
}
