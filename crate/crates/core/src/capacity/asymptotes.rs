use super::{CapacityEstimate, Method};
use crate::channel::{LinkScenario, PointingErrorParams, TurbulenceModel};
use crate::error::Result;
use crate::moments::{malaga_b, malaga_weights, moment};
use crate::specfun::{digamma_pos, exp_integral_e1};

fn pointing_slope(p: &PointingErrorParams) -> f64 {
    if !p.has_pointing_error() {
        return 0.0;
    }
    let xi2 = p.xi2();
    // 1/ξ² + ln(ξ²/(ξ²+1)) written without cancellation
    let inv = 1.0 / xi2;
    -(inv - inv.ln_1p() + p.boresight_strength() / (xi2 * (xi2 + 1.0)))
}

fn turbulence_slope(m: &TurbulenceModel) -> Result<f64> {
    Ok(match *m {
        TurbulenceModel::Lognormal { sigma, .. } => -0.5 * sigma * sigma,
        TurbulenceModel::RicianLognormal { k, sigma, .. } => {
            let kk = k * k;
            -0.5 * sigma * sigma - (1.0 / kk).ln_1p() + exp_integral_e1(kk)?
        }
        TurbulenceModel::Malaga { alpha, .. } => {
            let mix: f64 = malaga_weights(m)
                .iter()
                .enumerate()
                .map(|(i, w)| w * digamma_pos((i + 1) as f64))
                .sum();
            digamma_pos(alpha) + mix - malaga_b(m).ln()
        }
        TurbulenceModel::GammaGamma { alpha, beta } => digamma_pos(alpha) + digamma_pos(beta) - (alpha * beta).ln(),
    })
}

/// d/dx ln(E[I^x]/E[I]^x) at x = 0.
pub fn log_moment_slope(m: &TurbulenceModel, p: &PointingErrorParams) -> Result<f64> {
    m.validate()?;
    p.validate()?;
    Ok(turbulence_slope(m)? + pointing_slope(p))
}

/// High-SNR asymptote ln(cμ_r) + r · d/dx ln R(x)|₀, a lower bound that
/// becomes tight as μ_r grows.
pub fn high_snr_asymptote(sc: &LinkScenario) -> Result<CapacityEstimate> {
    sc.validate()?;
    let d = sc.detection;
    let value = (d.c() * sc.mu_r).ln() + d.rf() * log_moment_slope(&sc.turbulence, &sc.pointing)?;
    Ok(CapacityEstimate::exact(value, Method::HighSnr))
}

/// Low-SNR asymptote c · E[γ].
pub fn low_snr_asymptote(sc: &LinkScenario) -> Result<CapacityEstimate> {
    let value = sc.detection.c() * moment(sc, 1.0)?;
    Ok(CapacityEstimate::exact(value, Method::LowSnr))
}
