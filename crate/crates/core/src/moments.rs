//! Closed-form SNR moments.
//!
//! With γ = μ_r (I / E[I])^r and I = I_a I_p, every moment factors as
//! E[γ^n] = μ_r^n R_a(rn) R_p(rn), where R(x) = E[I^x] / E[I]^x is the
//! normalized irradiance moment of each factor. All ratios are assembled in
//! log-space.

use crate::channel::{LinkScenario, PointingErrorParams, TurbulenceModel};
use crate::error::{Error, Result};
use crate::specfun::{binomial, kummer_b1_unchecked, ln_gamma_pos};

/// Rician K factors above this use the large-K expansion of ₁F₁.
const LARGE_K_FACTOR: f64 = 200.0;

/// E[I_p] for the pointing-error factor.
pub fn pointing_mean(p: &PointingErrorParams) -> f64 {
    if !p.has_pointing_error() {
        return p.a0;
    }
    let xi2 = p.xi2();
    p.a0 * xi2 / (xi2 + 1.0) * (-p.boresight_strength() / (xi2 + 1.0)).exp()
}

/// E[I_a] for the turbulence factor.
pub fn turbulence_mean(m: &TurbulenceModel) -> f64 {
    match *m {
        TurbulenceModel::Lognormal { sigma, lambda } => (lambda + 0.5 * sigma * sigma).exp(),
        TurbulenceModel::RicianLognormal {
            omega,
            sigma,
            lambda,
            ..
        } => omega * (lambda + 0.5 * sigma * sigma).exp(),
        TurbulenceModel::Malaga { .. } => m.malaga_g() + m.malaga_omega_prime(),
        TurbulenceModel::GammaGamma { .. } => 1.0,
    }
}

/// ln(E[I_p^x] / E[I_p]^x) for x > -ξ².
pub fn ln_pointing_moment_ratio(p: &PointingErrorParams, x: f64) -> f64 {
    if !p.has_pointing_error() {
        return 0.0;
    }
    let xi2 = p.xi2();
    let inv = 1.0 / xi2;
    x * inv.ln_1p() - (x * inv).ln_1p() + x * p.boresight_strength() * (x - 1.0) / ((xi2 + 1.0) * (xi2 + x))
}

/// Binomial mixture weights w_m (m = 1..β) of the Málaga law, written as a
/// Gamma(α) × Σ w_m Gamma(m) mixture. They sum to one.
pub(crate) fn malaga_weights(m: &TurbulenceModel) -> Vec<f64> {
    let TurbulenceModel::Malaga { beta, .. } = *m else {
        return Vec::new();
    };
    let g = m.malaga_g();
    let op = m.malaga_omega_prime();
    let bf = f64::from(beta);
    if g == 0.0 {
        let mut w = vec![0.0; beta as usize];
        w[beta as usize - 1] = 1.0;
        return w;
    }
    if op == 0.0 {
        let mut w = vec![0.0; beta as usize];
        w[0] = 1.0;
        return w;
    }
    let ln_gb = (g * bf).ln();
    let ln_op = op.ln();
    let ln_den = (g * bf + op).ln();
    (1..=beta)
        .map(|mm| {
            let mf = f64::from(mm);
            (binomial(beta - 1, mm - 1).ln() + (bf - mf) * ln_gb + (mf - 1.0) * ln_op - (bf - 1.0) * ln_den).exp()
        })
        .collect()
}

/// B = αβ(g + Ω') / (gβ + Ω') for Málaga, αβ for Gamma-Gamma.
pub(crate) fn malaga_b(m: &TurbulenceModel) -> f64 {
    match *m {
        TurbulenceModel::Malaga { alpha, beta, .. } => {
            let g = m.malaga_g();
            let op = m.malaga_omega_prime();
            let bf = f64::from(beta);
            alpha * bf * (g + op) / (g * bf + op)
        }
        TurbulenceModel::GammaGamma { alpha, beta } => alpha * beta,
        _ => f64::NAN,
    }
}

fn ln_rician_power_ratio(k: f64, x: f64) -> f64 {
    let kk = k * k;
    if kk <= LARGE_K_FACTOR {
        ln_gamma_pos(x + 1.0) + kummer_b1_unchecked(-x, -kk).ln() - x * (kk + 1.0).ln()
    } else {
        // Γ(1+x)₁F₁(-x;1;-K) ~ K^x Σ_j ((-x)_j)² / (j! K^j)
        let mut term = 1.0;
        let mut sum = 1.0;
        for j in 0..500 {
            let jf = f64::from(j);
            term *= (jf - x) * (jf - x) / ((jf + 1.0) * kk);
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        x * (kk / (kk + 1.0)).ln() + sum.ln()
    }
}

/// ln(E[I_a^x] / E[I_a]^x) for x ≥ 0.
pub fn ln_turbulence_moment_ratio(m: &TurbulenceModel, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(crate::error::domain("ln_turbulence_moment_ratio", x, "0 <= x < inf"));
    }
    let ln_ratio = |sigma: f64| 0.5 * sigma * sigma * x * (x - 1.0);
    let value = match *m {
        TurbulenceModel::Lognormal { sigma, .. } => ln_ratio(sigma),
        TurbulenceModel::RicianLognormal { k, sigma, .. } => ln_ratio(sigma) + ln_rician_power_ratio(k, x),
        TurbulenceModel::Malaga { alpha, .. } => {
            let weights = malaga_weights(m);
            let mix: f64 = weights
                .iter()
                .enumerate()
                .filter(|(_, w)| **w > 0.0)
                .map(|(i, w)| {
                    let mf = (i + 1) as f64;
                    w * (ln_gamma_pos(x + mf) - ln_gamma_pos(mf)).exp()
                })
                .sum();
            ln_gamma_pos(x + alpha) - ln_gamma_pos(alpha) + mix.ln() - x * malaga_b(m).ln()
        }
        TurbulenceModel::GammaGamma { alpha, beta } => {
            ln_gamma_pos(x + alpha) + ln_gamma_pos(x + beta)
                - ln_gamma_pos(alpha)
                - ln_gamma_pos(beta)
                - x * (alpha * beta).ln()
        }
    };
    Ok(value)
}

/// ln(E[I^x] / E[I]^x) for the composite irradiance I = I_a I_p.
pub fn ln_irradiance_moment_ratio(m: &TurbulenceModel, p: &PointingErrorParams, x: f64) -> Result<f64> {
    Ok(ln_turbulence_moment_ratio(m, x)? + ln_pointing_moment_ratio(p, x))
}

/// An order-n moment request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuery {
    pub scenario: LinkScenario,
    pub n: f64,
}

impl MomentQuery {
    pub fn evaluate(&self) -> Result<f64> {
        moment(&self.scenario, self.n)
    }
}

/// E[γ^n] for the scenario's SNR. Non-integer orders are allowed.
pub fn moment(sc: &LinkScenario, n: f64) -> Result<f64> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(crate::error::domain("moment", n, "n >= 0"));
    }
    if n == 0.0 {
        return Ok(1.0);
    }
    let x = sc.detection.rf() * n;
    let log_value = n * sc.mu_r.ln() + ln_irradiance_moment_ratio(&sc.turbulence, &sc.pointing, x)?;
    let value = log_value.exp();
    if !value.is_finite() || value == 0.0 {
        return Err(Error::Overflow { log_value });
    }
    Ok(value)
}

/// n-th order amount of fading E[γ^n] / E[γ]^n - 1.
pub fn amount_of_fading(sc: &LinkScenario, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(crate::error::domain("amount_of_fading", 0.0, "n >= 1"));
    }
    let nf = f64::from(n);
    let r = sc.detection.rf();
    let ln_num = ln_irradiance_moment_ratio(&sc.turbulence, &sc.pointing, r * nf)?;
    let ln_den = nf * ln_irradiance_moment_ratio(&sc.turbulence, &sc.pointing, r)?;
    Ok((ln_num - ln_den).exp_m1())
}
