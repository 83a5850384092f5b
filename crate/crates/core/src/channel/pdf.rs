use std::f64::consts::{LN_2, PI};

use super::params::{PointingErrorParams, TurbulenceModel};
use crate::error::{domain, Result};
use crate::moments::{malaga_weights, turbulence_mean};
use crate::specfun::quadrature::integrate_with_breaks;
use crate::specfun::{bessel_k_nu, erfc, ln_bessel_i0, ln_gamma_pos};

const PDF_REL_TOL: f64 = 1e-9;
/// Densities below this are indistinguishable from subnormal round-off.
const PDF_ABS_TOL: f64 = 1e-280;

/// Density of the pointing-loss factor I_p on (0, A₀].
///
/// The nonzero-boresight law is the Rice law of the radial displacement
/// mapped through I_p = A₀ exp(-R²/(2σ_s²ξ²)). With s = 0 it collapses to
/// ξ² I_p^{ξ²-1} / A₀^{ξ²}.
pub fn pointing_pdf(p: &PointingErrorParams, ip: f64) -> Result<f64> {
    p.validate()?;
    if !(ip > 0.0 && ip <= p.a0) {
        return Err(domain("pointing_pdf", ip, "0 < ip <= a0"));
    }
    if !p.has_pointing_error() {
        return Err(domain("pointing_pdf", p.xi, "finite xi (no density without pointing error)"));
    }
    Ok(ln_pointing_pdf(p, ip).exp())
}

fn ln_pointing_pdf(p: &PointingErrorParams, ip: f64) -> f64 {
    let xi2 = p.xi2();
    let ln_ratio = (ip / p.a0).ln().min(0.0);
    let base = xi2.ln() + (xi2 - 1.0) * ln_ratio - p.a0.ln();
    if p.s == 0.0 {
        return base;
    }
    let radial = (-2.0 * xi2 * ln_ratio).sqrt();
    base - p.boresight_strength() + ln_bessel_i0(p.s / p.sigma_s * radial)
}

fn ln_lognormal_pdf(sigma: f64, lambda: f64, x: f64) -> f64 {
    let u = (x.ln() - lambda) / sigma;
    -0.5 * u * u - x.ln() - sigma.ln() - 0.5 * (2.0 * PI).ln()
}

/// Rician power density with unit-free parameter k and mean Ω.
fn ln_rician_power_pdf(k: f64, omega: f64, x: f64) -> f64 {
    let kk = k * k;
    let scale = (kk + 1.0) / omega;
    scale.ln() - kk - scale * x + ln_bessel_i0(2.0 * k * (scale * x).sqrt())
}

/// Product of a Gamma(α, mean 1) variate with a Gamma(m, scale θ) variate.
fn ln_gamma_product_pdf(alpha: f64, m: f64, theta: f64, x: f64) -> f64 {
    let z = alpha * x / theta;
    let kv = match bessel_k_nu(alpha - m, 2.0 * z.sqrt()) {
        Ok(v) if v > 0.0 => v,
        _ => return f64::NEG_INFINITY,
    };
    LN_2 - ln_gamma_pos(alpha) - ln_gamma_pos(m) + 0.5 * (alpha + m) * z.ln() + kv.ln() - x.ln()
}

/// Interval in ln I_a outside which the turbulence density is negligible,
/// together with a breakpoint near the bulk.
pub(crate) fn log_support(m: &TurbulenceModel) -> (f64, f64, f64) {
    match *m {
        TurbulenceModel::Lognormal { sigma, lambda } => (lambda - 13.0 * sigma, lambda + 13.0 * sigma, lambda),
        TurbulenceModel::RicianLognormal {
            k,
            omega,
            sigma,
            lambda,
        } => {
            let (lo, hi, _) = rician_log_support(k, omega);
            (lo + lambda - 13.0 * sigma, hi + lambda + 13.0 * sigma, lambda + omega.ln())
        }
        TurbulenceModel::Malaga { alpha, beta, .. } => {
            let w = malaga_weights(m);
            let m_min = w.iter().position(|&x| x > 0.0).map_or(f64::from(beta), |i| (i + 1) as f64);
            let theta = (m.malaga_g() * f64::from(beta) + m.malaga_omega_prime()) / f64::from(beta);
            gamma_product_support(alpha, m_min, theta, turbulence_mean(m))
        }
        TurbulenceModel::GammaGamma { alpha, beta } => gamma_product_support(alpha, beta, 1.0 / beta, 1.0),
    }
}

fn rician_log_support(k: f64, omega: f64) -> (f64, f64, f64) {
    let hi = omega / (k * k + 1.0) * (k + 40.0).powi(2);
    (omega.ln() - 40.0, hi.ln(), omega.ln())
}

fn gamma_product_support(alpha: f64, m: f64, theta: f64, mean: f64) -> (f64, f64, f64) {
    let kappa = alpha.min(m);
    let hi = 160_000.0 * theta / alpha;
    (mean.ln() - 40.0 / kappa, hi.ln(), mean.ln())
}

/// Density of the turbulence irradiance I_a.
///
/// The Rician-lognormal law has no closed form; it is returned as the
/// one-dimensional mixture ∫ f_R(I_a/z) f_L(z) / z dz.
pub fn turbulence_pdf(m: &TurbulenceModel, ia: f64) -> Result<f64> {
    m.validate()?;
    if !(ia > 0.0) || !ia.is_finite() {
        return Err(domain("turbulence_pdf", ia, "ia > 0"));
    }
    turbulence_pdf_unchecked(m, ia)
}

fn turbulence_pdf_unchecked(m: &TurbulenceModel, ia: f64) -> Result<f64> {
    Ok(match *m {
        TurbulenceModel::Lognormal { sigma, lambda } => ln_lognormal_pdf(sigma, lambda, ia).exp(),
        TurbulenceModel::RicianLognormal {
            k,
            omega,
            sigma,
            lambda,
        } => {
            // z = e^u, f_L(z) dz = φ(u) du
            let mut integrand = |u: f64| {
                let t = (u - lambda) / sigma;
                let phi = (-0.5 * t * t).exp() / (sigma * (2.0 * PI).sqrt());
                let x = ia * (-u).exp();
                (ln_rician_power_pdf(k, omega, x) - u).exp() * phi
            };
            let breaks: Vec<f64> = (-13..=13).step_by(2).map(|j| lambda + f64::from(j) * sigma).collect();
            integrate_with_breaks(&mut integrand, &breaks, PDF_REL_TOL, PDF_ABS_TOL)?.value
        }
        TurbulenceModel::Malaga { alpha, beta, .. } => {
            let bf = f64::from(beta);
            let theta = (m.malaga_g() * bf + m.malaga_omega_prime()) / bf;
            malaga_weights(m)
                .iter()
                .enumerate()
                .filter(|(_, &w)| w > 0.0)
                .map(|(i, &w)| w * ln_gamma_product_pdf(alpha, (i + 1) as f64, theta, ia).exp())
                .sum()
        }
        TurbulenceModel::GammaGamma { alpha, beta } => ln_gamma_product_pdf(alpha, beta, 1.0 / beta, ia).exp(),
    })
}

/// The Málaga normalizing constant A and the coefficients a_m (m = 1..β)
/// in f(I) = A Σ a_m I^{(α+m)/2-1} K_{α-m}(2√(αβI/(gβ+Ω'))), in log form.
///
/// Requires g > 0 and Ω' > 0.
pub fn malaga_pdf_coefficients(m: &TurbulenceModel) -> Result<(f64, Vec<f64>)> {
    let TurbulenceModel::Malaga { alpha, beta, .. } = *m else {
        return Err(domain("malaga_pdf_coefficients", f64::NAN, "a Malaga model"));
    };
    let g = m.malaga_g();
    let op = m.malaga_omega_prime();
    if !(g > 0.0) {
        return Err(domain("malaga_pdf_coefficients", g, "g > 0"));
    }
    if !(op > 0.0) {
        return Err(domain("malaga_pdf_coefficients", op, "omega' > 0"));
    }
    let bf = f64::from(beta);
    let gb = g * bf;
    let ln_a = LN_2 + 0.5 * alpha * alpha.ln() - (1.0 + 0.5 * alpha) * g.ln() - ln_gamma_pos(alpha)
        + (bf + 0.5 * alpha) * (gb / (gb + op)).ln();
    let ln_am = (1..=beta)
        .map(|mm| {
            let mf = f64::from(mm);
            crate::specfun::binomial(beta - 1, mm - 1).ln() + (1.0 - 0.5 * mf) * (gb + op).ln()
                - ln_gamma_pos(mf)
                + (mf - 1.0) * (op / g).ln()
                + 0.5 * mf * (alpha / bf).ln()
        })
        .collect();
    Ok((ln_a, ln_am))
}

/// Density of the received irradiance I = I_a I_p (path loss normalized to 1).
///
/// The lognormal zero-boresight case uses its erfc closed form; every other
/// combination integrates the conditioning integral ∫ f_a(z) f_p(I/z)/z dz.
pub fn composite_pdf(m: &TurbulenceModel, p: &PointingErrorParams, i: f64) -> Result<f64> {
    m.validate()?;
    p.validate()?;
    if !(i > 0.0) || !i.is_finite() {
        return Err(domain("composite_pdf", i, "i > 0"));
    }
    composite_unchecked(m, p, i)
}

fn composite_unchecked(m: &TurbulenceModel, p: &PointingErrorParams, i: f64) -> Result<f64> {
    if !p.has_pointing_error() {
        return Ok(turbulence_pdf_unchecked(m, i / p.a0)? / p.a0);
    }
    match *m {
        TurbulenceModel::Lognormal { sigma, lambda } if p.s == 0.0 => Ok(lognormal_zero_boresight_pdf(sigma, lambda, p, i)),
        TurbulenceModel::RicianLognormal {
            k,
            omega,
            sigma,
            lambda,
        } => {
            // I = I_R · (I_L I_p): condition on the Rician power.
            let inner = TurbulenceModel::Lognormal { sigma, lambda };
            let (lo, hi, mid) = rician_log_support(k, omega);
            let mut failure = None;
            let mut integrand = |v: f64| {
                let fr = (ln_rician_power_pdf(k, omega, v.exp()) + v).exp();
                if fr == 0.0 {
                    return 0.0;
                }
                match composite_unchecked(&inner, p, i * (-v).exp()) {
                    Ok(g) => fr * g * (-v).exp(),
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            };
            let result = integrate_with_breaks(&mut integrand, &[lo, mid - 1.0, mid, mid + 1.0, hi], PDF_REL_TOL, PDF_ABS_TOL);
            if let Some(e) = failure {
                return Err(e);
            }
            Ok(result?.value)
        }
        _ => {
            let (lo, hi, mid) = log_support(m);
            let v0 = (i / p.a0).ln();
            let lo = lo.max(v0);
            if lo >= hi {
                return Ok(0.0);
            }
            let mut breaks = vec![lo];
            for b in [mid - 1.0, mid, mid + 1.0] {
                if b > lo && b < hi {
                    breaks.push(b);
                }
            }
            breaks.push(hi);
            let mut integrand = |v: f64| {
                let z = v.exp();
                let ip = (i / z).min(p.a0);
                let fa = turbulence_pdf_unchecked(m, z).unwrap_or(0.0);
                if fa == 0.0 {
                    return 0.0;
                }
                fa * ln_pointing_pdf(p, ip).exp()
            };
            Ok(integrate_with_breaks(&mut integrand, &breaks, PDF_REL_TOL, PDF_ABS_TOL)?.value)
        }
    }
}

/// Closed-form lognormal × zero-boresight pointing density.
fn lognormal_zero_boresight_pdf(sigma: f64, lambda: f64, p: &PointingErrorParams, i: f64) -> f64 {
    let xi2 = p.xi2();
    let ln_ratio = (i / p.a0).ln();
    let arg = (xi2 * sigma * sigma - lambda + ln_ratio) / (std::f64::consts::SQRT_2 * sigma);
    let tail = erfc(arg);
    if tail == 0.0 {
        return 0.0;
    }
    let ln_f = (0.5 * xi2).ln() - xi2 * p.a0.ln() + (xi2 - 1.0) * i.ln() + xi2 * (0.5 * xi2 * sigma * sigma - lambda)
        + tail.ln();
    ln_f.exp()
}
