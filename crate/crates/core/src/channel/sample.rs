use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use super::params::{LinkScenario, PointingErrorParams, TurbulenceModel};
use crate::error::{Error, Result};
use crate::moments::{pointing_mean, turbulence_mean};

fn gamma_dist(shape: f64, scale: f64) -> Result<Gamma<f64>> {
    Gamma::new(shape, scale).map_err(|_| Error::InvalidParameter {
        field: "shape",
        value: shape,
        reason: "gamma variate needs positive shape and scale",
    })
}

/// Pointing-loss draw: R² is noncentral chi-square with two degrees of
/// freedom (noncentrality s², per-axis variance σ_s²) and
/// I_p = A₀ exp(-R²/(2σ_s²ξ²)).
pub fn sample_pointing<R: Rng + ?Sized>(p: &PointingErrorParams, rng: &mut R) -> f64 {
    let x = p.s + p.sigma_s * rng.sample::<f64, _>(StandardNormal);
    let y = p.sigma_s * rng.sample::<f64, _>(StandardNormal);
    let r2 = x * x + y * y;
    p.a0 * (-r2 / (2.0 * p.sigma_s * p.sigma_s * p.xi2())).exp()
}

/// Pre-built sampler for one turbulence law.
#[derive(Debug, Clone)]
pub struct TurbulenceSampler {
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Lognormal {
        sigma: f64,
        lambda: f64,
    },
    RicianLognormal {
        sigma: f64,
        lambda: f64,
        los: f64,
        scatter_sd: f64,
    },
    Malaga {
        large_scale: Gamma<f64>,
        shadowing: Option<Gamma<f64>>,
        scatter_sd: f64,
    },
    GammaGamma {
        a: Gamma<f64>,
        b: Gamma<f64>,
    },
}

impl TurbulenceSampler {
    pub fn new(m: &TurbulenceModel) -> Result<Self> {
        m.validate()?;
        let kind = match *m {
            TurbulenceModel::Lognormal { sigma, lambda } => Kind::Lognormal { sigma, lambda },
            TurbulenceModel::RicianLognormal {
                k,
                omega,
                sigma,
                lambda,
            } => {
                let kk = k * k;
                Kind::RicianLognormal {
                    sigma,
                    lambda,
                    los: (kk * omega / (kk + 1.0)).sqrt(),
                    scatter_sd: (omega / (2.0 * (kk + 1.0))).sqrt(),
                }
            }
            TurbulenceModel::Malaga { alpha, beta, .. } => {
                let bf = f64::from(beta);
                let op = m.malaga_omega_prime();
                Kind::Malaga {
                    large_scale: gamma_dist(alpha, 1.0 / alpha)?,
                    shadowing: if op > 0.0 { Some(gamma_dist(bf, op / bf)?) } else { None },
                    scatter_sd: (0.5 * m.malaga_g()).sqrt(),
                }
            }
            TurbulenceModel::GammaGamma { alpha, beta } => Kind::GammaGamma {
                a: gamma_dist(alpha, 1.0 / alpha)?,
                b: gamma_dist(beta, 1.0 / beta)?,
            },
        };
        Ok(Self { kind })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            Kind::Lognormal { sigma, lambda } => (lambda + sigma * rng.sample::<f64, _>(StandardNormal)).exp(),
            Kind::RicianLognormal {
                sigma,
                lambda,
                los,
                scatter_sd,
            } => {
                let ln = (lambda + sigma * rng.sample::<f64, _>(StandardNormal)).exp();
                let re = los + scatter_sd * rng.sample::<f64, _>(StandardNormal);
                let im = scatter_sd * rng.sample::<f64, _>(StandardNormal);
                ln * (re * re + im * im)
            }
            Kind::Malaga {
                large_scale,
                shadowing,
                scatter_sd,
            } => {
                let x = large_scale.sample(rng);
                let amp = shadowing.as_ref().map_or(0.0, |g| g.sample(rng).sqrt());
                let sd = *scatter_sd;
                let phase = rng.gen::<f64>() * 2.0 * PI;
                let re = amp * phase.cos() + sd * rng.sample::<f64, _>(StandardNormal);
                let im = amp * phase.sin() + sd * rng.sample::<f64, _>(StandardNormal);
                x * (re * re + im * im)
            }
            Kind::GammaGamma { a, b } => a.sample(rng) * b.sample(rng),
        }
    }
}

/// One turbulence draw. Builds the sampler on every call; prefer
/// [`TurbulenceSampler`] in loops.
pub fn sample_turbulence<R: Rng + ?Sized>(m: &TurbulenceModel, rng: &mut R) -> Result<f64> {
    Ok(TurbulenceSampler::new(m)?.sample(rng))
}

/// Draws of the instantaneous SNR γ = μ_r (I_a I_p / (E[I_a] E[I_p]))^r.
#[derive(Debug, Clone)]
pub struct SnrSampler {
    turbulence: TurbulenceSampler,
    pointing: PointingErrorParams,
    scale: f64,
    mu_r: f64,
    r: i32,
}

impl SnrSampler {
    pub fn new(sc: &LinkScenario) -> Result<Self> {
        sc.validate()?;
        Ok(Self {
            turbulence: TurbulenceSampler::new(&sc.turbulence)?,
            pointing: sc.pointing,
            scale: 1.0 / (turbulence_mean(&sc.turbulence) * pointing_mean(&sc.pointing)),
            mu_r: sc.mu_r,
            r: sc.r() as i32,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let ia = self.turbulence.sample(rng);
        let ip = if self.pointing.has_pointing_error() {
            sample_pointing(&self.pointing, rng)
        } else {
            self.pointing.a0
        };
        self.mu_r * (ia * ip * self.scale).powi(self.r)
    }
}

/// One SNR draw. Builds the sampler on every call; prefer [`SnrSampler`]
/// in loops.
pub fn snr_sample<R: Rng + ?Sized>(sc: &LinkScenario, rng: &mut R) -> Result<f64> {
    Ok(SnrSampler::new(sc)?.sample(rng))
}
