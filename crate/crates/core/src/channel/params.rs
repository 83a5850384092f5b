use std::f64::consts::E;
use std::f64::consts::PI;

use crate::error::{Error, Result};

fn invalid(field: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        field,
        value,
        reason,
    }
}

/// Misalignment geometry between beam footprint and detector.
///
/// `xi = f64::INFINITY` describes a link without pointing error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingErrorParams {
    pub xi: f64,
    pub sigma_s: f64,
    pub s: f64,
    pub a0: f64,
}

impl PointingErrorParams {
    pub fn new(xi: f64, sigma_s: f64, s: f64, a0: f64) -> Result<Self> {
        let p = Self { xi, sigma_s, s, a0 };
        p.validate()?;
        Ok(p)
    }

    /// Zero-boresight jitter with unit jitter scale and A₀ = 1.
    pub fn zero_boresight(xi: f64) -> Result<Self> {
        Self::new(xi, 1.0, 0.0, 1.0)
    }

    /// Boresight offset `s` with jitter `sigma_s`, A₀ = 1.
    pub fn boresight(xi: f64, sigma_s: f64, s: f64) -> Result<Self> {
        Self::new(xi, sigma_s, s, 1.0)
    }

    /// Perfect alignment: ξ → ∞.
    pub fn none() -> Self {
        Self {
            xi: f64::INFINITY,
            sigma_s: 1.0,
            s: 0.0,
            a0: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.xi > 0.0) {
            return Err(invalid("xi", self.xi, "must be positive"));
        }
        if !(self.sigma_s > 0.0) || !self.sigma_s.is_finite() {
            return Err(invalid("sigma_s", self.sigma_s, "must be positive and finite"));
        }
        if !(self.s >= 0.0) || !self.s.is_finite() {
            return Err(invalid("s", self.s, "must be non-negative and finite"));
        }
        if !(self.a0 > 0.0 && self.a0 <= 1.0) {
            return Err(invalid("a0", self.a0, "must lie in (0, 1]"));
        }
        Ok(())
    }

    pub fn is_zero_boresight(&self) -> bool {
        self.s == 0.0
    }

    pub fn has_pointing_error(&self) -> bool {
        self.xi.is_finite()
    }

    pub(crate) fn xi2(&self) -> f64 {
        self.xi * self.xi
    }

    /// s² / (2σ_s²), the boresight strength.
    pub(crate) fn boresight_strength(&self) -> f64 {
        let q = self.s / self.sigma_s;
        0.5 * q * q
    }
}

/// Atmospheric turbulence law for the irradiance I_a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TurbulenceModel {
    Lognormal {
        sigma: f64,
        lambda: f64,
    },
    RicianLognormal {
        k: f64,
        omega: f64,
        sigma: f64,
        lambda: f64,
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

impl TurbulenceModel {
    /// Lognormal with the unit-mean log-scale λ = -σ²/2.
    pub fn lognormal(sigma: f64) -> Result<Self> {
        let m = Self::Lognormal {
            sigma,
            lambda: -0.5 * sigma * sigma,
        };
        m.validate()?;
        Ok(m)
    }

    /// Rician-lognormal with Ω = 1 and λ = -σ²/2.
    pub fn rician_lognormal(k: f64, sigma: f64) -> Result<Self> {
        let m = Self::RicianLognormal {
            k,
            omega: 1.0,
            sigma,
            lambda: -0.5 * sigma * sigma,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn malaga(alpha: f64, beta: u32, b0: f64, rho: f64, omega: f64, delta_phi: f64) -> Result<Self> {
        let m = Self::Malaga {
            alpha,
            beta,
            b0,
            rho,
            omega,
            delta_phi,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn gamma_gamma(alpha: f64, beta: f64) -> Result<Self> {
        let m = Self::GammaGamma { alpha, beta };
        m.validate()?;
        Ok(m)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Lognormal { .. } => "lognormal",
            Self::RicianLognormal { .. } => "rician_lognormal",
            Self::Malaga { .. } => "malaga",
            Self::GammaGamma { .. } => "gamma_gamma",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check_sigma = |sigma: f64, lambda: f64| {
            if !(sigma > 0.0 && sigma < 1.0) {
                return Err(invalid("sigma", sigma, "must lie in (0, 1)"));
            }
            if !lambda.is_finite() {
                return Err(invalid("lambda", lambda, "must be finite"));
            }
            Ok(())
        };
        match *self {
            Self::Lognormal { sigma, lambda } => check_sigma(sigma, lambda),
            Self::RicianLognormal {
                k,
                omega,
                sigma,
                lambda,
            } => {
                if !(k > 0.0) || !k.is_finite() {
                    return Err(invalid("k", k, "must be positive and finite"));
                }
                if !(omega > 0.0) || !omega.is_finite() {
                    return Err(invalid("omega", omega, "must be positive and finite"));
                }
                check_sigma(sigma, lambda)
            }
            Self::Malaga {
                alpha,
                beta,
                b0,
                rho,
                omega,
                delta_phi,
            } => {
                if !(alpha > 0.0) || !alpha.is_finite() {
                    return Err(invalid("alpha", alpha, "must be positive and finite"));
                }
                if beta == 0 {
                    return Err(invalid("beta", 0.0, "must be a positive integer"));
                }
                if !(b0 > 0.0) || !b0.is_finite() {
                    return Err(invalid("b0", b0, "must be positive and finite"));
                }
                if !(0.0..=1.0).contains(&rho) {
                    return Err(invalid("rho", rho, "must lie in [0, 1]"));
                }
                if !(omega >= 0.0) || !omega.is_finite() {
                    return Err(invalid("omega", omega, "must be non-negative and finite"));
                }
                if !delta_phi.is_finite() {
                    return Err(invalid("delta_phi", delta_phi, "must be finite"));
                }
                let op = self.malaga_omega_prime();
                if !(op >= 0.0) {
                    return Err(invalid("omega", omega, "coherent power Ω' must be non-negative"));
                }
                if op == 0.0 && self.malaga_g() == 0.0 {
                    return Err(invalid("rho", rho, "g and Ω' cannot both vanish"));
                }
                if op == 0.0 && beta > 1 {
                    return Err(invalid("beta", f64::from(beta), "Ω' = 0 requires beta = 1"));
                }
                Ok(())
            }
            Self::GammaGamma { alpha, beta } => {
                if !(alpha > 0.0) || !alpha.is_finite() {
                    return Err(invalid("alpha", alpha, "must be positive and finite"));
                }
                if !(beta > 0.0) || !beta.is_finite() {
                    return Err(invalid("beta", beta, "must be positive and finite"));
                }
                Ok(())
            }
        }
    }

    /// Off-axis scatter power g = 2 b₀ (1 - ρ); zero for other models.
    pub fn malaga_g(&self) -> f64 {
        match *self {
            Self::Malaga { b0, rho, .. } => 2.0 * b0 * (1.0 - rho),
            _ => 0.0,
        }
    }

    /// Coherent power Ω' = Ω + 2b₀ρ + 2√(2b₀ρΩ) cos Δφ; zero for other models.
    pub fn malaga_omega_prime(&self) -> f64 {
        match *self {
            Self::Malaga {
                b0,
                rho,
                omega,
                delta_phi,
                ..
            } => {
                let raw = omega + 2.0 * b0 * rho + 2.0 * (2.0 * b0 * rho * omega).sqrt() * delta_phi.cos();
                // cos(π/2) is 6e-17, not 0; clamp the resulting round-off.
                if raw.abs() < 1e-15 * (omega + 2.0 * b0 * rho) {
                    0.0
                } else {
                    raw
                }
            }
            _ => 0.0,
        }
    }
}

/// Detection scheme: heterodyne (r = 1) or intensity modulation with
/// direct detection (r = 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detection {
    Heterodyne,
    ImDd,
}

impl Detection {
    pub fn from_r(r: u32) -> Result<Self> {
        match r {
            1 => Ok(Self::Heterodyne),
            2 => Ok(Self::ImDd),
            _ => Err(invalid("r", f64::from(r), "must be 1 (heterodyne) or 2 (IM/DD)")),
        }
    }

    pub fn r(self) -> u32 {
        match self {
            Self::Heterodyne => 1,
            Self::ImDd => 2,
        }
    }

    pub(crate) fn rf(self) -> f64 {
        f64::from(self.r())
    }

    /// Capacity constant c: 1 for heterodyne, e/(2π) for IM/DD.
    pub fn c(self) -> f64 {
        match self {
            Self::Heterodyne => 1.0,
            Self::ImDd => E / (2.0 * PI),
        }
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// A complete link: turbulence, pointing, detection and SNR μ_r
/// (average SNR for r = 1, electrical SNR for r = 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkScenario {
    pub turbulence: TurbulenceModel,
    pub pointing: PointingErrorParams,
    pub detection: Detection,
    pub mu_r: f64,
}

impl LinkScenario {
    pub fn new(
        turbulence: TurbulenceModel,
        pointing: PointingErrorParams,
        detection: Detection,
        mu_r: f64,
    ) -> Result<Self> {
        let sc = Self {
            turbulence,
            pointing,
            detection,
            mu_r,
        };
        sc.validate()?;
        Ok(sc)
    }

    pub fn with_mu_r_db(
        turbulence: TurbulenceModel,
        pointing: PointingErrorParams,
        detection: Detection,
        mu_r_db: f64,
    ) -> Result<Self> {
        Self::new(turbulence, pointing, detection, db_to_linear(mu_r_db))
    }

    pub fn validate(&self) -> Result<()> {
        self.turbulence.validate()?;
        self.pointing.validate()?;
        if !(self.mu_r > 0.0) || !self.mu_r.is_finite() {
            return Err(invalid("mu_r", self.mu_r, "must be positive and finite"));
        }
        Ok(())
    }

    /// Copy with a different μ_r.
    pub fn at_mu_r(&self, mu_r: f64) -> Result<Self> {
        Self::new(self.turbulence, self.pointing, self.detection, mu_r)
    }

    pub fn mu_r_db(&self) -> f64 {
        linear_to_db(self.mu_r)
    }

    pub fn r(&self) -> u32 {
        self.detection.r()
    }
}
