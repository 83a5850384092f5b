use std::f64::consts::PI;

use super::{CapacityEstimate, Method};
use crate::channel::{LinkScenario, TurbulenceModel};
use crate::error::{Error, Result};
use crate::moments::{pointing_mean, turbulence_mean};
use crate::specfun::{gauss_hermite, lerch_phi_s1};

pub const DEFAULT_HERMITE_POINTS: usize = 20;

/// Capacity of a lognormal link with zero-boresight pointing error.
///
/// The pointing average is done in closed form,
/// E_U[ln(1 + yU)] = ln(1+y) - y Φ(-y, 1, (ξ²+r)/r), leaving a Gaussian
/// average over ln I_a that an `n_points` Gauss-Hermite rule resolves.
pub fn ln_capacity_gauss_hermite(sc: &LinkScenario, n_points: usize) -> Result<CapacityEstimate> {
    sc.validate()?;
    let TurbulenceModel::Lognormal { sigma, lambda } = sc.turbulence else {
        return Err(Error::Precondition(format!(
            "gauss_hermite needs lognormal turbulence, got {}",
            sc.turbulence.name()
        )));
    };
    if !sc.pointing.is_zero_boresight() {
        return Err(Error::Precondition(
            "gauss_hermite needs zero boresight (s = 0)".to_string(),
        ));
    }
    let rule = gauss_hermite(n_points)?;
    let d = sc.detection;
    let r = d.rf();
    let norm = turbulence_mean(&sc.turbulence) * pointing_mean(&sc.pointing);
    let has_pe = sc.pointing.has_pointing_error();
    let a = (sc.pointing.xi2() + r) / r;
    let mut failure = None;
    let sum = rule.apply(|x| {
        let ia = (lambda + std::f64::consts::SQRT_2 * sigma * x).exp();
        let y = d.c() * sc.mu_r * (ia * sc.pointing.a0 / norm).powf(r);
        if !has_pe {
            return y.ln_1p();
        }
        match lerch_phi_s1(y, a) {
            Ok(phi) => y.ln_1p() - y * phi,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(CapacityEstimate::exact(sum / PI.sqrt(), Method::GaussHermite))
}
