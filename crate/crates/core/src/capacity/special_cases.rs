//! Tabulated high-SNR capacities for named limits of the turbulence models.
//!
//! Each cell is written out explicitly; the tests compare it with
//! [`high_snr_asymptote`](super::high_snr_asymptote).

use super::{CapacityEstimate, Method};
use crate::channel::{Detection, PointingErrorParams, TurbulenceModel};
use crate::error::{Error, Result};
use crate::specfun::{digamma_pos, exp_integral_e1, ln_gamma_pos, EULER_GAMMA};

/// Turbulence row of the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TableRow {
    Lognormal { sigma: f64 },
    RicianLognormal { k: f64, sigma: f64 },
    Rician { k: f64 },
    RayleighLognormal { sigma: f64 },
    Rayleigh,
    Malaga {
        alpha: f64,
        beta: u32,
        b0: f64,
        rho: f64,
        omega: f64,
        delta_phi: f64,
    },
    GammaGamma { alpha: f64, beta: f64 },
}

/// Pointing-error column of the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableColumn {
    NonzeroBoresight,
    ZeroBoresight,
    NoPointingError,
}

impl TableColumn {
    fn check(self, p: &PointingErrorParams) -> Result<()> {
        p.validate()?;
        let ok = match self {
            Self::NonzeroBoresight => p.has_pointing_error(),
            Self::ZeroBoresight => p.has_pointing_error() && p.is_zero_boresight(),
            Self::NoPointingError => !p.has_pointing_error(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "pointing parameters (xi = {}, s = {}) do not belong to the {self:?} column",
                p.xi, p.s
            )))
        }
    }
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            value: v,
            reason: "must be positive and finite",
        })
    }
}

/// Pointing terms 1/ξ² + s²/(2σ_s²ξ²(ξ²+1)) + ln(ξ²/(ξ²+1)) as they
/// appear inside the bracket, or 0 without pointing errors.
fn pointing_bracket(p: &PointingErrorParams, column: TableColumn) -> f64 {
    match column {
        TableColumn::NoPointingError => 0.0,
        TableColumn::ZeroBoresight => {
            let xi2 = p.xi * p.xi;
            1.0 / xi2 + (xi2 / (xi2 + 1.0)).ln()
        }
        TableColumn::NonzeroBoresight => {
            let xi2 = p.xi * p.xi;
            1.0 / xi2
                + p.s * p.s / (2.0 * p.sigma_s * p.sigma_s * xi2 * (xi2 + 1.0))
                + (xi2 / (xi2 + 1.0)).ln()
        }
    }
}

/// Evaluates one cell of the special-case table at electrical SNR `mu_r`.
pub fn special_case_asymptote(
    row: TableRow,
    column: TableColumn,
    pointing: &PointingErrorParams,
    detection: Detection,
    mu_r: f64,
) -> Result<CapacityEstimate> {
    column.check(pointing)?;
    positive("mu_r", mu_r)?;
    let r = f64::from(detection.r());
    let ln_cmu = (detection.c() * mu_r).ln();
    let pe = pointing_bracket(pointing, column);
    let rician = |k: f64| -> Result<f64> {
        positive("k", k)?;
        let k2 = k * k;
        Ok(-(k2 / (k2 + 1.0)).ln() - exp_integral_e1(k2)?)
    };
    let bracket = match row {
        TableRow::Lognormal { sigma } => {
            positive("sigma", sigma)?;
            pe + 0.5 * sigma * sigma
        }
        TableRow::RicianLognormal { k, sigma } => {
            positive("sigma", sigma)?;
            pe + 0.5 * sigma * sigma + rician(k)?
        }
        TableRow::Rician { k } => pe + rician(k)?,
        TableRow::RayleighLognormal { sigma } => {
            positive("sigma", sigma)?;
            pe + 0.5 * sigma * sigma + EULER_GAMMA
        }
        TableRow::Rayleigh => pe + EULER_GAMMA,
        TableRow::GammaGamma { alpha, beta } => {
            positive("alpha", alpha)?;
            positive("beta", beta)?;
            pe + (alpha * beta).ln() - digamma_pos(alpha) - digamma_pos(beta)
        }
        TableRow::Malaga {
            alpha,
            beta,
            b0,
            rho,
            omega,
            delta_phi,
        } => {
            let m = TurbulenceModel::malaga(alpha, beta, b0, rho, omega, delta_phi)?;
            let value = malaga_cell(&m, pe, r, ln_cmu)?;
            return Ok(CapacityEstimate::exact(value, Method::HighSnr));
        }
    };
    Ok(CapacityEstimate::exact(ln_cmu - r * bracket, Method::HighSnr))
}

/// (rAΓ(α)/2^r) Σ b_m Γ(m) { r[-pe - ln B + ψ(α) + ψ(m)] + ln(cμ_r) }
/// with the published A, a_m and b_m = a_m (αβ/(gβ+Ω'))^{-(α+m)/2}.
fn malaga_cell(m: &TurbulenceModel, pe: f64, r: f64, ln_cmu: f64) -> Result<f64> {
    let TurbulenceModel::Malaga { alpha, beta, .. } = *m else {
        unreachable!("caller builds a Malaga model")
    };
    let (ln_a, ln_am) = crate::channel::malaga_pdf_coefficients(m)?;
    let g = m.malaga_g();
    let op = m.malaga_omega_prime();
    let bf = f64::from(beta);
    let ln_scale = (alpha * bf / (g * bf + op)).ln();
    let ln_b = (alpha * bf * (g + op) / (g * bf + op)).ln();
    let prefactor = r * (ln_a + ln_gamma_pos(alpha)).exp() / 2f64.powf(r);
    let psi_a = digamma_pos(alpha);
    let sum: f64 = ln_am
        .iter()
        .enumerate()
        .map(|(i, lam)| {
            let mf = (i + 1) as f64;
            let ln_bm = lam - 0.5 * (alpha + mf) * ln_scale;
            let weight = (ln_bm + ln_gamma_pos(mf)).exp();
            weight * (r * (-pe - ln_b + psi_a + digamma_pos(mf)) + ln_cmu)
        })
        .sum();
    Ok(prefactor * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::high_snr_asymptote;
    use crate::channel::LinkScenario;

    const MU: f64 = 1e4;

    #[test]
    fn rayleigh_without_pointing_error() {
        for d in [Detection::Heterodyne, Detection::ImDd] {
            let got = special_case_asymptote(TableRow::Rayleigh, TableColumn::NoPointingError, &PointingErrorParams::none(), d, MU)
                .unwrap()
                .value;
            let want = (d.c() * MU).ln() - f64::from(d.r()) * EULER_GAMMA;
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn rician_lognormal_zero_boresight_matches_general_formula() {
        let p = PointingErrorParams::zero_boresight(1.1).unwrap();
        for d in [Detection::Heterodyne, Detection::ImDd] {
            let cell = special_case_asymptote(
                TableRow::RicianLognormal { k: 5.0, sigma: 0.3 },
                TableColumn::ZeroBoresight,
                &p,
                d,
                MU,
            )
            .unwrap()
            .value;
            let sc = LinkScenario::new(TurbulenceModel::rician_lognormal(5.0, 0.3).unwrap(), p, d, MU).unwrap();
            let general = high_snr_asymptote(&sc).unwrap().value;
            assert!((cell - general).abs() < 1e-12, "{cell} vs {general}");
        }
    }

    #[test]
    fn rayleigh_lognormal_is_small_k_limit() {
        let p = PointingErrorParams::boresight(1.1, 1.5, 3.0).unwrap();
        let rln = special_case_asymptote(
            TableRow::RicianLognormal { k: 1e-3, sigma: 0.3 },
            TableColumn::NonzeroBoresight,
            &p,
            Detection::ImDd,
            MU,
        )
        .unwrap()
        .value;
        let ray = special_case_asymptote(
            TableRow::RayleighLognormal { sigma: 0.3 },
            TableColumn::NonzeroBoresight,
            &p,
            Detection::ImDd,
            MU,
        )
        .unwrap()
        .value;
        assert!((rln - ray).abs() < 1e-3, "{rln} vs {ray}");
    }

    #[test]
    fn malaga_cell_matches_general_formula() {
        let p = PointingErrorParams::boresight(1.1, 1.5, 3.0).unwrap();
        let row = TableRow::Malaga {
            alpha: 4.2,
            beta: 3,
            b0: 0.1079,
            rho: 0.596,
            omega: 1.3265,
            delta_phi: std::f64::consts::FRAC_PI_2,
        };
        let m = TurbulenceModel::malaga(4.2, 3, 0.1079, 0.596, 1.3265, std::f64::consts::FRAC_PI_2).unwrap();
        let sc = LinkScenario::new(m, p, Detection::ImDd, MU).unwrap();
        let cell = special_case_asymptote(row, TableColumn::NonzeroBoresight, &p, Detection::ImDd, MU)
            .unwrap()
            .value;
        let general = high_snr_asymptote(&sc).unwrap().value;
        assert!((cell - general).abs() < 1e-10, "{cell} vs {general}");
    }

    #[test]
    fn column_must_match_pointing() {
        let zero = PointingErrorParams::zero_boresight(1.1).unwrap();
        let none = PointingErrorParams::none();
        let bs = PointingErrorParams::boresight(1.1, 1.5, 3.0).unwrap();
        let call = |c, p: &PointingErrorParams| special_case_asymptote(TableRow::Rayleigh, c, p, Detection::ImDd, MU);
        assert!(matches!(call(TableColumn::NoPointingError, &zero), Err(Error::Precondition(_))));
        assert!(matches!(call(TableColumn::ZeroBoresight, &bs), Err(Error::Precondition(_))));
        assert!(matches!(call(TableColumn::NonzeroBoresight, &none), Err(Error::Precondition(_))));
        assert!(call(TableColumn::NonzeroBoresight, &zero).is_ok());
    }
}
