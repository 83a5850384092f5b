#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use fso_capacity::channel::{Detection, LinkScenario, PointingErrorParams, TurbulenceModel};

pub fn lognormal() -> TurbulenceModel {
    TurbulenceModel::lognormal(0.35).unwrap()
}

pub fn rician_lognormal() -> TurbulenceModel {
    TurbulenceModel::rician_lognormal(5.0, 0.35).unwrap()
}

pub fn malaga(alpha: f64, beta: u32) -> TurbulenceModel {
    TurbulenceModel::malaga(alpha, beta, 0.1079, 0.596, 1.3265, FRAC_PI_2).unwrap()
}

pub fn gamma_gamma() -> TurbulenceModel {
    TurbulenceModel::gamma_gamma(2.296, 2.0).unwrap()
}

pub fn all_models() -> Vec<TurbulenceModel> {
    vec![lognormal(), rician_lognormal(), malaga(2.296, 2), gamma_gamma()]
}

pub fn zero_boresight() -> PointingErrorParams {
    PointingErrorParams::zero_boresight(6.7).unwrap()
}

pub fn nonzero_boresight() -> PointingErrorParams {
    PointingErrorParams::boresight(1.1, 3.0, 3.0).unwrap()
}

pub fn scenario(m: TurbulenceModel, p: PointingErrorParams, d: Detection, mu_db: f64) -> LinkScenario {
    LinkScenario::with_mu_r_db(m, p, d, mu_db).unwrap()
}
