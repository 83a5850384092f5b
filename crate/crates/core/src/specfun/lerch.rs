use std::sync::OnceLock;

use super::quadrature::{gauss_legendre, QuadratureRule};
use crate::error::{domain, Result};

const PANEL_POINTS: usize = 20;
const SERIES_REACH: f64 = 0.25;

fn panel_rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_POINTS).expect("20-point rule is in range"))
}

/// Lerch transcendent at unit order and negative argument,
/// Φ(-y, 1, a) = ∫₀¹ t^{a-1} / (1 + y t) dt.
///
/// The interval is split into dyadic panels [2^{-j-1}, 2^{-j}] down to the
/// point where y·t ≤ 1/4; each panel gets a 20-point Gauss-Legendre rule.
/// The remaining piece [0, t₀] is summed exactly as
/// t₀^a Σ_k (-y t₀)^k / (k + a).
pub fn lerch_phi_s1(y: f64, a: f64) -> Result<f64> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(domain("lerch_phi_s1", y, "0 <= y < inf"));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("lerch_phi_s1", a, "a > 0"));
    }
    let rule = panel_rule();
    let integrand = |t: f64| t.powf(a - 1.0) / (1.0 + y * t);

    let mut upper = 1.0;
    let mut total = 0.0;
    while y * upper > SERIES_REACH {
        let lower = 0.5 * upper;
        total += rule.apply_on(lower, upper, integrand);
        upper = lower;
    }

    let z = -y * upper;
    let mut zk = 1.0;
    let mut series = 0.0;
    for k in 0..200 {
        let add = zk / (f64::from(k) + a);
        series += add;
        if add.abs() <= 1e-17 * series.abs() {
            break;
        }
        zk *= z;
    }
    Ok(total + upper.powf(a) * series)
}
