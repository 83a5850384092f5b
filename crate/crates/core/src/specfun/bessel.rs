use std::f64::consts::PI;

use super::gamma::gamma;
use crate::error::{domain, Result};

const I0_SERIES_LIMIT: f64 = 15.0;

/// Modified Bessel function I₀(x), x ≥ 0.
///
/// Overflows to +∞ past x ≈ 713; use [`bessel_i0_scaled`] there.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(domain("bessel_i0", x, "x >= 0"));
    }
    if x <= I0_SERIES_LIMIT {
        Ok(i0_series(x))
    } else {
        Ok(i0_asymptotic_scaled(x) * x.exp())
    }
}

/// e^{-x} I₀(x), x ≥ 0. Finite for every finite x.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(domain("bessel_i0_scaled", x, "x >= 0"));
    }
    if x <= I0_SERIES_LIMIT {
        Ok(i0_series(x) * (-x).exp())
    } else {
        Ok(i0_asymptotic_scaled(x))
    }
}

/// ln I₀(x), x ≥ 0.
pub(crate) fn ln_bessel_i0(x: f64) -> f64 {
    if x <= I0_SERIES_LIMIT {
        i0_series(x).ln()
    } else {
        x + i0_asymptotic_scaled(x).ln()
    }
}

fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..200 {
        let mf = f64::from(m);
        term *= q / (mf * mf);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

fn i0_asymptotic_scaled(x: f64) -> f64 {
    // e^{-x} I₀(x) ~ (2πx)^{-1/2} Σ ((2k-1)!!)² / (k! (8x)^k)
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = f64::from(k);
        let next = term * (2.0 * kf - 1.0).powi(2) / (8.0 * x * kf);
        if next >= term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// Modified Bessel function of the second kind K_ν(x), x > 0.
///
/// Temme's series for x < 2 and Steed's continued fraction otherwise,
/// evaluated at |ν| reduced to [-1/2, 1/2) and carried up by forward
/// recurrence.
pub fn bessel_k_nu(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("bessel_k_nu", x, "x > 0"));
    }
    if !nu.is_finite() {
        return Err(domain("bessel_k_nu", nu, "finite order"));
    }
    let nu = nu.abs();
    let steps = (nu + 0.5).floor();
    let mu = nu - steps;
    let (mut k_mu, mut k_mu1) = if x < 2.0 {
        temme_series(mu, x)?
    } else {
        steed_fraction(mu, x)
    };
    let two_over_x = 2.0 / x;
    for i in 1..=(steps as u32) {
        let next = (mu + f64::from(i)) * two_over_x * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    Ok(k_mu)
}

/// (Γ₁, Γ₂, 1/Γ(1+μ), 1/Γ(1-μ)) for |μ| ≤ 1/2.
fn temme_gammas(mu: f64) -> Result<(f64, f64, f64, f64)> {
    let plus = 1.0 / gamma(1.0 + mu)?;
    let minus = 1.0 / gamma(1.0 - mu)?;
    let (g1, g2) = if mu.abs() < 0.01 {
        // Taylor coefficients of 1/Γ(1+z).
        const C: [f64; 8] = [
            1.0,
            0.577_215_664_901_532_9,
            -0.655_878_071_520_253_8,
            -0.042_002_635_034_095_2,
            0.166_538_611_382_291_5,
            -0.042_197_734_555_544_3,
            -0.009_621_971_527_877_0,
            0.007_218_943_246_663_0,
        ];
        let m2 = mu * mu;
        let g1 = -(C[1] + m2 * (C[3] + m2 * (C[5] + m2 * C[7])));
        let g2 = C[0] + m2 * (C[2] + m2 * (C[4] + m2 * C[6]));
        (g1, g2)
    } else {
        ((minus - plus) / (2.0 * mu), 0.5 * (minus + plus))
    };
    Ok((g1, g2, plus, minus))
}

fn temme_series(mu: f64, x: f64) -> Result<(f64, f64)> {
    const EPS: f64 = 1e-16;
    let half_x = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -half_x.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (g1, g2, gam_plus, gam_minus) = temme_gammas(mu)?;
    let mut ff = fact * (g1 * e.cosh() + g2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gam_plus;
    let mut q = 0.5 / (ee * gam_minus);
    let mut c = 1.0;
    let dd = half_x * half_x;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..500 {
        let fi = f64::from(i);
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    Ok((sum, sum1 * 2.0 / x))
}

fn steed_fraction(mu: f64, x: f64) -> (f64, f64) {
    const EPS: f64 = 1e-16;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = f64::from(i);
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0 ;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k_mu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    (k_mu, k_mu1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quadrature::integrate;

    fn k_integral_oracle(nu: f64, x: f64) -> f64 {
        // K_ν(x) = ∫₀^∞ e^{-x cosh t} cosh(νt) dt, truncated where the
        // integrand is below 1e-300.
        let upper = ((700.0 / x).ln() + 1.0).max(1.0) + 2.0 + nu / x.max(1.0);
        integrate(
            |t| (-x * t.cosh() + nu * t).exp() * 0.5 * (1.0 + (-2.0 * nu * t).exp()),
            0.0,
            upper.max(8.0),
            1e-14,
            0.0,
        )
        .unwrap()
        .value
    }

    #[test]
    fn i0_basics() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
        // power-series oracle at 1
        let mut oracle = 0.0;
        let mut fact = 1.0;
        for m in 0..30 {
            if m > 0 {
                fact *= f64::from(m);
            }
            oracle += 0.5f64.powi(2 * m) / (fact * fact);
        }
        assert!((bessel_i0(1.0).unwrap() - oracle).abs() / oracle < 1e-14);
        assert!(bessel_i0(-1.0).is_err());
    }

    #[test]
    fn i0_large_argument() {
        let x: f64 = 50.0;
        let leading = x.exp() / (2.0 * PI * x).sqrt();
        let got = bessel_i0(x).unwrap();
        // next correction is 1/(8x) = 0.25%
        assert!((got / leading - 1.0 - 1.0 / (8.0 * x)).abs() < 1e-4);
        assert!(bessel_i0_scaled(800.0).unwrap().is_finite());
        assert!(bessel_i0(800.0).unwrap().is_infinite());
    }

    #[test]
    fn i0_branches_agree_at_switch() {
        let x = I0_SERIES_LIMIT;
        let below = i0_series(x);
        let above = i0_asymptotic_scaled(x) * x.exp();
        assert!((below - above).abs() / below < 1e-10);
        // integral oracle I₀(x) = (1/π)∫₀^π e^{x cos θ} dθ
        for &x in &[3.0, 14.9, 15.1, 40.0] {
            let q = integrate(|t| (x * (t.cos() - 1.0)).exp(), 0.0, PI, 1e-15, 0.0)
                .unwrap()
                .value
                / PI;
            let got = bessel_i0_scaled(x).unwrap();
            assert!((got - q).abs() / q < 1e-10, "x={x}");
        }
    }

    #[test]
    fn k_half_integer_closed_form() {
        for &x in &[1e-3, 0.5, 1.9, 2.1, 10.0, 60.0] {
            let want = (PI / (2.0 * x)).sqrt() * (-x).exp();
            let got = bessel_k_nu(0.5, x).unwrap();
            assert!((got - want).abs() / want < 1e-12, "x={x}");
        }
    }

    #[test]
    fn k_matches_integral_oracle() {
        let got = bessel_k_nu(0.296, 2.0).unwrap();
        let want = k_integral_oracle(0.296, 2.0);
        assert!((got - want).abs() / want < 1e-8);
        for &nu in &[0.0, 0.004, 0.3, 1.0, 1.296, 2.5, 6.0, 7.296, 13.0, 20.0] {
            for &x in &[1e-3, 0.1, 1.0, 1.99, 2.0, 5.0, 30.0, 100.0] {
                let got = bessel_k_nu(nu, x).unwrap();
                let want = k_integral_oracle(nu, x);
                assert!(
                    (got - want).abs() / want < 1e-8,
                    "nu={nu} x={x} got={got:e} want={want:e}"
                );
            }
        }
    }

    #[test]
    fn k_small_argument_limit() {
        // K_ν(x) ~ Γ(ν)/2 (2/x)^ν for x → 0
        let (nu, x) = (3.0_f64, 1e-6_f64);
        let want = gamma(nu).unwrap() / 2.0 * (2.0 / x).powf(nu);
        let got = bessel_k_nu(nu, x).unwrap();
        assert!((got - want).abs() / want < 1e-8);
    }

    #[test]
    fn k_symmetric_in_order() {
        for &nu in &[0.2, 1.7, 5.5] {
            assert_eq!(bessel_k_nu(nu, 1.3).unwrap(), bessel_k_nu(-nu, 1.3).unwrap());
        }
        assert!(bessel_k_nu(1.0, 0.0).is_err());
    }
}
