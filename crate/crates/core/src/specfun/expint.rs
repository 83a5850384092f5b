use super::gamma::EULER_GAMMA;
use super::quadrature::gauss_legendre;
use crate::error::{domain, Result};

/// Exponential integral E₁(x) = ∫₁^∞ e^{-xt}/t dt for x > 0.
///
/// Power series up to x = 1, continued fraction beyond.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_nan() {
        return Err(domain("exp_integral_e1", x, "x > 0"));
    }
    if x == f64::INFINITY {
        return Ok(0.0);
    }
    if x <= 1.0 {
        // E₁(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k·k!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..100 {
            let kf = f64::from(k);
            term *= -x / kf;
            let add = term / kf;
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() - sum)
    } else {
        // Modified Lentz on e^{x}E₁(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -f64::from(i) * f64::from(i);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(h * (-x).exp())
    }
}

/// ₂F₂(1,1;2,2;-x) for x ≥ 0.
///
/// Uses the series Σ (-x)^j / ((j+1)² j!) for x ≤ 2. For larger x the
/// alternating series cancels catastrophically, so the value is taken from
/// x·₂F₂(1,1;2,2;-x) = ∫₀^x (1-e^{-t})/t dt, integrated panel-wise with
/// Gauss-Legendre.
pub fn hyp2f2_1122(x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain("hyp2f2_1122", x, "0 <= x < inf"));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x <= 2.0 {
        let mut term = 1.0; // (-x)^j / j!
        let mut sum = 1.0;
        for j in 1..80 {
            let jf = f64::from(j);
            term *= -x / jf;
            let add = term / ((jf + 1.0) * (jf + 1.0));
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        return Ok(sum);
    }
    let rule = gauss_legendre(20)?;
    let panels = x.ceil() as usize;
    let width = x / panels as f64;
    let integrand = |t: f64| -(-t).exp_m1() / t;
    let ein: f64 = (0..panels)
        .map(|p| {
            let a = p as f64 * width;
            rule.apply_on(a, a + width, integrand)
        })
        .sum();
    Ok(ein / x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quadrature::{integrate, integrate_to_infinity};

    #[test]
    fn e1_small_x_limit() {
        for &x in &[1e-8, 1e-6, 1e-4] {
            let r = exp_integral_e1(x).unwrap() + x.ln() + EULER_GAMMA;
            // remainder is x - x²/4 + ...
            assert!((r - x).abs() < x * x + 1e-14, "x={x} r={r:e}");
        }
    }

    #[test]
    fn e1_one_against_quadrature() {
        let q = integrate_to_infinity(|t| (-t).exp() / t, 1.0, 1e-14, 0.0).unwrap();
        let got = exp_integral_e1(1.0).unwrap();
        assert!((got - q.value).abs() / q.value < 1e-10);
    }

    #[test]
    fn e1_twenty_five_against_asymptotic_series() {
        // e^x x E₁(x) ~ Σ (-1)^k k!/x^k; at x=25 the terms shrink to ~1e-10
        // before diverging, which bounds the oracle error.
        let x: f64 = 25.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..=24 {
            term *= -f64::from(k) / x;
            sum += term;
        }
        let oracle = sum * (-x).exp() / x;
        let got = exp_integral_e1(x).unwrap();
        assert!((got - oracle).abs() / oracle < 1e-9);
        // and against direct quadrature of e^{-xt}/t
        let q = integrate(|t| (-x * t).exp() / t, 1.0, 3.0, 1e-14, 0.0).unwrap();
        assert!((got - q.value).abs() / q.value < 1e-10);
    }

    #[test]
    fn e1_rejects_nonpositive() {
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_e1(-2.0).is_err());
    }

    #[test]
    fn hyp2f2_at_zero_is_one() {
        assert_eq!(hyp2f2_1122(0.0).unwrap(), 1.0);
        assert!(hyp2f2_1122(-1.0).is_err());
    }

    #[test]
    fn hyp2f2_one_against_series_oracle() {
        // Direct series evaluated in reverse (smallest terms first).
        let terms: Vec<f64> = (0..40)
            .map(|j: i32| {
                let fact: f64 = (1..=j).map(f64::from).product();
                (-1f64).powi(j) / (f64::from(j + 1).powi(2) * fact)
            })
            .collect();
        let oracle: f64 = terms.iter().rev().sum();
        assert!((hyp2f2_1122(1.0).unwrap() - oracle).abs() < 1e-15);
    }

    #[test]
    fn hyp2f2_branches_agree_near_switch() {
        let lo = hyp2f2_1122(2.0).unwrap();
        let hi = hyp2f2_1122(2.0 + 1e-12).unwrap();
        assert!((lo - hi).abs() < 1e-11);
    }
}
