use crate::error::{domain, Result};

/// Confluent hypergeometric ₁F₁(a; b; z), restricted to b = 1,
/// a ∈ [-10, 1] and z ∈ [-200, 0].
///
/// Kummer's transformation ₁F₁(a;1;z) = e^z ₁F₁(1-a;1;-z) turns the
/// alternating series into one with non-negative terms.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if b != 1.0 {
        return Err(domain("kummer_1f1", b, "b = 1"));
    }
    if !(-10.0..=1.0).contains(&a) {
        return Err(domain("kummer_1f1", a, "-10 <= a <= 1"));
    }
    if !(-200.0..=0.0).contains(&z) {
        return Err(domain("kummer_1f1", z, "-200 <= z <= 0"));
    }
    Ok(kummer_b1_unchecked(a, z))
}

/// ₁F₁(a;1;z) for a ≤ 1, z ≤ 0 without range checks. The result is only
/// accurate while e^z·Σ stays representable, i.e. for -z up to ~700.
pub(crate) fn kummer_b1_unchecked(a: f64, z: f64) -> f64 {
    if a == 0.0 {
        return 1.0;
    }
    let c = 1.0 - a;
    let w = -z;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut j = 0u32;
    loop {
        let jf = f64::from(j);
        term *= (c + jf) * w / ((jf + 1.0) * (jf + 1.0));
        sum += term;
        j += 1;
        if (jf > w && term < 1e-17 * sum) || term == 0.0 || j > 5000 {
            break;
        }
    }
    z.exp() * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Terminating ₁F₁(-n;1;z) = Σ_{j≤n} (-n)_j z^j / (j!)².
    fn terminating(n: u32, z: f64) -> f64 {
        let mut term = 1.0;
        let mut sum = 1.0;
        for j in 0..n {
            let jf = f64::from(j);
            term *= (-f64::from(n) + jf) * z / ((jf + 1.0) * (jf + 1.0));
            sum += term;
        }
        sum
    }

    #[test]
    fn minus_one_gives_k_squared_plus_one() {
        for k in [0.5f64, 1.0, 3.0, 5.0, 10.0, 14.0] {
            let k2 = k * k;
            let got = kummer_1f1(-1.0, 1.0, -k2).unwrap();
            assert!((got - (k2 + 1.0)).abs() / (k2 + 1.0) < 1e-12, "k={k}");
        }
    }

    #[test]
    fn zero_parameter_is_one() {
        for z in [0.0, -1.0, -50.0, -200.0] {
            assert_eq!(kummer_1f1(0.0, 1.0, z).unwrap(), 1.0);
        }
    }

    #[test]
    fn negative_integers_match_polynomials() {
        let got = kummer_1f1(-2.0, 1.0, -4.0).unwrap();
        // 1 + 8 + 8 = 17
        assert!((got - 17.0).abs() < 1e-12);
        for n in 1..=10u32 {
            for z in [-0.3, -4.0, -25.0, -100.0] {
                let want = terminating(n, z);
                let got = kummer_1f1(-f64::from(n), 1.0, z).unwrap();
                assert!((got - want).abs() / want < 1e-9, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn a_equal_one_is_exponential() {
        for z in [-0.5, -10.0, -150.0] {
            let got = kummer_1f1(1.0, 1.0, z).unwrap();
            assert!((got - z.exp()).abs() / z.exp() < 1e-14);
        }
    }

    #[test]
    fn domain_checks() {
        assert!(kummer_1f1(-1.0, 2.0, -1.0).is_err());
        assert!(kummer_1f1(-11.0, 1.0, -1.0).is_err());
        assert!(kummer_1f1(1.5, 1.0, -1.0).is_err());
        assert!(kummer_1f1(-1.0, 1.0, 1.0).is_err());
        assert!(kummer_1f1(-1.0, 1.0, -201.0).is_err());
    }
}
