//! Complex log-gamma, used only to locate and weigh poles in the
//! Mellin-Barnes form of the capacity integral.

use std::f64::consts::PI;

use num_complex::Complex64;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch-free ln Γ(z): the imaginary part may differ from the
/// principal value by multiples of 2π, which is harmless once exponentiated.
pub(crate) fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_complex(1.0 - z);
    }
    let zm = z - 1.0;
    let mut sum = Complex64::new(COEF[0], 0.0);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        sum += c / (zm + i as f64);
    }
    let t = zm + G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm + 0.5) * t.ln() - t + sum.ln()
}
