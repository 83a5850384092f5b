//! Gaussian rules and adaptive Gauss-Kronrod integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// Weight e^{-x²} on the real line.
    Hermite,
    /// Unit weight on [0, 1].
    Legendre,
}

/// A fixed-order Gaussian quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i).
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrate over [a, b]; only meaningful for Legendre rules.
    pub fn apply_on(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        debug_assert_eq!(self.kind, RuleKind::Legendre);
        let h = b - a;
        h * self.apply(|t| f(a + h * t))
    }
}

/// Physicists' Gauss-Hermite rule with `n` nodes, exact for polynomials of
/// degree ≤ 2n-1 against e^{-x²}.
pub fn gauss_hermite(n: usize) -> Result<QuadratureRule> {
    if !(1..=64).contains(&n) {
        return Err(domain("gauss_hermite", n as f64, "1 <= n <= 64"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let pim4 = PI.powf(-0.25);
    let nf = n as f64;
    let m = n.div_ceil(2);
    let mut z = 0.0;
    for i in 0..m {
        // Initial guesses follow the usual asymptotic placement of the
        // largest roots, then step inward from the previous root.
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.166_67),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            // Orthonormal Hermite recurrence.
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        weights[i] = 2.0 / (pp * pp);
    }
    // The loop fills descending positive roots at 0..m; mirror them.
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n);
    for i in 0..m {
        pairs.push((nodes[i], weights[i]));
        if !(n % 2 == 1 && i == m - 1) {
            pairs.push((-nodes[i], weights[i]));
        }
    }
    if n % 2 == 1 {
        // Central node is exactly zero.
        if let Some(p) = pairs.iter_mut().find(|p| p.0.abs() < 1e-12) {
            p.0 = 0.0;
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        kind: RuleKind::Hermite,
    })
}

/// Gauss-Legendre rule with `n` nodes mapped to [0, 1].
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if !(1..=256).contains(&n) {
        return Err(domain("gauss_legendre", n as f64, "1 <= n <= 256"));
    }
    let nf = n as f64;
    let m = n.div_ceil(2);
    let mut pairs = Vec::with_capacity(n);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 1.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        // [-1,1] weight 2/((1-z²)p'²) halved for the unit interval.
        let w = 1.0 / ((1.0 - z * z) * pp * pp);
        pairs.push((0.5 * (1.0 - z), w));
        if !(n % 2 == 1 && i == m - 1) {
            pairs.push((0.5 * (1.0 + z), w));
        } else {
            pairs.last_mut().unwrap().0 = 0.5;
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        kind: RuleKind::Legendre,
    })
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

const MAX_SEGMENTS: usize = 4000;

/// Globally adaptive Gauss-Kronrod (7/15) integration of `f` over the
/// finite interval [a, b].
///
/// Stops when the summed error estimate is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Integral> {
    integrate_with_breaks(&mut f, &[a, b], rel_tol, abs_tol)
}

/// As [`integrate`], starting from the given (sorted) breakpoints.
pub fn integrate_with_breaks(
    f: &mut impl FnMut(f64) -> f64,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Integral> {
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (v, e) = gk15(f, w[0], w[1]);
        total += v;
        total_err += e;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value: v,
            error: e,
        });
    }
    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_SEGMENTS {
            return Err(Error::Convergence {
                what: "adaptive quadrature",
                achieved: total_err / total.abs().max(f64::MIN_POSITIVE),
                target: rel_tol,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Interval collapsed to machine precision; accept.
            heap.push(Segment { error: 0.0, ..worst });
            total_err = heap.iter().map(|s| s.error).sum();
            continue;
        }
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        // Re-sum rather than update incrementally to avoid drift.
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        total = heap.iter().map(|s| s.value).sum();
        total_err = heap.iter().map(|s| s.error).sum();
    }
    if !total.is_finite() {
        return Err(Error::Convergence {
            what: "adaptive quadrature (non-finite integrand)",
            achieved: f64::INFINITY,
            target: rel_tol,
        });
    }
    Ok(Integral {
        value: total,
        error: total_err,
    })
}

/// ∫_a^∞ f(x) dx through the map x = a + (1-t)/t.
pub fn integrate_to_infinity(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Integral> {
    let mut g = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let x = a + (1.0 - t) / t;
        let v = f(x) / (t * t);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate_with_breaks(&mut g, &[0.0, 0.5, 1.0], rel_tol, abs_tol)
}
