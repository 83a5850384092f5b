//! High-SNR expansion of the Málaga / Gamma-Gamma capacity.
//!
//! Writing ln(1+z) as a Mellin-Barnes integral gives
//! C = (1/2πi) ∫ π/(s sin πs) (cμ_r)^{-s} R(-s) ds with R(n) = E[γ^n]/μ_r^n.
//! Closing the contour to the right picks up the double pole at s = 0
//! (the high-SNR asymptote) and the leading pole of every Gamma factor of
//! R(-s): ξ²/r, (α+j)/r and (m+j)/r for j = 0..r-1. Each contributes a
//! term of order (cμ_r)^{-κ}. Residues are taken by contour integration
//! so that coincidences with the kernel poles at the positive integers
//! (which produce logarithmic terms) need no special casing.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{high_snr_asymptote, CapacityEstimate, Method};
use crate::channel::{LinkScenario, PointingErrorParams, TurbulenceModel};
use crate::error::{Error, Result};
use crate::moments::{malaga_b, malaga_weights};
use crate::specfun::complex::ln_gamma_complex;
use crate::specfun::ln_gamma_pos;

const POLE_TOLERANCE: f64 = 1e-6;
const CLUSTER_RADIUS: f64 = 0.05;
const CONTOUR_POINTS: usize = 512;

/// One algebraic correction term (cμ_r)^{-exponent} (possibly with a
/// logarithmic factor) of the expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionTerm {
    pub exponent: f64,
    pub contribution: f64,
}

struct Mellin {
    r: f64,
    ln_z: f64,
    xi2: Option<f64>,
    alpha: f64,
    /// (m, w_m) pairs with nonzero weight.
    mixture: Vec<(f64, f64)>,
    ln_b: f64,
}

impl Mellin {
    fn new(sc: &LinkScenario) -> Result<Self> {
        sc.validate()?;
        if !sc.pointing.is_zero_boresight() {
            return Err(Error::Precondition(
                "meijer_expansion needs zero boresight (s = 0)".to_string(),
            ));
        }
        let (alpha, mixture) = match sc.turbulence {
            TurbulenceModel::Malaga { alpha, .. } => {
                let w = malaga_weights(&sc.turbulence);
                let mix = w
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0.0)
                    .map(|(i, &x)| ((i + 1) as f64, x))
                    .collect();
                (alpha, mix)
            }
            TurbulenceModel::GammaGamma { alpha, beta } => (alpha, vec![(beta, 1.0)]),
            other => {
                return Err(Error::Precondition(format!(
                    "meijer_expansion needs malaga or gamma_gamma turbulence, got {}",
                    other.name()
                )))
            }
        };
        let p: &PointingErrorParams = &sc.pointing;
        Ok(Self {
            r: sc.detection.rf(),
            ln_z: (sc.detection.c() * sc.mu_r).ln(),
            xi2: p.has_pointing_error().then(|| p.xi2()),
            alpha,
            mixture,
            ln_b: malaga_b(&sc.turbulence).ln(),
        })
    }

    /// R(n) continued to complex n, evaluated at n = -s.
    fn ratio(&self, s: Complex64) -> Complex64 {
        let x = -self.r * s;
        let mut ln_r = ln_gamma_complex(x + self.alpha) - ln_gamma_pos(self.alpha) - x * self.ln_b;
        if let Some(xi2) = self.xi2 {
            ln_r += x * (1.0 / xi2).ln_1p() - (x / xi2 + 1.0).ln();
        }
        let mix: Complex64 = self
            .mixture
            .iter()
            .map(|&(m, w)| w * (ln_gamma_complex(x + m) - ln_gamma_pos(m)).exp())
            .sum();
        ln_r.exp() * mix
    }

    fn integrand(&self, s: Complex64) -> Complex64 {
        let kernel = PI / (s * (s * PI).sin());
        kernel * (-s * self.ln_z).exp() * self.ratio(s)
    }

    /// Leading pole of every Gamma factor, one family per mixture order.
    fn leading_poles(&self) -> Result<Vec<f64>> {
        let r = self.r as usize;
        let mut all = Vec::new();
        for &(m, _) in &self.mixture {
            let mut family: Vec<f64> = self.xi2.map(|x| x / self.r).into_iter().collect();
            family.extend((0..r).map(|j| (self.alpha + j as f64) / self.r));
            family.extend((0..r).map(|j| (m + j as f64) / self.r));
            for (i, a) in family.iter().enumerate() {
                for b in &family[i + 1..] {
                    if (a - b).abs() < POLE_TOLERANCE {
                        return Err(Error::Pole { first: *a, second: *b });
                    }
                }
            }
            all.extend(family);
        }
        all.sort_by(f64::total_cmp);
        all.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        Ok(all)
    }

    /// Every singularity of the integrand in [0, limit].
    fn singularities(&self, limit: f64) -> Vec<f64> {
        let mut out = vec![0.0];
        let mut k = 1.0;
        while k <= limit {
            out.push(k);
            k += 1.0;
        }
        if let Some(xi2) = self.xi2 {
            out.push(xi2 / self.r);
        }
        let mut push_family = |base: f64| {
            let mut j = 0.0;
            while (base + j) / self.r <= limit {
                out.push((base + j) / self.r);
                j += 1.0;
            }
        };
        push_family(self.alpha);
        for &(m, _) in &self.mixture {
            push_family(m);
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }

    fn residue(&self, center: f64, radius: f64) -> Complex64 {
        let n = CONTOUR_POINTS;
        (0..n)
            .map(|k| {
                let e = Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64);
                self.integrand(center + e) * e
            })
            .sum::<Complex64>()
            / n as f64
    }
}

/// Group the leading poles, together with any other singularity lying
/// within `CLUSTER_RADIUS` of one, into clusters enclosed by one contour.
fn clusters(leading: &[f64], singular: &[f64]) -> Vec<Vec<f64>> {
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for &p in leading {
        let mut members: Vec<f64> = singular
            .iter()
            .copied()
            .filter(|q| (q - p).abs() < CLUSTER_RADIUS)
            .collect();
        members.push(p);
        let merged: Vec<usize> = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.iter().any(|a| members.iter().any(|b| (a - b).abs() < CLUSTER_RADIUS)))
            .map(|(i, _)| i)
            .collect();
        for &i in merged.iter().rev() {
            members.extend(groups.remove(i));
        }
        members.sort_by(f64::total_cmp);
        members.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        groups.push(members);
    }
    groups.sort_by(|a, b| a[0].total_cmp(&b[0]));
    groups
}

/// Correction terms of the expansion beyond the logarithmic s = 0 term.
///
/// If a pole sits within the cluster radius of s = 0 the s = 0 term is
/// folded into that cluster and reported with exponent 0.
pub fn meijer_expansion_terms(sc: &LinkScenario) -> Result<Vec<ExpansionTerm>> {
    let mellin = Mellin::new(sc)?;
    let leading = mellin.leading_poles()?;
    let limit = leading.last().copied().unwrap_or(1.0) + 1.5;
    let singular = mellin.singularities(limit);
    let mut terms = Vec::new();
    for cluster in clusters(&leading, &singular) {
        let lo = cluster[0];
        let hi = *cluster.last().expect("clusters are non-empty");
        let center = 0.5 * (lo + hi);
        let inner = 0.5 * (hi - lo);
        let outer = singular
            .iter()
            .filter(|q| !cluster.iter().any(|c| (*c - **q).abs() < 1e-12))
            .map(|q| (q - center).abs())
            .fold(f64::INFINITY, f64::min);
        let radius = (0.5 * (inner + outer)).min(inner + 0.25);
        let residue = mellin.residue(center, radius);
        terms.push(ExpansionTerm {
            exponent: lo,
            contribution: -residue.re,
        });
    }
    Ok(terms)
}

/// High-SNR asymptote refined with the algebraic correction terms of the
/// Meijer-G expansion. Requires Málaga or Gamma-Gamma turbulence and zero
/// boresight.
///
/// Fails with [`Error::Pole`] when two exponents of one mixture term
/// coincide; perturbing α by about 1e-4 separates them.
pub fn malaga_meijer_expansion_asymptote(sc: &LinkScenario) -> Result<CapacityEstimate> {
    let terms = meijer_expansion_terms(sc)?;
    let folded_origin = terms.iter().any(|t| t.exponent == 0.0);
    let base = if folded_origin {
        0.0
    } else {
        high_snr_asymptote(sc)?.value
    };
    let value = base + terms.iter().map(|t| t.contribution).sum::<f64>();
    Ok(CapacityEstimate::exact(value, Method::MeijerExpansion))
}
