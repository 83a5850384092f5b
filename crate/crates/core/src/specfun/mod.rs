//! Real-argument special functions and quadrature rules.

mod bessel;
pub(crate) mod complex;
mod erf;
mod expint;
mod gamma;
mod kummer;
mod lerch;
pub mod quadrature;

pub use bessel::{bessel_i0, bessel_i0_scaled, bessel_k_nu};
pub(crate) use bessel::ln_bessel_i0;
pub use erf::erfc;
pub use expint::{exp_integral_e1, hyp2f2_1122};
pub use gamma::{digamma, gamma, ln_gamma, EULER_GAMMA};
pub(crate) use gamma::{binomial, digamma_pos, ln_gamma_pos};
pub use kummer::kummer_1f1;
pub(crate) use kummer::kummer_b1_unchecked;
pub use lerch::lerch_phi_s1;
pub use quadrature::{gauss_hermite, gauss_legendre, QuadratureRule, RuleKind};
