//! Ergodic capacity of free-space optical links under atmospheric
//! turbulence and pointing errors.
//!
//! The crate is organized bottom-up:
//!
//! * [`specfun`]: special functions and quadrature.
//! * [`channel`]: scenario parameters, densities and samplers for the
//!   lognormal, Rician-lognormal, Málaga and Gamma-Gamma models combined
//!   with (possibly boresight-displaced) pointing errors.
//! * [`moments`]: closed-form moments of the instantaneous SNR.
//! * [`capacity`]: high/low-SNR asymptotes, Gauss-Hermite quadrature,
//!   the Meijer-G expansion and tabulated special cases.
//! * [`montecarlo`]: reproducible parallel simulation.
//!
//! ```
//! use fso_capacity::capacity::high_snr_asymptote;
//! use fso_capacity::channel::{Detection, LinkScenario, PointingErrorParams, TurbulenceModel};
//!
//! let sc = LinkScenario::with_mu_r_db(
//!     TurbulenceModel::gamma_gamma(2.296, 2.0)?,
//!     PointingErrorParams::zero_boresight(6.7)?,
//!     Detection::Heterodyne,
//!     40.0,
//! )?;
//! let c = high_snr_asymptote(&sc)?;
//! assert!(c.nats() > 8.0 && c.nats() < 9.5);
//! # Ok::<(), fso_capacity::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacity;
pub mod channel;
mod error;
pub mod moments;
pub mod montecarlo;
pub mod specfun;

pub use error::{Error, Result};
