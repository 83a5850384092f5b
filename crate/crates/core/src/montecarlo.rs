//! Monte-Carlo estimators used as numerical oracles.
//!
//! Draws are split into fixed-size batches. Batch `b` uses a ChaCha8
//! stream seeded with the plan seed and stream number `b`, so results do
//! not depend on how rayon schedules the batches; the per-batch running
//! statistics are merged in batch order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::capacity::{CapacityEstimate, Method};
use crate::channel::{LinkScenario, SnrSampler};
use crate::error::{Error, Result};

/// Smallest sample count accepted by [`estimate_capacity`].
pub const MIN_CAPACITY_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationPlan {
    pub scenario: LinkScenario,
    pub n_samples: u64,
    pub seed: u64,
    pub batch: u64,
}

impl SimulationPlan {
    pub fn new(scenario: LinkScenario, n_samples: u64, seed: u64, batch: u64) -> Result<Self> {
        let plan = Self {
            scenario,
            n_samples,
            seed,
            batch,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// A plan with batches of 10⁴ draws (or one batch when fewer).
    pub fn with_default_batch(scenario: LinkScenario, n_samples: u64, seed: u64) -> Result<Self> {
        let batch = if n_samples.is_multiple_of(10_000) { 10_000 } else { n_samples };
        Self::new(scenario, n_samples, seed, batch)
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.n_samples == 0 {
            return Err(Error::InvalidParameter {
                field: "n_samples",
                value: 0.0,
                reason: "must be positive",
            });
        }
        if self.batch == 0 || !self.n_samples.is_multiple_of(self.batch) {
            return Err(Error::InvalidParameter {
                field: "batch",
                value: self.batch as f64,
                reason: "must be positive and divide n_samples",
            });
        }
        Ok(())
    }

    fn n_batches(&self) -> u64 {
        self.n_samples / self.batch
    }
}

/// Welford running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Running {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Running {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let frac = other.n as f64 / n as f64;
        Self {
            n,
            mean: self.mean + delta * frac,
            m2: self.m2 + other.m2 + delta * delta * self.n as f64 * frac,
        }
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

fn accumulate(plan: &SimulationPlan, f: impl Fn(f64) -> f64 + Sync) -> Result<Running> {
    plan.validate()?;
    let sampler = SnrSampler::new(&plan.scenario)?;
    let parts: Vec<Running> = (0..plan.n_batches())
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
            rng.set_stream(b);
            let mut acc = Running::default();
            for _ in 0..plan.batch {
                acc.push(f(sampler.sample(&mut rng)));
            }
            acc
        })
        .collect();
    Ok(parts.into_iter().fold(Running::default(), Running::merge))
}

/// Sample mean of ln(1 + cγ), in nats, with its standard error.
pub fn estimate_capacity(plan: &SimulationPlan) -> Result<CapacityEstimate> {
    if plan.n_samples < MIN_CAPACITY_SAMPLES {
        return Err(Error::InvalidParameter {
            field: "n_samples",
            value: plan.n_samples as f64,
            reason: "capacity estimates need at least 10^4 samples",
        });
    }
    let c = plan.scenario.detection.c();
    let acc = accumulate(plan, |g| (c * g).ln_1p())?;
    Ok(CapacityEstimate {
        value: acc.mean,
        method: Method::MonteCarlo,
        stderr: Some(acc.stderr()),
    })
}

/// Sample mean of γ^n and its standard error. Order 0 returns (1, 0)
/// without drawing.
pub fn estimate_moment(plan: &SimulationPlan, n: f64) -> Result<(f64, f64)> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::InvalidParameter {
            field: "n",
            value: n,
            reason: "moment order must be finite and non-negative",
        });
    }
    if n == 0.0 {
        plan.validate()?;
        return Ok((1.0, 0.0));
    }
    let acc = accumulate(plan, |g| g.powf(n))?;
    let se = acc.stderr();
    if !acc.mean.is_finite() || !se.is_finite() {
        return Err(Error::VarianceOverflow { order: n });
    }
    Ok((acc.mean, se))
}
