//! Exact, reproducible samplers for the circular models and the priors
//! used by the Bayesian tests.
//!
//! Random number generation is ChaCha8 throughout: seedable, portable
//! across platforms, and with cheap independent streams for parallel
//! replication (same seed, distinct stream index).

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::models::{reduce_2pi, reduce_pi, GvMParams, VM2Params, VMParams};

/// Concentration below which a vM draw is treated as uniform.
const UNIFORM_KAPPA: f64 = 1e-10;

/// Consecutive-rejection cap for the GvM sampler.
const GVM_REJECTION_CAP: u64 = 10_000_000;

/// RNG seeded for a top-level run.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for one parallel unit of work (replicate, worker).
/// Identical `(seed, stream)` pairs give bit-identical draws.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draw from vM(mu, kappa) by the Best-Fisher wrapped-Cauchy rejection
/// scheme (exact, O(1) expected cost).
pub fn sample_vm<R: Rng + ?Sized>(p: &VMParams, rng: &mut R) -> f64 {
    let kappa = p.kappa();
    if kappa < UNIFORM_KAPPA {
        return rng.random_range(0.0..2.0 * PI);
    }
    let tau = 1.0 + (1.0 + 4.0 * kappa * kappa).sqrt();
    let rho = (tau - (2.0 * tau).sqrt()) / (2.0 * kappa);
    let r = (1.0 + rho * rho) / (2.0 * rho);
    loop {
        let u1: f64 = rng.random();
        let z = (PI * u1).cos();
        let f = (1.0 + r * z) / (r + z);
        let c = kappa * (r - f);
        let u2: f64 = rng.random();
        if c * (2.0 - c) - u2 > 0.0 || (c / u2).ln() + 1.0 - c >= 0.0 {
            let u3: f64 = rng.random();
            let theta = if u3 > 0.5 { p.mu() + f.acos() } else { p.mu() - f.acos() };
            return reduce_2pi(theta);
        }
    }
}

/// Draw from vM2(mu, kappa) on `[0, pi)` via the angle-halving pushforward
/// of a vM(2 mu, kappa) draw.
pub fn sample_vm2<R: Rng + ?Sized>(p: &VM2Params, rng: &mut R) -> f64 {
    let doubled = VMParams::new(reduce_2pi(2.0 * p.mu()), p.kappa())
        .expect("valid VM2Params double to valid VMParams");
    reduce_pi(0.5 * sample_vm(&doubled, rng))
}

/// Draw from GvM(mu1, mu2, kappa1, kappa2) by rejection: propose from
/// vM(mu1, kappa1) and accept with probability
/// `exp{kappa2 [cos 2(theta - mu2) - 1]}`. Expected acceptance is at
/// least `exp(-2 kappa2)`; a cap guards against pathological inputs.
pub fn sample_gvm<R: Rng + ?Sized>(p: &GvMParams, rng: &mut R) -> Result<f64> {
    let proposal = VMParams::new(p.mu1(), p.kappa1())?;
    let mut rejected: u64 = 0;
    loop {
        let theta = sample_vm(&proposal, rng);
        let log_accept = p.kappa2() * ((2.0 * (theta - p.mu2())).cos() - 1.0);
        let u: f64 = rng.random();
        if u.ln() < log_accept {
            return Ok(theta);
        }
        rejected += 1;
        if rejected >= GVM_REJECTION_CAP {
            return Err(Error::RejectionCap(GVM_REJECTION_CAP));
        }
    }
}

/// Two-component axial vM mixture prior over the shift parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureVM2Prior {
    xi: f64,
    comp1: VM2Params,
    comp2: VM2Params,
}

impl MixtureVM2Prior {
    pub fn new(xi: f64, comp1: VM2Params, comp2: VM2Params) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::InvalidParameter(format!("mixture weight must be in [0,1], got {xi}")));
        }
        Ok(Self { xi, comp1, comp2 })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }
    pub fn comp1(&self) -> &VM2Params {
        &self.comp1
    }
    pub fn comp2(&self) -> &VM2Params {
        &self.comp2
    }

    pub fn log_density(&self, theta: f64) -> Result<f64> {
        let l1 = crate::models::vm2_log_density(theta, &self.comp1)?;
        let l2 = crate::models::vm2_log_density(theta, &self.comp2)?;
        Ok(crate::logsumexp2(self.xi.ln() + l1, (1.0 - self.xi).ln() + l2))
    }
}

/// Draw from the vM2 mixture: Bernoulli(xi) component choice, then a vM2 draw.
pub fn sample_mixture_vm2<R: Rng + ?Sized>(m: &MixtureVM2Prior, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    if u < m.xi() {
        sample_vm2(m.comp1(), rng)
    } else {
        sample_vm2(m.comp2(), rng)
    }
}

/// Uniform prior over an interval, used for the concentration kappa2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformPrior {
    lo: f64,
    hi: f64,
}

impl UniformPrior {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidParameter(format!("uniform prior needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn density(&self, x: f64) -> f64 {
        if (self.lo..=self.hi).contains(&x) {
            1.0 / (self.hi - self.lo)
        } else {
            0.0
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        rng.random_range(self.lo..self.hi)
    }
}
