//! Probability-perturbation Bayesian tests.
//!
//! Each test replaces a continuous prior on the tested parameter by a
//! perturbed prior with point mass at the null value(s), the mass being
//! the prior probability of an epsilon-neighbourhood. The Bayes factor
//! then reduces to the null likelihood over a Monte Carlo integral of the
//! likelihood against the prior, restricted to the complement of the
//! neighbourhood. All likelihood aggregation happens in log space.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::inference::{DeltaLoglik, DeltaNuisance, Kappa2Loglik, Kappa2Nuisance, Sample};
use crate::logsumexp2;
use crate::models::VM2Params;
use crate::quad::adaptive_simpson;
use crate::sampling::{sample_mixture_vm2, sample_vm2, MixtureVM2Prior, UniformPrior};

/// Which null hypothesis is being tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestKind {
    /// H0: delta = 0 (no shift between cosines).
    NoShift,
    /// H0: delta = 0 or delta = pi/2 (axial symmetry).
    AxialSymmetry,
    /// H0: kappa2 = 0 (vM axial symmetry).
    VmSymmetry,
}

/// Neighbourhood length and test selection for the perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationConfig {
    epsilon: f64,
    test_kind: TestKind,
}

impl PerturbationConfig {
    pub fn new(epsilon: f64, test_kind: TestKind) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < PI / 4.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, pi/4) to keep the null neighbourhoods disjoint, got {epsilon}"
            )));
        }
        Ok(Self { epsilon, test_kind })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    pub fn test_kind(&self) -> TestKind {
        self.test_kind
    }

    /// Membership of the complement set over which the marginal integral
    /// runs: A_eps^c, B_eps^c or C_eps^c depending on the test.
    pub fn in_complement(&self, x: f64) -> bool {
        let e2 = 0.5 * self.epsilon;
        match self.test_kind {
            TestKind::NoShift => x > e2 && x < PI - e2,
            TestKind::AxialSymmetry => {
                (x > e2 && x < PI / 2.0 - e2) || (x > PI / 2.0 + e2 && x < PI - e2)
            }
            TestKind::VmSymmetry => x > self.epsilon,
        }
    }
}

/// Continuous prior over the tested parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorSpec {
    /// vM2 prior over delta on [0, pi).
    Vm2(VM2Params),
    /// Two-component vM2 mixture over delta on [0, pi).
    Mixture(MixtureVM2Prior),
    /// Uniform prior, either over kappa2 or (in test harnesses) over delta.
    Uniform(UniformPrior),
}

impl PriorSpec {
    pub fn density(&self, x: f64) -> f64 {
        match self {
            PriorSpec::Vm2(p) => crate::models::vm2_log_density(x, p).map_or(0.0, f64::exp),
            PriorSpec::Mixture(m) => m.log_density(x).map_or(0.0, f64::exp),
            PriorSpec::Uniform(u) => u.density(x),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            PriorSpec::Vm2(p) => sample_vm2(p, rng),
            PriorSpec::Mixture(m) => sample_mixture_vm2(m, rng),
            PriorSpec::Uniform(u) => u.sample(rng),
        }
    }

    /// Support of the prior (domain of the tested parameter).
    pub fn support(&self) -> (f64, f64) {
        match self {
            PriorSpec::Vm2(_) | PriorSpec::Mixture(_) => (0.0, PI),
            PriorSpec::Uniform(u) => (u.lo(), u.hi()),
        }
    }
}

/// The perturbed prior: point masses at the null value(s) plus the
/// original continuous prior reweighted by one minus the total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedPrior {
    atoms: Vec<(f64, f64)>,
    continuous: PriorSpec,
}

impl PerturbedPrior {
    /// Atom locations and masses: `{(0, p0)}` or `{(0, p0), (pi/2, p_pi2)}`.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn total_atom_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, m)| m).sum()
    }

    pub fn continuous(&self) -> &PriorSpec {
        &self.continuous
    }

    /// Prior odds of the null, `R0 = p / (1 - p)` with `p` the total atom mass.
    pub fn prior_odds(&self) -> f64 {
        let p = self.total_atom_mass();
        p / (1.0 - p)
    }
}

const P0_QUAD_TOL: f64 = 1e-8;

/// Compute the perturbation atom masses: the prior probability of the
/// epsilon-neighbourhood of each null point (circular on the circle of
/// circumference pi for the delta tests, the interval `[0, eps]` for the
/// kappa2 test).
pub fn compute_p0(prior: &PriorSpec, cfg: &PerturbationConfig) -> Result<PerturbedPrior> {
    let e2 = 0.5 * cfg.epsilon();
    let g = |x: f64| prior.density(x);
    let atoms = match (cfg.test_kind(), prior) {
        (TestKind::NoShift, PriorSpec::Vm2(_)) => {
            let p0 = adaptive_simpson(g, 0.0, e2, P0_QUAD_TOL)
                + adaptive_simpson(g, PI - e2, PI, P0_QUAD_TOL);
            vec![(0.0, p0)]
        }
        (TestKind::AxialSymmetry, PriorSpec::Mixture(_)) => {
            let p0 = adaptive_simpson(g, 0.0, e2, P0_QUAD_TOL)
                + adaptive_simpson(g, PI - e2, PI, P0_QUAD_TOL);
            let p_half = adaptive_simpson(g, PI / 2.0 - e2, PI / 2.0 + e2, P0_QUAD_TOL);
            vec![(0.0, p0), (PI / 2.0, p_half)]
        }
        (TestKind::VmSymmetry, PriorSpec::Uniform(u)) => {
            let p0 = adaptive_simpson(g, u.lo().max(0.0), cfg.epsilon().min(u.hi()), P0_QUAD_TOL);
            vec![(0.0, p0)]
        }
        (kind, _) => {
            return Err(Error::PriorMismatch(format!(
                "{kind:?} expects the matching prior family (vm2 / mixture / uniform)"
            )))
        }
    };
    for &(loc, m) in &atoms {
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "perturbation mass at {loc} is {m}, outside (0, 1)"
            )));
        }
    }
    if atoms.iter().map(|(_, m)| m).sum::<f64>() >= 1.0 {
        return Err(Error::InvalidParameter("total atom mass must stay below 1".into()));
    }
    Ok(PerturbedPrior { atoms, continuous: prior.clone() })
}

/// Nuisance parameters for whichever test is being run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NuisanceSpec {
    Delta(DeltaNuisance),
    Kappa2(Kappa2Nuisance),
}

/// Log-likelihood of the tested parameter with everything else fixed,
/// precomputed once per sample.
enum TestLoglik {
    Delta(DeltaLoglik),
    Kappa2(Kappa2Loglik),
}

impl TestLoglik {
    fn build(sample: &Sample, cfg: &PerturbationConfig, nuis: &NuisanceSpec) -> Result<Self> {
        match (cfg.test_kind(), nuis) {
            (TestKind::NoShift | TestKind::AxialSymmetry, NuisanceSpec::Delta(n)) => {
                Ok(TestLoglik::Delta(DeltaLoglik::new(sample, n)?))
            }
            (TestKind::VmSymmetry, NuisanceSpec::Kappa2(n)) => {
                Ok(TestLoglik::Kappa2(Kappa2Loglik::new(sample, n)?))
            }
            (kind, _) => Err(Error::PriorMismatch(format!(
                "{kind:?} requires the matching nuisance variant"
            ))),
        }
    }

    fn eval(&self, x: f64) -> f64 {
        match self {
            TestLoglik::Delta(l) => l.eval(x),
            TestLoglik::Kappa2(l) => l.eval(x),
        }
    }
}

/// Monte Carlo estimate of `int_{complement} f(theta | x) g(x) dx`:
/// draws from the prior, keeps the draws outside the null neighbourhood,
/// aggregates in log space with a max shift.
///
/// Returns `(log_integral, se_log)` where `se_log` is the delta-method
/// standard error of the log estimate.
pub fn mc_integral_complement<R: Rng + ?Sized>(
    sample: &Sample,
    prior: &PriorSpec,
    cfg: &PerturbationConfig,
    nuis: &NuisanceSpec,
    s: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    let loglik = TestLoglik::build(sample, cfg, nuis)?;
    mc_integral_with(&loglik, prior, cfg, s, rng)
}

fn mc_integral_with<R: Rng + ?Sized>(
    loglik: &TestLoglik,
    prior: &PriorSpec,
    cfg: &PerturbationConfig,
    s: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    assert!(s >= 1, "Monte Carlo size must be positive");
    // First pass: draw and evaluate, tracking the max for the shift.
    let mut logs = Vec::with_capacity(s);
    let mut max = f64::NEG_INFINITY;
    for _ in 0..s {
        let x = prior.sample(rng);
        if cfg.in_complement(x) {
            let l = loglik.eval(x);
            if l > max {
                max = l;
            }
            logs.push(Some(l));
        } else {
            logs.push(None);
        }
    }
    if max == f64::NEG_INFINITY {
        return Err(Error::DegenerateEstimate);
    }
    // Shifted terms t_i = exp(l_i - max) (zero for excluded draws);
    // estimate is exp(max) * mean(t).
    let terms: Vec<f64> = logs.iter().map(|l| l.map_or(0.0, |l| (l - max).exp())).collect();
    let mean: f64 = terms.iter().sum::<f64>() / s as f64;
    let var: f64 = if s > 1 {
        terms.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (s as f64 - 1.0)
    } else {
        0.0
    };
    let se_of_mean = (var / s as f64).sqrt();
    Ok((max + mean.ln(), se_of_mean / mean))
}

/// Qualitative evidence scale for a Bayes factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Evidence {
    Negative,
    BareMention,
    Positive,
    Substantial,
    Strong,
    Decisive,
}

impl std::fmt::Display for Evidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Evidence::Negative => "negative",
            Evidence::BareMention => "bare mention",
            Evidence::Positive => "positive",
            Evidence::Substantial => "substantial",
            Evidence::Strong => "strong",
            Evidence::Decisive => "decisive",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Evidence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negative" => Ok(Evidence::Negative),
            "bare mention" => Ok(Evidence::BareMention),
            "positive" => Ok(Evidence::Positive),
            "substantial" => Ok(Evidence::Substantial),
            "strong" => Ok(Evidence::Strong),
            "decisive" => Ok(Evidence::Decisive),
            other => Err(Error::InvalidParameter(format!("unknown evidence category '{other}'"))),
        }
    }
}

/// Map a Bayes factor to its evidence category. Boundaries are half-open
/// upward: e.g. exactly 5 is "substantial".
pub fn interpret_bf(b01: f64) -> Result<Evidence> {
    if !(b01 > 0.0) {
        return Err(Error::Domain(format!("Bayes factor must be > 0, got {b01}")));
    }
    Ok(if b01 < 1.0 {
        Evidence::Negative
    } else if b01 < 1.5 {
        Evidence::BareMention
    } else if b01 < 5.0 {
        Evidence::Positive
    } else if b01 < 10.0 {
        Evidence::Substantial
    } else if b01 < 20.0 {
        Evidence::Strong
    } else {
        Evidence::Decisive
    })
}

/// Same scale on the log scale; robust to `exp(log_b01)` under/overflow
/// for extreme evidence.
pub fn interpret_log_bf(log_b01: f64) -> Result<Evidence> {
    if log_b01.is_nan() {
        return Err(Error::Domain("log Bayes factor is NaN".into()));
    }
    Ok(if log_b01 < 0.0 {
        Evidence::Negative
    } else if log_b01 < 1.5_f64.ln() {
        Evidence::BareMention
    } else if log_b01 < 5.0_f64.ln() {
        Evidence::Positive
    } else if log_b01 < 10.0_f64.ln() {
        Evidence::Substantial
    } else if log_b01 < 20.0_f64.ln() {
        Evidence::Strong
    } else {
        Evidence::Decisive
    })
}

/// A Bayes factor estimate with its Monte Carlo diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesFactorResult {
    /// B01 on the linear scale.
    pub b01: f64,
    /// log B01 (the internally computed quantity).
    pub log_b01: f64,
    /// Delta-method standard error of `b01`.
    pub mc_std_error: f64,
    /// Monte Carlo draws used for the denominator integral.
    pub s_used: usize,
    pub evidence: Evidence,
    /// Log numerator (null log-likelihood, mass-weighted for the
    /// axial-symmetry test).
    pub numerator_loglik: f64,
    /// Log of the Monte Carlo denominator integral.
    pub denominator_log_integral: f64,
}

fn finish(
    log_num: f64,
    log_integral: f64,
    se_log: f64,
    s: usize,
) -> Result<BayesFactorResult> {
    let log_b01 = log_num - log_integral;
    let b01 = log_b01.exp();
    Ok(BayesFactorResult {
        b01,
        log_b01,
        mc_std_error: b01 * se_log,
        s_used: s,
        evidence: interpret_log_bf(log_b01)?,
        numerator_loglik: log_num,
        denominator_log_integral: log_integral,
    })
}

/// Bayes factor for H0: delta = 0.
/// `B01 ~ f(theta | 0) / int_{A_eps^c} f(theta | d') g(d') dd'`.
pub fn bf_no_shift<R: Rng + ?Sized>(
    sample: &Sample,
    prior: &PriorSpec,
    cfg: &PerturbationConfig,
    nuis: &DeltaNuisance,
    s: usize,
    rng: &mut R,
) -> Result<BayesFactorResult> {
    if cfg.test_kind() != TestKind::NoShift {
        return Err(Error::PriorMismatch("bf_no_shift requires TestKind::NoShift".into()));
    }
    let loglik = TestLoglik::Delta(DeltaLoglik::new(sample, nuis)?);
    let l0 = loglik.eval(0.0);
    let (log_integral, se_log) = mc_integral_with(&loglik, prior, cfg, s, rng)?;
    finish(l0, log_integral, se_log, s)
}

/// Bayes factor for H0: delta = 0 or pi/2, with the two null likelihoods
/// weighted by their perturbation masses:
/// `B01 ~ [p0 f(theta|0) + p_pi2 f(theta|pi/2)] / [(p0 + p_pi2) I1]`.
pub fn bf_axial_symmetry<R: Rng + ?Sized>(
    sample: &Sample,
    prior: &PriorSpec,
    cfg: &PerturbationConfig,
    nuis: &DeltaNuisance,
    s: usize,
    rng: &mut R,
) -> Result<BayesFactorResult> {
    if cfg.test_kind() != TestKind::AxialSymmetry {
        return Err(Error::PriorMismatch("bf_axial_symmetry requires TestKind::AxialSymmetry".into()));
    }
    let perturbed = compute_p0(prior, cfg)?;
    let [(_, p0), (_, p_half)]: [(f64, f64); 2] =
        perturbed.atoms().try_into().expect("axial symmetry perturbation has two atoms");
    let loglik = TestLoglik::Delta(DeltaLoglik::new(sample, nuis)?);
    let l0 = loglik.eval(0.0);
    let l_half = loglik.eval(PI / 2.0);
    let log_num = logsumexp2(p0.ln() + l0, p_half.ln() + l_half) - (p0 + p_half).ln();
    let (log_integral, se_log) = mc_integral_with(&loglik, prior, cfg, s, rng)?;
    finish(log_num, log_integral, se_log, s)
}

/// Bayes factor for H0: kappa2 = 0 (vM against GvM alternatives).
pub fn bf_vm_symmetry<R: Rng + ?Sized>(
    sample: &Sample,
    prior: &PriorSpec,
    cfg: &PerturbationConfig,
    nuis: &Kappa2Nuisance,
    s: usize,
    rng: &mut R,
) -> Result<BayesFactorResult> {
    if cfg.test_kind() != TestKind::VmSymmetry {
        return Err(Error::PriorMismatch("bf_vm_symmetry requires TestKind::VmSymmetry".into()));
    }
    let loglik = TestLoglik::Kappa2(Kappa2Loglik::new(sample, nuis)?);
    let l0 = loglik.eval(0.0);
    let (log_integral, se_log) = mc_integral_with(&loglik, prior, cfg, s, rng)?;
    finish(l0, log_integral, se_log, s)
}

/// Dispatch to the matching Bayes factor for a test kind.
pub fn bayes_factor<R: Rng + ?Sized>(
    sample: &Sample,
    prior: &PriorSpec,
    cfg: &PerturbationConfig,
    nuis: &NuisanceSpec,
    s: usize,
    rng: &mut R,
) -> Result<BayesFactorResult> {
    match (cfg.test_kind(), nuis) {
        (TestKind::NoShift, NuisanceSpec::Delta(n)) => bf_no_shift(sample, prior, cfg, n, s, rng),
        (TestKind::AxialSymmetry, NuisanceSpec::Delta(n)) => {
            bf_axial_symmetry(sample, prior, cfg, n, s, rng)
        }
        (TestKind::VmSymmetry, NuisanceSpec::Kappa2(n)) => {
            bf_vm_symmetry(sample, prior, cfg, n, s, rng)
        }
        (kind, _) => Err(Error::PriorMismatch(format!("{kind:?} requires the matching nuisance"))),
    }
}

/// Posterior over the tested parameter under the perturbed prior: point
/// masses at the null value(s) and a tabulated continuous density over
/// the complement set.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorSummary {
    /// Posterior masses at the null points, same order as the prior atoms.
    pub atom_masses: Vec<(f64, f64)>,
    /// Grid over the support of the tested parameter.
    pub grid: Vec<f64>,
    /// Posterior density values on the grid (zero inside the null
    /// neighbourhoods).
    pub density: Vec<f64>,
}

impl PosteriorSummary {
    /// Total mass: atoms plus trapezoid integral of the continuous part.
    pub fn total_mass(&self) -> f64 {
        let atoms: f64 = self.atom_masses.iter().map(|(_, m)| m).sum();
        atoms + trapezoid_mass(&self.grid, &self.density)
    }
}

fn trapezoid_mass(grid: &[f64], density: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 1..grid.len() {
        total += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
    }
    total
}

/// Posterior summary via the odds identity: the posterior null mass is
/// `R1 / (1 + R1)` with `R1 = B01 R0`, split across atoms proportionally
/// to `p_k f(theta | x_k)`; the continuous part is proportional to
/// `f(theta | x) g(x)` on the complement set and normalized so the total
/// mass is one.
pub fn posterior_summary<R: Rng + ?Sized>(
    sample: &Sample,
    prior: &PriorSpec,
    cfg: &PerturbationConfig,
    nuis: &NuisanceSpec,
    s: usize,
    grid_size: usize,
    rng: &mut R,
) -> Result<PosteriorSummary> {
    assert!(grid_size >= 64, "grid_size must be at least 64");
    let perturbed = compute_p0(prior, cfg)?;
    let bf = bayes_factor(sample, prior, cfg, nuis, s, rng)?;
    let r1 = bf.b01 * perturbed.prior_odds();
    let null_mass = r1 / (1.0 + r1);

    let loglik = TestLoglik::build(sample, cfg, nuis)?;
    // Split the null mass across atoms by mass-weighted likelihood.
    let log_weights: Vec<f64> =
        perturbed.atoms().iter().map(|&(loc, m)| m.ln() + loglik.eval(loc)).collect();
    let shift = log_weights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_weights.iter().map(|w| (w - shift).exp()).collect();
    let wsum: f64 = weights.iter().sum();
    let atom_masses: Vec<(f64, f64)> = perturbed
        .atoms()
        .iter()
        .zip(&weights)
        .map(|(&(loc, _), w)| (loc, null_mass * w / wsum))
        .collect();

    // Continuous part on the complement, normalized to 1 - null_mass.
    let (lo, hi) = prior.support();
    let grid: Vec<f64> =
        (0..grid_size).map(|i| lo + (hi - lo) * i as f64 / (grid_size - 1) as f64).collect();
    let mut log_unnorm: Vec<Option<f64>> = grid
        .iter()
        .map(|&x| {
            let g = prior.density(x);
            if cfg.in_complement(x) && g > 0.0 {
                Some(loglik.eval(x) + g.ln())
            } else {
                None
            }
        })
        .collect();
    // Support endpoint of the uniform prior is open on the right in the
    // sampler but closed in the density; keep it consistent with the grid.
    if let Some(last) = log_unnorm.last_mut() {
        if last.is_none() && cfg.in_complement(hi) && prior.density(hi - 1e-12 * (hi - lo)) > 0.0 {
            *last = Some(loglik.eval(hi) + prior.density(hi - 1e-12 * (hi - lo)).ln());
        }
    }
    let shift = log_unnorm.iter().flatten().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut density: Vec<f64> =
        log_unnorm.iter().map(|l| l.map_or(0.0, |l| (l - shift).exp())).collect();
    let raw_mass = trapezoid_mass(&grid, &density);
    if raw_mass > 0.0 {
        let scale = (1.0 - null_mass) / raw_mass;
        for d in &mut density {
            *d *= scale;
        }
    }
    Ok(PosteriorSummary { atom_masses, grid, density })
}
