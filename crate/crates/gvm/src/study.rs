//! Monte Carlo study harness: named simulation cases, replicated Bayes
//! factors over independent RNG streams, and normal confidence intervals
//! for the mean Bayes factor.

use std::f64::consts::PI;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::bayes::{bayes_factor, interpret_bf, Evidence, NuisanceSpec, PerturbationConfig, PriorSpec, TestKind};
use crate::error::{Error, Result};
use crate::inference::{DeltaNuisance, Kappa2Nuisance, Sample};
use crate::models::{reduce_pi, GvMParams, VM2Params, VMParams};
use crate::sampling::{sample_gvm, sample_vm, stream_rng, MixtureVM2Prior, UniformPrior};

/// The named simulation cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseName {
    D1,
    D1Prime,
    D2,
    S1,
    S2,
    S3,
    K2,
}

impl CaseName {
    pub const ALL: [CaseName; 7] = [
        CaseName::D1,
        CaseName::D1Prime,
        CaseName::D2,
        CaseName::S1,
        CaseName::S2,
        CaseName::S3,
        CaseName::K2,
    ];
}

impl std::fmt::Display for CaseName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseName::D1 => "D1",
            CaseName::D1Prime => "D1prime",
            CaseName::D2 => "D2",
            CaseName::S1 => "S1",
            CaseName::S2 => "S2",
            CaseName::S3 => "S3",
            CaseName::K2 => "K2",
        };
        f.write_str(s)
    }
}

impl FromStr for CaseName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d1" => Ok(CaseName::D1),
            "d1prime" | "d1'" => Ok(CaseName::D1Prime),
            "d2" => Ok(CaseName::D2),
            "s1" => Ok(CaseName::S1),
            "s2" => Ok(CaseName::S2),
            "s3" => Ok(CaseName::S3),
            "k2" => Ok(CaseName::K2),
            other => Err(Error::UnknownCase(other.to_string())),
        }
    }
}

/// How each replicate's data are generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    /// Draw a shift from the prior per replicate, set
    /// `mu2 = (mu1 - delta) mod pi`, then sample the GvM.
    PriorDrawDelta,
    /// All replicates use the same shift value.
    FixedDelta(f64),
    /// Replicates come from vM(mu1, kappa1) — the kappa2 = 0 null.
    FixedVm,
}

/// Full configuration of one simulation case.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    pub name: CaseName,
    /// Sample size per replicate.
    pub n: usize,
    /// Replicates per sequence.
    pub r: usize,
    /// Independent sequences (aggregated in the report).
    pub sequences: usize,
    /// Monte Carlo draws for the denominator integral.
    pub s: usize,
    pub prior: PriorSpec,
    pub cfg: PerturbationConfig,
    pub generator: Generator,
    pub nuisance: NuisanceSpec,
    pub seed: u64,
    /// Keep every replicate's b01 in the report (memory grows with r).
    pub store_raw: bool,
}

impl CaseSpec {
    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("sample size must be >= 2, got {}", self.n)));
        }
        if self.r < 100 {
            return Err(Error::InvalidParameter(format!("replicates per sequence must be >= 100, got {}", self.r)));
        }
        if self.sequences == 0 || self.s == 0 {
            return Err(Error::InvalidParameter("sequences and s must be positive".into()));
        }
        Ok(())
    }
}

/// Desk-scale defaults; pass `full = true` for the published design.
pub const DESK_R: usize = 2000;
pub const DESK_S: usize = 2000;
pub const FULL_R: usize = 10_000;
pub const FULL_S: usize = 10_000;
pub const DEFAULT_SEED: u64 = 42;

/// Build the published configuration of a named case with desk-scale
/// replication (r = s = 2000, three sequences, n = 50, epsilon = 0.05).
pub fn builtin_case(name: CaseName) -> CaseSpec {
    let delta_nuis = NuisanceSpec::Delta(
        DeltaNuisance::new(PI, 0.1, 5.5).expect("published nuisance values are valid"),
    );
    let vm2 = |nu: f64, tau: f64| VM2Params::new(nu, tau).expect("published prior values are valid");
    let mixture = |tau: f64| {
        PriorSpec::Mixture(
            MixtureVM2Prior::new(0.5, vm2(0.0, tau), vm2(PI / 2.0, tau))
                .expect("published mixture is valid"),
        )
    };
    let cfg = |kind| PerturbationConfig::new(0.05, kind).expect("epsilon 0.05 is in range");

    let (prior, cfg, generator, nuisance) = match name {
        CaseName::D1 => (PriorSpec::Vm2(vm2(0.0, 250.0)), cfg(TestKind::NoShift), Generator::PriorDrawDelta, delta_nuis),
        CaseName::D1Prime => (PriorSpec::Vm2(vm2(0.0, 50.0)), cfg(TestKind::NoShift), Generator::FixedDelta(0.0), delta_nuis),
        CaseName::D2 => (PriorSpec::Vm2(vm2(0.0, 20.0)), cfg(TestKind::NoShift), Generator::FixedDelta(0.0), delta_nuis),
        CaseName::S1 => (mixture(250.0), cfg(TestKind::AxialSymmetry), Generator::PriorDrawDelta, delta_nuis),
        CaseName::S2 => (mixture(20.0), cfg(TestKind::AxialSymmetry), Generator::FixedDelta(0.0), delta_nuis),
        CaseName::S3 => (mixture(20.0), cfg(TestKind::AxialSymmetry), Generator::FixedDelta(PI / 2.0), delta_nuis),
        CaseName::K2 => (
            PriorSpec::Uniform(UniformPrior::new(0.0, 0.5).expect("0 < 0.5")),
            cfg(TestKind::VmSymmetry),
            Generator::FixedVm,
            NuisanceSpec::Kappa2(
                Kappa2Nuisance::new(PI, PI / 2.0, 0.1).expect("published nuisance values are valid"),
            ),
        ),
    };
    CaseSpec {
        name,
        n: 50,
        r: DESK_R,
        sequences: 3,
        s: DESK_S,
        prior,
        cfg,
        generator,
        nuisance,
        seed: DEFAULT_SEED,
        store_raw: false,
    }
}

/// Report of one replicated case.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyReport {
    pub name: CaseName,
    pub per_sequence_means: Vec<f64>,
    pub aggregated_mean: f64,
    pub ci95: (f64, f64),
    pub evidence: Evidence,
    pub wall_time: f64,
    pub all_b01: Option<Vec<f64>>,
}

fn replicate_b01(spec: &CaseSpec, index: usize) -> Result<f64> {
    // Two sub-streams per replicate: one for the data, one for the Monte
    // Carlo integration draws — independent by construction.
    let id = index as u64 + 1;
    let mut rng_data = stream_rng(spec.seed, 2 * id);
    let mut rng_mc = stream_rng(spec.seed, 2 * id + 1);

    let angles: Vec<f64> = match (spec.generator, &spec.nuisance) {
        (Generator::PriorDrawDelta, NuisanceSpec::Delta(nuis)) => {
            let delta = spec.prior.sample(&mut rng_data);
            let mu2 = reduce_pi(nuis.mu1() - delta);
            let p = GvMParams::new(nuis.mu1(), mu2, nuis.kappa1(), nuis.kappa2())?;
            (0..spec.n).map(|_| sample_gvm(&p, &mut rng_data)).collect::<Result<_>>()?
        }
        (Generator::FixedDelta(v), NuisanceSpec::Delta(nuis)) => {
            let mu2 = reduce_pi(nuis.mu1() - v);
            let p = GvMParams::new(nuis.mu1(), mu2, nuis.kappa1(), nuis.kappa2())?;
            (0..spec.n).map(|_| sample_gvm(&p, &mut rng_data)).collect::<Result<_>>()?
        }
        (Generator::FixedVm, NuisanceSpec::Kappa2(nuis)) => {
            let p = VMParams::new(nuis.mu1(), nuis.kappa1())?;
            (0..spec.n).map(|_| sample_vm(&p, &mut rng_data)).collect()
        }
        _ => {
            return Err(Error::PriorMismatch(
                "generator and nuisance variants do not match".into(),
            ))
        }
    };
    let sample = Sample::new(angles)?;
    let bf = bayes_factor(&sample, &spec.prior, &spec.cfg, &spec.nuisance, spec.s, &mut rng_mc)?;
    Ok(bf.b01)
}

/// Run all `r * sequences` replicates of a case in parallel and aggregate.
pub fn run_case(spec: &CaseSpec) -> Result<StudyReport> {
    spec.validate()?;
    let start = Instant::now();
    let total = spec.r * spec.sequences;
    let b01: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|i| {
            replicate_b01(spec, i).map_err(|e| Error::Replicate { index: i, source: Box::new(e) })
        })
        .collect::<Result<_>>()?;

    let per_sequence_means: Vec<f64> = (0..spec.sequences)
        .map(|q| {
            let chunk = &b01[q * spec.r..(q + 1) * spec.r];
            chunk.iter().sum::<f64>() / spec.r as f64
        })
        .collect();
    let (aggregated_mean, lo, hi) = aggregate_ci(&b01, 0.95)?;
    Ok(StudyReport {
        name: spec.name,
        per_sequence_means,
        aggregated_mean,
        ci95: (lo, hi),
        evidence: interpret_bf(aggregated_mean)?,
        wall_time: start.elapsed().as_secs_f64(),
        all_b01: if spec.store_raw { Some(b01) } else { None },
    })
}

/// Normal confidence interval for the mean of the pooled Bayes factors:
/// `mean ± z_{(1+level)/2} sd / sqrt(len)`.
pub fn aggregate_ci(b01_pool: &[f64], level: f64) -> Result<(f64, f64, f64)> {
    if b01_pool.len() < 30 {
        return Err(Error::InsufficientData { needed: 30, got: b01_pool.len() });
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidParameter(format!("level must be in (0,1), got {level}")));
    }
    let n = b01_pool.len() as f64;
    let mean = b01_pool.iter().sum::<f64>() / n;
    let var = b01_pool.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    let half = normal_quantile(0.5 * (1.0 + level)) * (var / n).sqrt();
    Ok((mean, mean - half, mean + half))
}

/// Standard normal quantile (Acklam's rational approximation, relative
/// error below 1.2e-9 — far inside statistical noise here).
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile probability must be in (0,1)");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_names_round_trip() {
        for name in CaseName::ALL {
            assert_eq!(name.to_string().parse::<CaseName>().unwrap(), name);
        }
        assert!(matches!("d3".parse::<CaseName>(), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn builtin_cases_match_published_design() {
        let d1 = builtin_case(CaseName::D1);
        assert!(matches!(d1.prior, PriorSpec::Vm2(p) if p.kappa() == 250.0 && p.mu() == 0.0));
        assert_eq!(d1.generator, Generator::PriorDrawDelta);
        assert_eq!(d1.cfg.epsilon(), 0.05);
        let s3 = builtin_case(CaseName::S3);
        assert_eq!(s3.generator, Generator::FixedDelta(PI / 2.0));
        let k2 = builtin_case(CaseName::K2);
        assert!(matches!(k2.prior, PriorSpec::Uniform(u) if u.lo() == 0.0 && u.hi() == 0.5));
        assert!(matches!(k2.nuisance, NuisanceSpec::Kappa2(_)));
    }

    #[test]
    fn normal_quantile_reference_values() {
        assert!((normal_quantile(0.975) - 1.959964).abs() < 1e-5);
        assert!((normal_quantile(0.5)).abs() < 1e-9);
        assert!((normal_quantile(0.025) + 1.959964).abs() < 1e-5);
        assert!((normal_quantile(0.995) - 2.575829).abs() < 1e-5);
    }

    #[test]
    fn aggregate_ci_constant_and_linear_pools() {
        let constant = vec![5.5; 40];
        let (m, lo, hi) = aggregate_ci(&constant, 0.95).unwrap();
        assert_eq!((m, lo, hi), (5.5, 5.5, 5.5));

        let pool: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        let (m, lo, hi) = aggregate_ci(&pool, 0.95).unwrap();
        assert!((m - 50.5).abs() < 1e-12);
        let sd = (pool.iter().map(|x| (x - 50.5) * (x - 50.5)).sum::<f64>() / 99.0).sqrt();
        let half = 1.959964 * sd / 10.0;
        assert!((hi - m - half).abs() < 1e-4);
        assert!((m - lo - half).abs() < 1e-4);

        assert!(matches!(aggregate_ci(&[1.0; 10], 0.95), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn run_case_is_seed_reproducible() {
        let mut spec = builtin_case(CaseName::D2);
        spec.r = 100;
        spec.sequences = 1;
        spec.s = 100;
        spec.n = 20;
        spec.store_raw = true;
        let a = run_case(&spec).unwrap();
        let b = run_case(&spec).unwrap();
        assert_eq!(a.all_b01, b.all_b01);
        assert_eq!(a.aggregated_mean, b.aggregated_mean);
        assert!(a.ci95.0 <= a.aggregated_mean && a.aggregated_mean <= a.ci95.1);
    }

    #[test]
    fn run_case_rejects_tiny_designs() {
        let mut spec = builtin_case(CaseName::D1);
        spec.r = 10;
        assert!(run_case(&spec).is_err());
    }
}
