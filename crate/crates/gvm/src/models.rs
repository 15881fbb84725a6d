//! Circular model types and densities: von Mises (vM), axial von Mises
//! (vM2) and the generalized von Mises (GvM), together with the GvM
//! normalizing constant and its structural predicates (mode structure,
//! axial-symmetry characterization).

use std::f64::consts::PI;

use crate::bessel::{bessel_i_scaled, log_bessel_i0, MAX_UNSCALED_ARG};
use crate::error::{Error, Result};

pub const TAU: f64 = 2.0 * PI;
pub const LN_2PI: f64 = 1.837877066409345483560659472811;

/// Reduce an angle into `[0, 2*pi)`. Idempotent.
pub fn reduce_2pi(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r == TAU {
        0.0
    } else {
        r
    }
}

/// Reduce an angle into `[0, pi)`. Idempotent.
pub fn reduce_pi(theta: f64) -> f64 {
    let r = theta.rem_euclid(PI);
    if r == PI {
        0.0
    } else {
        r
    }
}

/// Parameters of the four-parameter GvM density
/// `f(theta) = exp{k1 cos(theta - mu1) + k2 cos 2(theta - mu2)} / (2 pi G0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GvMParams {
    mu1: f64,
    mu2: f64,
    kappa1: f64,
    kappa2: f64,
}

impl GvMParams {
    pub fn new(mu1: f64, mu2: f64, kappa1: f64, kappa2: f64) -> Result<Self> {
        if !(kappa1 > 0.0) || !kappa1.is_finite() {
            return Err(Error::InvalidParameter(format!("kappa1 must be > 0, got {kappa1}")));
        }
        if !(kappa2 > 0.0) || !kappa2.is_finite() {
            return Err(Error::InvalidParameter(format!("kappa2 must be > 0, got {kappa2}")));
        }
        if !mu1.is_finite() || !mu2.is_finite() {
            return Err(Error::InvalidParameter("mu1/mu2 must be finite".into()));
        }
        Ok(Self { mu1: reduce_2pi(mu1), mu2: reduce_pi(mu2), kappa1, kappa2 })
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }
    pub fn mu2(&self) -> f64 {
        self.mu2
    }
    pub fn kappa1(&self) -> f64 {
        self.kappa1
    }
    pub fn kappa2(&self) -> f64 {
        self.kappa2
    }

    /// Shift between the two cosine components, `(mu1 - mu2) mod pi`.
    pub fn delta(&self) -> f64 {
        reduce_pi(self.mu1 - self.mu2)
    }
}

/// von Mises parameters for the density `exp{k cos(theta - mu)} / (2 pi I0(k))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VMParams {
    mu: f64,
    kappa: f64,
}

impl VMParams {
    pub fn new(mu: f64, kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!("kappa must be > 0, got {kappa}")));
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParameter("mu must be finite".into()));
        }
        Ok(Self { mu: reduce_2pi(mu), kappa })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Axial von Mises parameters for the density on `[0, pi)`,
/// `exp{k cos 2(theta - mu)} / (pi I0(k))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VM2Params {
    mu: f64,
    kappa: f64,
}

impl VM2Params {
    pub fn new(mu: f64, kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!("kappa must be > 0, got {kappa}")));
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParameter("mu must be finite".into()));
        }
        Ok(Self { mu: reduce_pi(mu), kappa })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Mode structure of a GvM density with `delta = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum ModeStructure {
    Unimodal { mode: f64 },
    Bimodal { modes: [f64; 2] },
}

const MAX_SERIES_TERMS: usize = 500;

/// The Fourier-Bessel series for the GvM normalizing constant with the
/// concentrations fixed:
/// `G0(d) = I0(k1) I0(k2) + 2 sum_j I_{2j}(k1) I_j(k2) cos(2 j d)`.
///
/// The coefficients do not depend on `delta`, so one instance serves any
/// number of evaluations at different shifts. Internally everything is
/// exponentially scaled; `log_eval` is exact up to the series truncation
/// even when `I0(k1) I0(k2)` would overflow a plain f64.
#[derive(Debug, Clone)]
pub struct GvmNormSeries {
    /// Scaled coefficients: c[0] = I0(k1) I0(k2) e^{-k1-k2},
    /// c[j] = I_{2j}(k1) I_j(k2) e^{-k1-k2} for j >= 1.
    coeffs: Vec<f64>,
    kappa1: f64,
    kappa2: f64,
    log_scale: f64,
}

impl GvmNormSeries {
    /// Build the series for `kappa1 > 0`, `kappa2 >= 0` (the `kappa2 = 0`
    /// boundary is allowed here so that the vM limit is representable).
    pub fn new(kappa1: f64, kappa2: f64) -> Result<Self> {
        if !(kappa1 > 0.0) || !(kappa2 >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "normalizing constant requires kappa1 > 0, kappa2 >= 0; got ({kappa1}, {kappa2})"
            )));
        }
        if kappa1 > MAX_UNSCALED_ARG || kappa2 > MAX_UNSCALED_ARG {
            return Err(Error::BesselOverflow(kappa1.max(kappa2)));
        }
        let s1 = bessel_i_scaled(0, kappa1);
        let s2 = bessel_i_scaled(0, kappa2);
        let mut coeffs = vec![s1 * s2];
        let mut bound = coeffs[0];
        for j in 1..=MAX_SERIES_TERMS {
            let c = bessel_i_scaled(2 * j as u32, kappa1) * bessel_i_scaled(j as u32, kappa2);
            if c < 1e-16 * bound {
                return Ok(Self { coeffs, kappa1, kappa2, log_scale: kappa1 + kappa2 });
            }
            coeffs.push(c);
            bound += 2.0 * c;
        }
        Err(Error::SeriesNonConvergence(MAX_SERIES_TERMS))
    }

    /// `G0(delta, kappa1, kappa2)` on the linear scale.
    pub fn eval(&self, delta: f64) -> f64 {
        self.log_eval(delta).exp()
    }

    /// `log G0(delta, kappa1, kappa2)`.
    pub fn log_eval(&self, delta: f64) -> f64 {
        let mut sum = self.coeffs[0];
        let mut sum_abs = self.coeffs[0];
        for (j, c) in self.coeffs.iter().enumerate().skip(1) {
            let term = 2.0 * c * (2.0 * j as f64 * delta).cos();
            sum += term;
            sum_abs += term.abs();
        }
        // Near delta = pi/2 with both concentrations large the series
        // cancels by many orders of magnitude and the rounding noise of
        // the coefficients dominates; switch to quadrature of the scaled
        // integrand, which has no cancellation.
        if sum <= 1e-2 * sum_abs {
            return self.log_scale + self.quad_scaled(delta).ln();
        }
        self.log_scale + sum.ln()
    }

    /// `e^{-k1-k2} G0(delta)` by trapezoid quadrature of the (periodic,
    /// entire) scaled integrand, with node doubling until convergence.
    /// The integrand lies in (0, 1], so compensated summation keeps the
    /// result near machine precision.
    fn quad_scaled(&self, delta: f64) -> f64 {
        let f = |t: f64| {
            (self.kappa1 * (t.cos() - 1.0) + self.kappa2 * ((2.0 * (t + delta)).cos() - 1.0)).exp()
        };
        let mut n = 256usize;
        let mut prev = f64::NAN;
        loop {
            let h = TAU / n as f64;
            let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
            for i in 0..n {
                let y = f(i as f64 * h) - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            let value = sum / n as f64;
            if (value - prev).abs() <= 1e-14 * value || n >= 1 << 21 {
                return value;
            }
            prev = value;
            n *= 2;
        }
    }
}

/// GvM normalizing constant `G0(delta, kappa1, kappa2)`.
pub fn gvm_norm_const(delta: f64, kappa1: f64, kappa2: f64) -> Result<f64> {
    Ok(GvmNormSeries::new(kappa1, kappa2)?.eval(delta))
}

/// Log of the GvM density at `theta`.
pub fn gvm_log_density(theta: f64, p: &GvMParams) -> f64 {
    let series = GvmNormSeries::new(p.kappa1, p.kappa2)
        .expect("valid GvMParams imply a convergent normalizing series");
    gvm_log_density_with(theta, p, &series)
}

/// Same as [`gvm_log_density`] with the normalizing series precomputed,
/// for callers evaluating many points under one parameter set.
pub fn gvm_log_density_with(theta: f64, p: &GvMParams, series: &GvmNormSeries) -> f64 {
    p.kappa1 * (theta - p.mu1).cos() + p.kappa2 * (2.0 * (theta - p.mu2)).cos()
        - LN_2PI
        - series.log_eval(p.delta())
}

/// Log of the vM density at `theta`.
pub fn vm_log_density(theta: f64, p: &VMParams) -> f64 {
    p.kappa * (theta - p.mu).cos() - LN_2PI - log_bessel_i0(p.kappa)
}

/// Log of the axial vM density at `theta` in `[0, pi)`.
pub fn vm2_log_density(theta: f64, p: &VM2Params) -> Result<f64> {
    if !(0.0..PI).contains(&theta) {
        return Err(Error::Domain(format!("vm2 density is defined on [0, pi), got {theta}")));
    }
    Ok(p.kappa * (2.0 * (theta - p.mu)).cos() - PI.ln() - log_bessel_i0(p.kappa))
}

/// Mode classification for the symmetric (`delta = 0`) GvM: bimodal with
/// modes at `mu1` and `mu1 + pi` iff `kappa1 < 4 kappa2`, else unimodal
/// at `mu1`.
pub fn classify_modes(p: &GvMParams) -> Result<ModeStructure> {
    let delta = p.delta();
    if delta.min(PI - delta) > 1e-12 {
        return Err(Error::UnsupportedCase(format!(
            "mode classification requires delta = 0, got delta = {delta}"
        )));
    }
    if p.kappa1 < 4.0 * p.kappa2 {
        Ok(ModeStructure::Bimodal { modes: [p.mu1, reduce_2pi(p.mu1 + PI)] })
    } else {
        Ok(ModeStructure::Unimodal { mode: p.mu1 })
    }
}

/// Coefficients `(a1, b1, a2, b2)` of the trigonometric polynomial whose
/// vanishing characterizes symmetry of the GvM density about `alpha / 2`:
/// `a_j = k_j [cos(j mu_j) - cos(j (alpha - mu_j))]`,
/// `b_j = k_j [sin(j mu_j) - sin(j (alpha - mu_j))]`, j = 1, 2.
pub fn axial_symmetry_residual(p: &GvMParams, alpha: f64) -> [f64; 4] {
    let a1 = p.kappa1 * (p.mu1.cos() - (alpha - p.mu1).cos());
    let b1 = p.kappa1 * (p.mu1.sin() - (alpha - p.mu1).sin());
    let a2 = p.kappa2 * ((2.0 * p.mu2).cos() - (2.0 * (alpha - p.mu2)).cos());
    let b2 = p.kappa2 * ((2.0 * p.mu2).sin() - (2.0 * (alpha - p.mu2)).sin());
    [a1, b1, a2, b2]
}

/// Axial-symmetry test: the GvM density is symmetric about an axis iff
/// `delta = 0` or `delta = pi/2` (circularly on `[0, pi)`), with the axis
/// at angle `mu1`. Returns `Some(axis)` when symmetric within `tol`.
pub fn is_axially_symmetric(p: &GvMParams, tol: f64) -> Option<f64> {
    assert!(tol > 0.0, "tolerance must be positive");
    let d = p.delta();
    let dist = d.min(PI - d).min((d - PI / 2.0).abs());
    if dist <= tol {
        Some(p.mu1)
    } else {
        None
    }
}
