//! Likelihoods for the tested parameters (shift `delta`, concentration
//! `kappa2`) and maximum-likelihood fitting of the full GvM model.
//!
//! All likelihoods reduce to the sufficient statistics
//! `sum cos(theta_i - a)`, `sum cos 2(theta_i - a)`, `sum sin 2(theta_i - a)`,
//! so repeated evaluation over Monte Carlo draws is O(1) per draw.

use crate::bessel::{bessel_i_scaled, log_bessel_i0};
use crate::error::{Error, Result};
use crate::models::{
    reduce_2pi, reduce_pi, GvMParams, GvmNormSeries, LN_2PI,
};

/// An ordered sample of angles, each reduced into `[0, 2 pi)`.
///
/// Empty samples are allowed: they carry a flat (constant-one) likelihood,
/// which the Bayes-factor machinery uses as a no-data baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    angles: Vec<f64>,
}

impl Sample {
    pub fn new(angles: impl IntoIterator<Item = f64>) -> Result<Self> {
        let reduced: Vec<f64> = angles
            .into_iter()
            .map(|a| {
                if a.is_finite() {
                    Ok(reduce_2pi(a))
                } else {
                    Err(Error::InvalidParameter(format!("non-finite angle {a}")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { angles: reduced })
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }
}

/// Nuisance values held fixed by the delta tests: `mu1`, `kappa1`,
/// `kappa2` are known; `mu2` is eliminated through `mu2 = mu1 - delta'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaNuisance {
    mu1: f64,
    kappa1: f64,
    kappa2: f64,
}

impl DeltaNuisance {
    pub fn new(mu1: f64, kappa1: f64, kappa2: f64) -> Result<Self> {
        if !(kappa1 > 0.0) || !(kappa2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "nuisance concentrations must be > 0, got ({kappa1}, {kappa2})"
            )));
        }
        Ok(Self { mu1: reduce_2pi(mu1), kappa1, kappa2 })
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }
    pub fn kappa1(&self) -> f64 {
        self.kappa1
    }
    pub fn kappa2(&self) -> f64 {
        self.kappa2
    }
}

/// Nuisance values held fixed by the vM-symmetry test: `mu1`, `mu2`,
/// `kappa1` are known, `kappa2` is tested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kappa2Nuisance {
    mu1: f64,
    mu2: f64,
    kappa1: f64,
}

impl Kappa2Nuisance {
    pub fn new(mu1: f64, mu2: f64, kappa1: f64) -> Result<Self> {
        if !(kappa1 > 0.0) {
            return Err(Error::InvalidParameter(format!("kappa1 must be > 0, got {kappa1}")));
        }
        Ok(Self { mu1: reduce_2pi(mu1), mu2: reduce_pi(mu2), kappa1 })
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

    pub fn delta0(&self) -> f64 {
        reduce_pi(self.mu1 - self.mu2)
    }
}

/// Precomputed log-likelihood of the shift parameter for one sample:
/// `l(d') = k1 C1 + k2 [cos(2d') C2 - sin(2d') S2] - n log(2 pi G0(d'))`
/// with `C1 = sum cos(theta_i - mu1)`, `C2/S2 = sum cos/sin 2(theta_i - mu1)`.
#[derive(Debug, Clone)]
pub struct DeltaLoglik {
    n: f64,
    c1: f64,
    c2: f64,
    s2: f64,
    kappa1: f64,
    kappa2: f64,
    norm: GvmNormSeries,
}

impl DeltaLoglik {
    pub fn new(sample: &Sample, nuis: &DeltaNuisance) -> Result<Self> {
        let mut c1 = 0.0;
        let mut c2 = 0.0;
        let mut s2 = 0.0;
        for &t in sample.angles() {
            let d = t - nuis.mu1;
            c1 += d.cos();
            c2 += (2.0 * d).cos();
            s2 += (2.0 * d).sin();
        }
        Ok(Self {
            n: sample.n() as f64,
            c1,
            c2,
            s2,
            kappa1: nuis.kappa1,
            kappa2: nuis.kappa2,
            norm: GvmNormSeries::new(nuis.kappa1, nuis.kappa2)?,
        })
    }

    pub fn eval(&self, delta_prime: f64) -> f64 {
        let (sin2, cos2) = (2.0 * delta_prime).sin_cos();
        self.kappa1 * self.c1 + self.kappa2 * (cos2 * self.c2 - sin2 * self.s2)
            - self.n * (LN_2PI + self.norm.log_eval(delta_prime))
    }
}

/// Log-likelihood of `delta` given the sample and fixed nuisance values.
pub fn loglik_delta(sample: &Sample, delta_prime: f64, nuis: &DeltaNuisance) -> Result<f64> {
    Ok(DeltaLoglik::new(sample, nuis)?.eval(delta_prime))
}

/// Precomputed log-likelihood of `kappa2` for one sample:
/// `l(k2) = k1 C1 + k2 C2d - n log(2 pi G0(delta0, k1, k2))`
/// with `C2d = sum cos 2(theta_i - mu1 + delta0)`.
#[derive(Debug, Clone)]
pub struct Kappa2Loglik {
    n: f64,
    c1: f64,
    c2d: f64,
    kappa1: f64,
    delta0: f64,
    /// Scaled coefficients I_{2j}(kappa1) e^{-kappa1}, fixed across draws.
    i2j_scaled: Vec<f64>,
}

impl Kappa2Loglik {
    pub fn new(sample: &Sample, nuis: &Kappa2Nuisance) -> Result<Self> {
        let delta0 = nuis.delta0();
        let mut c1 = 0.0;
        let mut c2d = 0.0;
        for &t in sample.angles() {
            c1 += (t - nuis.mu1).cos();
            c2d += (2.0 * (t - nuis.mu1 + delta0)).cos();
        }
        let mut i2j_scaled = vec![bessel_i_scaled(0, nuis.kappa1)];
        for j in 1..=250u32 {
            let c = bessel_i_scaled(2 * j, nuis.kappa1);
            if c < 1e-18 * i2j_scaled[0] {
                break;
            }
            i2j_scaled.push(c);
        }
        Ok(Self { n: sample.n() as f64, c1, c2d, kappa1: nuis.kappa1, delta0, i2j_scaled })
    }

    /// `log G0(delta0, kappa1, kappa2_prime)` via the scaled series.
    fn log_norm(&self, kappa2_prime: f64) -> f64 {
        let mut sum = self.i2j_scaled[0] * bessel_i_scaled(0, kappa2_prime);
        for (j, &c2j) in self.i2j_scaled.iter().enumerate().skip(1) {
            let term = c2j * bessel_i_scaled(j as u32, kappa2_prime);
            sum += 2.0 * term * (2.0 * j as f64 * self.delta0).cos();
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        self.kappa1 + kappa2_prime + sum.ln()
    }

    pub fn eval(&self, kappa2_prime: f64) -> f64 {
        if kappa2_prime == 0.0 {
            // exact vM reduction
            return self.kappa1 * self.c1 - self.n * (LN_2PI + log_bessel_i0(self.kappa1));
        }
        self.kappa1 * self.c1 + kappa2_prime * self.c2d
            - self.n * (LN_2PI + self.log_norm(kappa2_prime))
    }
}

/// Log-likelihood of `kappa2 >= 0`; at zero this is exactly the vM
/// log-likelihood.
pub fn loglik_kappa2(sample: &Sample, kappa2_prime: f64, nuis: &Kappa2Nuisance) -> Result<f64> {
    if !(kappa2_prime >= 0.0) {
        return Err(Error::Domain(format!("kappa2' must be >= 0, got {kappa2_prime}")));
    }
    Ok(Kappa2Loglik::new(sample, nuis)?.eval(kappa2_prime))
}

/// Result of a maximum-likelihood fit of the four-parameter GvM model.
#[derive(Debug, Clone)]
pub struct MLEFit {
    pub params: GvMParams,
    pub log_likelihood: f64,
    pub converged: bool,
    pub iterations: usize,
}

const FIT_MAX_ITER: usize = 10_000;
/// Gradient norm below which a fit is declared converged (central
/// differences with step 1e-6 are accurate to roughly this level for
/// samples of a few thousand points).
const FIT_GRAD_TOL: f64 = 1e-5;
const FIT_GRAD_STEP: f64 = 1e-6;

/// Sufficient statistics of the full GvM likelihood.
#[derive(Debug, Clone, Copy)]
struct FullStats {
    n: f64,
    c1: f64,
    s1: f64,
    c2: f64,
    s2: f64,
}

impl FullStats {
    fn of(sample: &Sample) -> Self {
        let mut c1 = 0.0;
        let mut s1 = 0.0;
        let mut c2 = 0.0;
        let mut s2 = 0.0;
        for &t in sample.angles() {
            c1 += t.cos();
            s1 += t.sin();
            c2 += (2.0 * t).cos();
            s2 += (2.0 * t).sin();
        }
        Self { n: sample.n() as f64, c1, s1, c2, s2 }
    }

    /// Log-likelihood at `x = [mu1, mu2, ln kappa1, ln kappa2]`.
    fn loglik(&self, x: &[f64; 4]) -> f64 {
        let (mu1, mu2) = (x[0], x[1]);
        let (k1, k2) = (x[2].exp(), x[3].exp());
        let series = match GvmNormSeries::new(k1, k2) {
            Ok(s) => s,
            Err(_) => return f64::NEG_INFINITY,
        };
        let delta = reduce_pi(mu1 - mu2);
        k1 * (mu1.cos() * self.c1 + mu1.sin() * self.s1)
            + k2 * ((2.0 * mu2).cos() * self.c2 + (2.0 * mu2).sin() * self.s2)
            - self.n * (LN_2PI + series.log_eval(delta))
    }
}

/// Invert the first trigonometric moment ratio `A1(kappa) = I1/I0` for a
/// starting concentration (Fisher's approximation).
fn a1_inv(r: f64) -> f64 {
    let k = if r < 0.53 {
        2.0 * r + r.powi(3) + 5.0 * r.powi(5) / 6.0
    } else if r < 0.85 {
        -0.4 + 1.39 * r + 0.43 / (1.0 - r)
    } else {
        1.0 / (r.powi(3) - 4.0 * r * r + 3.0 * r)
    };
    k.clamp(1e-3, 500.0)
}

/// Fit the GvM model by local likelihood ascent: Nelder-Mead from
/// trigonometric-moment starting values, then a finite-difference Newton
/// polish. Concentrations are optimized in log space.
pub fn fit_mle(sample: &Sample) -> Result<MLEFit> {
    if sample.n() < 4 {
        return Err(Error::InsufficientData { needed: 4, got: sample.n() });
    }
    let stats = FullStats::of(sample);

    // Moment-based start.
    let mu1_0 = reduce_2pi(stats.s1.atan2(stats.c1));
    let mu2_0 = reduce_pi(0.5 * stats.s2.atan2(stats.c2));
    let r1 = (stats.c1 * stats.c1 + stats.s1 * stats.s1).sqrt() / stats.n;
    let r2 = (stats.c2 * stats.c2 + stats.s2 * stats.s2).sqrt() / stats.n;
    let start = [mu1_0, mu2_0, a1_inv(r1.min(0.999)).ln(), a1_inv(r2.min(0.999)).ln()];

    let f = |x: &[f64; 4]| stats.loglik(x);
    let (mut x, mut iterations) = nelder_mead(&f, start, FIT_MAX_ITER / 2);

    // Newton polish on the smooth objective to push the gradient down to
    // the finite-difference noise floor.
    let mut value = f(&x);
    for _ in 0..60 {
        iterations += 1;
        if iterations >= FIT_MAX_ITER {
            break;
        }
        let g = fd_gradient(&f, &x, FIT_GRAD_STEP);
        if norm4(&g) <= 0.2 * FIT_GRAD_TOL {
            break;
        }
        let h = fd_hessian(&f, &x, 1e-4);
        let step = match solve4(h, g) {
            // Newton step for a maximum: solve H s = g, move by -s.
            Some(s) => [-s[0], -s[1], -s[2], -s[3]],
            None => {
                let n = norm4(&g).max(1e-12);
                [g[0] / n * 1e-3, g[1] / n * 1e-3, g[2] / n * 1e-3, g[3] / n * 1e-3]
            }
        };
        // Backtracking: accept only ascent steps.
        let mut alpha = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let cand = [
                x[0] + alpha * step[0],
                x[1] + alpha * step[1],
                x[2] + alpha * step[2],
                x[3] + alpha * step[3],
            ];
            let v = f(&cand);
            if v >= value {
                x = cand;
                value = v;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if !improved {
            break;
        }
    }

    let grad_norm = norm4(&fd_gradient(&f, &x, FIT_GRAD_STEP));
    let params = GvMParams::new(reduce_2pi(x[0]), reduce_pi(x[1]), x[2].exp(), x[3].exp())?;
    Ok(MLEFit {
        params,
        log_likelihood: value,
        converged: grad_norm <= FIT_GRAD_TOL,
        iterations,
    })
}

fn norm4(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn fd_gradient<F: Fn(&[f64; 4]) -> f64>(f: &F, x: &[f64; 4], h: f64) -> [f64; 4] {
    let mut g = [0.0; 4];
    for i in 0..4 {
        let mut xp = *x;
        let mut xm = *x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(&xp) - f(&xm)) / (2.0 * h);
    }
    g
}

fn fd_hessian<F: Fn(&[f64; 4]) -> f64>(f: &F, x: &[f64; 4], h: f64) -> [[f64; 4]; 4] {
    let mut hess = [[0.0; 4]; 4];
    let f0 = f(x);
    for i in 0..4 {
        for j in i..4 {
            if i == j {
                let mut xp = *x;
                let mut xm = *x;
                xp[i] += h;
                xm[i] -= h;
                hess[i][i] = (f(&xp) - 2.0 * f0 + f(&xm)) / (h * h);
            } else {
                let mut xpp = *x;
                let mut xpm = *x;
                let mut xmp = *x;
                let mut xmm = *x;
                xpp[i] += h;
                xpp[j] += h;
                xpm[i] += h;
                xpm[j] -= h;
                xmp[i] -= h;
                xmp[j] += h;
                xmm[i] -= h;
                xmm[j] -= h;
                let v = (f(&xpp) - f(&xpm) - f(&xmp) + f(&xmm)) / (4.0 * h * h);
                hess[i][j] = v;
                hess[j][i] = v;
            }
        }
    }
    hess
}

/// Solve the 4x4 system `A s = b` by Gaussian elimination with partial
/// pivoting; `None` if singular to working precision.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut s = [0.0; 4];
    for row in (0..4).rev() {
        let mut acc = b[row];
        for k in row + 1..4 {
            acc -= a[row][k] * s[k];
        }
        s[row] = acc / a[row][row];
    }
    Some(s)
}

/// Plain Nelder-Mead maximization; returns the best vertex and the number
/// of objective evaluations spent.
fn nelder_mead<F: Fn(&[f64; 4]) -> f64>(f: &F, start: [f64; 4], max_eval: usize) -> ([f64; 4], usize) {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;

    let mut evals = 0;
    let eval = |x: &[f64; 4], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<([f64; 4], f64)> = Vec::with_capacity(5);
    simplex.push((start, eval(&start, &mut evals)));
    for i in 0..4 {
        let mut v = start;
        v[i] += if i < 2 { 0.25 } else { 0.5 };
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }

    while evals < max_eval {
        // descending by value: best first (maximization)
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let spread = simplex[0].1 - simplex[4].1;
        if spread.abs() <= 1e-12 * simplex[0].1.abs().max(1.0) {
            break;
        }
        let mut centroid = [0.0; 4];
        for v in &simplex[..4] {
            for k in 0..4 {
                centroid[k] += v.0[k] / 4.0;
            }
        }
        let worst = simplex[4];
        let reflect: [f64; 4] = std::array::from_fn(|k| centroid[k] + ALPHA * (centroid[k] - worst.0[k]));
        let fr = eval(&reflect, &mut evals);
        if fr > simplex[0].1 {
            let expand: [f64; 4] = std::array::from_fn(|k| centroid[k] + GAMMA * (reflect[k] - centroid[k]));
            let fe = eval(&expand, &mut evals);
            simplex[4] = if fe > fr { (expand, fe) } else { (reflect, fr) };
        } else if fr > simplex[3].1 {
            simplex[4] = (reflect, fr);
        } else {
            let contract: [f64; 4] = std::array::from_fn(|k| centroid[k] + RHO * (worst.0[k] - centroid[k]));
            let fc = eval(&contract, &mut evals);
            if fc > worst.1 {
                simplex[4] = (contract, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    let shrunk: [f64; 4] = std::array::from_fn(|k| best[k] + SIGMA * (v.0[k] - best[k]));
                    let fs = eval(&shrunk, &mut evals);
                    *v = (shrunk, fs);
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    (simplex[0].0, evals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gvm_log_density, GvMParams};
    use crate::sampling::{sample_gvm, seeded_rng};
    use std::f64::consts::PI;

    #[test]
    fn sample_reduces_angles() {
        let s = Sample::new([7.0, -1.0]).unwrap();
        for &a in s.angles() {
            assert!((0.0..2.0 * PI).contains(&a));
        }
        assert!(Sample::new([f64::NAN]).is_err());
        assert_eq!(Sample::new([]).unwrap().n(), 0);
    }

    #[test]
    fn loglik_delta_uniform_limit() {
        // n = 1, both concentrations ~ 0: density is uniform.
        let s = Sample::new([1.234]).unwrap();
        let nuis = DeltaNuisance::new(0.7, 1e-14, 1e-14).unwrap();
        for &d in &[0.0, 0.4, 1.5, 3.0] {
            let l = loglik_delta(&s, d, &nuis).unwrap();
            assert!((l + LN_2PI).abs() < 1e-10, "d={d}: {l}");
        }
    }

    #[test]
    fn loglik_delta_additive_over_concatenation() {
        let nuis = DeltaNuisance::new(PI, 0.1, 5.5).unwrap();
        let a = Sample::new([0.3, 1.1, 2.9]).unwrap();
        let b = Sample::new([4.4, 5.0]).unwrap();
        let ab = Sample::new([0.3, 1.1, 2.9, 4.4, 5.0]).unwrap();
        for &d in &[0.0, 0.9, 2.2] {
            let la = loglik_delta(&a, d, &nuis).unwrap();
            let lb = loglik_delta(&b, d, &nuis).unwrap();
            let lab = loglik_delta(&ab, d, &nuis).unwrap();
            assert!((la + lb - lab).abs() < 1e-10);
        }
    }

    #[test]
    fn loglik_delta_matches_direct_density_sum() {
        let nuis = DeltaNuisance::new(2.1, 0.8, 1.4).unwrap();
        let s = Sample::new([0.2, 0.9, 1.7, 3.3, 4.8, 5.9]).unwrap();
        for &d in &[0.0, 0.5, 1.2, 2.8] {
            let l = loglik_delta(&s, d, &nuis).unwrap();
            let mu2 = reduce_pi(nuis.mu1() - d);
            let p = GvMParams::new(nuis.mu1(), mu2, nuis.kappa1(), nuis.kappa2()).unwrap();
            let direct: f64 = s.angles().iter().map(|&t| gvm_log_density(t, &p)).sum();
            assert!((l - direct).abs() < 1e-10, "d={d}: {l} vs {direct}");
        }
    }

    #[test]
    fn loglik_kappa2_vm_reduction() {
        let nuis = Kappa2Nuisance::new(PI, PI / 2.0, 0.7).unwrap();
        let s = Sample::new([0.5, 1.0, 2.0, 3.5, 5.5]).unwrap();
        let l0 = loglik_kappa2(&s, 0.0, &nuis).unwrap();
        let vm = crate::models::VMParams::new(PI, 0.7).unwrap();
        let direct: f64 = s.angles().iter().map(|&t| crate::models::vm_log_density(t, &vm)).sum();
        assert!((l0 - direct).abs() < 1e-10);
        // continuity at 0+
        let leps = loglik_kappa2(&s, 1e-9, &nuis).unwrap();
        assert!((l0 - leps).abs() < 1e-6);
    }

    #[test]
    fn loglik_kappa2_matches_direct_density_sum() {
        let nuis = Kappa2Nuisance::new(1.9, 0.4, 0.6).unwrap();
        let s = Sample::new([0.1, 1.3, 2.2, 4.0]).unwrap();
        for &k2 in &[0.05, 0.3, 1.0, 4.0] {
            let l = loglik_kappa2(&s, k2, &nuis).unwrap();
            let p = GvMParams::new(nuis.mu1(), nuis.mu2(), nuis.kappa1(), k2).unwrap();
            let direct: f64 = s.angles().iter().map(|&t| gvm_log_density(t, &p)).sum();
            assert!((l - direct).abs() < 1e-10, "k2={k2}: {l} vs {direct}");
        }
    }

    #[test]
    fn fit_requires_minimum_sample() {
        let s = Sample::new([0.1, 0.2, 0.3]).unwrap();
        assert!(matches!(fit_mle(&s), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn fit_recovers_moderate_parameters() {
        let truth = GvMParams::new(4.095, 0.869, 0.304, 1.910).unwrap();
        let mut rng = seeded_rng(31);
        let draws: Vec<f64> = (0..5000).map(|_| sample_gvm(&truth, &mut rng).unwrap()).collect();
        let fit = fit_mle(&Sample::new(draws).unwrap()).unwrap();
        assert!(fit.converged, "gradient norm too large");
        assert!((fit.params.mu1() - truth.mu1()).abs() < 0.15);
        assert!((fit.params.mu2() - truth.mu2()).abs() < 0.15);
        assert!((fit.params.kappa1() - truth.kappa1()).abs() < 0.15);
        assert!((fit.params.kappa2() - truth.kappa2()).abs() < 0.15);
    }

    #[test]
    fn fit_is_permutation_invariant() {
        let truth = GvMParams::new(1.0, 0.5, 1.0, 1.0).unwrap();
        let mut rng = seeded_rng(9);
        let mut draws: Vec<f64> = (0..400).map(|_| sample_gvm(&truth, &mut rng).unwrap()).collect();
        let f1 = fit_mle(&Sample::new(draws.clone()).unwrap()).unwrap();
        draws.reverse();
        let f2 = fit_mle(&Sample::new(draws).unwrap()).unwrap();
        assert!((f1.params.mu1() - f2.params.mu1()).abs() < 1e-6);
        assert!((f1.log_likelihood - f2.log_likelihood).abs() < 1e-6);
    }
}
