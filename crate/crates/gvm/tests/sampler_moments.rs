//! Sampler correctness via trigonometric moments against quadrature.

mod common;

use gvm::models::{gvm_log_density_with, GvMParams, GvmNormSeries, VM2Params, VMParams};
use gvm::{sample_gvm, sample_vm, sample_vm2, seeded_rng};
use std::f64::consts::PI;

const TAU: f64 = 2.0 * PI;
const N: usize = 200_000;

/// First and second trigonometric moments of a density by quadrature.
fn moments_quad<F: Fn(f64) -> f64>(density: F, hi: f64) -> [f64; 4] {
    let m = |g: &dyn Fn(f64) -> f64| common::trapezoid(|t| density(t) * g(t), 0.0, hi, 8192);
    [m(&|t| t.cos()), m(&|t| t.sin()), m(&|t| (2.0 * t).cos()), m(&|t| (2.0 * t).sin())]
}

fn moments_empirical(draws: &[f64]) -> [f64; 4] {
    let n = draws.len() as f64;
    let mut s = [0.0; 4];
    for &t in draws {
        s[0] += t.cos();
        s[1] += t.sin();
        s[2] += (2.0 * t).cos();
        s[3] += (2.0 * t).sin();
    }
    s.map(|v| v / n)
}

/// Each moment is an average of bounded terms; 5 sigma with sigma <= 1/sqrt(N).
fn assert_close(emp: [f64; 4], quad: [f64; 4], label: &str) {
    let tol = 5.0 / (N as f64).sqrt();
    for k in 0..4 {
        assert!(
            (emp[k] - quad[k]).abs() < tol,
            "{label} moment {k}: {} vs {} (tol {tol})",
            emp[k],
            quad[k]
        );
    }
}

#[test]
fn vm_sampler_moments() {
    let mut rng = seeded_rng(101);
    for &(mu, kappa) in &[(PI, 0.1), (1.0, 2.0), (4.0, 8.0)] {
        let p = VMParams::new(mu, kappa).unwrap();
        let draws: Vec<f64> = (0..N).map(|_| sample_vm(&p, &mut rng)).collect();
        // oracle-side density: quadrature-normalized, no Bessel reuse
        let z = common::trapezoid(|x| (kappa * (x - mu).cos()).exp(), 0.0, TAU, 8192);
        let quad = moments_quad(|t| (kappa * (t - mu).cos()).exp() / z, TAU);
        assert_close(moments_empirical(&draws), quad, &format!("vm({mu},{kappa})"));
    }
}

#[test]
fn vm2_sampler_moments() {
    let mut rng = seeded_rng(103);
    for &(mu, kappa) in &[(0.3, 0.5), (1.2, 5.0)] {
        let p = VM2Params::new(mu, kappa).unwrap();
        let draws: Vec<f64> = (0..N).map(|_| sample_vm2(&p, &mut rng)).collect();
        assert!(draws.iter().all(|&t| (0.0..PI).contains(&t)));
        let z = common::trapezoid(|x| (kappa * (2.0 * (x - mu)).cos()).exp(), 0.0, PI, 8192);
        let quad = moments_quad(|t| (kappa * (2.0 * (t - mu)).cos()).exp() / z, PI);
        assert_close(moments_empirical(&draws), quad, &format!("vm2({mu},{kappa})"));
    }
}

#[test]
fn gvm_sampler_moments() {
    let mut rng = seeded_rng(107);
    for &(mu1, mu2, k1, k2) in &[
        (PI, 0.0, 0.1, 5.5),
        (4.095, 0.869, 0.304, 1.910),
        (1.0, 1.0, 3.0, 0.5),
    ] {
        let p = GvMParams::new(mu1, mu2, k1, k2).unwrap();
        let series = GvmNormSeries::new(k1, k2).unwrap();
        let draws: Vec<f64> =
            (0..N).map(|_| sample_gvm(&p, &mut rng).unwrap()).collect();
        let quad = moments_quad(|t| gvm_log_density_with(t, &p, &series).exp(), TAU);
        assert_close(moments_empirical(&draws), quad, &format!("gvm({mu1},{mu2},{k1},{k2})"));
    }
}
