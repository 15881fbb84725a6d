//! Independent numerical oracles shared by the integration tests.
//! Everything here is plain quadrature, deliberately not reusing the
//! library's series or adaptive integrator.
#![allow(dead_code)] // each test target uses its own subset

/// Trapezoid rule over `[a, b]` with `n` panels.
pub fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for i in 1..n {
        sum += f(a + i as f64 * h);
    }
    sum * h
}

/// Modified Bessel function of the first kind via its integral
/// representation, `I_nu(z) = (1/pi) int_0^pi e^{z cos t} cos(nu t) dt`.
pub fn bessel_i_quad(nu: u32, z: f64, n: usize) -> f64 {
    trapezoid(|t| (z * t.cos()).exp() * (nu as f64 * t).cos(), 0.0, std::f64::consts::PI, n)
        / std::f64::consts::PI
}

/// GvM normalizing constant by direct quadrature:
/// `G0(d, k1, k2) = (1/2pi) int_0^{2pi} exp{k1 cos t + k2 cos 2(t + d)} dt`.
pub fn g0_quad(delta: f64, kappa1: f64, kappa2: f64, n: usize) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    trapezoid(|t| (kappa1 * t.cos() + kappa2 * (2.0 * (t + delta)).cos()).exp(), 0.0, tau, n) / tau
}

/// A tiny deterministic generator for test parameter sets (splitmix64),
/// so oracle tests do not depend on the library's RNG.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}
