//! Adaptive Gauss-Legendre quadrature.
//!
//! A panel is accepted when the rule on the whole panel agrees with the sum of
//! the rule on its two halves. Panels next to an endpoint where the integrand
//! has an unbounded derivative are simply bisected more often.

use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{BohrError, Result};

/// Points per panel.
pub const PANEL_POINTS: usize = 10;
const MAX_DEPTH: u32 = 60;

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    const ZERO: Self;
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    const ZERO: Self = 0.0;
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Nodes are the roots of `P_n`, found by Newton's method from the
/// Chebyshev-like initial guess `cos(pi (i - 1/4) / (n + 1/2))`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_POINTS))
}

fn panel<T: Integrand>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> T {
    let (x, w) = panel_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter().zip(w).fold(T::ZERO, |acc, (xi, wi)| acc + f(mid + half * xi) * (wi * half))
}

/// Integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<T: Integrand>(mut f: impl FnMut(f64) -> T, a: f64, b: f64, tol: f64) -> Result<T> {
    if a == b {
        return Ok(T::ZERO);
    }
    let whole = panel(&mut f, a, b);
    refine(&mut f, a, b, whole, tol, 0)
}

fn refine<T: Integrand>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64, whole: T, tol: f64, depth: u32) -> Result<T> {
    let m = 0.5 * (a + b);
    let left = panel(f, a, m);
    let right = panel(f, m, b);
    let split = left + right;
    let err = (split - whole).magnitude();
    if !err.is_finite() {
        return Err(BohrError::NonFinite(format!("integrand on [{a}, {b}]")));
    }
    if err <= tol || m == a || m == b {
        return Ok(split);
    }
    if depth >= MAX_DEPTH {
        return Err(BohrError::Evaluation(format!(
            "quadrature did not reach tolerance {tol} on [{a}, {b}]"
        )));
    }
    Ok(refine(f, a, m, left, 0.5 * tol, depth + 1)? + refine(f, m, b, right, 0.5 * tol, depth + 1)?)
}
