//! Every Bohr radius of the toolkit, either in closed form or as the root of a
//! strictly increasing (or decreasing) defining function located by bisection.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::engine::dilatation_bound;
use crate::error::{domain, Result};
use crate::quadrature::integrate;
use crate::roots::{bisect, Bisection};

/// Bracket width used by every bisection unless overridden.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Absolute tolerance of the quadrature behind `F_lambda`.
pub const QUADRATURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    ClosedForm,
    Bisection,
    QuadratureBisection,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Bisection => "bisection",
            Method::QuadratureBisection => "quadrature+bisection",
        })
    }
}

/// A computed radius together with the evidence for it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusResult {
    pub value: f64,
    pub bracket: (f64, f64),
    /// `|LHS - RHS|` of the defining equation at `value`.
    pub residual: f64,
    pub method: Method,
    pub tol: f64,
    /// Defining-function values at the bracket ends (bisection only).
    pub endpoint_values: Option<(f64, f64)>,
}

impl RadiusResult {
    fn closed_form(value: f64, residual: f64) -> Self {
        Self {
            value,
            bracket: (value, value),
            residual,
            method: Method::ClosedForm,
            tol: 0.0,
            endpoint_values: None,
        }
    }

    fn from_bisection(b: Bisection, method: Method, tol: f64) -> Self {
        Self {
            value: b.root,
            bracket: (b.lo, b.hi),
            residual: b.residual,
            method,
            tol,
            endpoint_values: Some((b.f_lo, b.f_hi)),
        }
    }

    /// For bisection results: sign change at the ends, width within `tol`,
    /// residual within `10 tol`. Closed forms are always certified.
    pub fn is_certified(&self) -> bool {
        match self.endpoint_values {
            None => true,
            Some((lo, hi)) => {
                lo * hi <= 0.0
                    && self.bracket.1 - self.bracket.0 <= self.tol
                    && self.residual <= 10.0 * self.tol
                    && self.bracket.0 <= self.value
                    && self.value <= self.bracket.1
            }
        }
    }
}

fn check_big_k(big_k: f64) -> Result<()> {
    if !(big_k >= 1.0) {
        return domain(format!("K must be at least 1, got {big_k}"));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    Ok(())
}

/// Quadratic whose smaller root is the univalent-branch radius: `r^2 - (6+4k) r + 1`.
pub fn qc_univalent_quadratic(big_k: f64, r: f64) -> f64 {
    let k = dilatation_bound(big_k);
    r * r - (6.0 + 4.0 * k) * r + 1.0
}

/// `(5K + 1 - sqrt(8K(3K+1))) / (K+1)`, harmonic maps with univalent analytic part.
pub fn radius_qc_univalent(big_k: f64) -> Result<RadiusResult> {
    check_big_k(big_k)?;
    let value = (5.0 * big_k + 1.0 - (8.0 * big_k * (3.0 * big_k + 1.0)).sqrt()) / (big_k + 1.0);
    Ok(RadiusResult::closed_form(value, qc_univalent_quadratic(big_k, value).abs()))
}

/// `(K+1)/(5K+1)`, harmonic maps with convex analytic part.
pub fn radius_qc_convex(big_k: f64) -> Result<RadiusResult> {
    check_big_k(big_k)?;
    let value = (big_k + 1.0) / (5.0 * big_k + 1.0);
    // 2(1+k) r/(1-r) = 1
    let k = dilatation_bound(big_k);
    let residual = (2.0 * (1.0 + k) * value / (1.0 - value) - 1.0).abs();
    Ok(RadiusResult::closed_form(value, residual))
}

/// Limit of [`radius_qc_univalent`] as `K -> infinity`: `5 - 2 sqrt 6`.
pub fn qc_univalent_limit() -> f64 {
    5.0 - 2.0 * 6f64.sqrt()
}

/// Limit of [`radius_qc_convex`] as `K -> infinity`.
pub const QC_CONVEX_LIMIT: f64 = 0.2;

/// `psi(r) = 4Kr/((K+1)(1-r)) + 2(K-1) log(1-r)/(K+1) - 1`, strictly increasing on (0, 1).
pub fn qc_bounded_psi(big_k: f64, r: f64) -> f64 {
    let kp = big_k + 1.0;
    4.0 * big_k * r / (kp * (1.0 - r)) + 2.0 * (big_k - 1.0) * (-r).ln_1p() / kp - 1.0
}

/// Root of `psi` in (0, 1/3]: harmonic maps with bounded analytic part and `g'(0) = 0`.
pub fn radius_qc_bounded(big_k: f64) -> Result<RadiusResult> {
    radius_qc_bounded_with_tol(big_k, DEFAULT_TOL)
}

pub fn radius_qc_bounded_with_tol(big_k: f64, tol: f64) -> Result<RadiusResult> {
    check_big_k(big_k)?;
    check_tol(tol)?;
    if big_k == 1.0 {
        // classical Bohr radius
        return Ok(RadiusResult::closed_form(1.0 / 3.0, qc_bounded_psi(1.0, 1.0 / 3.0).abs()));
    }
    let b = bisect(|r| qc_bounded_psi(big_k, r), 0.0, 1.0 / 3.0, tol)?;
    Ok(RadiusResult::from_bisection(b, Method::Bisection, tol))
}

/// `4r/(1-r) + 2 log(1-r) - 1`, the `K -> infinity` limit of `psi`.
pub fn qc_bounded_limit_psi(r: f64) -> f64 {
    4.0 * r / (1.0 - r) + 2.0 * (-r).ln_1p() - 1.0
}

/// Root of [`qc_bounded_limit_psi`] (0.2998...).
pub fn qc_bounded_limit() -> Result<RadiusResult> {
    let b = bisect(qc_bounded_limit_psi, 0.0, 1.0 / 3.0, DEFAULT_TOL)?;
    Ok(RadiusResult::from_bisection(b, Method::Bisection, DEFAULT_TOL))
}

/// `F_lambda(x) = int_0^x ((1+t)/(1-t))^lambda dt` for `x in [-1, 1)`.
///
/// At `x = -1` the integral is evaluated as `-int_0^1 ((1-u)/(1+u))^lambda du`,
/// whose integrand is bounded.
pub fn f_lambda(lambda: f64, x: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return domain(format!("lambda must be positive, got {lambda}"));
    }
    if !(-1.0..1.0).contains(&x) {
        return domain(format!("F_lambda is evaluated on [-1, 1), got {x}"));
    }
    if x == -1.0 {
        let v = integrate(|u: f64| ((1.0 - u) / (1.0 + u)).powf(lambda), 0.0, 1.0, QUADRATURE_TOL)?;
        return Ok(-v);
    }
    integrate(|t: f64| ((1.0 + t) / (1.0 - t)).powf(lambda), 0.0, x, QUADRATURE_TOL)
}

/// `sqrt(pi^2/6 - 1)`, the Cauchy-Schwarz factor `sqrt(sum_{n>=2} 1/n^2)`.
pub fn zeta2_minus_one_sqrt() -> f64 {
    (PI * PI / 6.0 - 1.0).sqrt()
}

/// `r + r sqrt(exp(4 lambda^2 r^2/(1-r^2)) - 1) sqrt(pi^2/6 - 1) - threshold`.
pub fn locally_univalent_phi(lambda: f64, threshold: f64, r: f64) -> f64 {
    let growth = (4.0 * lambda * lambda * r * r / (1.0 - r * r)).exp_m1();
    r + r * growth.sqrt() * zeta2_minus_one_sqrt() - threshold
}

/// Radius for `||P_f|| <= 2 lambda`; the threshold `-F_lambda(-1)` comes from quadrature.
pub fn radius_locally_univalent(lambda: f64) -> Result<RadiusResult> {
    radius_locally_univalent_with_tol(lambda, DEFAULT_TOL)
}

pub fn radius_locally_univalent_with_tol(lambda: f64, tol: f64) -> Result<RadiusResult> {
    check_tol(tol)?;
    let threshold = -f_lambda(lambda, -1.0)?;
    let b = bisect(|r| locally_univalent_phi(lambda, threshold, r), 0.0, 1.0 - 1e-9, tol)?;
    Ok(RadiusResult::from_bisection(b, Method::QuadratureBisection, tol))
}

/// `1 - 1/sqrt(e)` for `log(f(z)/z)`, `f` univalent.
pub fn radius_log_s() -> RadiusResult {
    let value = -(-0.5f64).exp_m1();
    RadiusResult::closed_form(value, (-2.0 * (-value).ln_1p() - 1.0).abs())
}

/// `(sqrt(e) - 1)/e` for `log(f^{-1}(w)/w)`.
pub fn radius_log_inverse() -> RadiusResult {
    let value = 0.5f64.exp_m1() / E;
    let lhs = 2.0 * (std::f64::consts::LN_2 - (1.0 + (1.0 - 4.0 * value).sqrt()).ln());
    RadiusResult::closed_form(value, (lhs - 1.0).abs())
}

/// `1 - 1/e` for `log(f(z)/z)`, `f` convex.
pub fn radius_log_convex() -> RadiusResult {
    let value = -(-1.0f64).exp_m1();
    RadiusResult::closed_form(value, (-(-value).ln_1p() - 1.0).abs())
}

/// `g(l) = l^5 - 2l^4 - 2l^3 - (4/e) l^2 + (5 - 8/e) l + (2 - 4/e)`.
pub fn lambda0_polynomial(l: f64) -> f64 {
    let c = [2.0 - 4.0 / E, 5.0 - 8.0 / E, -4.0 / E, -2.0, -2.0, 1.0];
    c.iter().rev().fold(0.0, |acc, a| acc * l + a)
}

/// Unique root of [`lambda0_polynomial`] in (0, 1), where the U(lambda) radius switches branch.
pub fn lambda0() -> RadiusResult {
    static CACHE: OnceLock<RadiusResult> = OnceLock::new();
    *CACHE.get_or_init(|| lambda0_with_tol(DEFAULT_TOL).expect("g(0) > 0 > g(1)"))
}

pub fn lambda0_with_tol(tol: f64) -> Result<RadiusResult> {
    check_tol(tol)?;
    let b = bisect(lambda0_polynomial, 0.0, 1.0, tol)?;
    Ok(RadiusResult::from_bisection(b, Method::Bisection, tol))
}

/// `(1 + lambda^2)/(2(1 + lambda))`, the range where the weighted coefficient estimate is valid.
pub fn log_u_validity_cap(lambda: f64) -> f64 {
    (1.0 + lambda * lambda) / (2.0 * (1.0 + lambda))
}

/// `r^2 - (1 + 1/lambda) r + (1/lambda)(1 - 1/e)`.
pub fn log_u_quadratic(lambda: f64, r: f64) -> f64 {
    r * r - (1.0 + 1.0 / lambda) * r + (1.0 - 1.0 / E) / lambda
}

/// Smaller root of [`log_u_quadratic`], where `-log(1-r) - log(1-lambda r) = 1`.
pub fn log_u_quadratic_root(lambda: f64) -> f64 {
    let s = 1.0 + lambda;
    (s - (s * s - 4.0 * lambda * (1.0 - 1.0 / E)).sqrt()) / (2.0 * lambda)
}

/// Radius for `log(f(z)/z)`, `f in U(lambda)`, `lambda in (0, 1]`.
pub fn radius_log_u(lambda: f64) -> Result<RadiusResult> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return domain(format!("lambda must lie in (0, 1], got {lambda}"));
    }
    if lambda >= lambda0().value {
        let value = log_u_quadratic_root(lambda);
        Ok(RadiusResult::closed_form(value, log_u_quadratic(lambda, value).abs()))
    } else {
        Ok(RadiusResult::closed_form(log_u_validity_cap(lambda), 0.0))
    }
}
