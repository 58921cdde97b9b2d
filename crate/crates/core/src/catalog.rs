//! Extremal functions, their boundary distances, sharpness verification and
//! sampled class-membership probes.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::central_binomial;
use crate::engine::{
    bohr_sum_harmonic, dilatation_bound, log_bohr_sum, tail_bound, BohrCheck, Growth, HarmonicPair, Verdict,
};
use crate::error::{domain, BohrError, Result};
use crate::quadrature::integrate;
use crate::radius::{self, f_lambda, lambda0, RadiusResult};
use crate::series::TruncatedSeries;

/// Equality tolerance for a sharpness report.
pub const EQUALITY_TOL: f64 = 1e-9;
/// Relative step beyond the radius where the Bohr sum must exceed the threshold.
pub const OVERSHOOT: f64 = 1e-3;
/// Orders are doubled up to this value while the truncation tail is too large to decide.
pub const MAX_ORDER: usize = 1600;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CatalogTag {
    /// `z/(1+z)^2`
    KoebeNeg,
    /// `z/(1-z)^2`
    Koebe,
    /// `z/(1-z)`
    HalfPlane,
    /// `z/((1+z)(1+lambda z))`
    ULambdaExtremal(f64),
    /// `z/(1-z)^2 + k conj(z/(1-z)^2)`
    HarmonicP(f64),
    /// `z/(1-z) + k conj(z/(1-z))`
    HarmonicQ(f64),
    /// `F_lambda(z) = int_0^z ((1+t)/(1-t))^lambda dt`
    FLambda(f64),
}

impl CatalogTag {
    /// Resolves a command-line name; `big_k` and `lambda` feed the parametrised tags.
    pub fn from_name(name: &str, big_k: f64, lambda: f64) -> Result<Self> {
        Ok(match name {
            "koebe" => CatalogTag::Koebe,
            "koebe-neg" => CatalogTag::KoebeNeg,
            "half-plane" => CatalogTag::HalfPlane,
            "u-lambda" => CatalogTag::ULambdaExtremal(lambda),
            "harmonic-p" => CatalogTag::HarmonicP(big_k),
            "harmonic-q" => CatalogTag::HarmonicQ(big_k),
            "f-lambda" => CatalogTag::FLambda(lambda),
            other => return Err(BohrError::Parse(format!("unknown function tag `{other}`"))),
        })
    }

    pub const NAMES: [&'static str; 7] =
        ["koebe", "koebe-neg", "half-plane", "u-lambda", "harmonic-p", "harmonic-q", "f-lambda"];
}

impl fmt::Display for CatalogTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogTag::KoebeNeg => write!(f, "koebe-neg"),
            CatalogTag::Koebe => write!(f, "koebe"),
            CatalogTag::HalfPlane => write!(f, "half-plane"),
            CatalogTag::ULambdaExtremal(l) => write!(f, "u-lambda(lambda={l})"),
            CatalogTag::HarmonicP(k) => write!(f, "harmonic-p(K={k})"),
            CatalogTag::HarmonicQ(k) => write!(f, "harmonic-q(K={k})"),
            CatalogTag::FLambda(l) => write!(f, "f-lambda(lambda={l})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Realization {
    Holomorphic(TruncatedSeries),
    Harmonic(HarmonicPair),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogFunction {
    pub tag: CatalogTag,
    pub realization: Realization,
    /// `d(h(0), boundary of h(D))` where it is a catalog constant.
    pub dist: Option<f64>,
}

impl CatalogFunction {
    /// The holomorphic function, or the analytic part `h` of a harmonic pair.
    pub fn analytic_part(&self) -> &TruncatedSeries {
        match &self.realization {
            Realization::Holomorphic(s) => s,
            Realization::Harmonic(p) => p.h(),
        }
    }

    pub fn pair(&self) -> Option<&HarmonicPair> {
        match &self.realization {
            Realization::Harmonic(p) => Some(p),
            Realization::Holomorphic(_) => None,
        }
    }
}

fn koebe_coeffs(order: usize, sign: f64) -> Result<TruncatedSeries> {
    TruncatedSeries::from_fn(order, |n| Complex64::new(sign.powi(n as i32 - 1) * n as f64, 0.0))
}

fn half_plane(order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_fn(order, |n| Complex64::new(if n == 0 { 0.0 } else { 1.0 }, 0.0))
}

fn u_lambda_extremal(lambda: f64, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let magnitude = if lambda == 1.0 {
            n as f64
        } else {
            (1.0 - lambda.powi(n as i32)) / (1.0 - lambda)
        };
        Complex64::new(sign * magnitude, 0.0)
    })
}

/// Taylor series of `F_lambda`: `F' = exp(lambda log((1+z)/(1-z)))` with
/// `log((1+z)/(1-z)) = 2 sum_{n odd} z^n / n`.
pub fn f_lambda_series(lambda: f64, order: usize) -> Result<TruncatedSeries> {
    let c = f_lambda_log_derivative(lambda, order.saturating_sub(1))?;
    Ok(c.exp_series().integrate_from_zero())
}

/// Coefficients of `log F_lambda'`: `2 lambda / n` for odd `n`, zero otherwise.
pub fn f_lambda_log_derivative(lambda: f64, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_fn(order, |n| {
        Complex64::new(if n % 2 == 1 { 2.0 * lambda / n as f64 } else { 0.0 }, 0.0)
    })
}

/// Exact truncated coefficients of a catalog function.
pub fn build(tag: CatalogTag, order: usize) -> Result<CatalogFunction> {
    if order < 2 {
        return domain(format!("catalog functions need order >= 2, got {order}"));
    }
    let check_k = |k: f64| {
        if k >= 1.0 {
            Ok(())
        } else {
            domain(format!("K must be at least 1, got {k}"))
        }
    };
    let (realization, dist) = match tag {
        CatalogTag::Koebe => (Realization::Holomorphic(koebe_coeffs(order, 1.0)?), Some(0.25)),
        CatalogTag::KoebeNeg => (Realization::Holomorphic(koebe_coeffs(order, -1.0)?), Some(0.25)),
        CatalogTag::HalfPlane => (Realization::Holomorphic(half_plane(order)?), Some(0.5)),
        CatalogTag::ULambdaExtremal(lambda) => {
            if !(lambda > 0.0 && lambda <= 1.0) {
                return domain(format!("lambda must lie in (0, 1], got {lambda}"));
            }
            (Realization::Holomorphic(u_lambda_extremal(lambda, order)?), None)
        }
        CatalogTag::HarmonicP(big_k) => {
            check_k(big_k)?;
            let h = koebe_coeffs(order, 1.0)?;
            let g = h.scale_real(dilatation_bound(big_k));
            (Realization::Harmonic(HarmonicPair::new(h, g, big_k)?), Some(0.25))
        }
        CatalogTag::HarmonicQ(big_k) => {
            check_k(big_k)?;
            let h = half_plane(order)?;
            let g = h.scale_real(dilatation_bound(big_k));
            (Realization::Harmonic(HarmonicPair::new(h, g, big_k)?), Some(0.5))
        }
        CatalogTag::FLambda(lambda) => {
            if !(lambda > 0.0 && lambda.is_finite()) {
                return domain(format!("lambda must be positive, got {lambda}"));
            }
            (Realization::Holomorphic(f_lambda_series(lambda, order)?), None)
        }
    };
    Ok(CatalogFunction { tag, realization, dist })
}

/// Pointwise access to a holomorphic function and its first two derivatives.
pub trait Holomorphic {
    fn value(&self, z: Complex64) -> Result<Complex64>;
    fn derivative(&self, z: Complex64) -> Result<Complex64>;
    fn second_derivative(&self, z: Complex64) -> Result<Complex64>;
}

impl Holomorphic for TruncatedSeries {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(z))
    }
    fn derivative(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_derivative(z))
    }
    fn second_derivative(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_second_derivative(z))
    }
}

fn koebe_value(z: Complex64) -> Complex64 {
    z / ((ONE - z) * (ONE - z))
}
fn koebe_d1(z: Complex64) -> Complex64 {
    (ONE + z) / (ONE - z).powi(3)
}
fn koebe_d2(z: Complex64) -> Complex64 {
    (z * 2.0 + 4.0) / (ONE - z).powi(4)
}
fn f_lambda_d1(lambda: f64, z: Complex64) -> Complex64 {
    ((ONE + z) / (ONE - z)).powf(lambda)
}

/// Closed forms of the analytic part; series truncation plays no role here.
impl Holomorphic for CatalogFunction {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self.tag {
            CatalogTag::Koebe | CatalogTag::HarmonicP(_) => koebe_value(z),
            CatalogTag::KoebeNeg => -koebe_value(-z),
            CatalogTag::HalfPlane | CatalogTag::HarmonicQ(_) => z / (ONE - z),
            CatalogTag::ULambdaExtremal(l) => z / ((ONE + z) * (ONE + z * l)),
            CatalogTag::FLambda(l) => integrate(|t: f64| f_lambda_d1(l, z * t) * z, 0.0, 1.0, 1e-13)?,
        })
    }

    fn derivative(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self.tag {
            CatalogTag::Koebe | CatalogTag::HarmonicP(_) => koebe_d1(z),
            CatalogTag::KoebeNeg => koebe_d1(-z),
            CatalogTag::HalfPlane | CatalogTag::HarmonicQ(_) => ONE / ((ONE - z) * (ONE - z)),
            CatalogTag::ULambdaExtremal(l) => {
                let a = (ONE + z) * (ONE + z * l);
                (ONE - z * z * l) / (a * a)
            }
            CatalogTag::FLambda(l) => f_lambda_d1(l, z),
        })
    }

    fn second_derivative(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self.tag {
            CatalogTag::Koebe | CatalogTag::HarmonicP(_) => koebe_d2(z),
            CatalogTag::KoebeNeg => -koebe_d2(-z),
            CatalogTag::HalfPlane | CatalogTag::HarmonicQ(_) => 2.0 / (ONE - z).powi(3),
            CatalogTag::ULambdaExtremal(l) => {
                // f''/f' = -2 l z/(1 - l z^2) - 2/(1+z) - 2 l/(1 + l z)
                let log_deriv = -(z * (2.0 * l)) / (ONE - z * z * l) - 2.0 / (ONE + z) - (2.0 * l) / (ONE + z * l);
                self.derivative(z)? * log_deriv
            }
            CatalogTag::FLambda(l) => f_lambda_d1(l, z) * (2.0 * l) / (ONE - z * z),
        })
    }
}

/// Number of radii and of angles in the probe grids.
pub const PROBE_GRID: usize = 128;
pub const U_PROBE_RADIUS: f64 = 0.99;
pub const PRESCHWARZIAN_PROBE_RADIUS: f64 = 0.995;
pub const U_PROBE_SLACK: f64 = 1e-6;

/// Points `rho i/128 e^{2 pi i j/128}`, `i = 1..=128`, `j = 0..128`.
fn polar_grid(rho: f64) -> impl Iterator<Item = Complex64> {
    (1..=PROBE_GRID).flat_map(move |i| {
        let radius = rho * i as f64 / PROBE_GRID as f64;
        (0..PROBE_GRID).map(move |j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / PROBE_GRID as f64))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UProbe {
    pub max_abs: f64,
    pub passed: bool,
}

/// Sampled `max |(z/f)^2 f' - 1|` over the 128x128 grid of radius 0.99;
/// passes when the maximum is below `lambda + 1e-6`.
pub fn probe_u_operator(f: &impl Holomorphic, lambda: f64) -> Result<UProbe> {
    let mut max_abs = 0.0f64;
    for z in polar_grid(U_PROBE_RADIUS) {
        let fz = f.value(z)?;
        if fz.norm() == 0.0 {
            return Err(BohrError::Evaluation(format!("f vanishes at {z}")));
        }
        let q = z / fz;
        let u = q * q * f.derivative(z)? - ONE;
        max_abs = max_abs.max(u.norm());
    }
    Ok(UProbe { max_abs, passed: max_abs < lambda + U_PROBE_SLACK })
}

/// Sampled `sup (1 - |z|^2) |f''/f'|` over the 128x128 grid of radius 0.995.
/// This is a lower bound for the pre-Schwarzian norm.
pub fn probe_preschwarzian(f: &impl Holomorphic) -> Result<f64> {
    let mut max = 0.0f64;
    for z in polar_grid(PRESCHWARZIAN_PROBE_RADIUS) {
        let d1 = f.derivative(z)?;
        if d1.norm() == 0.0 {
            return Err(BohrError::Evaluation(format!("f' vanishes at {z}")));
        }
        let v = (1.0 - z.norm_sqr()) * (f.second_derivative(z)? / d1).norm();
        max = max.max(v);
    }
    Ok(max)
}

/// Theorems whose radii the toolkit verifies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Theorem {
    /// Quasiconformal harmonic, univalent analytic part (extremal `p`).
    QcUnivalent { big_k: f64 },
    /// Quasiconformal harmonic, convex analytic part (extremal `q`).
    QcConvex { big_k: f64 },
    /// Quasiconformal harmonic with bounded analytic part.
    QcBounded { big_k: f64 },
    /// Bounded pre-Schwarzian norm (radius possibly not sharp).
    LocallyUnivalent { lambda: f64 },
    /// `log(f(z)/z)`, `f` univalent (extremal `z/(1+z)^2`).
    LogUnivalent,
    /// `log(f^{-1}(w)/w)` (extremal: inverse of `z/(1+z)^2`).
    LogInverse,
    /// `log(f(z)/z)`, `f` convex (extremal `z/(1-z)`).
    LogConvex,
    /// `log(f(z)/z)`, `f in U(lambda)` (extremal `k_lambda`, `lambda >= lambda_0`).
    LogU { lambda: f64 },
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::QcUnivalent { big_k } => write!(f, "2.2 univalent K={big_k}"),
            Theorem::QcConvex { big_k } => write!(f, "2.2 convex K={big_k}"),
            Theorem::QcBounded { big_k } => write!(f, "2.4 bounded K={big_k}"),
            Theorem::LocallyUnivalent { lambda } => write!(f, "2.7 locally-univalent lambda={lambda}"),
            Theorem::LogUnivalent => write!(f, "3.1 log-univalent"),
            Theorem::LogInverse => write!(f, "3.1 log-inverse"),
            Theorem::LogConvex => write!(f, "remark-convex log-convex"),
            Theorem::LogU { lambda } => write!(f, "3.3 log-U lambda={lambda}"),
        }
    }
}

impl Theorem {
    pub fn radius(&self) -> Result<RadiusResult> {
        match *self {
            Theorem::QcUnivalent { big_k } => radius::radius_qc_univalent(big_k),
            Theorem::QcConvex { big_k } => radius::radius_qc_convex(big_k),
            Theorem::QcBounded { big_k } => radius::radius_qc_bounded(big_k),
            Theorem::LocallyUnivalent { lambda } => radius::radius_locally_univalent(lambda),
            Theorem::LogUnivalent => Ok(radius::radius_log_s()),
            Theorem::LogInverse => Ok(radius::radius_log_inverse()),
            Theorem::LogConvex => Ok(radius::radius_log_convex()),
            Theorem::LogU { lambda } => radius::radius_log_u(lambda),
        }
    }

    /// Theorems for which an extremal function is known.
    pub fn claims_sharpness(&self) -> bool {
        !matches!(self, Theorem::QcBounded { .. } | Theorem::LocallyUnivalent { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ReportKind {
    /// The extremal attains the threshold at r0 and exceeds it beyond.
    Sharpness,
    /// The Bohr inequality holds at r0 for a representative; no extremal claimed.
    Holds,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub theorem: Theorem,
    pub kind: ReportKind,
    /// Truncation order actually used.
    pub order: usize,
    pub r0: f64,
    pub threshold: f64,
    pub at_radius: BohrCheck,
    /// `max |S - threshold|` over the certified enclosure `[sum, sum + tail]` of the full sum `S`.
    pub equality_margin: Option<f64>,
    pub beyond: Option<BohrCheck>,
    /// `sum(r0 (1 + 1e-3)) - threshold`, using the truncated sum (a lower bound).
    pub violation_margin: Option<f64>,
    pub tail_bound: f64,
    pub passed: bool,
}

/// Truncated Bohr sum and its certified remainder at radius `r`.
struct SumEvaluator {
    eval: Box<dyn Fn(f64) -> Result<(f64, f64)>>,
    threshold: f64,
}

fn evaluator(theorem: Theorem, order: usize) -> Result<SumEvaluator> {
    Ok(match theorem {
        Theorem::QcUnivalent { big_k } | Theorem::QcConvex { big_k } => {
            let convex = matches!(theorem, Theorem::QcConvex { .. });
            let tag = if convex { CatalogTag::HarmonicQ(big_k) } else { CatalogTag::HarmonicP(big_k) };
            let f = build(tag, order)?;
            let threshold = f.dist.expect("harmonic catalog distance");
            let pair = f.pair().expect("harmonic realization").clone();
            let c = 1.0 + pair.k();
            let growth = if convex { Growth::Constant(c) } else { Growth::Linear(c) };
            SumEvaluator {
                eval: Box::new(move |r| Ok((bohr_sum_harmonic(&pair, r)?, tail_bound(growth, order, r)?))),
                threshold,
            }
        }
        Theorem::LogUnivalent | Theorem::LogConvex | Theorem::LogU { .. } => {
            let (tag, growth) = match theorem {
                Theorem::LogUnivalent => (CatalogTag::KoebeNeg, Growth::Harmonic(2.0)),
                Theorem::LogConvex => (CatalogTag::HalfPlane, Growth::Harmonic(1.0)),
                Theorem::LogU { lambda } => {
                    if lambda < lambda0().value {
                        return domain(format!(
                            "sharpness holds only for lambda >= lambda_0 = {}, got {lambda}",
                            lambda0().value
                        ));
                    }
                    (CatalogTag::ULambdaExtremal(lambda), Growth::Harmonic(2.0))
                }
                _ => unreachable!(),
            };
            let f = build(tag, order)?.analytic_part().clone();
            let terms = order - 1;
            SumEvaluator {
                eval: Box::new(move |r| Ok((log_bohr_sum(&f, r)?, tail_bound(growth, terms, r)?))),
                threshold: 1.0,
            }
        }
        Theorem::LogInverse => {
            // Coefficients of the inverse grow like 4^n, so work with
            // G(w) = 4 g(w/4), the inverse of F(z) = 4 f(z/4); then
            // log(G(w)/w) = log(g(w/4)/(w/4)) and the Bohr sum at r is G's at 4r.
            let f = build(CatalogTag::KoebeNeg, order)?.analytic_part().clone();
            let scaled = f.dilate(Complex64::new(0.25, 0.0)).scale_real(4.0);
            let inverse = scaled.revert()?;
            let terms = order - 1;
            SumEvaluator {
                eval: Box::new(move |r| {
                    if r >= 0.25 {
                        return domain(format!("inverse functions are only defined for |w| < 1/4, got {r}"));
                    }
                    Ok((log_bohr_sum(&inverse, 4.0 * r)?, tail_bound(Growth::CentralBinomial(1.0), terms, r)?))
                }),
                threshold: 1.0,
            }
        }
        Theorem::QcBounded { .. } | Theorem::LocallyUnivalent { .. } => {
            return Err(BohrError::Unsupported(format!("no extremal function is known for theorem {theorem}")))
        }
    })
}

/// Evaluates the extremal function's Bohr sum at the radius and just beyond it.
///
/// The order starts at `order` and is doubled (up to [`MAX_ORDER`]) while the
/// truncation tail alone could exceed the equality tolerance.
pub fn verify_sharpness(theorem: Theorem, order: usize) -> Result<SharpnessReport> {
    if !theorem.claims_sharpness() {
        return Err(BohrError::Unsupported(format!("no sharpness claim for theorem {theorem}")));
    }
    let r0 = theorem.radius()?.value;
    let mut order = order.max(2);
    loop {
        let ev = evaluator(theorem, order)?;
        let (sum, tail) = (ev.eval)(r0)?;
        if tail > 0.1 * EQUALITY_TOL && order < MAX_ORDER {
            order = (2 * order).min(MAX_ORDER);
            continue;
        }
        let t = ev.threshold;
        let equality_margin = (sum - t).abs().max((sum + tail - t).abs());
        let r_beyond = r0 * (1.0 + OVERSHOOT);
        let (sum_beyond, tail_beyond) = (ev.eval)(r_beyond)?;
        let violation_margin = sum_beyond - t;
        return Ok(SharpnessReport {
            theorem,
            kind: ReportKind::Sharpness,
            order,
            r0,
            threshold: t,
            at_radius: BohrCheck::new(r0, sum, t, tail),
            equality_margin: Some(equality_margin),
            beyond: Some(BohrCheck::new(r_beyond, sum_beyond, t, tail_beyond)),
            violation_margin: Some(violation_margin),
            tail_bound: tail,
            passed: equality_margin <= EQUALITY_TOL && violation_margin > 0.0,
        });
    }
}

/// `sup_{a in [0,1]} a + (1 - a^2) S`: `1` when `S <= 1/2`, else `S + 1/(4S)`.
fn bounded_chain_sup(s: f64) -> f64 {
    if s <= 0.5 {
        1.0
    } else {
        s + 1.0 / (4.0 * s)
    }
}

/// `(1+k) r/(1-r) + k log(1-r)`: the coefficient majorant for bounded `h` with `g'(0) = 0`.
pub fn bounded_chain_factor(big_k: f64, r: f64) -> f64 {
    let k = dilatation_bound(big_k);
    (1.0 + k) * r / (1.0 - r) + k * (-r).ln_1p()
}

/// Upper bound on the remainder of the `F_lambda` Bohr sum.
///
/// `|[z^m] F'| <= C(2 lambda + m - 1, m)` because `(1+z)^lambda` is dominated
/// coefficientwise by `(1-z)^{-lambda}`; hence `|a_n| <= t_n / r^n` with
/// `t_{n+1}/t_n = (2 lambda + n - 1) r/(n+1)`.
fn f_lambda_tail(lambda: f64, terms: usize, r: f64) -> f64 {
    let mut t = r;
    for n in 1..=terms {
        t *= (2.0 * lambda + n as f64 - 1.0) * r / (n as f64 + 1.0);
    }
    let n = terms as f64;
    let q = r * (2.0 * lambda + n).max(n + 2.0) / (n + 2.0);
    t / (1.0 - q)
}

/// Theorem-specific evidence: sharpness for theorems with extremals,
/// otherwise the Bohr inequality at r0 for a representative of the class.
///
/// * bounded case: the chained coefficient majorant, maximised over `|a_0|`;
/// * pre-Schwarzian case: `F_lambda` itself against the threshold `-F_lambda(-1)`.
pub fn verify(theorem: Theorem, order: usize) -> Result<SharpnessReport> {
    match theorem {
        Theorem::QcBounded { big_k } => {
            let r0 = theorem.radius()?.value;
            let at = BohrCheck::new(r0, bounded_chain_sup(bounded_chain_factor(big_k, r0)), 1.0, 0.0);
            let r_beyond = r0 * (1.0 + OVERSHOOT);
            let beyond = BohrCheck::new(r_beyond, bounded_chain_sup(bounded_chain_factor(big_k, r_beyond)), 1.0, 0.0);
            Ok(SharpnessReport {
                theorem,
                kind: ReportKind::Holds,
                order: 0,
                r0,
                threshold: 1.0,
                at_radius: at,
                equality_margin: Some((at.sum_value - 1.0).abs()),
                beyond: Some(beyond),
                violation_margin: Some(beyond.sum_value - 1.0),
                tail_bound: 0.0,
                passed: at.sum_value <= 1.0 + EQUALITY_TOL && (big_k == 1.0 || beyond.sum_value > 1.0),
            })
        }
        Theorem::LocallyUnivalent { lambda } => {
            let r0 = theorem.radius()?.value;
            let threshold = -f_lambda(lambda, -1.0)?;
            let order = order.max(2);
            let f = f_lambda_series(lambda, order)?;
            let sum = crate::engine::bohr_sum(&f, r0, false)?;
            let tail = f_lambda_tail(lambda, order, r0);
            let at = BohrCheck::new(r0, sum, threshold, tail);
            Ok(SharpnessReport {
                theorem,
                kind: ReportKind::Holds,
                order,
                r0,
                threshold,
                at_radius: at,
                equality_margin: None,
                beyond: None,
                violation_margin: None,
                tail_bound: tail,
                passed: at.verdict == Verdict::Holds,
            })
        }
        _ => verify_sharpness(theorem, order),
    }
}

/// `(1/n) C(2n, n)`: the modulus of `2 gamma_n` for the inverse of `z/(1+z)^2`.
pub fn inverse_koebe_log_coefficient(n: usize) -> f64 {
    central_binomial(n) / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(s: &TruncatedSeries) -> Vec<f64> {
        s.coeffs().iter().map(|c| c.re).collect()
    }

    #[test]
    fn koebe_and_u_lambda_coefficients() {
        assert_eq!(re(build(CatalogTag::Koebe, 5).unwrap().analytic_part()), vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(re(build(CatalogTag::ULambdaExtremal(1.0), 3).unwrap().analytic_part()), vec![0.0, 1.0, -2.0, 3.0]);
        assert_eq!(
            re(build(CatalogTag::ULambdaExtremal(0.5), 3).unwrap().analytic_part()),
            vec![0.0, 1.0, -1.5, 1.75]
        );
    }

    #[test]
    fn u_lambda_matches_series_division() {
        let lam = 0.5;
        let n = 200;
        let den = TruncatedSeries::from_real(&[1.0, 1.0]).unwrap().pad_to(n)
            .cauchy_mul(&TruncatedSeries::from_real(&[1.0, lam]).unwrap().pad_to(n));
        let quotient = den.reciprocal().unwrap();
        let f = build(CatalogTag::ULambdaExtremal(lam), n).unwrap();
        for k in 1..=n {
            assert!((f.analytic_part().coeffs()[k] - quotient.coeffs()[k - 1]).norm() <= 1e-12);
        }
    }

    #[test]
    fn parameter_domains() {
        assert!(build(CatalogTag::Koebe, 1).is_err());
        assert!(build(CatalogTag::ULambdaExtremal(0.0), 10).is_err());
        assert!(build(CatalogTag::HarmonicP(0.9), 10).is_err());
        assert!(CatalogTag::from_name("cardioid", 1.0, 1.0).is_err());
    }

    #[test]
    fn harmonic_tags_have_constant_dilatation() {
        for tag in [CatalogTag::HarmonicP(3.0), CatalogTag::HarmonicQ(3.0)] {
            let f = build(tag, 60).unwrap();
            let w = f.pair().unwrap().sampled_dilatation().unwrap();
            assert!((w - 0.5).abs() <= 1e-9);
        }
    }

    #[test]
    fn u_operator_probes() {
        let k = build(CatalogTag::ULambdaExtremal(0.5), 50).unwrap();
        let p = probe_u_operator(&k, 0.5).unwrap();
        // U = -lambda z^2 exactly
        assert!((p.max_abs - 0.5 * 0.99 * 0.99).abs() < 1e-12 && p.passed);
        let id = TruncatedSeries::identity(10);
        assert_eq!(probe_u_operator(&id, 0.1).unwrap().max_abs, 0.0);
        let koebe = build(CatalogTag::Koebe, 50).unwrap();
        let p = probe_u_operator(&koebe, 1.0).unwrap();
        assert!(p.passed && p.max_abs > 0.97);
    }

    #[test]
    fn preschwarzian_probes() {
        let f = build(CatalogTag::FLambda(0.7), 50).unwrap();
        assert!((probe_preschwarzian(&f).unwrap() - 1.4).abs() < 1e-9);
        assert_eq!(probe_preschwarzian(&TruncatedSeries::identity(5)).unwrap(), 0.0);
        let koebe = build(CatalogTag::Koebe, 50).unwrap();
        let v = probe_preschwarzian(&koebe).unwrap();
        assert!((v - 6.0).abs() <= 0.02 * 6.0, "{v}");
    }

    #[test]
    fn closed_forms_agree_with_series_inside_the_disk() {
        let z = Complex64::new(0.2, -0.3);
        for tag in [
            CatalogTag::Koebe,
            CatalogTag::KoebeNeg,
            CatalogTag::HalfPlane,
            CatalogTag::ULambdaExtremal(0.3),
            CatalogTag::FLambda(0.8),
        ] {
            let f = build(tag, 120).unwrap();
            let s = f.analytic_part();
            assert!((f.value(z).unwrap() - s.eval(z)).norm() < 1e-12, "{tag}");
            assert!((f.derivative(z).unwrap() - s.eval_derivative(z)).norm() < 1e-12, "{tag}");
            assert!((f.second_derivative(z).unwrap() - s.eval_second_derivative(z)).norm() < 1e-11, "{tag}");
        }
    }

    #[test]
    fn sharpness_examples() {
        let rep = verify_sharpness(Theorem::QcUnivalent { big_k: 2.0 }, 200).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.equality_margin.unwrap() <= 1e-10);
        let rep = verify_sharpness(Theorem::LogUnivalent, 200).unwrap();
        assert!(rep.equality_margin.unwrap() <= 1e-12);
        let rep = verify_sharpness(Theorem::LogU { lambda: 0.8 }, 200).unwrap();
        assert!(rep.equality_margin.unwrap() <= 1e-10 && rep.passed);
        assert!(verify_sharpness(Theorem::LogU { lambda: 0.5 }, 200).is_err());
    }

    #[test]
    fn no_sharpness_for_unclaimed_theorems() {
        assert!(matches!(
            verify_sharpness(Theorem::LocallyUnivalent { lambda: 1.0 }, 50),
            Err(BohrError::Unsupported(_))
        ));
        assert!(matches!(verify_sharpness(Theorem::QcBounded { big_k: 2.0 }, 50), Err(BohrError::Unsupported(_))));
    }

    #[test]
    fn holds_reports() {
        let rep = verify(Theorem::QcBounded { big_k: 3.0 }, 0).unwrap();
        assert!(rep.passed, "{rep:?}");
        let rep = verify(Theorem::LocallyUnivalent { lambda: 1.0 }, 200).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.at_radius.sum_value < rep.threshold);
    }
}
