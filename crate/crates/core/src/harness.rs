//! Randomized checks of the inequality steps behind the radii.
//!
//! Every check compares a truncated left-hand side, which is a lower bound for
//! the full series, against a right-hand side enlarged by a rigorous tail
//! allowance. A failing check is therefore a certified violation. Samples are
//! generated from per-sample seeds so that any failure can be replayed from a
//! single text line.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{build, f_lambda_log_derivative, CatalogTag};
use crate::engine::{tail_bound, Growth};
use crate::error::{domain, BohrError, Result};
use crate::quadrature::integrate;
use crate::series::{TruncatedSeries, DEFAULT_ORDER};

/// Hypothesis of the subordination lemmas.
pub const LEMMA_RADIUS: f64 = 1.0 / 3.0;
/// Relative slack for floating-point rounding in the comparisons.
pub const FP_SLACK: f64 = 1e-12;
pub const BOUNDARY_SAMPLES: usize = 4096;
pub const SUP_MARGIN: f64 = 0.02;
pub const MAX_BLASCHKE_DEGREE: usize = 6;
pub const MAX_ZERO_MODULUS: f64 = 0.95;
/// Coefficient decay of randomly drawn analytic functions never exceeds this ratio.
pub const MAX_DECAY: f64 = 0.9;
/// `|c_n| <= 0.8^n` for random Lebedev-Milin exponents.
pub const EXPONENT_DECAY: f64 = 0.8;
pub const AREA_IDENTITY_TOL: f64 = 1e-8;
const AREA_THETA_POINTS: usize = 256;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SchwarzKind {
    Blaschke { zeros: Vec<Complex64>, rotation: Complex64 },
    /// Polynomial whose boundary sup is certified below `1 - SUP_MARGIN`.
    ScaledPolynomial,
    /// Hand-picked self-map such as `z`, `z^2`, `t z` or a unimodular constant.
    Explicit,
}

/// A holomorphic self-map of the unit disk, stored as its truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzSample {
    pub realization: TruncatedSeries,
    pub kind: SchwarzKind,
    pub fixes_origin: bool,
}

fn boundary_sup(s: &TruncatedSeries, radius: f64) -> f64 {
    (0..BOUNDARY_SAMPLES)
        .map(|j| s.eval(Complex64::from_polar(radius, 2.0 * PI * j as f64 / BOUNDARY_SAMPLES as f64)).norm())
        .fold(0.0, f64::max)
}

impl SchwarzSample {
    /// `rotation * prod (z - a_j)/(1 - conj(a_j) z)`.
    pub fn blaschke(zeros: &[Complex64], rotation: Complex64, order: usize) -> Result<Self> {
        if zeros.is_empty() || zeros.len() > MAX_BLASCHKE_DEGREE {
            return domain(format!("Blaschke degree must be 1..={MAX_BLASCHKE_DEGREE}, got {}", zeros.len()));
        }
        if (rotation.norm() - 1.0).abs() > 1e-12 {
            return domain(format!("rotation must be unimodular, got {rotation}"));
        }
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return domain(format!("Blaschke zeros must lie in the disk, got {a}"));
        }
        let mut product = TruncatedSeries::constant(rotation, order);
        for &a in zeros {
            // (z - a)/(1 - conj(a) z) = -a + sum_{n>=1} conj(a)^{n-1} (1 - |a|^2) z^n
            let ac = a.conj();
            let w = 1.0 - a.norm_sqr();
            let mut power = ONE;
            let factor = TruncatedSeries::from_fn(order, |n| {
                if n == 0 {
                    -a
                } else {
                    let c = power * w;
                    power *= ac;
                    c
                }
            })?;
            product = product.cauchy_mul(&factor);
        }
        Ok(Self {
            realization: product,
            fixes_origin: zeros.contains(&ZERO),
            kind: SchwarzKind::Blaschke { zeros: zeros.to_vec(), rotation },
        })
    }

    /// Accepts a polynomial whose sampled sup over 4096 boundary points is at
    /// most `1 - SUP_MARGIN`.
    ///
    /// For degree `d` the gap between sampled and true sup is at most a
    /// factor `1/(1 - d pi/4096)` (Bernstein), which the margin must cover.
    pub fn scaled_polynomial(coeffs: &[Complex64], order: usize) -> Result<Self> {
        let poly = TruncatedSeries::new(coeffs.to_vec())?;
        let degree = coeffs.len() - 1;
        if degree > order {
            return domain(format!("polynomial degree {degree} exceeds order {order}"));
        }
        let sup = boundary_sup(&poly, 1.0);
        let inflation = 1.0 - degree as f64 * PI / BOUNDARY_SAMPLES as f64;
        if !(sup <= 1.0 - SUP_MARGIN && inflation > 0.0 && sup / inflation < 1.0) {
            return domain(format!("polynomial sup-norm {sup} not certified below 1"));
        }
        Ok(Self {
            realization: poly.pad_to(order),
            fixes_origin: coeffs[0] == ZERO,
            kind: SchwarzKind::ScaledPolynomial,
        })
    }

    /// A known self-map; only checked by sampling `|z| = 0.999`.
    pub fn explicit(realization: TruncatedSeries) -> Result<Self> {
        let sup = boundary_sup(&realization, 0.999);
        if sup > 1.0 + FP_SLACK {
            return domain(format!("sampled sup {sup} exceeds 1"));
        }
        Ok(Self { fixes_origin: realization.coeffs()[0] == ZERO, realization, kind: SchwarzKind::Explicit })
    }

    pub fn identity(order: usize) -> Self {
        Self { realization: TruncatedSeries::identity(order), kind: SchwarzKind::Explicit, fixes_origin: true }
    }

    /// Closed form for Blaschke products, the truncated series otherwise.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match &self.kind {
            SchwarzKind::Blaschke { zeros, rotation } => {
                zeros.iter().fold(*rotation, |acc, a| acc * (z - a) / (ONE - a.conj() * z))
            }
            _ => self.realization.eval(z),
        }
    }

    /// Sampled sup over `|z| = 0.999`.
    pub fn sampled_sup(&self) -> f64 {
        (0..BOUNDARY_SAMPLES)
            .map(|j| self.eval(Complex64::from_polar(0.999, 2.0 * PI * j as f64 / BOUNDARY_SAMPLES as f64)).norm())
            .fold(0.0, f64::max)
    }

    /// Random Blaschke product or certified polynomial, with equal odds.
    pub fn random(rng: &mut impl Rng, order: usize, fixes_origin: bool) -> Self {
        if rng.gen_bool(0.5) {
            Self::random_blaschke(rng, order, fixes_origin)
        } else {
            Self::random_polynomial(rng, order, fixes_origin)
        }
    }

    pub fn random_blaschke(rng: &mut impl Rng, order: usize, fixes_origin: bool) -> Self {
        let degree = rng.gen_range(1..=MAX_BLASCHKE_DEGREE);
        let mut zeros: Vec<Complex64> = (0..degree).map(|_| disk_point(rng, MAX_ZERO_MODULUS)).collect();
        if fixes_origin {
            zeros[0] = ZERO;
        }
        let rotation = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        Self::blaschke(&zeros, rotation, order).expect("generated Blaschke data is valid")
    }

    pub fn random_polynomial(rng: &mut impl Rng, order: usize, fixes_origin: bool) -> Self {
        let degree = rng.gen_range(1..=8usize).min(order);
        let mut coeffs: Vec<Complex64> = (0..=degree).map(|_| disk_point(rng, 1.0)).collect();
        if fixes_origin {
            coeffs[0] = ZERO;
        }
        let raw = TruncatedSeries::new(coeffs.clone()).expect("finite coefficients");
        let sup = boundary_sup(&raw, 1.0).max(f64::MIN_POSITIVE);
        let target = (1.0 - SUP_MARGIN) * rng.gen_range(f64::EPSILON..=1.0);
        let scaled: Vec<Complex64> = coeffs.iter().map(|c| c * (target / sup)).collect();
        Self::scaled_polynomial(&scaled, order).expect("scaled polynomial is certified")
    }
}

/// Uniform point of the disk `|z| < radius`.
fn disk_point(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let rho = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(rho, rng.gen_range(0.0..2.0 * PI))
}

/// Series with `|a_n| <= ratio^n`, `ratio` drawn in `(0, MAX_DECAY]`.
/// Returns the series and its decay certificate for coefficients past the truncation.
pub fn random_analytic(rng: &mut impl Rng, order: usize) -> (TruncatedSeries, Growth) {
    let ratio = MAX_DECAY * (1.0 - rng.gen::<f64>());
    let s = TruncatedSeries::from_fn(order, |n| disk_point(rng, 1.0) * ratio.powi(n as i32))
        .expect("finite coefficients");
    (s, Growth::Geometric { scale: 1.0, ratio })
}

/// Result of one inequality check: `lhs <= rhs + allowance`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub allowance: f64,
    /// `rhs + allowance - lhs`
    pub margin: f64,
    pub passed: bool,
}

impl CheckOutcome {
    pub fn new(lhs: f64, rhs: f64, allowance: f64) -> Self {
        let margin = rhs + allowance - lhs;
        let passed = margin >= -FP_SLACK * (1.0 + rhs.abs());
        Self { lhs, rhs, allowance, margin, passed }
    }

    fn and(self, other: bool) -> Self {
        Self { passed: self.passed && other, ..self }
    }
}

fn check_lemma_radius(r: f64) -> Result<()> {
    if !(0.0..=LEMMA_RADIUS).contains(&r) {
        return domain(format!("the lemma needs 0 <= r <= 1/3, got {r}"));
    }
    Ok(())
}

fn lemma1_outcome(h: &TruncatedSeries, h_tail: Growth, phi: &SchwarzSample, m: f64, r: f64) -> Result<CheckOutcome> {
    if !(m > 0.0 && m.is_finite()) {
        return domain(format!("M must be positive, got {m}"));
    }
    let g = phi.realization.scale_real(m).cauchy_mul(h);
    let lhs = g.abs_power_sum(0, r);
    let rhs = m * h.abs_power_sum(0, r);
    let allowance = m * tail_bound(h_tail, h.order(), r)?;
    Ok(CheckOutcome::new(lhs, rhs, allowance))
}

/// `g = M phi h` satisfies `sum |b_n| r^n <= M sum |a_n| r^n` for `r <= 1/3`.
///
/// `h_tail` bounds the coefficients of `h` beyond its truncation
/// (`Growth::Constant(0.0)` for an exact polynomial).
pub fn check_lemma1(h: &TruncatedSeries, h_tail: Growth, phi: &SchwarzSample, m: f64, r: f64) -> Result<CheckOutcome> {
    check_lemma_radius(r)?;
    lemma1_outcome(h, h_tail, phi, m, r)
}

/// `g' = k phi h'`, `g(0) = 0` gives `sum_{n>=1} |b_n| r^n <= k sum_{n>=1} |a_n| r^n`.
pub fn check_derivative_transfer(
    h: &TruncatedSeries,
    h_tail: Growth,
    phi: &SchwarzSample,
    k: f64,
    r: f64,
) -> Result<CheckOutcome> {
    check_lemma_radius(r)?;
    if !(0.0..1.0).contains(&k) {
        return domain(format!("k must lie in [0, 1), got {k}"));
    }
    let g = phi.realization.cauchy_mul(&h.differentiate()).scale_real(k).integrate_from_zero();
    let lhs = g.abs_power_sum(1, r);
    let rhs = k * h.abs_power_sum(1, r);
    let allowance = k * tail_bound(h_tail, h.order(), r)?;
    Ok(CheckOutcome::new(lhs, rhs, allowance))
}

/// For `f' = exp(sum c_n z^n)`:
/// `sum n^2 |a_n|^2 r^{2n-2} <= exp(sum n |c_n|^2 r^{2n})`.
///
/// `c` is taken as an exact polynomial, so the right-hand side is exact and the
/// truncated left-hand side is a lower bound; no allowance is needed.
pub fn check_lebedev_milin(c: &TruncatedSeries, r: f64) -> Result<CheckOutcome> {
    if c.coeffs()[0] != ZERO {
        return domain("exponent series must vanish at the origin");
    }
    if !(0.0..=0.5).contains(&r) {
        return domain(format!("r must lie in [0, 0.5], got {r}"));
    }
    let d = c.exp_series();
    let r2 = r * r;
    let lhs = d.coeffs().iter().rev().fold(0.0, |acc, x| acc * r2 + x.norm_sqr());
    let exponent: f64 = c.coeffs().iter().enumerate().skip(1).rev().fold(0.0, |acc, (n, x)| {
        acc * r2 + n as f64 * x.norm_sqr()
    }) * r2;
    Ok(CheckOutcome::new(lhs, exponent.exp(), 0.0))
}

/// Member of the pre-Schwarzian family `e^{-i theta} F_mu(e^{i theta} z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaSample {
    pub mu: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaOutcome {
    pub bound: CheckOutcome,
    /// `(1/pi) int_{|xi|<r} |(log f')'|^2` computed by quadrature.
    pub area_integral: f64,
    pub identity_error: f64,
    pub passed: bool,
}

/// `sum n |c_n|^2 r^{2n} <= 4 lambda^2 r^2/(1 - r^2)` for the sample, together with
/// the identity between the coefficient sum and the area integral.
pub fn check_area_bound(lambda: f64, sample: AreaSample, r: f64, order: usize) -> Result<AreaOutcome> {
    if !(sample.mu > 0.0 && sample.mu <= lambda) {
        return domain(format!("mu = {} is outside (0, lambda = {lambda}]", sample.mu));
    }
    if !(0.0..1.0).contains(&r) {
        return domain(format!("r must lie in [0, 1), got {r}"));
    }
    let c = f_lambda_log_derivative(sample.mu, order)?.dilate(Complex64::from_polar(1.0, sample.theta));
    let r2 = r * r;
    let lhs = c.coeffs().iter().enumerate().skip(1).rev().fold(0.0, |acc, (n, x)| {
        acc * r2 + n as f64 * x.norm_sqr()
    }) * r2;
    let rhs = 4.0 * lambda * lambda * r2 / (1.0 - r2);
    // |c_n|^2 n <= 4 mu^2 / n
    let tail = tail_bound(Growth::Harmonic(4.0 * sample.mu * sample.mu), order, r2)?;

    let rot = Complex64::from_polar(1.0, sample.theta);
    let rot2 = rot * rot;
    let ring = |radius: f64| -> f64 {
        let sum: f64 = (0..AREA_THETA_POINTS)
            .map(|j| {
                let z = Complex64::from_polar(radius, 2.0 * PI * j as f64 / AREA_THETA_POINTS as f64);
                (rot * 2.0 * sample.mu / (ONE - rot2 * z * z)).norm_sqr()
            })
            .sum();
        radius * sum * 2.0 * PI / AREA_THETA_POINTS as f64
    };
    let area_integral = integrate(ring, 0.0, r, 1e-11)? / PI;
    let identity_error = (area_integral - lhs).abs();
    let bound = CheckOutcome::new(lhs, rhs, 0.0);
    let passed = bound.passed && identity_error <= AREA_IDENTITY_TOL + tail;
    Ok(AreaOutcome { bound, area_integral, identity_error, passed })
}

/// `(1 + lambda^2)/(2(1 + lambda))`
pub fn rogosinski_validity_bound(lambda: f64) -> f64 {
    (1.0 + lambda * lambda) / (2.0 * (1.0 + lambda))
}

/// `u_n = (n/(1+lambda^n)) r^n` is non-increasing for `n = 1..=n_max`.
pub fn rogosinski_weights_monotone(lambda: f64, r: f64, n_max: usize) -> bool {
    let u = |n: usize| n as f64 / (1.0 + lambda.powi(n as i32)) * r.powi(n as i32);
    (1..=n_max).all(|n| u(n) * (1.0 + FP_SLACK) >= u(n + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RogosinskiOutcome {
    /// `4 sum (n/(1+lambda^n)) |gamma_n|^2 r^n <= sum ((1+lambda^n)/n) r^n`
    pub weighted: CheckOutcome,
    /// `2 sum |gamma_n| r^n <= -log(1-r) - log(1-lambda r)`
    pub bohr: CheckOutcome,
    pub weights_monotone: bool,
    pub passed: bool,
}

/// Builds `2 sum gamma_n z^n = F(psi(z))` with `F = -log(1-z) - log(1-lambda z)`
/// and checks the weighted coefficient inequality and the resulting Bohr bound.
pub fn check_rogosinski_step(lambda: f64, psi: &SchwarzSample, r: f64) -> Result<RogosinskiOutcome> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return domain(format!("lambda must lie in (0, 1], got {lambda}"));
    }
    let bound = rogosinski_validity_bound(lambda);
    if !(0.0..=bound).contains(&r) {
        return domain(format!("r must lie in [0, {bound}], got {r}"));
    }
    if !psi.fixes_origin {
        return domain("psi must fix the origin");
    }
    let order = psi.realization.order();
    let outer = TruncatedSeries::from_fn(order, |n| {
        Complex64::new(if n == 0 { 0.0 } else { (1.0 + lambda.powi(n as i32)) / n as f64 }, 0.0)
    })?;
    let two_gamma = outer.compose(&psi.realization)?;
    let rhs = -(-r).ln_1p() - (-lambda * r).ln_1p();
    let weighted_lhs: f64 = two_gamma
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| n as f64 / (1.0 + lambda.powi(n as i32)) * c.norm_sqr() * r.powi(n as i32))
        .sum();
    let weighted = CheckOutcome::new(weighted_lhs, rhs, 0.0);
    let bohr = CheckOutcome::new(two_gamma.abs_power_sum(1, r), rhs, 0.0);
    let weights_monotone = rogosinski_weights_monotone(lambda, bound, 200);
    let passed = weighted.passed && bohr.passed && weights_monotone;
    Ok(RogosinskiOutcome { weighted, bohr, weights_monotone, passed })
}

/// `sum_{n>=1} |[z^n] f(phi)| r^n <= sum_{n>=1} |a_n| r^n` for `r <= 1/3`.
pub fn check_subordination_bohr(
    f: &TruncatedSeries,
    f_tail: Growth,
    phi: &SchwarzSample,
    r: f64,
) -> Result<CheckOutcome> {
    check_lemma_radius(r)?;
    if !phi.fixes_origin {
        return domain("phi must fix the origin");
    }
    let composed = f.compose(&phi.realization)?;
    let lhs = composed.abs_power_sum(1, r);
    let rhs = f.abs_power_sum(1, r);
    Ok(CheckOutcome::new(lhs, rhs, tail_bound(f_tail, f.order(), r)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CheckKind {
    Lemma1,
    DerivativeTransfer,
    LebedevMilin,
    AreaBound,
    RogosinskiStep,
    SubordinationBohr,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Lemma1,
        CheckKind::DerivativeTransfer,
        CheckKind::LebedevMilin,
        CheckKind::AreaBound,
        CheckKind::RogosinskiStep,
        CheckKind::SubordinationBohr,
    ];

    pub fn default_samples(self) -> usize {
        match self {
            CheckKind::Lemma1 | CheckKind::SubordinationBohr => 1000,
            CheckKind::DerivativeTransfer | CheckKind::LebedevMilin | CheckKind::RogosinskiStep => 500,
            CheckKind::AreaBound => 200,
        }
    }

    fn index(self) -> u64 {
        CheckKind::ALL.iter().position(|k| *k == self).unwrap() as u64
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Lemma1 => "lemma1",
            CheckKind::DerivativeTransfer => "derivative-transfer",
            CheckKind::LebedevMilin => "lebedev-milin",
            CheckKind::AreaBound => "area-bound",
            CheckKind::RogosinskiStep => "rogosinski-step",
            CheckKind::SubordinationBohr => "subordination-bohr",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = BohrError;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| BohrError::Parse(format!("unknown check `{s}`")))
    }
}

/// One reproducible sample: `kind seed order=N [r=x]`.
///
/// `r` is present for checks run at a fixed radius; for lemma1 it may exceed
/// 1/3, which replays a counterexample-hunt draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Replay {
    pub kind: CheckKind,
    pub seed: u64,
    pub order: usize,
    pub r: Option<f64>,
}

impl fmt::Display for Replay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} order={}", self.kind, self.seed, self.order)?;
        if let Some(r) = self.r {
            write!(f, " r={r:?}")?;
        }
        Ok(())
    }
}

impl FromStr for Replay {
    type Err = BohrError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || BohrError::Parse(format!("malformed replay line `{s}`"));
        let mut it = s.split_whitespace();
        let kind = it.next().ok_or_else(bad)?.parse()?;
        let seed = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let (mut order, mut r) = (None, None);
        for param in it {
            match param.split_once('=').ok_or_else(bad)? {
                ("order", v) => order = Some(v.parse().map_err(|_| bad())?),
                ("r", v) => r = Some(v.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        Ok(Replay { kind, seed, order: order.ok_or_else(bad)?, r })
    }
}

/// Regenerates the sample behind a replay line and runs its check.
pub fn run_sample(replay: &Replay) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(replay.seed);
    let order = replay.order;
    if order < 2 {
        return domain(format!("harness order must be at least 2, got {order}"));
    }
    let fixed_r = || replay.r.ok_or_else(|| BohrError::Parse(format!("{} replay needs r=", replay.kind)));
    match replay.kind {
        CheckKind::Lemma1 => {
            let (h, tail) = random_analytic(&mut rng, order);
            let phi = SchwarzSample::random(&mut rng, order, false);
            let m = rng.gen_range(0.1..=10.0);
            lemma1_outcome(&h, tail, &phi, m, fixed_r()?)
        }
        CheckKind::DerivativeTransfer => {
            let (h, tail) = random_analytic(&mut rng, order);
            let phi = SchwarzSample::random(&mut rng, order, false);
            let k = rng.gen_range(0.0..1.0);
            check_derivative_transfer(&h, tail, &phi, k, fixed_r()?)
        }
        CheckKind::LebedevMilin => {
            let c = TruncatedSeries::from_fn(order, |n| {
                if n == 0 {
                    ZERO
                } else {
                    disk_point(&mut rng, 1.0) * EXPONENT_DECAY.powi(n as i32)
                }
            })?;
            if c.coeffs().iter().enumerate().any(|(n, x)| x.norm() > EXPONENT_DECAY.powi(n as i32)) {
                return domain("exponent sample violates the 0.8^n constraint");
            }
            let r = [0.1, 0.3, 0.5][rng.gen_range(0..3)];
            check_lebedev_milin(&c, r)
        }
        CheckKind::AreaBound => {
            let lambda = rng.gen_range(0.05..=2.0);
            let sample = AreaSample { mu: lambda * (1.0 - rng.gen::<f64>()), theta: rng.gen_range(0.0..2.0 * PI) };
            let r = rng.gen_range(0.0..0.9);
            let out = check_area_bound(lambda, sample, r, order)?;
            Ok(out.bound.and(out.passed))
        }
        CheckKind::RogosinskiStep => {
            let lambda = 1.0 - rng.gen::<f64>();
            let psi = SchwarzSample::random(&mut rng, order, true);
            let r = rng.gen::<f64>() * rogosinski_validity_bound(lambda);
            let out = check_rogosinski_step(lambda, &psi, r)?;
            Ok(out.weighted.and(out.passed))
        }
        CheckKind::SubordinationBohr => {
            let (f, tail) = random_analytic(&mut rng, order);
            let phi = SchwarzSample::random_blaschke(&mut rng, order, true);
            check_subordination_bohr(&f, tail, &phi, fixed_r()?)
        }
    }
}

fn sample_seed(base: u64, stream: u64, i: u64) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (stream << 48) ^ i
}

const HUNT_STREAM: u64 = 63;
pub const HUNT_RADIUS: f64 = 0.5;
pub const HUNT_DRAWS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessConfig {
    pub seed: u64,
    pub order: usize,
    /// Overrides every per-check sample count when set.
    pub samples: Option<usize>,
    pub hunt_draws: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self { seed: 20_240_517, order: DEFAULT_ORDER, samples: None, hunt_draws: HUNT_DRAWS }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub kind: CheckKind,
    pub samples: usize,
    pub passed: usize,
    pub min_margin: f64,
    /// Replay lines of failing samples (and of samples that raised errors).
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.samples
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuntReport {
    pub radius: f64,
    pub draws: usize,
    /// First draw (in index order) that violates the lemma outside its hypothesis.
    pub counterexample: Option<String>,
    pub counterexample_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessReport {
    pub seed: u64,
    pub order: usize,
    pub suites: Vec<SuiteReport>,
    pub hunt: HuntReport,
}

impl HarnessReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::all_passed) && self.hunt.counterexample.is_some()
    }
}

fn fixed_radius(kind: CheckKind) -> Option<f64> {
    match kind {
        CheckKind::Lemma1 | CheckKind::DerivativeTransfer | CheckKind::SubordinationBohr => Some(LEMMA_RADIUS),
        _ => None,
    }
}

pub fn run_suite(kind: CheckKind, seed: u64, order: usize, samples: usize) -> SuiteReport {
    let results: Vec<(Replay, Result<CheckOutcome>)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let replay = Replay { kind, seed: sample_seed(seed, kind.index(), i), order, r: fixed_radius(kind) };
            (replay, run_sample(&replay))
        })
        .collect();
    let mut passed = 0;
    let mut min_margin = f64::INFINITY;
    let mut failures = Vec::new();
    for (replay, res) in results {
        match res {
            Ok(o) if o.passed => {
                passed += 1;
                min_margin = min_margin.min(o.margin);
            }
            Ok(o) => {
                min_margin = min_margin.min(o.margin);
                failures.push(replay.to_string());
            }
            Err(_) => failures.push(replay.to_string()),
        }
    }
    SuiteReport { kind, samples, passed, min_margin, failures }
}

/// Searches for a lemma1 violation at `r = 1/2`, outside the lemma's hypothesis.
pub fn hunt_lemma1(seed: u64, order: usize, draws: usize) -> HuntReport {
    let found = (0..draws as u64).into_par_iter().find_map_first(|i| {
        let replay =
            Replay { kind: CheckKind::Lemma1, seed: sample_seed(seed, HUNT_STREAM, i), order, r: Some(HUNT_RADIUS) };
        match run_sample(&replay) {
            Ok(o) if !o.passed => Some((replay.to_string(), o.margin)),
            _ => None,
        }
    });
    HuntReport {
        radius: HUNT_RADIUS,
        draws,
        counterexample_margin: found.as_ref().map(|f| f.1),
        counterexample: found.map(|f| f.0),
    }
}

pub fn run_harness(config: &HarnessConfig) -> HarnessReport {
    let suites = CheckKind::ALL
        .into_iter()
        .map(|kind| run_suite(kind, config.seed, config.order, config.samples.unwrap_or(kind.default_samples())))
        .collect();
    HarnessReport {
        seed: config.seed,
        order: config.order,
        suites,
        hunt: hunt_lemma1(config.seed, config.order, config.hunt_draws),
    }
}

/// Koebe function as an exact polynomial, for examples and tests.
pub fn koebe_polynomial(order: usize) -> Result<TruncatedSeries> {
    Ok(build(CatalogTag::Koebe, order)?.analytic_part().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXACT: Growth = Growth::Constant(0.0);

    #[test]
    fn blaschke_series_matches_pointwise_product() {
        let zeros = [Complex64::new(0.3, 0.4), Complex64::new(-0.5, 0.1), ZERO];
        let rot = Complex64::from_polar(1.0, 0.7);
        let b = SchwarzSample::blaschke(&zeros, rot, 120).unwrap();
        assert!(b.fixes_origin);
        let z = Complex64::new(0.2, -0.35);
        assert!((b.realization.eval(z) - b.eval(z)).norm() < 1e-14);
        assert!(b.sampled_sup() <= 1.0 + 1e-12);
    }

    #[test]
    fn schwarz_constructors_validate() {
        assert!(SchwarzSample::blaschke(&[Complex64::new(1.0, 0.0)], ONE, 10).is_err());
        assert!(SchwarzSample::blaschke(&[ZERO; 7], ONE, 10).is_err());
        assert!(SchwarzSample::scaled_polynomial(&[ZERO, Complex64::new(0.99, 0.0)], 10).is_err());
        assert!(SchwarzSample::scaled_polynomial(&[ZERO, Complex64::new(0.5, 0.0)], 10).is_ok());
        assert!(SchwarzSample::explicit(TruncatedSeries::from_real(&[0.0, 1.1]).unwrap()).is_err());
    }

    #[test]
    fn random_schwarz_samples_are_self_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = SchwarzSample::random(&mut rng, 40, true);
            assert!(s.fixes_origin && s.realization.coeffs()[0] == ZERO);
            assert!(s.sampled_sup() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn lemma1_examples() {
        let h = TruncatedSeries::from_fn(100, |_| ONE).unwrap();
        let one = SchwarzSample::explicit(TruncatedSeries::one(100)).unwrap();
        let o = check_lemma1(&h, Growth::Constant(1.0), &one, 1.0, 0.3).unwrap();
        assert!(o.passed && (o.lhs - o.rhs).abs() < 1e-15);
        let o = check_lemma1(&h, Growth::Constant(1.0), &SchwarzSample::identity(100), 2.0, 1.0 / 3.0).unwrap();
        // lhs = 2 sum_{n=1}^{100} r^n, rhs = 2 sum_{n=0}^{100} r^n
        assert!(o.passed && (o.margin - 2.0).abs() < 1e-12);
        assert!(check_lemma1(&h, EXACT, &one, 1.0, 0.34).is_err());
    }

    #[test]
    fn derivative_transfer_examples() {
        let koebe = koebe_polynomial(100).unwrap();
        let c = SchwarzSample::explicit(TruncatedSeries::constant(Complex64::from_polar(1.0, 1.0), 100)).unwrap();
        let o = check_derivative_transfer(&koebe, EXACT, &c, 0.5, 0.3).unwrap();
        assert!(o.passed && (o.lhs - o.rhs).abs() < 1e-14);
        let b = SchwarzSample::blaschke(&[Complex64::new(0.5, 0.2), Complex64::new(-0.1, -0.6)], ONE, 100).unwrap();
        assert!(check_derivative_transfer(&koebe, EXACT, &b, 1.0 / 3.0, 1.0 / 3.0).unwrap().passed);
        assert_eq!(check_derivative_transfer(&koebe, EXACT, &b, 0.0, 0.2).unwrap().lhs, 0.0);
    }

    #[test]
    fn lebedev_milin_examples() {
        let o = check_lebedev_milin(&TruncatedSeries::zero(30), 0.4).unwrap();
        assert!(o.passed && o.lhs == 1.0 && o.rhs == 1.0);
        let c = f_lambda_log_derivative(0.5, 120).unwrap();
        assert!(check_lebedev_milin(&c, 0.4).unwrap().passed);
        assert!(check_lebedev_milin(&TruncatedSeries::one(5), 0.4).is_err());
    }

    #[test]
    fn area_examples() {
        let lam = 0.5;
        let r = 0.5;
        let out = check_area_bound(lam, AreaSample { mu: lam, theta: 0.0 }, r, 200).unwrap();
        // sum over odd n of 4 lambda^2 r^{2n} / n = 2 lambda^2 log((1+r^2)/(1-r^2))
        let closed = 2.0 * lam * lam * ((1.0 + r * r) / (1.0 - r * r)).ln();
        assert!((out.bound.lhs - closed).abs() < 1e-14);
        assert!(out.passed && out.identity_error < 1e-9, "{out:?}");
        assert!(check_area_bound(0.5, AreaSample { mu: 0.6, theta: 0.0 }, 0.5, 50).is_err());
        // small r: lhs/rhs -> |c_1|^2/(4 lambda^2) = (mu/lambda)^2
        let out = check_area_bound(1.0, AreaSample { mu: 0.5, theta: 1.0 }, 1e-3, 50).unwrap();
        assert!((out.bound.lhs / out.bound.rhs - 0.25).abs() < 1e-5);
    }

    #[test]
    fn rogosinski_examples() {
        let lam = 0.5;
        let rb = rogosinski_validity_bound(lam);
        let out = check_rogosinski_step(lam, &SchwarzSample::identity(200), rb).unwrap();
        assert!(out.passed && out.weighted.margin < 1e-12 && out.bohr.margin < 1e-12, "{out:?}");
        let z2 = SchwarzSample::explicit(TruncatedSeries::monomial(2, ONE, 100)).unwrap();
        let out = check_rogosinski_step(lam, &z2, 0.4).unwrap();
        assert!(out.passed && out.weighted.margin > 0.0);
        assert!(check_rogosinski_step(lam, &z2, rb + 1e-6).is_err());
        assert!(rogosinski_weights_monotone(0.3, rogosinski_validity_bound(0.3), 200));
        assert!(!rogosinski_weights_monotone(0.3, rogosinski_validity_bound(0.3) + 0.01, 200));
    }

    #[test]
    fn subordination_examples() {
        let koebe = koebe_polynomial(150).unwrap();
        let o = check_subordination_bohr(&koebe, EXACT, &SchwarzSample::identity(150), 0.3).unwrap();
        assert!(o.passed && o.margin.abs() < 1e-12);
        let phi = SchwarzSample::explicit(TruncatedSeries::monomial(1, Complex64::new(0.9, 0.0), 150)).unwrap();
        let o = check_subordination_bohr(&koebe, EXACT, &phi, 1.0 / 3.0).unwrap();
        // closed forms: K(0.9 r) vs K(r)
        let k = |x: f64| x / ((1.0 - x) * (1.0 - x));
        assert!((o.lhs - k(0.3)).abs() < 1e-12 && (o.rhs - k(1.0 / 3.0)).abs() < 1e-12 && o.passed);
        let off = SchwarzSample::explicit(TruncatedSeries::from_real(&[0.5, 0.4]).unwrap()).unwrap();
        assert!(check_subordination_bohr(&koebe, EXACT, &off, 0.3).is_err());
    }

    #[test]
    fn replay_round_trip_and_determinism() {
        let r = Replay { kind: CheckKind::Lemma1, seed: 42, order: 30, r: Some(1.0 / 3.0) };
        let line = r.to_string();
        assert_eq!(line.parse::<Replay>().unwrap(), r);
        assert_eq!(run_sample(&r).unwrap(), run_sample(&line.parse().unwrap()).unwrap());
        assert!("lemma1 x order=3".parse::<Replay>().is_err());
        assert!("nonsense 1 order=3".parse::<Replay>().is_err());
    }

    #[test]
    fn small_harness_run() {
        let cfg = HarnessConfig { seed: 1, order: 24, samples: Some(20), hunt_draws: 2000 };
        let rep = run_harness(&cfg);
        assert!(rep.all_passed(), "{rep:?}");
        let line = rep.hunt.counterexample.unwrap();
        assert!(!run_sample(&line.parse().unwrap()).unwrap().passed);
    }
}
