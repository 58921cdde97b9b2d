//! Truncated power series `a_0 + a_1 z + ... + a_N z^N` over `Complex64`.
//!
//! Every operation is exact to the truncation order: a coefficient of the
//! result is reported only when all the input coefficients it depends on are
//! known. Binary operations therefore return a series whose order is the
//! minimum of the operand orders.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{domain, BohrError, Result};

/// Truncation order used when the caller does not choose one.
pub const DEFAULT_ORDER: usize = 200;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from `a_0..=a_N`. The vector must be non-empty and finite.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("a series needs at least the constant coefficient");
        }
        if let Some(n) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(BohrError::NonFinite(format!("coefficient {n}")));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Series whose n-th coefficient is `f(n)` for `n = 0..=order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        Self::new((0..=order).map(f).collect())
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_vec_unchecked(vec![ZERO; order + 1])
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    /// The identity map `z`. Requires `order >= 1`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, ONE, order.max(1))
    }

    /// `c z^k` truncated at `order` (zero if `k > order`).
    pub fn monomial(k: usize, c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`, or `None` beyond the truncation order.
    pub fn get(&self, n: usize) -> Option<Complex64> {
        self.coeffs.get(n).copied()
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Drops every coefficient above `order`. Raising the order is not allowed
    /// because the missing coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::from_vec_unchecked(self.coeffs[..=n].to_vec())
    }

    /// Pads with zeros up to `order`: treats the series as an exact polynomial.
    pub fn pad_to(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order.max(self.order()) + 1, ZERO);
        Self::from_vec_unchecked(c)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_vec_unchecked(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// `f(c z)`, i.e. `a_n c^n`.
    pub fn dilate(&self, c: Complex64) -> Self {
        let mut p = ONE;
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * p;
                p *= c;
                v
            })
            .collect();
        Self::from_vec_unchecked(coeffs)
    }

    pub fn cauchy_mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_vec_unchecked(mul_to(&self.coeffs, &other.coeffs, n))
    }

    /// `b_n = (n+1) a_{n+1}`. An order-0 series differentiates to the order-0 zero series.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_vec_unchecked(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, a)| a * n as f64)
                .collect(),
        )
    }

    /// Antiderivative vanishing at the origin; the order grows by one.
    pub fn integrate_from_zero(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(ZERO);
        out.extend(self.coeffs.iter().enumerate().map(|(n, a)| a / (n + 1) as f64));
        Self::from_vec_unchecked(out)
    }

    /// Principal-branch logarithm of a series with `a_0 != 0`.
    pub fn log(&self) -> Result<Self> {
        let q = &self.coeffs;
        let q0 = q[0];
        if q0 == ZERO {
            return domain("logarithm of a series with vanishing constant term");
        }
        let n_max = self.order();
        let mut l = vec![ZERO; n_max + 1];
        l[0] = q0.ln();
        // L' q = q'  =>  n q_0 L_n = n q_n - sum_{k=1}^{n-1} k L_k q_{n-k}
        for n in 1..=n_max {
            let mut acc = q[n] * n as f64;
            for k in 1..n {
                acc -= l[k] * q[n - k] * k as f64;
            }
            l[n] = acc / (q0 * n as f64);
        }
        Self::new(l)
    }

    /// `log(f(z)/z)` for `f = a_1 z + a_2 z^2 + ...`; order drops by one.
    ///
    /// The logarithmic coefficients are half of the returned coefficients.
    pub fn log_over_z(&self) -> Result<Self> {
        self.check_normalized_form()?;
        Self::from_vec_unchecked(self.coeffs[1..].to_vec()).log()
    }

    /// `gamma_n = [z^n] log(f(z)/z) / 2` for `n = 1..=N-1`; index 0 holds `gamma_0 = log(a_1)/2`.
    pub fn logarithmic_coefficients(&self) -> Result<Vec<Complex64>> {
        Ok(self.log_over_z()?.coeffs.iter().map(|c| c * 0.5).collect())
    }

    pub fn exp_series(&self) -> Self {
        let f = &self.coeffs;
        let n_max = self.order();
        let mut e = vec![ZERO; n_max + 1];
        e[0] = f[0].exp();
        for n in 1..=n_max {
            let mut acc = ZERO;
            for k in 1..=n {
                acc += f[k] * e[n - k] * k as f64;
            }
            e[n] = acc / n as f64;
        }
        Self::from_vec_unchecked(e)
    }

    /// Multiplicative inverse; requires `a_0 != 0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a = &self.coeffs;
        if a[0] == ZERO {
            return domain("reciprocal of a series with vanishing constant term");
        }
        Self::new(reciprocal_to(a, self.order()))
    }

    /// Substitution `f(phi(z))`; the inner series must fix the origin.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != ZERO {
            return domain("inner function must fix origin");
        }
        let n = self.order().min(inner.order());
        Self::new(compose_to(&self.coeffs, &inner.coeffs, n))
    }

    /// Compositional inverse of `f = a_1 z + ...` by Newton iteration on series.
    ///
    /// Each step `g <- g - (f(g) - w) / f'(g)` doubles the number of correct
    /// coefficients, starting from `g = w / a_1`.
    pub fn revert(&self) -> Result<Self> {
        self.check_normalized_form()?;
        let n = self.order();
        let f = &self.coeffs;
        let df: Vec<Complex64> = self.differentiate().coeffs;
        let mut g = vec![ZERO, ONE / f[1]];
        let mut known = 1usize;
        while known < n {
            let target = (2 * known + 1).min(n);
            g.resize(target + 1, ZERO);
            // residual f(g) - w vanishes to order `known`
            let mut res = compose_to(f, &g, target);
            res[1] -= ONE;
            let lead = known + 1;
            res[..lead].fill(ZERO);
            let denom = compose_to(&df, &g, target - lead);
            let inv = reciprocal_to(&denom, target - lead);
            let step = mul_to(&res, &inv, target);
            for (gi, si) in g.iter_mut().zip(&step).skip(lead) {
                *gi -= si;
            }
            known = target;
        }
        g.truncate(n + 1);
        g.resize(n + 1, ZERO);
        Self::new(g)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, a| acc * z + a)
    }

    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(ZERO, |acc, (n, a)| acc * z + a * n as f64)
    }

    pub fn eval_second_derivative(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(2)
            .rev()
            .fold(ZERO, |acc, (n, a)| acc * z + a * (n * (n - 1)) as f64)
    }

    /// `sum_{n >= start} |a_n| r^n` over the stored coefficients.
    pub fn abs_power_sum(&self, start: usize, r: f64) -> f64 {
        let tail: f64 = self.coeffs.iter().skip(start).rev().fold(0.0, |acc, a| acc * r + a.norm());
        tail * r.powi(start as i32)
    }

    /// Debug dump: one line per coefficient, `n re im`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(s, "{n} {} {}", c.re, c.im);
        }
        s
    }

    /// Inverse of [`TruncatedSeries::dump`]; indices must run 0, 1, 2, ... without gaps.
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || BohrError::Parse(format!("line {}: expected `n re im`", lineno + 1));
            if fields.len() != 3 {
                return Err(bad());
            }
            let n: usize = fields[0].parse().map_err(|_| bad())?;
            if n != coeffs.len() {
                return Err(BohrError::Parse(format!("line {}: index {n} out of sequence", lineno + 1)));
            }
            let re: f64 = fields[1].parse().map_err(|_| bad())?;
            let im: f64 = fields[2].parse().map_err(|_| bad())?;
            coeffs.push(Complex64::new(re, im));
        }
        Self::new(coeffs)
    }

    fn check_normalized_form(&self) -> Result<()> {
        if self.order() < 1 || self.coeffs[0] != ZERO || self.coeffs[1] == ZERO {
            return domain("series not of form a_1 z + …");
        }
        Ok(())
    }
}

/// `c_n = sum a_t b_{n-t}` for `n <= order`; missing coefficients count as zero.
pub(crate) fn mul_to(a: &[Complex64], b: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut c = vec![ZERO; order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if *ai == ZERO {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            c[i + j] += ai * bj;
        }
    }
    c
}

fn reciprocal_to(a: &[Complex64], order: usize) -> Vec<Complex64> {
    let inv0 = ONE / a[0];
    let mut b = vec![ZERO; order + 1];
    b[0] = inv0;
    for n in 1..=order {
        let mut acc = ZERO;
        for k in 1..=n.min(a.len() - 1) {
            acc += a[k] * b[n - k];
        }
        b[n] = -acc * inv0;
    }
    b
}

/// Horner evaluation of `f(phi)` where `phi_0 = 0`. The partial result that is
/// later multiplied by `phi^k` is only carried to order `order - k`.
fn compose_to(f: &[Complex64], phi: &[Complex64], order: usize) -> Vec<Complex64> {
    let deg = (f.len() - 1).min(order);
    let mut acc = vec![f[deg]];
    for k in (0..deg).rev() {
        let m = order - k;
        let mut next = vec![ZERO; m + 1];
        next[0] = f[k];
        for (i, ai) in acc.iter().enumerate() {
            if *ai == ZERO {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(m + 1 - i).skip(1) {
                next[i + j] += ai * pj;
            }
        }
        acc = next;
    }
    acc.resize(order + 1, ZERO);
    acc
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_vec_unchecked((0..=n).map(|i| self.coeffs[i] + rhs.coeffs[i]).collect())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_vec_unchecked((0..=n).map(|i| self.coeffs[i] - rhs.coeffs[i]).collect())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.cauchy_mul(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale_real(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(s: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(s).unwrap()
    }

    fn assert_close(a: &TruncatedSeries, b: &[f64], tol: f64) {
        assert_eq!(a.order() + 1, b.len(), "order mismatch: {:?}", a.coeffs());
        for (n, (x, y)) in a.coeffs().iter().zip(b).enumerate() {
            assert!((x - c(*y)).norm() <= tol, "coefficient {n}: {x} vs {y}");
        }
    }

    #[test]
    fn rejects_non_finite_and_empty() {
        assert!(matches!(TruncatedSeries::new(vec![]), Err(BohrError::Domain(_))));
        assert!(matches!(
            TruncatedSeries::from_real(&[1.0, f64::NAN]),
            Err(BohrError::NonFinite(_))
        ));
    }

    #[test]
    fn binomial_square() {
        let s = real(&[1.0, 1.0, 0.0]);
        assert_eq!(s.cauchy_mul(&s), real(&[1.0, 2.0, 1.0]));
    }

    #[test]
    fn one_is_identity_for_mul() {
        let f = real(&[0.5, -2.0, 3.25, 7.0]);
        assert_eq!(f.cauchy_mul(&TruncatedSeries::one(3)), f);
    }

    #[test]
    fn geometric_square_is_n_plus_one() {
        let g = real(&[1.0; 6]);
        assert_eq!(g.cauchy_mul(&g), real(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]));
    }

    #[test]
    fn mul_order_is_min() {
        let a = real(&[1.0, 1.0, 1.0, 1.0]);
        let b = real(&[1.0, 1.0]);
        assert_eq!(a.cauchy_mul(&b).order(), 1);
    }

    #[test]
    fn differentiate_and_integrate() {
        assert_eq!(real(&[0.0, 1.0, 1.0]).differentiate(), real(&[1.0, 2.0]));
        assert_eq!(real(&[1.0, 2.0]).integrate_from_zero(), real(&[0.0, 1.0, 1.0]));
        assert_eq!(real(&[4.0]).differentiate(), TruncatedSeries::zero(0));
    }

    #[test]
    fn log_over_z_of_koebe() {
        let k = TruncatedSeries::from_fn(12, |n| c(n as f64)).unwrap();
        let l = k.log_over_z().unwrap();
        assert_eq!(l.order(), 11);
        for n in 1..=11 {
            assert!((l.coeffs()[n] - c(2.0 / n as f64)).norm() < 1e-13);
        }
    }

    #[test]
    fn log_over_z_of_half_plane() {
        let f = TruncatedSeries::from_fn(10, |n| c(if n == 0 { 0.0 } else { 1.0 })).unwrap();
        let gamma = f.logarithmic_coefficients().unwrap();
        for (n, g) in gamma.iter().enumerate().skip(1) {
            assert!((g - c(0.5 / n as f64)).norm() < 1e-14);
        }
    }

    #[test]
    fn log_over_z_of_u_lambda_extremal() {
        // z/((1+z)(1+0.5z)) by series division; oracle: 2 gamma_n = (-1)^n (1 + 0.5^n)/n
        let lam = 0.5;
        let den = real(&[1.0, 1.0])
            .pad_to(15)
            .cauchy_mul(&real(&[1.0, lam]).pad_to(15));
        let f_over_z = den.reciprocal().unwrap();
        let mut coeffs = vec![ZERO];
        coeffs.extend_from_slice(&f_over_z.coeffs()[..15]);
        let f = TruncatedSeries::new(coeffs).unwrap();
        let l = f.log_over_z().unwrap();
        for n in 1..15 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let want = sign * (1.0 + lam.powi(n as i32)) / n as f64;
            assert!((l.coeffs()[n] - c(want)).norm() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn log_over_z_rejects_bad_forms() {
        let msg = |r: Result<TruncatedSeries>| match r {
            Err(BohrError::Domain(m)) => m,
            other => panic!("expected domain error, got {other:?}"),
        };
        assert!(msg(real(&[1.0, 1.0, 0.0]).log_over_z()).contains("a_1 z"));
        assert!(msg(real(&[0.0, 0.0, 1.0]).log_over_z()).contains("a_1 z"));
        assert!(real(&[0.0, 0.0, 1.0]).revert().is_err());
    }

    #[test]
    fn exp_reciprocal_compose_basics() {
        assert_eq!(TruncatedSeries::zero(4).exp_series(), TruncatedSeries::one(4));
        assert_close(&real(&[1.0, -1.0, 0.0, 0.0, 0.0]).reciprocal().unwrap(), &[1.0; 5], 0.0);
        assert!(real(&[0.0, 1.0]).reciprocal().is_err());
        match real(&[0.0, 1.0]).compose(&real(&[0.5, 1.0])) {
            Err(BohrError::Domain(m)) => assert!(m.contains("fix origin")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn compose_koebe_with_square() {
        let k = TruncatedSeries::from_fn(10, |n| c(n as f64)).unwrap();
        let z2 = TruncatedSeries::monomial(2, ONE, 10);
        let want: Vec<f64> = (0..=10).map(|n| if n % 2 == 0 { (n / 2) as f64 } else { 0.0 }).collect();
        assert_close(&k.compose(&z2).unwrap(), &want, 0.0);
    }

    #[test]
    fn revert_simple_maps() {
        assert_eq!(TruncatedSeries::identity(6).revert().unwrap(), TruncatedSeries::identity(6));
        let l = TruncatedSeries::from_fn(9, |n| c(if n == 0 { 0.0 } else { 1.0 })).unwrap();
        let want: Vec<f64> = (0..=9)
            .map(|n| match n {
                0 => 0.0,
                n if n % 2 == 1 => 1.0,
                _ => -1.0,
            })
            .collect();
        assert_close(&l.revert().unwrap(), &want, 1e-14);
    }

    #[test]
    fn revert_with_nonunit_leading_coefficient() {
        let f = TruncatedSeries::new(vec![ZERO, Complex64::new(2.0, 1.0), c(0.3), Complex64::new(0.0, -0.7), c(0.1)])
            .unwrap();
        let g = f.revert().unwrap();
        let id = f.compose(&g).unwrap();
        assert_close(&id, &[0.0, 1.0, 0.0, 0.0, 0.0], 1e-14);
    }

    #[test]
    fn evaluation_matches_closed_forms() {
        let geo = TruncatedSeries::from_fn(80, |_| ONE).unwrap();
        let z = Complex64::new(0.1, -0.2);
        assert!((geo.eval(z) - ONE / (ONE - z)).norm() < 1e-14);
        assert!((geo.eval_derivative(z) - ONE / ((ONE - z) * (ONE - z))).norm() < 1e-13);
        assert!((geo.eval_second_derivative(z) - 2.0 / ((ONE - z).powi(3))).norm() < 1e-12);
    }

    #[test]
    fn abs_power_sum_geometric_third() {
        let geo = TruncatedSeries::from_fn(200, |_| ONE).unwrap();
        assert_eq!(geo.abs_power_sum(0, 1.0 / 3.0), 1.5);
        assert!((geo.abs_power_sum(1, 1.0 / 3.0) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn dump_round_trip() {
        let f = TruncatedSeries::new(vec![c(0.0), Complex64::new(1.0, -0.25), c(1e-300)]).unwrap();
        let text = f.dump();
        assert_eq!(text.lines().next(), Some("0 0 0"));
        assert_eq!(TruncatedSeries::parse_dump(&text).unwrap(), f);
        assert!(TruncatedSeries::parse_dump("0 1 0\n2 1 0\n").is_err());
    }
}
