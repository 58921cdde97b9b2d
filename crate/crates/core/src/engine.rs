//! Bohr-type sums of concrete series, harmonic pairs, and certified
//! truncation remainders.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::check_radius;
use crate::error::{domain, BohrError, Result};
use crate::series::TruncatedSeries;

/// Slack allowed on the sampled dilatation, `|g'/h'| <= k + DILATATION_SLACK`.
pub const DILATATION_SLACK: f64 = 1e-9;

/// Sense-preserving harmonic map `f = h + conj(g)` with `g(0) = 0` and
/// dilatation `|g'/h'| <= k = (K-1)/(K+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPair {
    h: TruncatedSeries,
    g: TruncatedSeries,
    big_k: f64,
}

impl HarmonicPair {
    /// Validates `K >= 1`, `g_0 = 0` and samples the dilatation on a 64x64
    /// polar grid of radius 0.95.
    pub fn new(h: TruncatedSeries, g: TruncatedSeries, big_k: f64) -> Result<Self> {
        if !(big_k >= 1.0) {
            return domain(format!("K must be at least 1, got {big_k}"));
        }
        if g.coeffs()[0] != Complex64::new(0.0, 0.0) {
            return domain("canonical representation requires g(0) = 0");
        }
        let pair = Self { h, g, big_k };
        let w = pair.sampled_dilatation()?;
        if w > pair.k() + DILATATION_SLACK {
            return domain(format!("sampled dilatation {w} exceeds k = {}", pair.k()));
        }
        Ok(pair)
    }

    pub fn h(&self) -> &TruncatedSeries {
        &self.h
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    /// The quasiconformality constant K.
    pub fn big_k(&self) -> f64 {
        self.big_k
    }

    /// `k = (K-1)/(K+1)`; tends to 1 as `K -> infinity`.
    pub fn k(&self) -> f64 {
        dilatation_bound(self.big_k)
    }

    /// `w_f(z) = g'(z)/h'(z)`.
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64> {
        let dh = self.h.eval_derivative(z);
        if dh.norm() == 0.0 {
            return Err(BohrError::Evaluation(format!("h' vanishes at {z}")));
        }
        Ok(self.g.eval_derivative(z) / dh)
    }

    /// Largest `|w_f|` over the 64x64 polar grid with radii `0.95 i/64`.
    pub fn sampled_dilatation(&self) -> Result<f64> {
        let mut max = 0.0f64;
        for i in 1..=64 {
            let rho = 0.95 * i as f64 / 64.0;
            for j in 0..64 {
                let z = Complex64::from_polar(rho, 2.0 * PI * j as f64 / 64.0);
                max = max.max(self.dilatation(z)?.norm());
            }
        }
        Ok(max)
    }
}

/// `k = (K-1)/(K+1)`.
pub fn dilatation_bound(big_k: f64) -> f64 {
    (big_k - 1.0) / (big_k + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A truncated Bohr sum compared with a threshold.
///
/// The truncated sum is a lower bound and `sum + tail` an upper bound for the
/// full sum, so the verdict is `Holds` only when the upper bound is below the
/// threshold and `Fails` only when the lower bound is above it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BohrCheck {
    pub r: f64,
    pub sum_value: f64,
    pub threshold: f64,
    pub tail_bound: f64,
    pub verdict: Verdict,
}

impl BohrCheck {
    pub fn new(r: f64, sum_value: f64, threshold: f64, tail_bound: f64) -> Self {
        let verdict = if sum_value + tail_bound <= threshold {
            Verdict::Holds
        } else if sum_value > threshold {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        };
        Self { r, sum_value, threshold, tail_bound, verdict }
    }
}

/// `sum |a_n| r^n`, from `n = 0` when `include_constant` and from `n = 1` otherwise.
pub fn bohr_sum(f: &TruncatedSeries, r: f64, include_constant: bool) -> Result<f64> {
    check_radius(r)?;
    Ok(f.abs_power_sum(if include_constant { 0 } else { 1 }, r))
}

/// `sum_{n>=1} |h_n| r^n + sum_{n>=1} |g_n| r^n`.
pub fn bohr_sum_harmonic(p: &HarmonicPair, r: f64) -> Result<f64> {
    Ok(bohr_sum(p.h(), r, false)? + bohr_sum(p.g(), r, false)?)
}

/// `2 sum_{n>=1} |gamma_n| r^n` with `log(f(z)/z) = 2 sum gamma_n z^n`.
pub fn log_bohr_sum(f: &TruncatedSeries, r: f64) -> Result<f64> {
    check_radius(r)?;
    let l = f.log_over_z()?;
    Ok(l.abs_power_sum(1, r))
}

/// Coefficient growth models with exact remainder formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Growth {
    /// `|a_n| <= C`
    Constant(f64),
    /// `|a_n| <= C n`
    Linear(f64),
    /// `|a_n| <= C / n`
    Harmonic(f64),
    /// `|a_n| <= C C(2n, n) / n`
    CentralBinomial(f64),
    /// `|a_n| <= scale * ratio^n`
    Geometric { scale: f64, ratio: f64 },
}

impl FromStr for Growth {
    type Err = BohrError;

    /// Parses `constant:C`, `linear:C`, `harmonic:C`, `central-binomial:C`
    /// or `geometric:C:rho`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let tag = parts.next().unwrap_or_default();
        let nums: Vec<f64> = parts
            .map(|p| p.parse::<f64>().map_err(|_| BohrError::Parse(format!("bad number in growth tag `{s}`"))))
            .collect::<Result<_>>()?;
        let one = |v: &[f64]| match v {
            [c] => Ok(*c),
            [] => Ok(1.0),
            _ => Err(BohrError::Parse(format!("too many parameters in growth tag `{s}`"))),
        };
        match tag {
            "constant" => Ok(Growth::Constant(one(&nums)?)),
            "linear" => Ok(Growth::Linear(one(&nums)?)),
            "harmonic" => Ok(Growth::Harmonic(one(&nums)?)),
            "central-binomial" => Ok(Growth::CentralBinomial(one(&nums)?)),
            "geometric" => match nums[..] {
                [scale, ratio] => Ok(Growth::Geometric { scale, ratio }),
                _ => Err(BohrError::Parse(format!("geometric growth needs C:rho, got `{s}`"))),
            },
            _ => Err(BohrError::Parse(format!("unknown growth tag `{tag}`"))),
        }
    }
}

/// Upper bound on `sum_{n > terms} bound(n) r^n` for the given growth model.
pub fn tail_bound(growth: Growth, terms: usize, r: f64) -> Result<f64> {
    check_radius(r)?;
    let n1 = (terms + 1) as f64;
    let rn1 = r.powf(n1);
    Ok(match growth {
        Growth::Constant(c) => c * rn1 / (1.0 - r),
        Growth::Linear(c) => c * rn1 * (n1 - terms as f64 * r) / ((1.0 - r) * (1.0 - r)),
        Growth::Harmonic(c) => c * rn1 / (n1 * (1.0 - r)),
        Growth::CentralBinomial(c) => {
            if r >= 0.25 {
                return domain(format!("central-binomial tail diverges for r >= 1/4, got {r}"));
            }
            // t_n = C(2n,n) r^n / n; t_{n+1}/t_n = 2n(2n+1) r/(n+1)^2 < 4r
            let mut t = 2.0 * r;
            for n in 1..=terms {
                let nf = n as f64;
                t *= 2.0 * nf * (2.0 * nf + 1.0) * r / ((nf + 1.0) * (nf + 1.0));
            }
            c * t / (1.0 - 4.0 * r)
        }
        Growth::Geometric { scale, ratio } => {
            let q = ratio * r;
            if !(0.0..1.0).contains(&q) {
                return domain(format!("geometric tail needs ratio * r < 1, got {q}"));
            }
            scale * q.powf(n1) / (1.0 - q)
        }
    })
}
