//! Coefficient majorants for the function classes that appear in the Bohr
//! estimates, with exact closed forms of the majorant series.

use std::f64::consts::LN_2;

use crate::engine::{tail_bound, Growth};
use crate::error::{domain, BohrError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `|a_n| <= n |a_1| <= 4 n d` for univalent `h` (de Branges plus the Koebe covering bound).
    UnivalentDeBranges,
    /// `|a_n| <= |a_1| <= 2 d` for convex univalent `h`.
    ConvexUnivalent,
    /// `|a_n| <= 1 - |a_0|^2` for `|f| <= 1`; the scale carries `1 - |a_0|^2`.
    BoundedByOne,
    /// Logarithmic coefficients of the class S. Only a bound on the whole sum is available.
    LogS,
    /// `|gamma_n| <= 1/(2n)` for convex functions.
    LogConvex,
    /// `2|gamma_n| <= C(2n, n)/n` for inverses of univalent functions.
    LogInverse,
    /// `2|gamma_n| <= (1 + lambda^n)/n` along the subordination chain for U(lambda).
    LogULambda(f64),
}

impl Family {
    /// True for the families bounding logarithmic coefficients.
    pub fn is_logarithmic(self) -> bool {
        matches!(self, Family::LogS | Family::LogConvex | Family::LogInverse | Family::LogULambda(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorantModel {
    family: Family,
    scale: f64,
}

impl MajorantModel {
    /// `scale` is the boundary distance `d` (de Branges / convex), `1 - |a_0|^2`
    /// (bounded), and is ignored by the logarithmic families.
    pub fn new(family: Family, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale >= 0.0) {
            return domain(format!("scale must be a finite nonnegative number, got {scale}"));
        }
        if let Family::LogULambda(lambda) = family {
            if !(lambda > 0.0 && lambda <= 1.0) {
                return domain(format!("lambda must lie in (0, 1], got {lambda}"));
            }
        }
        Ok(Self { family, scale })
    }

    pub fn univalent(distance: f64) -> Result<Self> {
        Self::new(Family::UnivalentDeBranges, distance)
    }

    pub fn convex(distance: f64) -> Result<Self> {
        Self::new(Family::ConvexUnivalent, distance)
    }

    /// Bounded by one with constant term of modulus `a0_abs`.
    pub fn bounded(a0_abs: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&a0_abs) {
            return domain(format!("|a_0| must lie in [0, 1), got {a0_abs}"));
        }
        Self::new(Family::BoundedByOne, 1.0 - a0_abs * a0_abs)
    }

    pub fn log_s() -> Self {
        Self { family: Family::LogS, scale: 1.0 }
    }

    pub fn log_convex() -> Self {
        Self { family: Family::LogConvex, scale: 1.0 }
    }

    pub fn log_inverse() -> Self {
        Self { family: Family::LogInverse, scale: 1.0 }
    }

    pub fn log_u(lambda: f64) -> Result<Self> {
        Self::new(Family::LogULambda(lambda), 1.0)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The n-th coefficient bound, `n >= 1`.
    pub fn bound(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return domain("coefficient bounds start at n = 1");
        }
        let nf = n as f64;
        Ok(match self.family {
            Family::UnivalentDeBranges => 4.0 * nf * self.scale,
            Family::ConvexUnivalent => 2.0 * self.scale,
            Family::BoundedByOne => self.scale,
            Family::LogS => {
                return Err(BohrError::Unsupported(
                    "class S has no pointwise bound on |gamma_n|; use majorant_sum".into(),
                ))
            }
            Family::LogConvex => 1.0 / (2.0 * nf),
            Family::LogInverse => central_binomial(n) / nf,
            Family::LogULambda(lambda) => (1.0 + lambda.powi(n as i32)) / nf,
        })
    }

    /// Factor converting `sum bound(n) r^n` into the quantity the majorant
    /// controls. `LogConvex` bounds `|gamma_n|` while the Bohr sum is
    /// `2 sum |gamma_n| r^n`; every other family bounds its summand directly.
    pub fn sum_weight(&self) -> f64 {
        match self.family {
            Family::LogConvex => 2.0,
            _ => 1.0,
        }
    }

    /// Closed form of the infinite majorant series (times [`Self::sum_weight`]).
    ///
    /// For `LogS` this is the Cauchy-Schwarz composite `2 log(1/(1-r))`.
    pub fn majorant_sum(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let neg_log1m = |x: f64| -(-x).ln_1p();
        Ok(match self.family {
            Family::UnivalentDeBranges => 4.0 * self.scale * r / ((1.0 - r) * (1.0 - r)),
            Family::ConvexUnivalent => 2.0 * self.scale * r / (1.0 - r),
            Family::BoundedByOne => self.scale * r / (1.0 - r),
            Family::LogS => 2.0 * neg_log1m(r),
            Family::LogConvex => neg_log1m(r),
            Family::LogInverse => {
                if r >= 0.25 {
                    return domain(format!("central-binomial majorant diverges for r >= 1/4, got {r}"));
                }
                2.0 * (LN_2 - (1.0 + (1.0 - 4.0 * r).sqrt()).ln())
            }
            Family::LogULambda(lambda) => neg_log1m(r) + neg_log1m(lambda * r),
        })
    }

    /// `weight * sum_{n=1}^{terms} bound(n) r^n`.
    pub fn partial_sum(&self, terms: usize, r: f64) -> Result<f64> {
        check_radius(r)?;
        let w = self.sum_weight();
        let mut acc = 0.0;
        for n in (1..=terms).rev() {
            acc = acc * r + self.bound(n)?;
        }
        Ok(w * acc * r)
    }

    /// Rigorous upper bound on `weight * sum_{n > terms} bound(n) r^n`.
    pub fn tail_bound(&self, terms: usize, r: f64) -> Result<f64> {
        let w = self.sum_weight();
        match self.family {
            Family::UnivalentDeBranges => tail_bound(Growth::Linear(4.0 * self.scale), terms, r),
            Family::ConvexUnivalent => tail_bound(Growth::Constant(2.0 * self.scale), terms, r),
            Family::BoundedByOne => tail_bound(Growth::Constant(self.scale), terms, r),
            Family::LogS => Err(BohrError::Unsupported("class S has no coefficient tail".into())),
            Family::LogConvex => Ok(w * tail_bound(Growth::Harmonic(0.5), terms, r)?),
            Family::LogInverse => tail_bound(Growth::CentralBinomial(1.0), terms, r),
            Family::LogULambda(lambda) => Ok(tail_bound(Growth::Harmonic(1.0), terms, r)?
                + tail_bound(Growth::Harmonic(1.0), terms, lambda * r)?),
        }
    }
}

/// `C(2n, n)` by the recurrence `C(2(n+1), n+1) = C(2n, n) 2(2n+1)/(n+1)`.
pub fn central_binomial(n: usize) -> f64 {
    (0..n).fold(1.0, |c, k| c * (2.0 * (2 * k + 1) as f64) / (k + 1) as f64)
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return domain(format!("radius must lie in [0, 1), got {r}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_bounds() {
        assert_eq!(MajorantModel::univalent(0.25).unwrap().bound(3).unwrap(), 3.0);
        assert_eq!(MajorantModel::log_inverse().bound(2).unwrap(), 3.0);
        assert_eq!(MajorantModel::log_u(0.5).unwrap().bound(2).unwrap(), 0.625);
        assert_eq!(MajorantModel::convex(0.5).unwrap().bound(7).unwrap(), 1.0);
        assert_eq!(MajorantModel::log_convex().bound(4).unwrap(), 0.125);
        let b = MajorantModel::bounded(0.5).unwrap();
        assert_eq!(b.bound(9).unwrap(), 0.75);
    }

    #[test]
    fn log_s_is_not_pointwise() {
        assert!(matches!(MajorantModel::log_s().bound(1), Err(BohrError::Unsupported(_))));
    }

    #[test]
    fn parameter_domains() {
        assert!(MajorantModel::log_u(0.0).is_err());
        assert!(MajorantModel::log_u(1.5).is_err());
        assert!(MajorantModel::univalent(-1.0).is_err());
        assert!(MajorantModel::bounded(1.0).is_err());
        assert!(MajorantModel::log_inverse().bound(0).is_err());
    }

    #[test]
    fn closed_forms_at_the_log_radii() {
        let r_s = 1.0 - (-0.5f64).exp();
        assert!((MajorantModel::log_s().majorant_sum(r_s).unwrap() - 1.0).abs() < 1e-15);
        let r_c = 1.0 - (-1.0f64).exp();
        assert!((MajorantModel::log_convex().majorant_sum(r_c).unwrap() - 1.0).abs() < 1e-15);
        let v = MajorantModel::log_inverse().majorant_sum(0.2).unwrap();
        assert!((v - 0.647014262314893).abs() < 1e-12, "{v}");
    }

    #[test]
    fn radius_domain_errors() {
        assert!(MajorantModel::log_inverse().majorant_sum(0.25).is_err());
        assert!(MajorantModel::log_convex().majorant_sum(1.0).is_err());
        assert!(MajorantModel::log_convex().majorant_sum(-0.1).is_err());
    }

    #[test]
    fn central_binomial_small_values() {
        let exact = [1.0, 2.0, 6.0, 20.0, 70.0, 252.0, 924.0];
        for (n, e) in exact.iter().enumerate() {
            assert_eq!(central_binomial(n), *e);
        }
        // C(60, 30) = 118264581564861424, exactly representable to 16 digits
        assert!((central_binomial(30) / 118264581564861424.0 - 1.0).abs() < 1e-15);
    }
}
