//! Taylor coefficients of class members from the defining functional
//! equation.
//!
//! A class member `f(z) = z + a2 z^2 + a3 z^3 + a4 z^4 + ...` is tied to a
//! Schwarz function `omega` through
//!
//! ```text
//! (f(z)/z)^{-(1+alpha)} * f'(z) = ((1 + omega(z)) / (1 - omega(z)))^gamma
//! ```
//!
//! This module computes `(a2, a3, a4)` two independent ways: an
//! order-by-order recursion on the truncated series form of the equation,
//! and the closed forms in the Schwarz coefficients `(c1, c2, c3)`. The two
//! routes are checked against each other throughout the test suite.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schwarz::SchwarzCoeffs;
use crate::series::Series;

/// Square root of 2 subtracted from 2: the upper end of the alpha range on
/// which the sharp bound is proved.
pub const ALPHA_REGION_SUP: f64 = 2.0 - std::f64::consts::SQRT_2;

/// Class parameters `(alpha, gamma)` with `0 < alpha < 1`, `0 < gamma <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassParams {
    alpha: f64,
    gamma: f64,
}

impl ClassParams {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::GammaOutOfRange(gamma));
        }
        Ok(ClassParams { alpha, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Largest gamma for which the sharp-bound region admits this alpha:
    /// `(alpha^2 - 4 alpha + 2) / 2`.
    ///
    /// Positive exactly when `alpha < 2 - sqrt(2)`. Every region check in
    /// the crate goes through this one expression so that boundary points
    /// computed from it compare equal.
    pub fn gamma_region_max(alpha: f64) -> f64 {
        0.5 * (alpha * alpha - 4.0 * alpha + 2.0)
    }

    /// Whether `(alpha, gamma)` lies in the region where the sharp bound is
    /// proved: `alpha < 2 - sqrt(2)` and `gamma <= (alpha^2 - 4 alpha + 2)/2`.
    pub fn in_theorem_region(&self) -> bool {
        self.alpha < ALPHA_REGION_SUP && self.gamma <= Self::gamma_region_max(self.alpha)
    }
}

/// The Taylor coefficients `(a2, a3, a4)` of a class member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientTriple {
    pub a2: Complex64,
    pub a3: Complex64,
    pub a4: Complex64,
}

impl CoefficientTriple {
    /// Largest coefficient-wise distance to another triple.
    pub fn max_distance(&self, other: &CoefficientTriple) -> f64 {
        [
            (self.a2 - other.a2).norm(),
            (self.a3 - other.a3).norm(),
            (self.a4 - other.a4).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Right-hand side `((1 + omega) / (1 - omega))^gamma` expanded to `order`.
///
/// `omega` must vanish at the origin (a Schwarz candidate) and must carry at
/// least `order` coefficients.
pub fn rhs_series(omega: &Series, gamma: f64, order: usize) -> Result<Series> {
    if omega.coeff(0) != Complex64::ZERO {
        return Err(Error::ConstantTermNotZero(omega.coeff(0)));
    }
    if omega.order() < order {
        return Err(Error::OrderTooSmall {
            need: order,
            got: omega.order(),
        });
    }
    let omega = omega.truncated(order);
    let one = Series::one(order);
    let base = (&one + &omega).divide(&(&one - &omega))?;
    base.pow_real(gamma)
}

/// Left-hand side `(f/z)^{-(1+alpha)} * f'` for f given by `(a2, a3, a4)`,
/// truncated at `order`.
fn lhs_series(alpha: f64, a: &CoefficientTriple, order: usize) -> Series {
    // u = f/z and f' share the coefficients a2..a4; everything above a4 is
    // zero because only three coefficients are ever solved for.
    let mut u = Series::zero(order);
    let mut fprime = Series::zero(order);
    let known = [Complex64::ONE, a.a2, a.a3, a.a4];
    for (j, &aj) in known.iter().enumerate() {
        if j <= order {
            u = &u + &Series::monomial(j, aj, order);
            fprime = &fprime + &Series::monomial(j, aj * (j + 1) as f64, order);
        }
    }
    let factor = u
        .pow_real(-(1.0 + alpha))
        .expect("u has constant term 1 by construction");
    &factor * &fprime
}

/// Solve the functional equation for `(a2, a3, a4)` by forward recursion.
///
/// Matching the `z^n` coefficient of both sides determines `a_{n+1}` with
/// linear coefficient `n - alpha`, which never vanishes for
/// `0 < alpha < 1`, `n >= 1`. The series for omega must carry at least the
/// coefficients through `z^3`.
pub fn solve_coefficients(params: &ClassParams, omega: &Series) -> Result<CoefficientTriple> {
    let order = 3;
    let rhs = rhs_series(omega, params.gamma(), order)?;
    let alpha = params.alpha();
    let mut triple = CoefficientTriple {
        a2: Complex64::ZERO,
        a3: Complex64::ZERO,
        a4: Complex64::ZERO,
    };
    for n in 1..=order {
        // With a_{n+1} still zero, the z^n coefficient of L misses exactly
        // the linear term (n - alpha) * a_{n+1}.
        let partial = lhs_series(alpha, &triple, order).coeff(n);
        let value = (rhs.coeff(n) - partial) / (n as f64 - alpha);
        match n {
            1 => triple.a2 = value,
            2 => triple.a3 = value,
            _ => triple.a4 = value,
        }
    }
    Ok(triple)
}

/// The pair `(mu, nu)` appearing in the closed form of `a4`.
pub fn mu_nu(params: &ClassParams) -> (f64, f64) {
    let a = params.alpha();
    let g = params.gamma();
    let mu = 2.0 * (5.0 - a) * g / ((1.0 - a) * (2.0 - a));
    let nu =
        1.0 / 3.0 + 2.0 / 3.0 * (a * a - 6.0 * a + 17.0) * g * g / ((1.0 - a).powi(3) * (2.0 - a));
    (mu, nu)
}

/// Closed-form coefficients in terms of the Schwarz coefficients:
///
/// ```text
/// a2 = 2 gamma c1 / (1 - alpha)
/// a3 = 2 gamma c2 / (2 - alpha) + 2 (3 - alpha) gamma^2 c1^2 / ((1-alpha)^2 (2-alpha))
/// a4 = (2 gamma / (3 - alpha)) (c3 + mu c1 c2 + nu c1^3)
/// ```
pub fn closed_form_coefficients(params: &ClassParams, c: &SchwarzCoeffs) -> CoefficientTriple {
    let a = params.alpha();
    let g = params.gamma();
    let (mu, nu) = mu_nu(params);
    let a2 = c.c1 * (2.0 * g / (1.0 - a));
    let a3 = c.c2 * (2.0 * g / (2.0 - a))
        + c.c1 * c.c1 * (2.0 * (3.0 - a) * g * g / ((1.0 - a) * (1.0 - a) * (2.0 - a)));
    let a4 = (c.c3 + c.c1 * c.c2 * mu + c.c1 * c.c1 * c.c1 * nu) * (2.0 * g / (3.0 - a));
    CoefficientTriple { a2, a3, a4 }
}
