//! The second Hankel determinant, its sharp bound, and the inequality
//! chain that certifies the bound numerically.
//!
//! For a class member with coefficients `(a2, a3, a4)` the functional of
//! interest is `H = a2 a4 - a3^2`. On the parameter region
//! `0 < alpha < 2 - sqrt(2)`, `0 < gamma <= (alpha^2 - 4 alpha + 2)/2` the
//! sharp estimate is
//!
//! ```text
//! |H| <= (2 gamma / (2 - alpha))^2
//! ```
//!
//! attained by the member generated by `omega(z) = z^2`. The proof factors
//! through a triangle-inequality majorant in the Schwarz coefficient
//! moduli, a quartic `F(c1) = f0 + A c1^2 + B c1^4` whose maximum over
//! `[0, 1]` is its value at zero, and one-variable sign certificates for an
//! auxiliary function `phi1` on `[0, 2]`. Every link is exposed here as a
//! checkable operation.

use num_complex::Complex64;
use serde::Serialize;

use crate::coeffs::{mu_nu, ClassParams};
use crate::error::{Error, Result};
use crate::schwarz::SchwarzCoeffs;
use crate::CoefficientTriple;

/// Slack used when asserting strict inequalities, to distinguish "holds"
/// from a numerical tie.
pub const STRICT_TOL: f64 = 1e-12;

/// `a2 a4 - a3^2`.
pub fn h22(a: &CoefficientTriple) -> Complex64 {
    a.a2 * a.a4 - a.a3 * a.a3
}

/// The sharp ceiling `(2 gamma / (2 - alpha))^2`.
///
/// Meaningful as a proved bound only inside the theorem region
/// ([`ClassParams::in_theorem_region`]); callers doing exploratory scans
/// outside it are expected to surface that flag alongside the value.
pub fn bound(params: &ClassParams) -> f64 {
    let r = 2.0 * params.gamma() / (2.0 - params.alpha());
    r * r
}

/// Scalar quantities the bound proof runs through, all depending on
/// `(alpha, gamma)` only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofIntermediates {
    /// Weight of `c1 c2` in the closed form of `a4`.
    pub mu: f64,
    /// Weight of `c1^3` in the closed form of `a4`.
    pub nu: f64,
    /// Weight of `|c1|^2 |c2|` in the majorant: `2 gamma / (2 - alpha)^2`.
    pub mu1: f64,
    /// Companion of `mu1` entering through `|1/3 - nu1|`:
    /// `(alpha^2 - 10 alpha + 13) gamma^2 / (3 (1-alpha)^2 (2-alpha)^2)`.
    pub nu1: f64,
    /// Quadratic coefficient of the majorant quartic; `<= 0` on the region,
    /// vanishing exactly on its gamma boundary.
    pub a: f64,
    /// Quartic coefficient of the majorant quartic.
    pub b: f64,
    /// Constant term `(1 - alpha)(3 - alpha) / (2 - alpha)^2`, which is
    /// both the quartic's maximum over `[0, 1]` and the `|c2|^2` weight.
    pub f0: f64,
}

/// Evaluates every proof scalar at the given parameters.
pub fn proof_intermediates(params: &ClassParams) -> ProofIntermediates {
    let (mu, nu) = mu_nu(params);
    let al = params.alpha();
    let g = params.gamma();
    let s = (2.0 - al) * (2.0 - al);
    let mu1 = 2.0 * g / s;
    let nu1 = (al * al - 10.0 * al + 13.0) * g * g / (3.0 * (1.0 - al) * (1.0 - al) * s);
    // The numerator matches the gamma-boundary polynomial term for term, so
    // gamma at the boundary yields a = 0 exactly in floating point.
    let a = (2.0 * g - (al * al - 4.0 * al + 2.0)) / s;
    let f0 = (1.0 - al) * (3.0 - al) / s;
    let b = (1.0 / 3.0 - nu1).abs() - (2.0 * g + 1.0) / s;
    ProofIntermediates {
        mu,
        nu,
        mu1,
        nu1,
        a,
        b,
        f0,
    }
}

/// The majorant quartic `F(c1) = f0 + A c1^2 + B c1^4` at a point of
/// `[0, 1]`. Its maximum over that interval is `F(0) = f0`; `F(1)` collapses
/// to `|1/3 - nu1|`. Errors when `c1` leaves `[0, 1]`.
pub fn f_majorant(params: &ClassParams, c1: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c1) {
        return Err(Error::OutOfDomain {
            name: "c1",
            range: "[0, 1]",
            value: c1,
        });
    }
    let p = proof_intermediates(params);
    let q = c1 * c1;
    Ok(p.f0 + p.a * q + p.b * q * q)
}

/// Triangle-inequality majorant of `|H|` in the Schwarz coefficient moduli:
///
/// ```text
/// (4 gamma^2 / ((1-alpha)(3-alpha))) *
///     (|c1||c3| + mu1 |c1|^2 |c2| + |1/3 - nu1| |c1|^4 + f0 |c2|^2)
/// ```
///
/// For admissible triples this dominates `|h22|` of the corresponding
/// member and never exceeds the sharp ceiling.
pub fn triangle_bound(params: &ClassParams, c: &SchwarzCoeffs) -> f64 {
    let al = params.alpha();
    let g = params.gamma();
    let p = proof_intermediates(params);
    let k = 4.0 * g * g / ((1.0 - al) * (3.0 - al));
    let m1 = c.c1.norm();
    let m2 = c.c2.norm();
    let m3 = c.c3.norm();
    k * (m1 * m3
        + p.mu1 * m1 * m1 * m2
        + (1.0 / 3.0 - p.nu1).abs() * m1 * m1 * m1 * m1
        + p.f0 * m2 * m2)
}

/// Signed slack of the quartic-vs-constant comparison the proof hinges on:
/// `f0 - |1/3 - nu1|`. Positive on the whole theorem region.
pub fn ineq_30_margin(params: &ClassParams) -> f64 {
    let p = proof_intermediates(params);
    p.f0 - (1.0 / 3.0 - p.nu1).abs()
}

/// True iff [`ineq_30_margin`] is strictly positive beyond [`STRICT_TOL`].
pub fn check_ineq_30(params: &ClassParams) -> bool {
    ineq_30_margin(params) > STRICT_TOL
}

/// The degree-six sign witness
/// `4 (1-alpha)^2 (4 alpha^2 - 16 alpha + 13) - (alpha^2 - 4 alpha + 2)^2 (alpha^2 - 10 alpha + 13)`,
/// nonnegative for `0 < alpha < 2 - sqrt(2)`. Under `t = alpha^2 - 4 alpha + 2`
/// it factors as `4 * phi1(t)`.
pub fn phi(alpha: f64) -> f64 {
    let t = alpha * alpha - 4.0 * alpha + 2.0;
    let quad = 4.0 * alpha * alpha - 16.0 * alpha + 13.0;
    let cubic = alpha * alpha - 10.0 * alpha + 13.0;
    4.0 * (1.0 - alpha) * (1.0 - alpha) * quad - t * t * cubic
}

fn check_t(t: f64) -> Result<f64> {
    if (0.0..=2.0).contains(&t) {
        Ok(t)
    } else {
        Err(Error::OutOfDomain {
            name: "t",
            range: "[0, 2]",
            value: t,
        })
    }
}

/// One-variable reduction of [`phi`] on `[0, 2]`:
/// `phi1(t) = (2+t) (30 + 19t - t^2 - (20 + 6t) sqrt(2+t)) / 4`.
pub fn phi1(t: f64) -> Result<f64> {
    let t = check_t(t)?;
    let s = (2.0 + t).sqrt();
    Ok(0.25 * (2.0 + t) * (30.0 + 19.0 * t - t * t - (20.0 + 6.0 * t) * s))
}

/// Derivative of [`phi1`]:
/// `(68 + 34t - 3t^2 - (42 + 15t) sqrt(2+t)) / 4`.
pub fn phi1_prime(t: f64) -> Result<f64> {
    let t = check_t(t)?;
    let s = (2.0 + t).sqrt();
    Ok(0.25 * (68.0 + 34.0 * t - 3.0 * t * t - (42.0 + 15.0 * t) * s))
}

/// Second derivative of [`phi1`]:
/// `(68 - 12t - 45 sqrt(2+t) - 12 / sqrt(2+t)) / 8`. Strictly negative on
/// `[0, 2]`, so `phi1` is concave there.
pub fn phi1_double_prime(t: f64) -> Result<f64> {
    let t = check_t(t)?;
    let s = (2.0 + t).sqrt();
    Ok(0.125 * (68.0 - 12.0 * t - 45.0 * s - 12.0 / s))
}

/// The constant `(62 - 45 sqrt(2)) / 8 ~ -0.2050` quoted alongside the
/// concavity certificate; the certified claim itself is
/// `phi1_double_prime < 0` on `[0, 2]`.
pub fn phi1_curvature_reference() -> f64 {
    0.125 * (62.0 - 45.0 * std::f64::consts::SQRT_2)
}

/// Grid evidence for the sign claims on `phi1` over `[0, 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureCertificate {
    /// Number of grid nodes evaluated (inclusive endpoints).
    pub grid_points: usize,
    /// Smallest `phi1` value seen; the certified claim is `>= -1e-9`.
    pub min_phi1: f64,
    /// Largest second-derivative value seen; certified `< 0`.
    pub max_phi1_double_prime: f64,
    /// Count of strict sign flips of `phi1_prime` along the grid; concavity
    /// plus the endpoint signs force exactly one.
    pub prime_sign_changes: usize,
}

/// Sweeps an inclusive uniform grid of `[0, 2]` with spacing at most `step`
/// and records the extremes backing the sign certificates.
pub fn certify_phi1(step: f64) -> Result<CurvatureCertificate> {
    if !(step > 0.0 && step <= 2.0) {
        return Err(Error::InvalidConfig("grid step must lie in (0, 2]"));
    }
    let n = (2.0 / step).ceil() as usize;
    let mut min_phi1 = f64::INFINITY;
    let mut max_second = f64::NEG_INFINITY;
    let mut changes = 0usize;
    let mut prev_sign = 0i8;
    for k in 0..=n {
        let t = 2.0 * k as f64 / n as f64;
        min_phi1 = min_phi1.min(phi1(t)?);
        max_second = max_second.max(phi1_double_prime(t)?);
        let d = phi1_prime(t)?;
        let sign = if d > 0.0 {
            1
        } else if d < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if prev_sign != 0 && sign != prev_sign {
                changes += 1;
            }
            prev_sign = sign;
        }
    }
    Ok(CurvatureCertificate {
        grid_points: n + 1,
        min_phi1,
        max_phi1_double_prime: max_second,
        prime_sign_changes: changes,
    })
}

fn check_alpha_interval(alpha: f64) -> Result<f64> {
    let sup = 2.0 / std::f64::consts::PI;
    if alpha > 0.0 && alpha < sup {
        Ok(alpha)
    } else {
        Err(Error::OutOfDomain {
            name: "alpha",
            range: "(0, 2/pi)",
            value: alpha,
        })
    }
}

/// Radius shared by [`gamma_star`] and [`beta_of`]:
/// `r = sqrt(2 / (pi alpha) - 1)`.
fn radius(alpha: f64) -> f64 {
    (2.0 / (std::f64::consts::PI * alpha) - 1.0).sqrt()
}

/// The companion threshold `gamma*(alpha) = (2/pi) arctan(r) - alpha r`
/// with `r = sqrt(2/(pi alpha) - 1)`, defined for `0 < alpha < 2/pi`.
pub fn gamma_star(alpha: f64) -> Result<f64> {
    let alpha = check_alpha_interval(alpha)?;
    let r = radius(alpha);
    Ok(2.0 / std::f64::consts::PI * r.atan() - alpha * r)
}

/// The companion order `beta(alpha) = (2/pi) arctan(r)`, the first term of
/// [`gamma_star`]; always exceeds it since `alpha r > 0`.
pub fn beta_of(alpha: f64) -> Result<f64> {
    let alpha = check_alpha_interval(alpha)?;
    Ok(2.0 / std::f64::consts::PI * radius(alpha).atan())
}
