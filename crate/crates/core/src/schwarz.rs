//! Admissible Schwarz coefficient triples and their exact generators.
//!
//! A Schwarz function `omega(z) = c1 z + c2 z^2 + c3 z^3 + ...` maps the
//! unit disk into itself with `omega(0) = 0`. Its first three coefficients
//! range exactly over the body
//!
//! ```text
//! |c1| <= 1
//! |c2| <= 1 - |c1|^2
//! |c3 (1 - |c1|^2) + conj(c1) c2^2| <= (1 - |c1|^2)^2 - |c2|^2
//! ```
//!
//! Writing `omega = z * phi0` and running the Schur recursion
//! `phi_k = (g_k + z phi_{k+1}) / (1 + conj(g_k) z phi_{k+1})` with unit-disk
//! parameters `g0, g1, g2` (and `phi3 = 0`) generates that body exactly and
//! hits its boundary precisely when `|g2| = 1`. Both directions of the
//! correspondence are implemented in closed form.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{Series, DEFAULT_ORDER};

/// Slack granted on unit-modulus and body-membership comparisons: an order
/// of magnitude above double-precision noise at these magnitudes.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// The first three Taylor coefficients of a Schwarz function.
///
/// The type itself does not enforce admissibility; run [`validate_coeffs`]
/// to test membership in the coefficient body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchwarzCoeffs {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl SchwarzCoeffs {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        SchwarzCoeffs { c1, c2, c3 }
    }
}

/// Three Schur parameters, each confined to the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchurParams {
    g0: Complex64,
    g1: Complex64,
    g2: Complex64,
}

impl SchurParams {
    /// Accepts parameters with modulus at most `1 + CONSTRAINT_TOL`,
    /// rescaling anything in the slack band back onto the unit circle.
    pub fn new(g0: Complex64, g1: Complex64, g2: Complex64) -> Result<Self> {
        let pin = |g: Complex64, name: &'static str| -> Result<Complex64> {
            let m = g.norm();
            if m > 1.0 + CONSTRAINT_TOL {
                Err(Error::ModulusExceedsOne { name, modulus: m })
            } else if m > 1.0 {
                Ok(g / m)
            } else {
                Ok(g)
            }
        };
        Ok(SchurParams {
            g0: pin(g0, "g0")?,
            g1: pin(g1, "g1")?,
            g2: pin(g2, "g2")?,
        })
    }

    /// Radially projects each coordinate into the closed unit disk.
    /// Infallible; intended for optimizer steps that may leave the box.
    pub fn clamped(g0: Complex64, g1: Complex64, g2: Complex64) -> Self {
        let clamp = |g: Complex64| {
            let m = g.norm();
            if m > 1.0 {
                g / m
            } else {
                g
            }
        };
        SchurParams {
            g0: clamp(g0),
            g1: clamp(g1),
            g2: clamp(g2),
        }
    }

    pub fn g0(&self) -> Complex64 {
        self.g0
    }

    pub fn g1(&self) -> Complex64 {
        self.g1
    }

    pub fn g2(&self) -> Complex64 {
        self.g2
    }
}

/// Closed form of the Schur recursion truncated after three levels:
///
/// ```text
/// c1 = g0
/// c2 = (1 - |g0|^2) g1
/// c3 = (1 - |g0|^2) ((1 - |g1|^2) g2 - conj(g0) g1^2)
/// ```
///
/// The output always satisfies the coefficient-body constraints, with
/// equality in the third one exactly when `|g2| = 1`.
pub fn coeffs_from_schur(g: &SchurParams) -> SchwarzCoeffs {
    let d0 = 1.0 - g.g0.norm_sqr();
    let d1 = 1.0 - g.g1.norm_sqr();
    SchwarzCoeffs {
        c1: g.g0,
        c2: g.g1 * d0,
        c3: (g.g2 * d1 - g.g0.conj() * g.g1 * g.g1) * d0,
    }
}

/// Inverts [`coeffs_from_schur`] in closed form.
///
/// For interior triples the inverse is unique:
///
/// ```text
/// g0 = c1
/// g1 = c2 / (1 - |c1|^2)
/// g2 = (c3 (1 - |c1|^2) + conj(c1) c2^2) / ((1 - |c1|^2)^2 - |c2|^2)
/// ```
///
/// Where a denominator vanishes the remaining parameters are no longer
/// determined (any choice reproduces the triple); zero is returned. Returns
/// an error when the triple lies outside the coefficient body.
pub fn schur_from_coeffs(c: &SchwarzCoeffs) -> Result<SchurParams> {
    let build =
        |g0, g1, g2| SchurParams::new(g0, g1, g2).map_err(|_| Error::InadmissibleCoefficients);
    if c.c1.norm() > 1.0 + CONSTRAINT_TOL {
        return Err(Error::InadmissibleCoefficients);
    }
    let d = 1.0 - c.c1.norm_sqr();
    if d <= CONSTRAINT_TOL {
        // |c1| = 1 forces c2 = c3 = 0.
        if c.c2.norm() > CONSTRAINT_TOL || c.c3.norm() > CONSTRAINT_TOL {
            return Err(Error::InadmissibleCoefficients);
        }
        return build(c.c1, Complex64::ZERO, Complex64::ZERO);
    }
    let g1 = c.c2 / d;
    let denom = d * d - c.c2.norm_sqr();
    let numer = c.c3 * d + c.c1.conj() * c.c2 * c.c2;
    if denom <= CONSTRAINT_TOL * d * d {
        // |c2| = 1 - |c1|^2 forces the third constraint's left side to
        // vanish.
        if numer.norm() > CONSTRAINT_TOL {
            return Err(Error::InadmissibleCoefficients);
        }
        return build(c.c1, g1, Complex64::ZERO);
    }
    build(c.c1, g1, numer / denom)
}

/// True iff the triple satisfies all three coefficient-body constraints
/// within `CONSTRAINT_TOL`.
pub fn validate_coeffs(c: &SchwarzCoeffs) -> bool {
    let d = 1.0 - c.c1.norm_sqr();
    let first = c.c1.norm() <= 1.0 + CONSTRAINT_TOL;
    let second = c.c2.norm() <= d + CONSTRAINT_TOL;
    let lhs = (c.c3 * d + c.c1.conj() * c.c2 * c.c2).norm();
    let third = lhs <= d * d - c.c2.norm_sqr() + CONSTRAINT_TOL;
    first && second && third
}

/// Membership test in the rotation-normalized form used by the bound proof,
/// valid when `c1` is real with `0 <= c1 <= 1`:
///
/// ```text
/// |c2| <= 1 - c1^2    and    |c3| <= 1 - c1^2 - |c2|^2 / (1 + c1)
/// ```
///
/// These moduli constraints follow from the coefficient body and are what
/// the triangle-inequality majorant consumes. Errors when `c1` is not a
/// real number in `[0, 1]`.
pub fn validate_coeffs_normalized(c: &SchwarzCoeffs) -> Result<bool> {
    let c1 = c.c1.re;
    if c.c1.im.abs() > CONSTRAINT_TOL || !(0.0..=1.0 + CONSTRAINT_TOL).contains(&c1) {
        return Err(Error::InvalidNormalizedC1(c.c1));
    }
    let room = 1.0 - c1 * c1;
    let second = c.c2.norm() <= room + CONSTRAINT_TOL;
    let third = c.c3.norm() <= room - c.c2.norm_sqr() / (1.0 + c1) + CONSTRAINT_TOL;
    Ok(second && third)
}

/// The Schwarz function `z^2` driving the extremal class member: its
/// coefficient triple is `(0, 1, 0)` and it attains the sharp bound.
pub fn extremal_omega() -> Series {
    Series::monomial(2, Complex64::ONE, DEFAULT_ORDER)
}
