//! Verification workbench for a sharp second-Hankel-determinant bound.
//!
//! The library studies normalized analytic functions on the unit disk that
//! are tied to a Schwarz function `omega` by
//!
//! ```text
//! (f(z)/z)^{-(1+alpha)} f'(z) = ((1 + omega(z)) / (1 - omega(z)))^gamma
//! ```
//!
//! with `0 < alpha < 1` and `0 < gamma <= 1`. For parameters in the region
//! `0 < alpha < 2 - sqrt(2)`, `0 < gamma <= (alpha^2 - 4 alpha + 2)/2`, the
//! second Hankel determinant `a2 a4 - a3^2` of such a function satisfies
//! the sharp estimate `|a2 a4 - a3^2| <= (2 gamma / (2 - alpha))^2`,
//! attained by the member generated by `omega(z) = z^2`.
//!
//! The crate provides, in dependency order:
//!
//! - [`series`]: truncated complex power series with the ring, division,
//!   exp/log/power, and composition operations the functional equation
//!   needs;
//! - [`coeffs`]: the Taylor coefficients `(a2, a3, a4)` from the equation,
//!   both by order-by-order recursion and in closed form;
//! - [`schwarz`]: the admissible body of Schwarz coefficient triples and
//!   its exact Schur-parameter generator;
//! - [`hankel`]: the determinant, the sharp ceiling, and numerical
//!   certificates for every inequality the bound's proof runs through;
//! - [`search`]: deterministic global maximization of the determinant
//!   modulus over the coefficient body, confirming sharpness;
//! - [`sampling`] and [`selftest`]: reproducible sweep inputs and the
//!   reduced-count suite behind the CLI selftest.

pub mod coeffs;
pub mod error;
pub mod hankel;
pub mod sampling;
pub mod schwarz;
pub mod search;
pub mod selftest;
pub mod series;

pub use coeffs::{ClassParams, CoefficientTriple, ALPHA_REGION_SUP};
pub use error::{Error, Result};
pub use hankel::{CurvatureCertificate, ProofIntermediates};
pub use schwarz::{SchurParams, SchwarzCoeffs};
pub use search::{SearchConfig, SearchReport};
pub use selftest::{Fault, SuiteResult};
pub use series::{Series, DEFAULT_ORDER};
