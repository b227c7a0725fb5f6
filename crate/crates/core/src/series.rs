//! Truncated formal power series over complex coefficients.
//!
//! A [`Series`] stores the coefficients of `z^0 .. z^N` for a fixed
//! truncation order `N`. Every binary operation truncates to the smaller
//! order of its operands, so a result never claims more coefficients than
//! both inputs support. All operations are pure: they take references and
//! return fresh values.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation order used by the higher-level modules.
///
/// The Hankel machinery only needs coefficients through `z^3`; the extra
/// headroom makes truncation bugs visible instead of silently absorbed.
pub const DEFAULT_ORDER: usize = 8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A power series truncated at a fixed order.
///
/// Index `k` of the coefficient vector holds the `z^k` coefficient; the
/// vector always has length `order + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Complex64>,
}

impl Series {
    /// Build a series from its coefficients, lowest power first.
    ///
    /// The truncation order is `coeffs.len() - 1`; `coeffs` must be nonempty.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the z^0 coefficient"
        );
        Series { coeffs }
    }

    /// Build a series from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Series::from_coeffs(coeffs.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Complex64::ZERO; order + 1],
        }
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = Complex64::ONE;
        s
    }

    /// The identity series `z` at the given order (order must be >= 1).
    pub fn var(order: usize) -> Self {
        assert!(order >= 1, "the series z needs order >= 1");
        let mut s = Series::zero(order);
        s.coeffs[1] = Complex64::ONE;
        s
    }

    /// A single term `coeff * z^k` at the given order (k <= order).
    pub fn monomial(k: usize, coeff: Complex64, order: usize) -> Self {
        assert!(k <= order, "monomial degree exceeds the truncation order");
        let mut s = Series::zero(order);
        s.coeffs[k] = coeff;
        s
    }

    /// Truncation order `N`: coefficients of `z^0 .. z^N` are stored.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The `z^k` coefficient. Panics if `k` exceeds the stored order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    /// All stored coefficients, lowest power first.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Copy of the series truncated to `order` (must not exceed the stored order).
    pub fn truncated(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiply every coefficient by a scalar.
    pub fn scaled(&self, factor: Complex64) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|&a| a * factor).collect(),
        }
    }

    /// Evaluate the truncated polynomial at `z` by Horner's rule.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    /// Term-wise derivative; the order drops by one (a constant maps to 0).
    pub fn derivative(&self) -> Series {
        if self.order() == 0 {
            return Series::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect();
        Series::from_coeffs(coeffs)
    }

    /// Quotient `self / b` to the common order.
    ///
    /// Long division: `q_n = (a_n - sum_{k=1..n} b_k q_{n-k}) / b_0`, which
    /// requires a nonzero constant term in `b`.
    pub fn divide(&self, b: &Series) -> Result<Series> {
        if b.coeffs[0] == Complex64::ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order().min(b.order());
        let mut q = vec![Complex64::ZERO; order + 1];
        for n in 0..=order {
            let mut acc = self.coeffs[n];
            for k in 1..=n {
                acc -= b.coeffs[k] * q[n - k];
            }
            q[n] = acc / b.coeffs[0];
        }
        Ok(Series { coeffs: q })
    }

    /// Series logarithm; requires constant term exactly 1.
    ///
    /// Uses the recursion from `(log a)' * a = a'`:
    /// `l_n = a_n - (1/n) * sum_{k=1..n-1} k l_k a_{n-k}`.
    #[allow(clippy::needless_range_loop)] // convolution reads clearest with indices
    pub fn ln(&self) -> Result<Series> {
        if self.coeffs[0] != Complex64::ONE {
            return Err(Error::ConstantTermNotOne(self.coeffs[0]));
        }
        let order = self.order();
        let mut l = vec![Complex64::ZERO; order + 1];
        for n in 1..=order {
            let mut acc = Complex64::ZERO;
            for k in 1..n {
                acc += l[k] * self.coeffs[n - k] * k as f64;
            }
            l[n] = self.coeffs[n] - acc / n as f64;
        }
        Ok(Series { coeffs: l })
    }

    /// Series exponential; requires constant term exactly 0.
    ///
    /// Uses the recursion from `E' = v' E`:
    /// `E_n = (1/n) * sum_{k=1..n} k v_k E_{n-k}`.
    pub fn exp(&self) -> Result<Series> {
        if self.coeffs[0] != Complex64::ZERO {
            return Err(Error::ConstantTermNotZero(self.coeffs[0]));
        }
        let order = self.order();
        let mut e = vec![Complex64::ZERO; order + 1];
        e[0] = Complex64::ONE;
        for n in 1..=order {
            let mut acc = Complex64::ZERO;
            for k in 1..=n {
                acc += self.coeffs[k] * e[n - k] * k as f64;
            }
            e[n] = acc / n as f64;
        }
        Ok(Series { coeffs: e })
    }

    /// Real power `self^beta` as `exp(beta * log self)`.
    ///
    /// The constant term must be exactly 1; callers with a general leading
    /// coefficient have to factor it out themselves. For integer `beta` the
    /// result agrees with repeated multiplication to rounding error.
    pub fn pow_real(&self, beta: f64) -> Result<Series> {
        let log = self.ln()?;
        log.scaled(c(beta, 0.0)).exp()
    }

    /// Composition `self(inner)`; `inner` must vanish at the origin.
    ///
    /// Horner scheme over the outer coefficients, truncating at the common
    /// order on every step.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if inner.coeffs[0] != Complex64::ZERO {
            return Err(Error::ConstantTermNotZero(inner.coeffs[0]));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncated(order);
        let mut acc = Series::zero(order);
        for &a in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k] + rhs.coeffs[k])
            .collect();
        Series { coeffs }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| self.coeffs[k] - rhs.coeffs[k])
            .collect();
        Series { coeffs }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|&a| -a).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;

    /// Cauchy product truncated to the common order.
    ///
    /// Convolution terms are accumulated in symmetric pairs
    /// `a_k b_{n-k} + a_{n-k} b_k` so that `a * b` and `b * a` perform the
    /// identical float operations and compare equal coefficient-wise.
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let a = &self.coeffs;
        let b = &rhs.coeffs;
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = Complex64::ZERO;
                let (mut lo, mut hi) = (0, n);
                while lo < hi {
                    acc += a[lo] * b[n - lo] + a[hi] * b[n - hi];
                    lo += 1;
                    hi -= 1;
                }
                if lo == hi {
                    acc += a[lo] * b[n - lo];
                }
                acc
            })
            .collect();
        Series { coeffs }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
