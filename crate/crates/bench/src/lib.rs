//! Shared fixtures for the benchmark targets.

use num_complex::Complex64;

use hankel_lab::sampling::{sample_admissible_coeffs, seeded_rng};
use hankel_lab::{ClassParams, SchwarzCoeffs, Series, DEFAULT_ORDER};

/// Parameters well inside the verified region.
pub fn fixture_params() -> ClassParams {
    ClassParams::new(0.2, 0.62).unwrap()
}

/// A reproducible admissible coefficient triple.
pub fn fixture_coeffs() -> SchwarzCoeffs {
    let mut rng = seeded_rng(17);
    sample_admissible_coeffs(&mut rng)
}

/// The Schwarz-function prefix `c1 z + c2 z^2 + c3 z^3` as a series.
pub fn fixture_omega() -> Series {
    let c = fixture_coeffs();
    Series::from_coeffs(vec![Complex64::ZERO, c.c1, c.c2, c.c3, Complex64::ZERO])
}

/// A dense series with unit constant term (so `ln`/`pow_real` apply) and
/// every other coefficient populated, for ring-op benchmarks.
pub fn fixture_series() -> Series {
    let coeffs = (0..=DEFAULT_ORDER)
        .map(|k| {
            if k == 0 {
                Complex64::ONE
            } else {
                Complex64::new(1.0 / (k + 1) as f64, 0.25 / (k + 2) as f64)
            }
        })
        .collect();
    Series::from_coeffs(coeffs)
}
