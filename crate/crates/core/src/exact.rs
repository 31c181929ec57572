//! Exact rational evaluation of the indicator.
//!
//! The same formula as [`crate::indicator::impact_vitality`], evaluated in
//! arbitrary-precision rational arithmetic. This is the reference against
//! which the floating-point path is checked: expected values stay
//! hand-checkable fractions and rounding drift can be measured instead of
//! assumed.

use num::{BigInt, BigRational, One, Zero};

use crate::indicator::{CountsWindow, IndicatorError};

/// `H(n)` as an exact rational, summed in ascending `i`.
pub fn harmonic_sum_exact(n: usize) -> Result<BigRational, IndicatorError> {
    if n == 0 {
        return Err(IndicatorError::ZeroHarmonicLength);
    }
    Ok((1..=n).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), BigInt::from(i))
    }))
}

/// Exact indicator value, or `None` when the window holds no citing
/// publications (matching the undefined case of the floating path).
pub fn impact_vitality_exact(window: &CountsWindow) -> Option<BigRational> {
    let n = window.len();
    let total = window.total();
    if total == 0 {
        return None;
    }
    let weighted = window
        .counts()
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (idx, &c)| {
            acc + BigRational::new(BigInt::from(c), BigInt::from(idx + 1))
        });
    let numerator = BigRational::from_integer(BigInt::from(n)) * weighted
        / BigRational::from_integer(BigInt::from(total))
        - BigRational::one();
    let denominator = harmonic_sum_exact(n).expect("window length >= 2") - BigRational::one();
    Some(numerator / denominator)
}
