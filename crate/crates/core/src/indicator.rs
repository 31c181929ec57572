//! The windowed impact-vitality indicator in double precision.
//!
//! A window holds the yearly counts of publications citing a researcher's
//! work over `n` consecutive calendar years ending at `end_year`. Each count
//! is weighted by the reciprocal of its age within the window (the most
//! recent year weighs most), and the result is normalized so that a constant
//! stream scores exactly 1:
//!
//! ```text
//! iv = [ n * (sum_i c[i] / i) / (sum_i c[i]) - 1 ] / [ H(n) - 1 ]
//! ```
//!
//! with `i = 1` the most recent year, `i = n` the oldest, and `H(n)` the
//! n-th harmonic number. Values above 1 mean the citing stream grows toward
//! the present; below 1, that it fades. The normalization denominator
//! `H(n) - 1` vanishes at `n = 1`, so single-year windows are rejected at
//! construction, and a window with no citing publications at all has no
//! defined value.

use thiserror::Error;

/// Calendar year.
pub type Year = i32;

/// Domain errors for window construction and the indicator's helpers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndicatorError {
    /// The normalization divides by `H(n) - 1`, so windows must span at
    /// least two years.
    #[error("window length must be at least 2, got {got}")]
    WindowTooShort { got: usize },
    /// A harmonic sum over zero terms has no value.
    #[error("harmonic sum is undefined for n = 0")]
    ZeroHarmonicLength,
}

/// A contiguous window of yearly citing-publication counts.
///
/// Counts are stored most recent year first: `counts()[0]` belongs to
/// `end_year`, `counts()[1]` to `end_year - 1`, and so on. Construction
/// rejects windows shorter than two years, so every `CountsWindow` is
/// evaluable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsWindow {
    end_year: Year,
    counts: Vec<u64>,
}

impl CountsWindow {
    /// Build a window ending at `end_year` from counts ordered most recent
    /// year first.
    pub fn new(end_year: Year, counts: Vec<u64>) -> Result<Self, IndicatorError> {
        if counts.len() < 2 {
            return Err(IndicatorError::WindowTooShort { got: counts.len() });
        }
        Ok(Self { end_year, counts })
    }

    /// The most recent year covered by the window.
    pub fn end_year(&self) -> Year {
        self.end_year
    }

    /// The oldest year covered by the window.
    pub fn oldest_year(&self) -> Year {
        self.end_year - (self.counts.len() as Year - 1)
    }

    /// Window length in years (always at least 2, so there is no
    /// `is_empty`).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    /// Yearly counts, most recent year first.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total citing publications over the window.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The calendar year at a zero-based window index (0 is `end_year`).
    pub fn year_at(&self, index: usize) -> Year {
        self.end_year - index as Year
    }

    /// Copy of the window with `delta` added to the count at `index`,
    /// saturating at zero.
    pub fn with_count_delta(&self, index: usize, delta: i64) -> CountsWindow {
        let mut counts = self.counts.clone();
        counts[index] = counts[index].saturating_add_signed(delta);
        CountsWindow {
            end_year: self.end_year,
            counts,
        }
    }
}

/// Why a window has no defined indicator value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UndefinedReason {
    /// Fewer than two years. Window constructors reject these outright; the
    /// variant exists so downstream reports can represent the case.
    WindowTooShort,
    /// No citing publications anywhere in the window.
    NoCitingPublications,
}

impl std::fmt::Display for UndefinedReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UndefinedReason::WindowTooShort => write!(f, "window too short"),
            UndefinedReason::NoCitingPublications => {
                write!(f, "no citing publications in window")
            }
        }
    }
}

/// Outcome of an indicator evaluation: a value with its window metadata, or
/// an explicit marker for windows where the indicator is undefined.
///
/// Undefined outcomes are ordinary data, not errors: series keep them so
/// that downstream classification must handle them explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IvResult {
    Value {
        iv: f64,
        end_year: Year,
        window_len: usize,
    },
    Undefined {
        reason: UndefinedReason,
    },
}

impl IvResult {
    /// The indicator value, if defined.
    pub fn value(&self) -> Option<f64> {
        match self {
            IvResult::Value { iv, .. } => Some(*iv),
            IvResult::Undefined { .. } => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, IvResult::Value { .. })
    }
}

/// `H(n)`: the sum of `1/i` for `i = 1..=n`.
///
/// Terms accumulate in ascending `i`; that order is part of the contract so
/// results are reproducible bit for bit.
pub fn harmonic_sum(n: usize) -> Result<f64, IndicatorError> {
    if n == 0 {
        return Err(IndicatorError::ZeroHarmonicLength);
    }
    Ok((1..=n).map(|i| 1.0 / i as f64).sum())
}

/// The largest value the indicator can attain on a window of length `n`:
/// `(n - 1) / (H(n) - 1)`, reached exactly when every citing publication
/// falls in the most recent year. Always greater than 1 for `n >= 2`.
pub fn iv_upper_bound(n: usize) -> Result<f64, IndicatorError> {
    if n < 2 {
        return Err(IndicatorError::WindowTooShort { got: n });
    }
    let h = harmonic_sum(n).expect("n >= 2");
    Ok((n - 1) as f64 / (h - 1.0))
}

/// Evaluate the indicator on a window.
///
/// The weight `n / i` is applied per term (`i` is the 1-based age index,
/// most recent year first) and the weighted terms accumulate in ascending
/// `i`, so the extremes are reproduced exactly in floating point: a window
/// with all counts in the oldest year scores exactly 0, and one with all
/// counts in the most recent year lands bit for bit on [`iv_upper_bound`].
/// A constant stream scores 1 up to rounding on the order of 1e-13.
///
/// Returns [`IvResult::Undefined`] when the window contains no citing
/// publications at all.
pub fn impact_vitality(window: &CountsWindow) -> IvResult {
    let n = window.len();
    let total = window.total();
    if total == 0 {
        return IvResult::Undefined {
            reason: UndefinedReason::NoCitingPublications,
        };
    }
    let n_f = n as f64;
    let weighted: f64 = window
        .counts()
        .iter()
        .enumerate()
        .map(|(idx, &c)| c as f64 * (n_f / (idx + 1) as f64))
        .sum();
    let numerator = weighted / total as f64 - 1.0;
    let denominator = harmonic_sum(n).expect("window length >= 2") - 1.0;
    IvResult::Value {
        iv: numerator / denominator,
        end_year: window.end_year(),
        window_len: n,
    }
}
