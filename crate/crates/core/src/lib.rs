//! Impact vitality of a citation record.
//!
//! Given the number of publications citing a researcher's work in each
//! year, the impact-vitality indicator measures whether attention to that
//! work is growing or fading across a window of consecutive years:
//!
//! ```text
//!              n * (sum_{i=1..n} P(y_i) / i) / (sum_{i=1..n} P(y_i)) - 1
//! IV(y_1, n) = -----------------------------------------------------------
//!                              (sum_{i=1..n} 1/i) - 1
//! ```
//!
//! where `y_1` is the most recent year of the window and `y_i` the year
//! `i - 1` steps before it. Values above one mean citations lean toward
//! the recent end of the window, one matches a flat record, and values
//! below one mean interest is fading.
//!
//! The crate is organized in three layers:
//!
//! - [`indicator`]: the formula itself over an explicit [`CountsWindow`];
//! - [`timeline`]: per-researcher citation timelines and researcher
//!   profiles, with parsers for the delimited file formats;
//! - [`analysis`]: year-by-year series under moving or anchored windows,
//!   classification against an "at or above one every year" criterion,
//!   cohort cross-tabulation, and perturbation reports.
//!
//! [`exact`] mirrors the indicator in exact rational arithmetic for
//! verification.
//!
//! ```
//! use iv_core::{impact_vitality, iv_series, CitationTimeline, WindowSpec};
//!
//! let timeline = CitationTimeline::with_counts(
//!     "r_example",
//!     [(2002, 1), (2003, 2), (2004, 3)],
//! );
//!
//! // Citations grow toward the recent end, so the indicator exceeds one.
//! let window = timeline.window(2004, 3)?;
//! let iv = impact_vitality(&window).value().unwrap();
//! assert!((iv - 1.4).abs() < 1e-12);
//!
//! // The same record, evaluated year by year from a 2001 anchor.
//! let series = iv_series(
//!     &timeline,
//!     &WindowSpec::Anchored { start_year: 2001 },
//!     2002,
//!     2004,
//! )?;
//! assert_eq!(series.points.len(), 3);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod analysis;
pub mod exact;
pub mod indicator;
pub mod timeline;

pub use analysis::{
    classify, contingency_table, iv_series, perturbation_report, AnalysisError, CohortWindowing,
    ContingencyTable, IvSeries, PerturbationRow, SeriesPoint, VitalityClass, VitalityStatus,
    WindowSpec,
};
pub use exact::{harmonic_sum_exact, impact_vitality_exact};
pub use indicator::{
    harmonic_sum, impact_vitality, iv_upper_bound, CountsWindow, IndicatorError, IvResult,
    UndefinedReason, Year,
};
pub use timeline::{
    build_cohort, parse_counts, parse_counts_path, parse_counts_str, parse_profiles,
    parse_profiles_path, parse_profiles_str, write_counts, CitationTimeline, Cohort, CohortMember,
    IngestWarning, ParseError, ResearcherProfile, SelectionLabel, COUNTS_HEADER, MAX_YEAR,
    MIN_YEAR, PROFILES_HEADER,
};
