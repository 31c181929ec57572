//! Year-by-year analyses built on the vitality indicator: series under a
//! window policy, classification of a researcher's series against a
//! threshold, cohort cross-tabulation, and single-year perturbation reports.

use thiserror::Error;

use crate::indicator::{impact_vitality, CountsWindow, IndicatorError, IvResult, Year};
use crate::timeline::{CitationTimeline, Cohort, SelectionLabel};

/// How the citation window for a given evaluation year is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowSpec {
    /// A fixed-length window ending at the evaluation year.
    Moving { length: usize },
    /// A window growing from a fixed start year (typically the PhD year) up
    /// to the evaluation year, inclusive on both ends.
    Anchored { start_year: Year },
}

/// A request that cannot be evaluated as posed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
    #[error(
        "series cannot start at {requested}: windows anchored at {anchor} span at least two years, so the first valid year is {first_valid}"
    )]
    StartsBeforeAnchor {
        anchor: Year,
        first_valid: Year,
        requested: Year,
    },
    #[error("empty year range: from {from} to {to}")]
    EmptyYearRange { from: Year, to: Year },
    #[error("cannot classify an empty series")]
    EmptySeries,
}

/// The indicator evaluated at one year, with the window length that was
/// used.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoint {
    pub year: Year,
    pub window_len: usize,
    pub result: IvResult,
}

/// A researcher's indicator evaluated over a contiguous range of years.
#[derive(Debug, Clone, PartialEq)]
pub struct IvSeries {
    pub researcher_id: String,
    pub points: Vec<SeriesPoint>,
}

fn window_for_year(
    timeline: &CitationTimeline,
    spec: &WindowSpec,
    year: Year,
) -> Result<CountsWindow, AnalysisError> {
    let n = match *spec {
        WindowSpec::Moving { length } => length,
        WindowSpec::Anchored { start_year } => {
            if year <= start_year {
                return Err(AnalysisError::StartsBeforeAnchor {
                    anchor: start_year,
                    first_valid: start_year + 1,
                    requested: year,
                });
            }
            (year as i64 - start_year as i64 + 1) as usize
        }
    };
    Ok(timeline.window(year, n)?)
}

/// Evaluate the indicator for every year in `from..=to` under `spec`.
///
/// Years where the indicator is undefined stay in the series as
/// [`IvResult::Undefined`] points. Errors are reserved for requests that
/// are ill-posed for every year: an empty range, a moving window shorter
/// than two years, or a range starting at or before the anchor year.
pub fn iv_series(
    timeline: &CitationTimeline,
    spec: &WindowSpec,
    from: Year,
    to: Year,
) -> Result<IvSeries, AnalysisError> {
    if from > to {
        return Err(AnalysisError::EmptyYearRange { from, to });
    }
    let points = (from..=to)
        .map(|year| {
            let window = window_for_year(timeline, spec, year)?;
            Ok(SeriesPoint {
                year,
                window_len: window.len(),
                result: impact_vitality(&window),
            })
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    Ok(IvSeries {
        researcher_id: timeline.researcher_id.clone(),
        points,
    })
}

/// Where a series stands relative to the "at or above one in every year"
/// criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VitalityStatus {
    /// Every year is defined and at or above the threshold.
    AllAtOrAboveOne,
    /// At least one year is below the threshold or undefined.
    BelowOneSomeYear,
    /// No year in the series has a defined value.
    NoDefinedYears,
}

/// Classification of one series, with a flag for undefined years so callers
/// can distinguish "dipped below" from "had gaps".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VitalityClass {
    pub status: VitalityStatus,
    pub had_undefined_years: bool,
}

/// Classify a non-empty series against `threshold`.
///
/// A defined value counts as "at or above" when `iv >= threshold - epsilon`,
/// so values a rounding error under the threshold are not misfiled. An
/// undefined year rules out [`VitalityStatus::AllAtOrAboveOne`]: the
/// criterion demands evidence for every year. A series whose years are all
/// undefined is [`VitalityStatus::NoDefinedYears`]; an empty series is an
/// error, since it says nothing either way.
pub fn classify(
    series: &IvSeries,
    threshold: f64,
    epsilon: f64,
) -> Result<VitalityClass, AnalysisError> {
    if series.points.is_empty() {
        return Err(AnalysisError::EmptySeries);
    }
    let mut any_defined = false;
    let mut any_undefined = false;
    let mut any_below = false;
    for point in &series.points {
        match point.result {
            IvResult::Value { iv, .. } => {
                any_defined = true;
                if iv < threshold - epsilon {
                    any_below = true;
                }
            }
            IvResult::Undefined { .. } => any_undefined = true,
        }
    }
    let status = if !any_defined {
        VitalityStatus::NoDefinedYears
    } else if any_below || any_undefined {
        VitalityStatus::BelowOneSomeYear
    } else {
        VitalityStatus::AllAtOrAboveOne
    };
    Ok(VitalityClass {
        status,
        had_undefined_years: any_undefined,
    })
}

/// Window policy applied uniformly across a cohort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CohortWindowing {
    /// Each researcher's windows are anchored at their own PhD year.
    PhdAnchored,
    /// A fixed-length moving window for everyone.
    Moving { length: usize },
}

/// Selection outcome versus vitality classification, cross-tabulated, with
/// researchers that could not be classified counted separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ContingencyTable {
    pub selected_all_at_or_above_one: usize,
    pub selected_below_one_some_year: usize,
    pub not_selected_all_at_or_above_one: usize,
    pub not_selected_below_one_some_year: usize,
    /// Researchers whose selection outcome is unknown.
    pub excluded_unknown_label: usize,
    /// Researchers with no defined indicator years (no evaluation years
    /// before the cutoff, or no citations at all).
    pub excluded_no_defined_years: usize,
}

impl ContingencyTable {
    /// Researchers counted in the four labeled cells.
    pub fn labeled_total(&self) -> usize {
        self.selected_all_at_or_above_one
            + self.selected_below_one_some_year
            + self.not_selected_all_at_or_above_one
            + self.not_selected_below_one_some_year
    }

    /// All researchers considered, including exclusions.
    pub fn grand_total(&self) -> usize {
        self.labeled_total() + self.excluded_unknown_label + self.excluded_no_defined_years
    }
}

/// Cross-tabulate a cohort: selection outcome against whether the
/// researcher's indicator stayed at or above `threshold` in every
/// evaluation year.
///
/// Each researcher is evaluated over the years from the one after their PhD
/// year through `last_year`, under their own anchored window or a shared
/// moving window per `windowing`. Researchers whose label is unknown, whose
/// PhD is too recent to have any evaluation year, or whose series has no
/// defined value are reported in the exclusion counters rather than the
/// four cells.
pub fn contingency_table(
    cohort: &Cohort,
    windowing: CohortWindowing,
    last_year: Year,
    threshold: f64,
    epsilon: f64,
) -> Result<ContingencyTable, AnalysisError> {
    let mut table = ContingencyTable::default();
    for member in &cohort.members {
        let label = match member.profile.selected {
            SelectionLabel::Unknown => {
                table.excluded_unknown_label += 1;
                continue;
            }
            label => label,
        };
        let first_year = member.profile.phd_year + 1;
        if first_year > last_year {
            table.excluded_no_defined_years += 1;
            continue;
        }
        let spec = match windowing {
            CohortWindowing::PhdAnchored => WindowSpec::Anchored {
                start_year: member.profile.phd_year,
            },
            CohortWindowing::Moving { length } => WindowSpec::Moving { length },
        };
        let series = iv_series(&member.timeline, &spec, first_year, last_year)?;
        let class = classify(&series, threshold, epsilon)?;
        match (label, class.status) {
            (_, VitalityStatus::NoDefinedYears) => table.excluded_no_defined_years += 1,
            (SelectionLabel::Selected, VitalityStatus::AllAtOrAboveOne) => {
                table.selected_all_at_or_above_one += 1
            }
            (SelectionLabel::Selected, VitalityStatus::BelowOneSomeYear) => {
                table.selected_below_one_some_year += 1
            }
            (SelectionLabel::NotSelected, VitalityStatus::AllAtOrAboveOne) => {
                table.not_selected_all_at_or_above_one += 1
            }
            (SelectionLabel::NotSelected, VitalityStatus::BelowOneSomeYear) => {
                table.not_selected_below_one_some_year += 1
            }
            (SelectionLabel::Unknown, _) => unreachable!("unknown labels are filtered above"),
        }
    }
    Ok(table)
}

/// Effect on the indicator of adding `delta` citations to a single year of
/// the window.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationRow {
    /// The year whose count was changed.
    pub year: Year,
    pub iv_before: IvResult,
    pub iv_after: IvResult,
    /// `after - before`, when both are defined.
    pub delta_iv: Option<f64>,
}

/// For each year of the window ending at `end_year`, report the indicator
/// before and after adding `delta` citations to that year alone.
///
/// Rows come out in ascending year order. A negative `delta` clamps each
/// perturbed count at zero. The report makes the indicator's recency
/// weighting visible: the same extra citations move the indicator more the
/// closer they land to the end of the window.
pub fn perturbation_report(
    timeline: &CitationTimeline,
    spec: &WindowSpec,
    end_year: Year,
    delta: i64,
) -> Result<Vec<PerturbationRow>, AnalysisError> {
    let window = window_for_year(timeline, spec, end_year)?;
    let before = impact_vitality(&window);
    let rows = (0..window.len())
        .rev()
        .map(|index| {
            let perturbed = window.with_count_delta(index, delta);
            let after = impact_vitality(&perturbed);
            let delta_iv = match (before.value(), after.value()) {
                (Some(b), Some(a)) => Some(a - b),
                _ => None,
            };
            PerturbationRow {
                year: window.year_at(index),
                iv_before: before,
                iv_after: after,
                delta_iv,
            }
        })
        .collect();
    Ok(rows)
}
