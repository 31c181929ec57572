//! Ingestion of citation timelines and researcher profiles from delimited
//! files.
//!
//! Two file formats, both UTF-8 and comma-delimited with one header line
//! (LF or CRLF):
//!
//! - counts: `researcher_id,year,citing_publications`, one row per
//!   researcher-year;
//! - profiles: `researcher_id,phd_year,selected`, where `selected` is
//!   `true`, `false`, or empty for unknown.
//!
//! Identifiers may be any non-empty string without commas or line breaks;
//! there is no quoting. Structural problems abort the parse with the
//! offending line number. Data-quality oddities that do not corrupt the
//! result (an explicit zero count, a timeline with no matching profile) are
//! surfaced as [`IngestWarning`]s instead.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::Path;

use thiserror::Error;

use crate::indicator::{CountsWindow, IndicatorError, Year};

/// Exact header line required in counts files.
pub const COUNTS_HEADER: &str = "researcher_id,year,citing_publications";
/// Exact header line required in profiles files.
pub const PROFILES_HEADER: &str = "researcher_id,phd_year,selected";

/// Calendar years accepted from input files. Wide enough for any real
/// citation data while rejecting transposed-digit typos.
pub const MIN_YEAR: Year = 1900;
pub const MAX_YEAR: Year = 2100;

/// A structural problem in an input file. Any of these aborts the parse.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("failed to read input: {0}")]
    Io(#[from] io::Error),
    #[error("line 1: expected header '{expected}', found '{found}'")]
    BadHeader {
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: expected 3 fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: researcher id must not be empty")]
    EmptyResearcherId { line: usize },
    #[error("line {line}: invalid year '{value}'")]
    InvalidYear { line: usize, value: String },
    #[error("line {line}: year {year} outside {MIN_YEAR}..={MAX_YEAR}")]
    YearOutOfRange { line: usize, year: Year },
    #[error("line {line}: negative count '{value}'")]
    NegativeCount { line: usize, value: String },
    #[error("line {line}: invalid count '{value}'")]
    InvalidCount { line: usize, value: String },
    #[error("line {line}: duplicate row for researcher '{researcher_id}' year {year}")]
    DuplicateYear {
        line: usize,
        researcher_id: String,
        year: Year,
    },
    #[error("line {line}: duplicate researcher id '{researcher_id}'")]
    DuplicateResearcherId { line: usize, researcher_id: String },
    #[error(
        "line {line}: unrecognized selected value '{value}' (expected 'true', 'false' or empty)"
    )]
    InvalidSelected { line: usize, value: String },
}

/// A non-fatal observation made while ingesting or joining inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IngestWarning {
    /// An explicit zero-count row; legal and equivalent to the row being
    /// absent, but worth surfacing as a data-quality signal.
    ZeroCountRow {
        line: usize,
        researcher_id: String,
        year: Year,
    },
    /// A timeline with no matching profile is dropped from the cohort.
    TimelineWithoutProfile { researcher_id: String },
    /// A profile with no count rows joins the cohort with an all-zero
    /// timeline.
    ProfileWithoutTimeline { researcher_id: String },
}

impl fmt::Display for IngestWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IngestWarning::ZeroCountRow {
                line,
                researcher_id,
                year,
            } => write!(
                f,
                "line {line}: zero count for researcher '{researcher_id}' year {year}"
            ),
            IngestWarning::TimelineWithoutProfile { researcher_id } => {
                write!(
                    f,
                    "timeline '{researcher_id}' has no matching profile; dropped"
                )
            }
            IngestWarning::ProfileWithoutTimeline { researcher_id } => write!(
                f,
                "profile '{researcher_id}' has no count rows; using an all-zero timeline"
            ),
        }
    }
}

/// Per-researcher map from calendar year to citing-publication count.
///
/// Years without an entry count as zero; explicit zero entries are never
/// stored, so two timelines with the same nonzero counts compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationTimeline {
    pub researcher_id: String,
    pub counts: BTreeMap<Year, u64>,
}

impl CitationTimeline {
    /// An empty (all-zero) timeline.
    pub fn new(researcher_id: impl Into<String>) -> Self {
        Self {
            researcher_id: researcher_id.into(),
            counts: BTreeMap::new(),
        }
    }

    /// Build a timeline from (year, count) pairs, dropping zero counts.
    pub fn with_counts(
        researcher_id: impl Into<String>,
        pairs: impl IntoIterator<Item = (Year, u64)>,
    ) -> Self {
        Self {
            researcher_id: researcher_id.into(),
            counts: pairs.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }

    /// Citing publications in `year` (zero when absent).
    pub fn count_in(&self, year: Year) -> u64 {
        self.counts.get(&year).copied().unwrap_or(0)
    }

    /// Extract the `n`-year window ending at `end_year`, filling years
    /// without data as zero. Total for every timeline and `n >= 2`.
    pub fn window(&self, end_year: Year, n: usize) -> Result<CountsWindow, IndicatorError> {
        if n < 2 {
            return Err(IndicatorError::WindowTooShort { got: n });
        }
        let counts = (0..n)
            .map(|age| {
                // i64 arithmetic so absurd inputs clamp to zero instead of overflowing.
                let year = end_year as i64 - age as i64;
                Year::try_from(year).map_or(0, |y| self.count_in(y))
            })
            .collect();
        CountsWindow::new(end_year, counts)
    }
}

/// Peer-review selection outcome attached to a researcher, when known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionLabel {
    Selected,
    NotSelected,
    Unknown,
}

/// Identity and metadata for one researcher.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResearcherProfile {
    pub researcher_id: String,
    pub phd_year: Year,
    pub selected: SelectionLabel,
}

/// A profile joined with its citation timeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohortMember {
    pub profile: ResearcherProfile,
    pub timeline: CitationTimeline,
}

/// Profiles and timelines joined on researcher id, ordered by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cohort {
    pub members: Vec<CohortMember>,
}

impl Cohort {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, researcher_id: &str) -> Option<&CohortMember> {
        self.members
            .iter()
            .find(|m| m.profile.researcher_id == researcher_id)
    }
}

fn split_row(line: &str, line_no: usize) -> Result<[&str; 3], ParseError> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 3 {
        return Err(ParseError::FieldCount {
            line: line_no,
            found: fields.len(),
        });
    }
    Ok([fields[0], fields[1], fields[2]])
}

fn parse_year(text: &str, line_no: usize) -> Result<Year, ParseError> {
    let year: Year = text.parse().map_err(|_| ParseError::InvalidYear {
        line: line_no,
        value: text.to_string(),
    })?;
    if !(MIN_YEAR..=MAX_YEAR).contains(&year) {
        return Err(ParseError::YearOutOfRange {
            line: line_no,
            year,
        });
    }
    Ok(year)
}

fn parse_count(text: &str, line_no: usize) -> Result<u64, ParseError> {
    match text.parse::<u64>() {
        Ok(count) => Ok(count),
        Err(_) => {
            if text.parse::<i64>().is_ok_and(|v| v < 0) {
                Err(ParseError::NegativeCount {
                    line: line_no,
                    value: text.to_string(),
                })
            } else {
                Err(ParseError::InvalidCount {
                    line: line_no,
                    value: text.to_string(),
                })
            }
        }
    }
}

/// Lines with 1-based numbers, tolerating CRLF endings. An iterator keeps
/// the parsers single-pass.
fn numbered_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .map(|line| line.strip_suffix('\r').unwrap_or(line))
        .enumerate()
        .map(|(idx, line)| (idx + 1, line))
}

/// Parse a counts file into one timeline per researcher.
///
/// Rows aggregate by researcher id; a duplicate (researcher, year) pair, a
/// malformed field, or a wrong header aborts with the offending line number.
/// Zero-count rows are kept out of the timelines but reported as warnings.
/// The returned timelines are sorted by researcher id, so the result does
/// not depend on row order.
pub fn parse_counts_str(
    input: &str,
) -> Result<(Vec<CitationTimeline>, Vec<IngestWarning>), ParseError> {
    let mut lines = numbered_lines(input);
    match lines.next() {
        Some((_, header)) if header == COUNTS_HEADER => {}
        other => {
            return Err(ParseError::BadHeader {
                expected: COUNTS_HEADER,
                found: other.map(|(_, l)| l.to_string()).unwrap_or_default(),
            })
        }
    }

    let mut timelines: BTreeMap<String, BTreeMap<Year, u64>> = BTreeMap::new();
    let mut seen: BTreeSet<(String, Year)> = BTreeSet::new();
    let mut warnings = Vec::new();

    for (line_no, line) in lines {
        let [id, year_text, count_text] = split_row(line, line_no)?;
        if id.is_empty() {
            return Err(ParseError::EmptyResearcherId { line: line_no });
        }
        let year = parse_year(year_text, line_no)?;
        let count = parse_count(count_text, line_no)?;
        if !seen.insert((id.to_string(), year)) {
            return Err(ParseError::DuplicateYear {
                line: line_no,
                researcher_id: id.to_string(),
                year,
            });
        }
        let counts = timelines.entry(id.to_string()).or_default();
        if count == 0 {
            warnings.push(IngestWarning::ZeroCountRow {
                line: line_no,
                researcher_id: id.to_string(),
                year,
            });
        } else {
            counts.insert(year, count);
        }
    }

    let timelines = timelines
        .into_iter()
        .map(|(researcher_id, counts)| CitationTimeline {
            researcher_id,
            counts,
        })
        .collect();
    Ok((timelines, warnings))
}

/// [`parse_counts_str`] over any reader.
pub fn parse_counts<R: Read>(
    mut reader: R,
) -> Result<(Vec<CitationTimeline>, Vec<IngestWarning>), ParseError> {
    let mut buf = String::new();
    reader.read_to_string(&mut buf)?;
    parse_counts_str(&buf)
}

/// [`parse_counts_str`] over a file path.
pub fn parse_counts_path(
    path: impl AsRef<Path>,
) -> Result<(Vec<CitationTimeline>, Vec<IngestWarning>), ParseError> {
    parse_counts_str(&fs::read_to_string(path)?)
}

/// Parse a profiles file, one researcher per row, sorted by researcher id.
pub fn parse_profiles_str(input: &str) -> Result<Vec<ResearcherProfile>, ParseError> {
    let mut lines = numbered_lines(input);
    match lines.next() {
        Some((_, header)) if header == PROFILES_HEADER => {}
        other => {
            return Err(ParseError::BadHeader {
                expected: PROFILES_HEADER,
                found: other.map(|(_, l)| l.to_string()).unwrap_or_default(),
            })
        }
    }

    let mut profiles: BTreeMap<String, ResearcherProfile> = BTreeMap::new();
    for (line_no, line) in lines {
        let [id, phd_text, selected_text] = split_row(line, line_no)?;
        if id.is_empty() {
            return Err(ParseError::EmptyResearcherId { line: line_no });
        }
        let phd_year = parse_year(phd_text, line_no)?;
        let selected = match selected_text {
            "true" => SelectionLabel::Selected,
            "false" => SelectionLabel::NotSelected,
            "" => SelectionLabel::Unknown,
            other => {
                return Err(ParseError::InvalidSelected {
                    line: line_no,
                    value: other.to_string(),
                })
            }
        };
        if profiles.contains_key(id) {
            return Err(ParseError::DuplicateResearcherId {
                line: line_no,
                researcher_id: id.to_string(),
            });
        }
        profiles.insert(
            id.to_string(),
            ResearcherProfile {
                researcher_id: id.to_string(),
                phd_year,
                selected,
            },
        );
    }
    Ok(profiles.into_values().collect())
}

/// [`parse_profiles_str`] over any reader.
pub fn parse_profiles<R: Read>(mut reader: R) -> Result<Vec<ResearcherProfile>, ParseError> {
    let mut buf = String::new();
    reader.read_to_string(&mut buf)?;
    parse_profiles_str(&buf)
}

/// [`parse_profiles_str`] over a file path.
pub fn parse_profiles_path(path: impl AsRef<Path>) -> Result<Vec<ResearcherProfile>, ParseError> {
    parse_profiles_str(&fs::read_to_string(path)?)
}

/// Serialize timelines back to the counts file format: header, then one row
/// per researcher-year, researchers and years ascending, LF endings.
/// Re-parsing the output reproduces the input structure exactly.
pub fn write_counts(timelines: &[CitationTimeline]) -> String {
    let mut sorted: Vec<&CitationTimeline> = timelines.iter().collect();
    sorted.sort_by(|a, b| a.researcher_id.cmp(&b.researcher_id));
    let mut out = String::from(COUNTS_HEADER);
    out.push('\n');
    for timeline in sorted {
        for (year, count) in &timeline.counts {
            out.push_str(&format!("{},{},{}\n", timeline.researcher_id, year, count));
        }
    }
    out
}

/// Join profiles with timelines on researcher id.
///
/// Timelines without a profile are dropped with a warning; profiles without
/// a timeline join with an all-zero timeline and a warning. Members come out
/// sorted by researcher id.
pub fn build_cohort(
    profiles: Vec<ResearcherProfile>,
    timelines: Vec<CitationTimeline>,
) -> (Cohort, Vec<IngestWarning>) {
    let mut by_id: BTreeMap<String, CitationTimeline> = timelines
        .into_iter()
        .map(|t| (t.researcher_id.clone(), t))
        .collect();
    let mut warnings = Vec::new();

    let mut profiles = profiles;
    profiles.sort_by(|a, b| a.researcher_id.cmp(&b.researcher_id));

    let members = profiles
        .into_iter()
        .map(|profile| {
            let timeline = by_id.remove(&profile.researcher_id).unwrap_or_else(|| {
                warnings.push(IngestWarning::ProfileWithoutTimeline {
                    researcher_id: profile.researcher_id.clone(),
                });
                CitationTimeline::new(profile.researcher_id.clone())
            });
            CohortMember { profile, timeline }
        })
        .collect();

    for researcher_id in by_id.into_keys() {
        warnings.push(IngestWarning::TimelineWithoutProfile { researcher_id });
    }

    (Cohort { members }, warnings)
}
