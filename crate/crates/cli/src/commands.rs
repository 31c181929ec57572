//! Implementation of the four subcommands.
//!
//! All diagnostic output (ingest warnings, skipped researchers) goes to
//! stderr; stdout carries nothing but the requested result, so it can be
//! piped or redirected as data.

use std::path::Path;

use iv_core::{
    build_cohort, contingency_table, iv_series, parse_counts_path, parse_profiles_path,
    perturbation_report, CitationTimeline, CohortWindowing, IngestWarning, IvResult,
    PerturbationRow, ResearcherProfile, SelectionLabel, WindowSpec, Year,
};

use crate::error::AppError;
use crate::output::{
    fmt_iv, fmt_threshold, render_aligned, CellPairJson, ComputeJson, ExclusionsJson, OutputFormat,
    PerturbRowJson, SeriesRowJson, TableJson, UNDEFINED,
};
use crate::{Command, ComputeArgs, Mode, PerturbArgs, SeriesArgs, TableArgs};

/// Upper limit on requested window lengths. The supported year range spans
/// roughly two hundred years, so anything beyond this is a typo.
const MAX_WINDOW: usize = 1000;

pub fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Compute(args) => compute(args),
        Command::Series(args) => series(args),
        Command::Table(args) => table(args),
        Command::Perturb(args) => perturb(args),
    }
}

fn emit_warnings(warnings: &[IngestWarning]) {
    for warning in warnings {
        eprintln!("warning: {warning}");
    }
}

fn load_counts(path: &Path) -> Result<Vec<CitationTimeline>, AppError> {
    let (timelines, warnings) = parse_counts_path(path).map_err(|source| AppError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    emit_warnings(&warnings);
    Ok(timelines)
}

fn load_profiles(path: &Path) -> Result<Vec<ResearcherProfile>, AppError> {
    parse_profiles_path(path).map_err(|source| AppError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn find_timeline<'a>(
    timelines: &'a [CitationTimeline],
    researcher_id: &str,
    path: &Path,
) -> Result<&'a CitationTimeline, AppError> {
    timelines
        .iter()
        .find(|t| t.researcher_id == researcher_id)
        .ok_or_else(|| AppError::UnknownResearcher {
            researcher_id: researcher_id.to_string(),
            path: path.to_path_buf(),
        })
}

fn check_window_length(length: usize) -> Result<usize, AppError> {
    if length > MAX_WINDOW {
        return Err(AppError::Usage(format!(
            "--window must be at most {MAX_WINDOW} years, got {length}"
        )));
    }
    Ok(length)
}

fn compute(args: ComputeArgs) -> Result<(), AppError> {
    let timelines = load_counts(&args.counts)?;
    let timeline = find_timeline(&timelines, &args.researcher, &args.counts)?;
    let spec = WindowSpec::Moving {
        length: check_window_length(args.window)?,
    };

    let series = iv_series(timeline, &spec, args.year, args.year)?;
    let point = &series.points[0];
    let iv = match point.result {
        IvResult::Value { iv, .. } => iv,
        IvResult::Undefined { reason } => {
            return Err(AppError::UndefinedValue {
                researcher_id: args.researcher,
                year: args.year,
                reason,
            })
        }
    };

    match args.format {
        OutputFormat::Text => {
            let oldest = args.year - (point.window_len as Year - 1);
            println!("researcher: {}", args.researcher);
            println!(
                "window:     {}-{} ({} years)",
                oldest, args.year, point.window_len
            );
            println!("iv:         {}", fmt_iv(iv));
        }
        OutputFormat::Csv => {
            println!("researcher_id,year,n,iv");
            println!(
                "{},{},{},{}",
                args.researcher,
                args.year,
                point.window_len,
                fmt_iv(iv)
            );
        }
        OutputFormat::Json => {
            let row = ComputeJson {
                researcher_id: args.researcher.clone(),
                year: args.year,
                n: point.window_len,
                iv,
            };
            println!(
                "{}",
                serde_json::to_string(&row).expect("plain data serializes")
            );
        }
    }
    Ok(())
}

struct SeriesRow {
    researcher_id: String,
    year: Year,
    window_len: usize,
    result: IvResult,
}

fn series(args: SeriesArgs) -> Result<(), AppError> {
    if let Some(from) = args.from {
        if from > args.to {
            return Err(AppError::Usage(format!(
                "empty year range: from {} to {}",
                from, args.to
            )));
        }
    }
    let timelines = load_counts(&args.counts)?;
    let mut rows: Vec<SeriesRow> = Vec::new();

    match args.mode {
        Mode::Phd => {
            let path = args
                .profiles
                .as_ref()
                .ok_or_else(|| AppError::Usage("--profiles is required with --mode phd".into()))?;
            let profiles = load_profiles(path)?;
            let (cohort, warnings) = build_cohort(profiles, timelines);
            emit_warnings(&warnings);
            for member in &cohort.members {
                let mut first = member.profile.phd_year + 1;
                if let Some(from) = args.from {
                    first = first.max(from);
                }
                if first > args.to {
                    eprintln!(
                        "warning: researcher '{}' has no evaluation years up to {}; skipping",
                        member.profile.researcher_id, args.to
                    );
                    continue;
                }
                let spec = WindowSpec::Anchored {
                    start_year: member.profile.phd_year,
                };
                let series = iv_series(&member.timeline, &spec, first, args.to)?;
                rows.extend(series.points.into_iter().map(|p| SeriesRow {
                    researcher_id: member.profile.researcher_id.clone(),
                    year: p.year,
                    window_len: p.window_len,
                    result: p.result,
                }));
            }
        }
        Mode::Moving => {
            let from = args
                .from
                .ok_or_else(|| AppError::Usage("--from is required with --mode moving".into()))?;
            let length = check_window_length(args.window)?;
            let timelines = match &args.profiles {
                Some(path) => {
                    let profiles = load_profiles(path)?;
                    let (cohort, warnings) = build_cohort(profiles, timelines);
                    emit_warnings(&warnings);
                    cohort.members.into_iter().map(|m| m.timeline).collect()
                }
                None => timelines,
            };
            let spec = WindowSpec::Moving { length };
            for timeline in &timelines {
                let series = iv_series(timeline, &spec, from, args.to)?;
                rows.extend(series.points.into_iter().map(|p| SeriesRow {
                    researcher_id: timeline.researcher_id.clone(),
                    year: p.year,
                    window_len: p.window_len,
                    result: p.result,
                }));
            }
        }
    }

    render_series(&rows, args.format);
    Ok(())
}

fn render_series(rows: &[SeriesRow], format: OutputFormat) {
    let iv_cell = |result: &IvResult| match result {
        IvResult::Value { iv, .. } => fmt_iv(*iv),
        IvResult::Undefined { .. } => UNDEFINED.to_string(),
    };
    match format {
        OutputFormat::Text => {
            let mut table = vec![["researcher_id", "year", "n", "iv"]
                .map(String::from)
                .to_vec()];
            for row in rows {
                table.push(vec![
                    row.researcher_id.clone(),
                    row.year.to_string(),
                    row.window_len.to_string(),
                    iv_cell(&row.result),
                ]);
            }
            print!("{}", render_aligned(&table));
        }
        OutputFormat::Csv => {
            println!("researcher_id,year,n,iv");
            for row in rows {
                println!(
                    "{},{},{},{}",
                    row.researcher_id,
                    row.year,
                    row.window_len,
                    iv_cell(&row.result)
                );
            }
        }
        OutputFormat::Json => {
            let json_rows: Vec<SeriesRowJson> = rows
                .iter()
                .map(|row| SeriesRowJson {
                    researcher_id: row.researcher_id.clone(),
                    year: row.year,
                    iv: row.result.value(),
                    defined: row.result.is_defined(),
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string(&json_rows).expect("plain data serializes")
            );
        }
    }
}

fn table(args: TableArgs) -> Result<(), AppError> {
    let timelines = load_counts(&args.counts)?;
    let profiles = load_profiles(&args.profiles)?;
    let (cohort, warnings) = build_cohort(profiles, timelines);
    emit_warnings(&warnings);

    let labeled = cohort
        .members
        .iter()
        .filter(|m| m.profile.selected != SelectionLabel::Unknown)
        .count();
    if labeled == 0 {
        return Err(AppError::NoLabeledResearchers {
            path: args.profiles,
        });
    }

    let table = contingency_table(
        &cohort,
        CohortWindowing::PhdAnchored,
        args.to,
        args.threshold,
        args.epsilon,
    )?;

    match args.format {
        OutputFormat::Text => {
            let t = fmt_threshold(args.threshold);
            let rows = vec![
                vec![
                    String::new(),
                    format!("IV_PhD >= {t} for all years"),
                    format!("IV_PhD < {t} for one or more years"),
                ],
                vec![
                    "Selected".to_string(),
                    table.selected_all_at_or_above_one.to_string(),
                    table.selected_below_one_some_year.to_string(),
                ],
                vec![
                    "Not selected".to_string(),
                    table.not_selected_all_at_or_above_one.to_string(),
                    table.not_selected_below_one_some_year.to_string(),
                ],
            ];
            print!("{}", render_aligned(&rows));
            println!();
            println!(
                "Excluded (unknown label):    {}",
                table.excluded_unknown_label
            );
            println!(
                "Excluded (no defined years): {}",
                table.excluded_no_defined_years
            );
        }
        OutputFormat::Csv => {
            println!("cell,count");
            println!(
                "selected_all_at_or_above_one,{}",
                table.selected_all_at_or_above_one
            );
            println!(
                "selected_below_one_some_year,{}",
                table.selected_below_one_some_year
            );
            println!(
                "not_selected_all_at_or_above_one,{}",
                table.not_selected_all_at_or_above_one
            );
            println!(
                "not_selected_below_one_some_year,{}",
                table.not_selected_below_one_some_year
            );
            println!("excluded_unknown_label,{}", table.excluded_unknown_label);
            println!(
                "excluded_no_defined_years,{}",
                table.excluded_no_defined_years
            );
        }
        OutputFormat::Json => {
            let json = TableJson {
                selected: CellPairJson {
                    all_at_or_above_one: table.selected_all_at_or_above_one,
                    below_one_some_year: table.selected_below_one_some_year,
                },
                not_selected: CellPairJson {
                    all_at_or_above_one: table.not_selected_all_at_or_above_one,
                    below_one_some_year: table.not_selected_below_one_some_year,
                },
                excluded: ExclusionsJson {
                    unknown_label: table.excluded_unknown_label,
                    no_defined_years: table.excluded_no_defined_years,
                },
                cohort_size: table.grand_total(),
            };
            println!(
                "{}",
                serde_json::to_string(&json).expect("plain data serializes")
            );
        }
    }
    Ok(())
}

fn perturb(args: PerturbArgs) -> Result<(), AppError> {
    let timelines = load_counts(&args.counts)?;
    let timeline = find_timeline(&timelines, &args.researcher, &args.counts)?;
    let spec = WindowSpec::Moving {
        length: check_window_length(args.window)?,
    };

    let rows = perturbation_report(timeline, &spec, args.year, args.delta)?;
    let before = match rows[0].iv_before {
        IvResult::Value { iv, .. } => iv,
        IvResult::Undefined { reason } => {
            return Err(AppError::UndefinedValue {
                researcher_id: args.researcher,
                year: args.year,
                reason,
            })
        }
    };

    let after_cell = |row: &PerturbationRow| match row.iv_after {
        IvResult::Value { iv, .. } => fmt_iv(iv),
        IvResult::Undefined { .. } => UNDEFINED.to_string(),
    };
    let delta_cell = |row: &PerturbationRow| match row.delta_iv {
        Some(d) => fmt_iv(d),
        None => UNDEFINED.to_string(),
    };

    match args.format {
        OutputFormat::Text => {
            println!("researcher: {}", args.researcher);
            println!(
                "window:     {}-{} ({} years)",
                rows[0].year,
                args.year,
                rows.len()
            );
            println!("iv:         {}", fmt_iv(before));
            println!("delta:      {:+}", args.delta);
            println!();
            let mut table = vec![["year", "iv_before", "iv_after", "delta_iv"]
                .map(String::from)
                .to_vec()];
            for row in &rows {
                table.push(vec![
                    row.year.to_string(),
                    fmt_iv(before),
                    after_cell(row),
                    delta_cell(row),
                ]);
            }
            print!("{}", render_aligned(&table));
        }
        OutputFormat::Csv => {
            println!("year,iv_before,iv_after,delta_iv");
            for row in &rows {
                println!(
                    "{},{},{},{}",
                    row.year,
                    fmt_iv(before),
                    after_cell(row),
                    delta_cell(row)
                );
            }
        }
        OutputFormat::Json => {
            let json_rows: Vec<PerturbRowJson> = rows
                .iter()
                .map(|row| PerturbRowJson {
                    year: row.year,
                    iv_before: before,
                    iv_after: row.iv_after.value(),
                    delta_iv: row.delta_iv,
                    defined: row.iv_after.is_defined(),
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string(&json_rows).expect("plain data serializes")
            );
        }
    }
    Ok(())
}
