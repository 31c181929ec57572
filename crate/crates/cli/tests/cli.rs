//! Black-box tests of the `iv` binary: exit codes, output contracts, and
//! the separation of data (stdout) from diagnostics (stderr).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn counts() -> String {
    fixture("cohort_counts.csv").display().to_string()
}

fn profiles() -> String {
    fixture("cohort_profiles.csv").display().to_string()
}

fn iv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iv"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process should exit normally")
}

fn temp_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    let mut file = std::fs::File::create(&path).expect("temp file should be writable");
    file.write_all(contents.as_bytes()).unwrap();
    path.display().to_string()
}

#[test]
fn help_and_version_exit_zero() {
    let out = iv(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("Usage"));

    let out = iv(&["--version"]);
    assert_eq!(exit_code(&out), 0);

    let out = iv(&["compute", "--help"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("--window"));
}

#[test]
fn bad_invocations_exit_one() {
    // Missing required flag.
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "s_brandt",
        "--window",
        "3",
    ]);
    assert_eq!(exit_code(&out), 1);

    // Unknown subcommand.
    let out = iv(&["frobnicate"]);
    assert_eq!(exit_code(&out), 1);

    // No subcommand at all.
    let out = iv(&[]);
    assert_eq!(exit_code(&out), 1);

    // Year outside the supported range.
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "s_brandt",
        "--year",
        "1850",
        "--window",
        "3",
    ]);
    assert_eq!(exit_code(&out), 1);

    // Absurd window length.
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "s_brandt",
        "--year",
        "2004",
        "--window",
        "5000",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("--window"));
}

#[test]
fn mode_specific_flag_requirements_exit_one() {
    // Compute needs a window length.
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "s_brandt",
        "--year",
        "2004",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("--window"));

    // Series never guesses the window policy.
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--to",
        "2006",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("--mode"));

    // PhD-mode series needs the profiles file.
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--mode",
        "phd",
        "--to",
        "2006",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("--profiles"));

    // Moving-mode series needs a start year.
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--mode",
        "moving",
        "--to",
        "2006",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("--from"));

    // Inverted year range.
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--mode",
        "phd",
        "--from",
        "2007",
        "--to",
        "2006",
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("empty year range"));
}

#[test]
fn unreadable_and_malformed_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();

    let out = iv(&[
        "compute",
        "--counts",
        "/nonexistent/file.csv",
        "--researcher",
        "x",
        "--year",
        "2004",
        "--window",
        "3",
    ]);
    assert_eq!(exit_code(&out), 2);

    let bad_header = temp_file(&dir, "bad_header.csv", "id,year,count\nr1,2004,3\n");
    let out = iv(&[
        "compute",
        "--counts",
        &bad_header,
        "--researcher",
        "r1",
        "--year",
        "2004",
        "--window",
        "3",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("line 1"));

    let bad_row = temp_file(
        &dir,
        "bad_row.csv",
        "researcher_id,year,citing_publications\nr1,2004,3\nr1,2005,x\n",
    );
    let out = iv(&[
        "compute",
        "--counts",
        &bad_row,
        "--researcher",
        "r1",
        "--year",
        "2004",
        "--window",
        "3",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "stderr: {}", stderr(&out));

    let bad_profiles = temp_file(
        &dir,
        "bad_profiles.csv",
        "researcher_id,phd_year,selected\nr1,2000,maybe\n",
    );
    let out = iv(&[
        "table",
        "--counts",
        &counts(),
        "--profiles",
        &bad_profiles,
        "--to",
        "2006",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("maybe"));
}

#[test]
fn unanswerable_requests_exit_three() {
    // Researcher missing from the counts file.
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "nobody",
        "--year",
        "2004",
        "--window",
        "3",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("nobody"));

    // A one-year window has no defined indicator.
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "s_brandt",
        "--year",
        "2004",
        "--window",
        "1",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("two years"));

    // A window with no citations has no defined indicator.
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "n_moreau",
        "--year",
        "2003",
        "--window",
        "2",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("undefined"));

    // Perturbing an undefined base value is refused too.
    let out = iv(&[
        "perturb",
        "--counts",
        &counts(),
        "--researcher",
        "n_moreau",
        "--year",
        "2003",
        "--window",
        "2",
    ]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn table_with_no_labeled_researchers_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let unlabeled = temp_file(
        &dir,
        "unlabeled.csv",
        "researcher_id,phd_year,selected\ns_brandt,1999,\nn_jansen,2000,\n",
    );
    let out = iv(&[
        "table",
        "--counts",
        &counts(),
        "--profiles",
        &unlabeled,
        "--to",
        "2006",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(
        stderr(&out).contains("unlabeled.csv"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn compute_text_output_is_stable() {
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "s_brandt",
        "--year",
        "2001",
        "--window",
        "3",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out),
        "researcher: s_brandt\nwindow:     1999-2001 (3 years)\niv:         1.400000\n"
    );
}

#[test]
fn compute_csv_output_is_stable() {
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "s_brandt",
        "--year",
        "2001",
        "--window",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&out),
        "researcher_id,year,n,iv\ns_brandt,2001,3,1.400000\n"
    );
}

#[test]
fn compute_json_has_exactly_the_documented_keys() {
    let out = iv(&[
        "compute",
        "--counts",
        &counts(),
        "--researcher",
        "s_brandt",
        "--year",
        "2001",
        "--window",
        "3",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let object = value.as_object().unwrap();
    let mut keys: Vec<&str> = object.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["iv", "n", "researcher_id", "year"]);
    assert_eq!(object["researcher_id"], "s_brandt");
    assert_eq!(object["year"], 2001);
    assert_eq!(object["n"], 3);
    assert!((object["iv"].as_f64().unwrap() - 1.4).abs() < 1e-12);
}

#[test]
fn series_phd_mode_anchors_windows_at_the_phd_year() {
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--mode",
        "phd",
        "--from",
        "2001",
        "--to",
        "2001",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    // s_brandt's PhD year is 1999, so the window at 2001 spans three
    // years: the same value `compute --window 3` reports.
    assert!(
        stdout(&out).contains("s_brandt,2001,3,1.400000"),
        "body: {}",
        stdout(&out)
    );
}

#[test]
fn series_json_rows_have_exactly_the_documented_keys() {
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--mode",
        "phd",
        "--to",
        "2006",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 74);
    let mut saw_undefined = false;
    for row in &rows {
        let object = row.as_object().unwrap();
        let mut keys: Vec<&str> = object.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["defined", "iv", "researcher_id", "year"]);
        match object["defined"].as_bool().unwrap() {
            true => assert!(object["iv"].is_number()),
            false => {
                assert!(object["iv"].is_null());
                saw_undefined = true;
            }
        }
    }
    assert!(
        saw_undefined,
        "fixture contains an undefined researcher-year"
    );
}

#[test]
fn series_rows_are_sorted_by_researcher_then_year() {
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--mode",
        "phd",
        "--to",
        "2006",
        "--format",
        "csv",
    ]);
    let body = stdout(&out);
    let keys: Vec<(String, i32)> = body
        .lines()
        .skip(1)
        .map(|line| {
            let mut fields = line.split(',');
            let id = fields.next().unwrap().to_string();
            let year = fields.next().unwrap().parse().unwrap();
            (id, year)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn series_moving_mode_covers_unprofiled_researchers() {
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--mode",
        "moving",
        "--from",
        "2004",
        "--to",
        "2004",
        "--window",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    assert!(body.contains("u_okafor,2004,3,1.000000"), "body: {body}");
    // One row per researcher in the counts file.
    assert_eq!(body.lines().count(), 1 + 14);
}

#[test]
fn series_moving_mode_with_profiles_restricts_to_the_cohort() {
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--mode",
        "moving",
        "--from",
        "2004",
        "--to",
        "2004",
        "--window",
        "3",
        "--format",
        "csv",
    ]);
    let body = stdout(&out);
    assert!(!body.contains("u_okafor"));
    assert_eq!(body.lines().count(), 1 + 13);
}

#[test]
fn series_skips_researchers_with_no_evaluation_years() {
    let dir = tempfile::tempdir().unwrap();
    let counts_file = temp_file(
        &dir,
        "counts.csv",
        "researcher_id,year,citing_publications\nr_new,2006,4\nr_old,2001,2\nr_old,2002,3\n",
    );
    let profiles_file = temp_file(
        &dir,
        "profiles.csv",
        "researcher_id,phd_year,selected\nr_new,2006,true\nr_old,2000,false\n",
    );
    let out = iv(&[
        "series",
        "--counts",
        &counts_file,
        "--profiles",
        &profiles_file,
        "--mode",
        "phd",
        "--to",
        "2006",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    // r_new's first evaluation year would be 2007; it is skipped with a
    // warning rather than failing the whole run.
    assert!(!body.contains("r_new"));
    assert!(body.contains("r_old"));
    assert!(stderr(&out).contains("r_new"));
}

#[test]
fn table_text_output_is_stable() {
    let out = iv(&[
        "table",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--to",
        "2006",
    ]);
    assert_eq!(exit_code(&out), 0);
    let expected = concat!(
        "              IV_PhD >= 1 for all years  IV_PhD < 1 for one or more years\n",
        "Selected      5                          0\n",
        "Not selected  4                          4\n",
        "\n",
        "Excluded (unknown label):    0\n",
        "Excluded (no defined years): 0\n",
    );
    assert_eq!(stdout(&out), expected);
}

#[test]
fn table_json_carries_the_cell_counts_and_cohort_size() {
    let out = iv(&[
        "table",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--to",
        "2006",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["selected"]["all_at_or_above_one"], 5);
    assert_eq!(value["selected"]["below_one_some_year"], 0);
    assert_eq!(value["not_selected"]["all_at_or_above_one"], 4);
    assert_eq!(value["not_selected"]["below_one_some_year"], 4);
    assert_eq!(value["excluded"]["unknown_label"], 0);
    assert_eq!(value["excluded"]["no_defined_years"], 0);
    assert_eq!(value["cohort_size"], 13);
}

#[test]
fn table_threshold_and_epsilon_are_honored() {
    // A threshold above every fixture value classifies everyone as below.
    let out = iv(&[
        "table",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--to",
        "2006",
        "--threshold",
        "5.0",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["selected"]["all_at_or_above_one"], 0);
    assert_eq!(value["not_selected"]["all_at_or_above_one"], 0);

    // A huge epsilon waves every defined value through.
    let out = iv(&[
        "table",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--to",
        "2006",
        "--epsilon",
        "10",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["selected"]["all_at_or_above_one"], 5);
    // n_moreau still fails the criterion through its undefined year.
    assert_eq!(value["not_selected"]["all_at_or_above_one"], 7);
    assert_eq!(value["not_selected"]["below_one_some_year"], 1);
}

#[test]
fn perturb_delta_zero_changes_nothing() {
    let out = iv(&[
        "perturb",
        "--counts",
        &counts(),
        "--researcher",
        "u_okafor",
        "--year",
        "2006",
        "--window",
        "5",
        "--delta",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[1], fields[2], "before and after differ: {line}");
        assert_eq!(fields[3], "0.000000");
    }
}

#[test]
fn perturb_negative_delta_clamps_counts_at_zero() {
    let out = iv(&[
        "perturb",
        "--counts",
        &counts(),
        "--researcher",
        "u_okafor",
        "--year",
        "2006",
        "--window",
        "3",
        "--delta",
        "-5",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    // Zeroing the most recent year of a uniform (2, 2, 2) window: 3/10.
    assert!(
        body.contains("2006,1.000000,0.300000,-0.700000"),
        "body: {body}"
    );
}

#[test]
fn perturb_reports_undefined_outcomes_with_the_literal_token() {
    let dir = tempfile::tempdir().unwrap();
    let counts_file = temp_file(
        &dir,
        "counts.csv",
        "researcher_id,year,citing_publications\nr1,2004,2\n",
    );
    // Removing the only citations makes the indicator undefined.
    let out = iv(&[
        "perturb",
        "--counts",
        &counts_file,
        "--researcher",
        "r1",
        "--year",
        "2004",
        "--window",
        "2",
        "--delta",
        "-2",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    assert!(
        body.contains("2004,2.000000,UNDEFINED,UNDEFINED"),
        "body: {body}"
    );
}

#[test]
fn diagnostics_go_to_stderr_not_stdout() {
    // The fixture deliberately contains a zero-count row and a timeline
    // without a profile, so every run has warnings to route.
    let out = iv(&[
        "series",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--mode",
        "phd",
        "--to",
        "2006",
        "--format",
        "csv",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(!stdout(&out).contains("warning"));
    let err = stderr(&out);
    assert!(err.contains("warning:"));
    assert!(err.contains("u_okafor"));
    assert!(err.contains("n_moreau"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "table",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--to",
        "2006",
        "--format",
        "csv",
    ];
    let first = iv(&args);
    let second = iv(&args);
    assert_eq!(first.stdout, second.stdout);

    let args = [
        "series",
        "--counts",
        &counts(),
        "--profiles",
        &profiles(),
        "--mode",
        "phd",
        "--to",
        "2006",
        "--format",
        "json",
    ];
    let first = iv(&args);
    let second = iv(&args);
    assert_eq!(first.stdout, second.stdout);
}
