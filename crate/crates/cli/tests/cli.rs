//! End-to-end tests of the binary: pinned output bytes, exit codes, file
//! output, and thread-count invariance.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_goldbach"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn irred_prints_witness_in_canonical_order() {
    let out = run(&["irred", "--k", "2", "x^2+2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "reducible: (x + (0,-1)) * (x + (0,1))\n");
}

#[test]
fn irred_prints_irreducible() {
    let out = run(&["irred", "--k", "2", "x^2+1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "irreducible\n");
}

#[test]
fn irred_oracle_engine_agrees() {
    let fast = run(&["irred", "--k", "2", "x^3 + (1,-1)*x^2 + (1,-2)*x + (-3,-3)"]);
    let oracle = run(&[
        "irred",
        "--k",
        "2",
        "--engine",
        "oracle",
        "x^3 + (1,-1)*x^2 + (1,-2)*x + (-3,-3)",
    ]);
    assert_eq!(fast.status.code(), Some(0));
    assert_eq!(oracle.status.code(), Some(0));
    assert_eq!(stdout_of(&fast), stdout_of(&oracle));
    assert!(stdout_of(&fast).starts_with("reducible: "));
}

#[test]
fn invalid_ring_exits_3() {
    let out = run(&["irred", "--k", "4", "x"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["sweep", "--k", "1", "--f", "x^2", "--y", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn syntax_errors_exit_2() {
    let out = run(&["irred", "--k", "2", "x^^2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["lemma2", "--k", "2", "--d", "2", "--g-lead", "(1,", "--y", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // clap usage errors share the code: unknown flag, missing bound flags,
    // conflicting bound flags.
    let out = run(&["irred", "--k", "2", "--bogus", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sweep", "--k", "2", "--f", "x^2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sweep", "--k", "2", "--f", "x^2", "--y", "1", "--y-min", "1", "--y-max", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["lemma2", "--k", "2", "--d", "2", "--y", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_and_precondition_exit_4() {
    // Degree cap of the fast engine.
    let out = run(&["irred", "--k", "2", "x^5"]);
    assert_eq!(out.status.code(), Some(4));
    // Splitting needs degree >= 2.
    let out = run(&["sweep", "--k", "2", "--f", "x", "--y", "1"]);
    assert_eq!(out.status.code(), Some(4));
    // Non-monic input.
    let out = run(&["sweep", "--k", "2", "--f", "(2,0)*x^2", "--y", "1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sweep_box_golden_bytes() {
    let out = run(&["sweep", "--k", "2", "--f", "x^2", "--mode", "box", "--y-min", "1", "--y-max", "4", "--step", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
k,mode,d,f,y,T_enum,T_formula,pairs_reducible,R,ratio_R_T,ratio_R_2y,ratio_R_4y
2,box,2,x^2,1,9,9,1,8,0.888889,2.000000,0.500000
2,box,2,x^2,2,25,25,4,21,0.840000,1.312500,0.328125
2,box,2,x^2,3,49,49,6,43,0.877551,1.194444,0.298611
2,box,2,x^2,4,81,81,6,75,0.925926,1.171875,0.292969
# fit slope=1.603039 constant=7.591481 log2_constant=2.924381 ratio_R_2y_last=1.171875 ratio_R_4y_last=0.292969
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn sweep_disk_golden_bytes() {
    let out = run(&["sweep", "--k", "2", "--f", "x^2", "--mode", "disk", "--y-min", "1", "--y-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
k,mode,d,f,y,T_enum,T_formula,pairs_reducible,R,ratio_R_T,ratio_R_2y,ratio_R_4y
2,disk,2,x^2,1,3,,1,2,0.666667,0.500000,0.125000
# fit n/a
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn sweep_json_mirrors_csv_fields() {
    let out = run(&["sweep", "--k", "2", "--f", "x^2", "--format", "json", "--y", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "{\"k\":2,\"mode\":\"box\",\"d\":2,\"f\":\"x^2\",\"y\":1,\"T_enum\":9,\"T_formula\":9,\"pairs_reducible\":1,\"R\":8,\"ratio_R_T\":0.888889,\"ratio_R_2y\":2.000000,\"ratio_R_4y\":0.500000}\n{\"fit\":\"n/a\"}\n";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn csv_quotes_polynomials_containing_commas() {
    let out = run(&["pairs-total", "--k", "2", "--f", "x^2 + (1,2)*x", "--y", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("2,box,2,\"x^2 + (1,2)*x\",3,"), "row was: {row}");
}

#[test]
fn pairs_total_cube_golden() {
    let out = run(&["pairs-total", "--k", "2", "--f", "x^3", "--y", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "k,mode,d,f,y,T_enum,T_formula\n2,box,3,x^3,2,650,650\n"
    );
}

#[test]
fn lemma2_fixed_lead_golden() {
    let out = run(&["lemma2", "--k", "2", "--d", "2", "--g-lead", "(-1,0)", "--mode", "box", "--y", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "y,candidates,r_y,ratio\n1,9,1,0.111111\n# fit n/a\n");
}

#[test]
fn lemma2_lead_outside_bound_gives_zero_row() {
    let out = run(&["lemma2", "--k", "2", "--d", "2", "--g-lead", "(5,0)", "--mode", "box", "--y", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "y,candidates,r_y,ratio\n1,9,0,0.000000\n# fit n/a\n");
}

#[test]
fn lemma2_free_lead_and_fit() {
    let out = run(&["lemma2", "--k", "2", "--d", "2", "--free-lead", "--y-min", "1", "--y-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("y,candidates,r_y,ratio\n1,81,18,0.222222\n"), "got: {text}");
    assert!(text.trim_end().lines().last().unwrap().starts_with("# fit slope="));
}

#[test]
fn out_flag_writes_the_file_and_not_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = bin()
        .args(["sweep", "--k", "2", "--f", "x^2", "--y", "1", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.contains("2,box,2,x^2,1,9,9,1,8,0.888889,2.000000,0.500000\n"));
}

#[test]
fn mahler_check_seeded_run_is_clean() {
    let out = run(&["mahler-check", "--k", "2", "--trials", "10000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "{\"seed\":7,\"generator\":\"chacha8/stream-per-trial\",\"trials\":10000,\"k_list\":[2]}"
    );
    let records: Vec<&str> = lines.collect();
    assert_eq!(records.len(), 6);
    for r in records {
        assert!(r.contains("\"failures\":0"), "suite not clean: {r}");
        assert!(r.contains("\"counterexample\":null"));
    }
}

#[test]
fn mahler_check_single_trial_emits_well_formed_records() {
    let out = run(&["mahler-check", "--k", "3", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout_of(&out).lines() {
        assert!(line.starts_with('{') && line.ends_with('}'), "not a JSON object: {line}");
        assert_eq!(line.matches('{').count(), 1, "nested structure: {line}");
    }
}

#[test]
fn tampered_suites_fail_with_counterexample() {
    let out = run(&["mahler-check", "--k", "2", "--trials", "5", "--seed", "1", "--tamper"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("\"counterexample\":\"k=2 "), "got: {text}");
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("counterexample ("));
}

fn rerun_with_jobs(args: &[&str]) {
    let one = bin().args(args).args(["--jobs", "1"]).output().unwrap();
    let eight = bin().args(args).args(["--jobs", "8"]).output().unwrap();
    assert_eq!(one.status.code(), eight.status.code(), "exit codes differ for {args:?}");
    assert_eq!(one.stdout, eight.stdout, "stdout differs for {args:?}");
}

#[test]
fn thread_count_never_changes_output() {
    rerun_with_jobs(&["sweep", "--k", "2", "--f", "x^2", "--y-min", "1", "--y-max", "4"]);
    rerun_with_jobs(&["sweep", "--k", "3", "--f", "x^3", "--mode", "disk", "--y", "2"]);
    rerun_with_jobs(&["lemma2", "--k", "2", "--d", "3", "--free-lead", "--y", "2"]);
    rerun_with_jobs(&["mahler-check", "--k", "2", "--trials", "300", "--seed", "5"]);
    rerun_with_jobs(&["pairs-total", "--k", "2", "--f", "x^3", "--y", "4"]);
    rerun_with_jobs(&["irred", "--k", "2", "x^4+1"]);
}

#[test]
fn output_is_utf8_with_lf_endings(){
    let out = run(&["sweep", "--k", "2", "--f", "x^2", "--y", "1"]);
    let text = stdout_of(&out);
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
}

#[test]
fn partial_rows_flush_before_a_capacity_abort() {
    // y=1 succeeds, y=40 exceeds a deliberately tiny budget... the public
    // binary has no budget flag, so use a degree-5 polynomial instead: the
    // first bound already aborts, leaving just the header.
    let out = run(&["sweep", "--k", "2", "--f", "x^5", "--y-min", "1", "--y-max", "2"]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout_of(&out);
    assert_eq!(text, "k,mode,d,f,y,T_enum,T_formula,pairs_reducible,R,ratio_R_T,ratio_R_2y,ratio_R_4y\n");
}
