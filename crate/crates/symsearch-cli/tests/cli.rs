//! End-to-end tests driving the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn symsearch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symsearch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal death")
}

fn write_temp(contents: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(contents.as_bytes()).expect("write temp");
    file
}

fn certificate_blocks(stdout: &str) -> Vec<String> {
    stdout
        .split("\n\n")
        .map(str::trim)
        .filter(|block| !block.is_empty())
        .map(str::to_owned)
        .collect()
}

#[test]
fn enumerate_magic_counts_all_squares() {
    let output = symsearch(&["enumerate", "--problem", "magic:3", "--quiet"]);
    assert_eq!(exit_code(&output), 0);
    let blocks = certificate_blocks(&stdout_of(&output));
    assert_eq!(blocks.len(), 8);
    assert_eq!(blocks[0], "2 7 6\n9 5 1\n4 3 8");
}

#[test]
fn enumerate_human_mode_appends_summary() {
    let output = symsearch(&["enumerate", "--problem", "magic:3"]);
    let stdout = stdout_of(&output);
    assert!(stdout.trim_end().ends_with("8 solution(s), search complete"));
}

#[test]
fn lexleader_leaves_one_magic_square() {
    let output = symsearch(&["enumerate", "--problem", "magic:3", "--sbc", "lexleader", "--quiet"]);
    assert_eq!(exit_code(&output), 0);
    let blocks = certificate_blocks(&stdout_of(&output));
    assert_eq!(blocks, vec!["2 7 6\n9 5 1\n4 3 8".to_owned()]);
}

#[test]
fn corner_leaves_four_magic_squares() {
    let output = symsearch(&["enumerate", "--problem", "magic:3", "--sbc", "corner", "--quiet"]);
    assert_eq!(certificate_blocks(&stdout_of(&output)).len(), 4);
}

#[test]
fn solve_prints_first_solution_only() {
    let output = symsearch(&["solve", "--problem", "vdw:8,2,3", "--quiet"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_of(&output), "vdw 8 2 3\n00110011\n");
}

#[test]
fn solve_exhausted_exits_one() {
    let output = symsearch(&["solve", "--problem", "vdw:9,2,3", "--quiet"]);
    assert_eq!(exit_code(&output), 1);
    assert_eq!(stdout_of(&output), "");
}

#[test]
fn enumerate_vdw_eight_lists_six_witnesses() {
    let output = symsearch(&["enumerate", "--problem", "vdw:8,2,3", "--quiet"]);
    let blocks = certificate_blocks(&stdout_of(&output));
    let witnesses: Vec<&str> = blocks
        .iter()
        .map(|b| b.strip_prefix("vdw 8 2 3\n").expect("header"))
        .collect();
    assert_eq!(
        witnesses,
        ["00110011", "01011010", "01100110", "10011001", "10100101", "11001100"]
    );
}

#[test]
fn stats_line_has_fixed_shape() {
    let output = symsearch(&["enumerate", "--problem", "vdw:8,2,3", "--quiet", "--stats"]);
    let stdout = stdout_of(&output);
    let stats = stdout.lines().last().expect("stats line");
    let fields: Vec<&str> = stats.split(' ').collect();
    assert_eq!(fields.len(), 3);
    let nodes = fields[0].strip_prefix("nodes=").expect("nodes field");
    let solutions = fields[1].strip_prefix("solutions=").expect("solutions field");
    let elapsed = fields[2].strip_prefix("elapsed_ms=").expect("elapsed field");
    assert!(nodes.parse::<u64>().unwrap() > 0);
    assert_eq!(solutions.parse::<u64>().unwrap(), 6);
    let _ = elapsed.parse::<u64>().unwrap();
}

#[test]
fn node_limit_exits_three() {
    let output = symsearch(&["enumerate", "--problem", "magic:3", "--nodes", "10", "--quiet"]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn solution_limit_truncates_enumeration() {
    let output = symsearch(&["enumerate", "--problem", "magic:3", "--limit", "3", "--quiet"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(certificate_blocks(&stdout_of(&output)).len(), 3);
}

#[test]
fn fix_restricts_vdw_to_fixed_points() {
    let output = symsearch(&[
        "enumerate",
        "--problem",
        "vdw:8,2,3",
        "--fix",
        "reflect+colorswap:1-0",
        "--quiet",
    ]);
    let blocks = certificate_blocks(&stdout_of(&output));
    let witnesses: Vec<&str> = blocks
        .iter()
        .map(|b| b.strip_prefix("vdw 8 2 3\n").expect("header"))
        .collect();
    assert_eq!(witnesses, ["00110011", "11001100"]);
}

#[test]
fn repeated_fix_flags_compose_left_to_right() {
    let composite = symsearch(&[
        "enumerate",
        "--problem",
        "vdw:8,2,3",
        "--fix",
        "reflect",
        "--fix",
        "colorswap:1-0",
        "--quiet",
    ]);
    let single = symsearch(&[
        "enumerate",
        "--problem",
        "vdw:8,2,3",
        "--fix",
        "reflect+colorswap:1-0",
        "--quiet",
    ]);
    assert_eq!(stdout_of(&composite), stdout_of(&single));
}

#[test]
fn fix_accepts_literal_file() {
    let literal = write_temp("var: 8 7 6 5 4 3 2 1 0\nval: 9 8 7 6 5 4 3 2 1\n");
    let by_file = symsearch(&[
        "enumerate",
        "--problem",
        "magic:3",
        "--fix",
        literal.path().to_str().unwrap(),
        "--quiet",
    ]);
    let by_name = symsearch(&["enumerate", "--problem", "magic:3", "--fix", "inv+rot180", "--quiet"]);
    assert_eq!(stdout_of(&by_file), stdout_of(&by_name));
    assert_eq!(certificate_blocks(&stdout_of(&by_name)).len(), 8);
}

#[test]
fn unknown_fix_token_is_usage_error() {
    let output = symsearch(&["enumerate", "--problem", "magic:3", "--fix", "bogus"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("bogus"));
}

#[test]
fn bad_problem_spec_names_offending_token() {
    let cases = [
        ("magic:x", "x"),
        ("nosuch:3", "nosuch"),
        ("vdw:8,2", "8,2"),
        ("graceful:moebius:4", "moebius"),
        ("magic", "magic"),
    ];
    for (spec, token) in cases {
        let output = symsearch(&["solve", "--problem", spec]);
        assert_eq!(exit_code(&output), 2, "spec {spec}");
        let stderr = stderr_of(&output);
        assert_eq!(stderr.lines().count(), 1, "one-line diagnostic for {spec}");
        assert!(stderr.contains(token), "{stderr} should name {token}");
    }
}

#[test]
fn invalid_flag_value_is_usage_error() {
    let output = symsearch(&["enumerate", "--problem", "magic:3", "--sbc", "eggs"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn verify_accepts_good_certificate() {
    let cert = write_temp("vdw 8 2 3\n00110011\n");
    let output = symsearch(&[
        "verify",
        "--problem",
        "vdw:8,2,3",
        "--certificate",
        cert.path().to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_of(&output), "accepted\n");
}

#[test]
fn verify_rejects_bad_certificate_with_first_violation() {
    let cert = write_temp("vdw 8 2 3\n00010011\n");
    let output = symsearch(&[
        "verify",
        "--problem",
        "vdw:8,2,3",
        "--certificate",
        cert.path().to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 1);
    assert_eq!(
        stdout_of(&output),
        "rejected: monochromatic progression: start=1, difference=1, colour=0\n"
    );
}

#[test]
fn verify_malformed_certificate_is_usage_error() {
    let cert = write_temp("vdw 9 9 9\n00110011\n");
    let output = symsearch(&[
        "verify",
        "--problem",
        "vdw:8,2,3",
        "--certificate",
        cert.path().to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn verify_missing_file_is_usage_error() {
    let output = symsearch(&[
        "verify",
        "--problem",
        "vdw:8,2,3",
        "--certificate",
        "/nonexistent/cert.txt",
    ]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn find_syms_lists_internal_candidates() {
    let cert = write_temp("2 7 6\n9 5 1\n4 3 8\n");
    let output = symsearch(&[
        "find-syms",
        "--problem",
        "magic:3",
        "--certificate",
        cert.path().to_str().unwrap(),
        "--candidates",
        "id,rot90,inv+rot180,inv+flipH",
    ]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_of(&output), "id\ninv+rot180\n");
}

#[test]
fn find_syms_identity_only_exits_one() {
    let cert = write_temp("vdw 8 2 3\n01011010\n");
    let output = symsearch(&[
        "find-syms",
        "--problem",
        "vdw:8,2,3",
        "--certificate",
        cert.path().to_str().unwrap(),
        "--candidates",
        "id,reflect+colorswap:1-0",
    ]);
    assert_eq!(exit_code(&output), 1);
    assert_eq!(stdout_of(&output), "id\n");
}

#[test]
fn validate_sbc_lexleader_is_exact() {
    let output = symsearch(&["validate-sbc", "--problem", "magic:3", "--sbc", "lexleader"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(
        stdout_of(&output),
        "solutions=8\nsurvivors=1\norbits=1\nat_least_one_per_orbit=true\nat_most_one_per_orbit=true\npartial=false\n"
    );
}

#[test]
fn validate_sbc_corner_is_sound_but_not_exact() {
    let output = symsearch(&["validate-sbc", "--problem", "magic:3", "--sbc", "corner"]);
    assert_eq!(exit_code(&output), 1);
    let stdout = stdout_of(&output);
    assert!(stdout.contains("survivors=4"));
    assert!(stdout.contains("at_least_one_per_orbit=true"));
    assert!(stdout.contains("at_most_one_per_orbit=false"));
}

#[test]
fn validate_sbc_transformed_corner_matches_untransformed_counts() {
    let output = symsearch(&[
        "validate-sbc",
        "--problem",
        "magic:3",
        "--sbc",
        "corner",
        "--transform",
        "antidiag",
    ]);
    assert_eq!(exit_code(&output), 1);
    assert!(stdout_of(&output).contains("survivors=4"));
}

#[test]
fn graceful_cycle_matches_known_counts() {
    let output = symsearch(&["enumerate", "--problem", "graceful:cycle:4", "--quiet"]);
    let blocks = certificate_blocks(&stdout_of(&output));
    assert_eq!(blocks.len(), 16);
    assert_eq!(blocks[0], "graceful cycle:4\n0 2 1 4");

    let empty = symsearch(&["enumerate", "--problem", "graceful:cycle:5", "--quiet"]);
    assert_eq!(exit_code(&empty), 1);
    assert_eq!(certificate_blocks(&stdout_of(&empty)).len(), 0);
}

#[test]
fn graceful_file_round_trips_through_verify() {
    let graph = write_temp("# path on 4 vertices\n4\n0 1\n1 2\n2 3\n");
    let problem = format!("graceful:file:{}", graph.path().display());
    let solved = symsearch(&["solve", "--problem", &problem, "--quiet"]);
    assert_eq!(exit_code(&solved), 0);

    let cert = write_temp(&stdout_of(&solved));
    let verified = symsearch(&[
        "verify",
        "--problem",
        &problem,
        "--certificate",
        cert.path().to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&verified), 0);
}

#[test]
fn graceful_file_bad_edge_line_is_usage_error() {
    let graph = write_temp("3\n0 1 2\n");
    let problem = format!("graceful:file:{}", graph.path().display());
    let output = symsearch(&["solve", "--problem", &problem]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("0 1 2"));
}
