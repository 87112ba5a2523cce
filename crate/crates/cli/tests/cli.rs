use std::process::{Command, Output};

use serde_json::Value;

fn sigmach(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmach")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn ok(args: &[&str]) -> String {
    let out = sigmach(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn exit_code(args: &[&str]) -> Option<i32> {
    sigmach(args).status.code()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn trace_renders_schedule_and_result() {
    let text = ok(&["trace", "231", "2413"]);
    assert_eq!(text.lines().count(), 10);
    assert_eq!(text.lines().last().unwrap(), "map_231(2413) = 1432");
    assert!(ok(&["trace", "21", "1"]).trim_end().ends_with("= 1"));

    let doc: Value = serde_json::from_str(&ok(&["--format", "json", "trace", "231", "2413"])).unwrap();
    assert_eq!(doc["output"], "1 4 3 2");
    let ops: Vec<String> = doc["events"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| format!("{}{}", e["op"].as_str().unwrap(), e["value"]))
        .collect();
    assert_eq!(ops, ["push2", "push4", "push1", "pop1", "pop4", "push3", "pop3", "pop2"]);
}

#[test]
fn parse_and_usage_errors_exit_2() {
    assert_eq!(exit_code(&["trace", "231", "24a3"]), Some(2));
    assert_eq!(exit_code(&["trace", "1", "21"]), Some(2));
    assert_eq!(exit_code(&["trace", "2 2 1", "21"]), Some(2));
    assert_eq!(exit_code(&["count", "sortable"]), Some(2));
    assert_eq!(exit_code(&["count", "sorted", "312", "--method", "formula"]), Some(2));
    assert_eq!(exit_code(&["--format", "bfile", "classify", "3"]), Some(2));
    assert_eq!(exit_code(&["--threads", "0", "count", "xi"]), Some(2));
    assert_eq!(exit_code(&["frobnicate"]), Some(2));
}

#[test]
fn count_formats_agree_and_round_trip() {
    let plain: Vec<u64> =
        ok(&["count", "sortable", "231", "-n", "8"]).split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!(plain, [1, 2, 6, 23, 102, 496, 2569, 13934]);

    let csv_text = ok(&["--format", "csv", "count", "sortable", "231", "-n", "8"]);
    assert!(csv_text.starts_with("n,count\n"));
    assert_eq!(csv_text.lines().last().unwrap(), "8,13934");
    let from_csv: Vec<u64> = csv_rows(&csv_text).iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(from_csv, plain);

    let bfile = ok(&["--format", "bfile", "count", "sortable", "231", "-n", "8"]);
    let from_bfile: Vec<(usize, u64)> = bfile
        .lines()
        .map(|l| {
            let (n, a) = l.split_once(' ').unwrap();
            (n.parse().unwrap(), a.parse().unwrap())
        })
        .collect();
    assert_eq!(from_bfile, plain.iter().enumerate().map(|(i, &a)| (i + 1, a)).collect::<Vec<_>>());

    let json: Value = serde_json::from_str(&ok(&["--format", "json", "count", "sortable", "231", "-n", "8"])).unwrap();
    let from_json: Vec<u64> = json.as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(from_json, plain);
}

#[test]
fn count_sorted_and_xi() {
    assert!(ok(&["count", "sorted", "4123", "-n", "9"]).trim_end().ends_with(" 1321"));
    assert_eq!(ok(&["count", "xi", "-n", "6", "--method", "formula"]), "1 2 5 17 75 407\n");
    assert_eq!(
        ok(&["count", "xi", "-n", "7", "--method", "brute"]),
        ok(&["count", "xi", "-n", "7", "--method", "formula"])
    );
    assert_eq!(
        ok(&["count", "sortable", "123", "-n", "7", "--method", "formula"]),
        ok(&["count", "sortable", "123", "-n", "7"])
    );
    // Past the default brute-force range the closed form takes over, so no guard.
    let big = ok(&["count", "xi", "-n", "14", "--method", "formula"]);
    assert_eq!(big.split_whitespace().count(), 14);
}

#[test]
fn enumeration_guard() {
    let out = sigmach(&["count", "sortable", "231", "-n", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("refusing: would enumerate > 11! permutations"));
    assert_eq!(exit_code(&["count", "xi", "-n", "12", "--method", "brute"]), Some(2));
}

#[test]
fn classify_table() {
    let text = ok(&["classify", "3"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    let row = rows.iter().find(|r| r.starts_with("231 ")).unwrap();
    let flags: Vec<&str> = row.split_whitespace().skip(1).take(3).collect();
    // stdout is a pipe here, so the ASCII marks are used
    assert_eq!(flags, ["N", "Y", "N"]);

    assert_eq!(ok(&["classify", "4"]).lines().count(), 25);
    let json: Value = serde_json::from_str(&ok(&["--format", "json", "classify", "4"])).unwrap();
    let rows = json.as_array().unwrap();
    assert_eq!(rows.len(), 24);
    let exceptional: Vec<&str> =
        rows.iter().filter(|r| r["sortInsideXi"] == false).map(|r| r["sigma"].as_str().unwrap()).collect();
    assert_eq!(exceptional, ["3 4 1 2", "3 4 2 1"]);

    let csv_text = ok(&["--format", "csv", "classify", "3"]);
    let row = csv_rows(&csv_text).into_iter().find(|r| r[0] == "321").unwrap();
    assert_eq!(row[1..4], ["true", "true", "true"]);
    assert_eq!(row[5], "123;132");

    assert_eq!(exit_code(&["classify", "2"]), Some(2));
    assert_eq!(exit_code(&["classify", "7"]), Some(2));
}

#[test]
fn fertility_value_and_profile() {
    assert_eq!(ok(&["fertility", "123", "--gamma", "213"]), "2\n");
    let profile = csv_rows(&ok(&["--format", "csv", "fertility", "123", "-n", "3"]));
    assert_eq!(profile.len(), 4);
    assert_eq!(profile.iter().map(|r| r[1].parse::<u64>().unwrap()).sum::<u64>(), 5);
    let json: Value = serde_json::from_str(&ok(&["--format", "json", "fertility", "123", "-n", "3"])).unwrap();
    assert_eq!(json["2 1 3"], 2);
    assert_eq!(exit_code(&["fertility", "123", "--gamma", "213", "-n", "3"]), Some(2));
    assert_eq!(exit_code(&["fertility", "123"]), Some(2));
}

#[test]
fn verify_suites_pass() {
    let text = ok(&["verify", "theorems", "--max-sigma-len", "3", "-n", "7"]);
    assert!(text.lines().all(|l| l.starts_with("THM ") && !l.contains("| FAIL")));
    for id in
        ["class", "xi-subset", "effective", "sorted-equals-av", "reverse-hat", "blocks", "identity-start", "xi-count"]
    {
        assert!(text.contains(&format!("THM {id} |")), "missing {id}");
    }
    let tables = ok(&["verify", "tables", "-n", "8"]);
    assert!(tables.contains("TAB sortable | 231 | 8 | PASS | 13934\n"));
    let conj = ok(&["verify", "conjectures", "-n", "6"]);
    assert!(conj.contains("EQUIDISTRIBUTED: "));
    assert!(conj.contains("CNJ cardinality | - | 6 | PASS | 201 = 201 = 201\n"));
}

#[test]
fn explore_report() {
    let text = ok(&["explore", "-n", "4"]);
    assert!(text.contains("n = 4 (ascent-sequence rl_min convention: strict)"));
    assert_eq!(text.matches("EQUIDISTRIBUTED: ").count(), 4);
    let rows = csv_rows(&ok(&["--format", "csv", "explore", "-n", "5", "--convention", "weak"]));
    for set in ["sort312", "fishburn3412", "ascent201"] {
        let total: u64 = rows.iter().filter(|r| r[0] == "5" && r[1] == set).map(|r| r[4].parse::<u64>().unwrap()).sum();
        assert_eq!(total, 52, "{set}");
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = |t: &'static str| vec!["--threads", t, "--format", "json", "fertility", "312", "-n", "6"];
    assert_eq!(ok(&args("1")), ok(&args("3")));
}
