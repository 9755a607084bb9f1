//! Golden-file cases shared by the unit tests and the acceptance run.

use std::path::PathBuf;

/// (file name, arguments). Every run adds `--no-timestamp`.
pub const CASES: &[(&str, &[&str])] = &[
    ("ramsey_star4_star4.json", &["ramsey", "star:4", "star:4"]),
    ("ramsey_tstar9_tdp40.json", &["ramsey", "tstar:9", "tdp:40"]),
    ("ramsey_path5_path5.csv", &["--format", "csv", "ramsey", "path:5", "path:5"]),
    ("certify_tdp30_tdp30.json", &["certify", "tdp:30", "tdp:30"]),
    ("certify_tdp10_tdp10.csv", &["--format", "csv", "certify", "tdp:10", "tdp:10"]),
    ("witness_tprime9_tdp13_16.json", &["witness", "tprime:9", "tdp:13", "16"]),
    ("ex_tprime7_9.json", &["ex", "tprime:7", "9"]),
    ("ex_table_t3.csv", &["--format", "csv", "ex-table", "t3", "--n", "15..16", "--p", "15..24"]),
    ("trees_5.csv", &["--format", "csv", "trees", "--enumerate", "5"]),
    ("contains_petersen.json", &["contains", "IheA@GUAo", "dstar:2,2"]),
    ("audit_broom_broom.csv", &["--format", "csv", "audit", "broom-broom", "--n", "26..32"]),
    ("oracle_ex_path4_7.json", &["oracle", "ex", "path:4", "7"]),
    ("oracle_ramsey_star4_tprime5.json", &["oracle", "ramsey", "star:4", "tprime:5", "--cap", "7"]),
    ("scan_conj2.csv", &["--format", "csv", "scan", "conj2", "--m", "3", "--n", "5"]),
    ("report_star_tdp.csv", &["--format", "csv", "report", "star:4..10", "tdp:15..25"]),
    ("report_empty.csv", &["--format", "csv", "report", "star:5..4", "tdp:15..17"]),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Byte-compares every case, produced twice by `run`, with its golden file.
/// Set `RTL_UPDATE_GOLDEN=1` to rewrite the files instead.
pub fn check_all(run: impl Fn(&[&str]) -> Vec<u8>) -> Vec<String> {
    let update = std::env::var_os("RTL_UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for (name, args) in CASES {
        let mut full = vec!["rtl", "--no-timestamp"];
        full.extend_from_slice(args);
        let first = run(&full);
        if run(&full) != first {
            problems.push(format!("{name}: output differs between runs"));
        }
        let path = golden_dir().join(name);
        if update {
            std::fs::write(&path, &first).unwrap();
            continue;
        }
        match std::fs::read(&path) {
            Ok(expected) if expected == first => {}
            Ok(_) => problems.push(format!("{name}: differs from golden file")),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    problems
}
