use std::process::{Command, Output};

fn qsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsv")).args(args).env_remove("QSV_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Second column of every text row.
fn coefficients(o: &Output) -> Vec<String> {
    stdout(o).lines().map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect()
}

#[test]
fn partition_numbers_at_level_one() {
    let o = qsv(&["coeffs", "1", "3", "0", "0", "--order", "6", "--normalized"]);
    assert_eq!(code(&o), 0);
    assert_eq!(coefficients(&o), ["1", "1", "2", "3", "5", "7"]);
}

#[test]
fn level_minus_half_vacuum() {
    let o = qsv(&["coeffs", "2", "3", "0", "0", "--order", "6", "--normalized"]);
    assert_eq!(code(&o), 0);
    assert_eq!(coefficients(&o), ["1", "1", "3", "6", "12", "21"]);
}

#[test]
fn invalid_parameters_exit_2_naming_the_invariant() {
    let o = qsv(&["coeffs", "2", "4", "0", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("gcd(p,p') must be 1"));
    let o = qsv(&["coeffs", "3", "8", "0", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("m ≡ ℓ (mod 2)"));
    assert_eq!(code(&qsv(&["coeffs", "1", "3", "0", "0", "--order", "-1"])), 2);
    assert_eq!(code(&qsv(&["coeffs", "1", "3"])), 2);
}

#[test]
fn json_table_has_exact_fractional_exponents() {
    // 𝒞_{1,1} at (3,8), from the Weyl–Kac oracle in `string_functions.rs`
    let frozen = [1, 2, 5, 11, 23, 45, 86, 157, 281, 489, 835, 1397, 2303, 3734, 5978, 9447, 14764, 22823, 34946, 53008];
    let o = qsv(&["coeffs", "3", "8", "1", "1", "--order", "20", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    // C = q^{−1/8}𝒞, so exponents −1/8 + n stay below 20 for n ≤ 20
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0]["exponent"], "-1/8");
    assert_eq!(rows[1]["exponent"], "7/8");
    for (n, want) in frozen.iter().enumerate() {
        assert_eq!(rows[n]["coefficient"], want.to_string());
    }
}

#[test]
fn csv_coefficients_have_a_header() {
    let o = qsv(&["coeffs", "1", "3", "0", "0", "--order", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "exponent,coefficient\n-1/24,1\n23/24,1\n47/24,2\n");
}

#[test]
fn character_rows_carry_both_exponents() {
    // q^{−1/24}(1 + (z^{−1} + 1 + z)q + …) at level one
    let o = qsv(&["character", "1", "3", "0", "--order", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "-1/24 0 1\n23/24 -1 1\n23/24 0 1\n23/24 1 1\n");
}

#[test]
fn lemma_suite_passes_at_order_150() {
    let o = qsv(&["verify", "--filter", "lemma:*", "--order", "150"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("fail 0"));
}

#[test]
fn mutation_fails_with_first_difference() {
    let o = qsv(&["verify", "--filter", "lemma:unusualThetaIdentity2*", "--mutate", "3", "--format", "json", "--no-timing"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "fail");
        assert_eq!(c["first_difference"]["e_q"], "3");
        assert_eq!(c["verified_order"], "3");
    }
}

#[test]
fn csv_report_has_one_row_per_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = qsv(&["verify", "--filter", "thm:pP38*", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_path(&path).unwrap();
    assert_eq!(r.headers().unwrap().iter().next(), Some("id"));
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|row| &row[2] == "pass"));
}

#[test]
fn json_report_follows_the_schema_and_round_trips() {
    let o = qsv(&["verify", "--filter", "cor:pP25m1*", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["suite"], "builtin");
    assert_eq!(v["order"], "default");
    for key in ["pass", "fail", "skipped"] {
        assert!(v["summary"][key].is_u64());
    }
    for c in v["checks"].as_array().unwrap() {
        for key in ["id", "anchor", "status", "verified_order", "wall_time_ms"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
    let once = serde_json::to_string_pretty(&v).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&once).unwrap();
    assert_eq!(reparsed, v);
    assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap(), once);
}

#[test]
fn reports_are_byte_stable_across_thread_counts() {
    let run = |t: &str| stdout(&qsv(&["verify", "--filter", "prior:pP37*", "--threads", t, "--no-timing", "--format", "json"]));
    let one = run("1");
    assert_eq!(one, run("8"));
    assert_eq!(one, run("1"));
}

#[test]
fn threads_come_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qsv"))
        .args(["verify", "--filter", "lemma:*"])
        .env("QSV_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("threads"));
}

#[test]
fn config_presets_yield_to_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("qsv.cfg");
    std::fs::write(&cfg, "# preset\norder = 4\nformat = csv\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = qsv(&["--config", c, "coeffs", "1", "3", "0", "0", "--normalized"]);
    assert_eq!(stdout(&o), "exponent,coefficient\n0,1\n1,1\n2,2\n3,3\n");
    let o = qsv(&["--config", c, "coeffs", "1", "3", "0", "0", "--normalized", "--order", "2", "--format", "text"]);
    assert_eq!(stdout(&o), "0 1\n1 1\n");
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&qsv(&["--config", c, "list"])), 2);
}

#[test]
fn list_covers_the_catalogue() {
    let o = qsv(&["list"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().count() >= 60);
    assert!(text.contains("thm:generalPolarFiniteOddSpin"));
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&qsv(&["list", "--format", "json"]))).unwrap();
    assert_eq!(v.len(), text.lines().count());
    assert!(v.iter().all(|e| e["id"].is_string() && e["anchor"].is_string()));
}
