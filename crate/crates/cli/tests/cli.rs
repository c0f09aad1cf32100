use std::process::Command as Process;

use clap::Parser;
use hopf_cli::{main_with, parse_jobspec, run, Cli, Engine, EXIT_INTERNAL, EXIT_ORACLE_MISMATCH, EXIT_USAGE};
use hopf_core::{parse_form, EigenvalueStructure, Weight};
use serde_json::Value;

fn hopf(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_hopf")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = hopf(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn off_by_one(s: &EigenvalueStructure, k: usize, b: &Weight) -> hopf_core::Result<u64> {
    hopf_core::cohomology::section_dimension_closed_form(s, k, b).map(|d| d + 1)
}

#[test]
fn dim_report_with_oracle() {
    let v = json(&[
        "--kind",
        "generic",
        "--n",
        "4",
        "--k",
        "2",
        "--command",
        "dim",
        "--b",
        "[1,0,1,0]",
        "--oracle",
        "on",
    ]);
    let rec = &v["records"][0];
    assert_eq!(rec["dimension"], 1);
    assert_eq!(rec["oracle"]["count"], 1);
    assert_eq!(rec["oracle"]["match"], true);
    assert_eq!(v["oracle"]["checked"], 1);
    assert_eq!(v["timings"], serde_json::json!({}));
}

#[test]
fn report_fields_are_in_schema_order() {
    let (_, out, _) = hopf(&[
        "--kind",
        "classical",
        "--n",
        "4",
        "--k",
        "2",
        "--command",
        "dim",
        "--b",
        "[2]",
        "--format",
        "json",
    ]);
    let positions: Vec<usize> = ["job", "records", "oracle", "timings"]
        .iter()
        .map(|key| out.find(&format!("\n  \"{key}\":")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn catalogue_report() {
    let v = json(&[
        "--kind",
        "classical",
        "--n",
        "4",
        "--k",
        "2",
        "--command",
        "catalogue",
        "--bound",
        "3",
    ]);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["b"], serde_json::json!([2]));
    assert_eq!(records[0]["nonsingular"]["witness"], "dz1^dz2");
    assert_eq!(records[1]["dimension"], 24);
}

#[test]
fn check_report_and_form_round_trip() {
    let v = json(&[
        "--kind",
        "generic",
        "--n",
        "4",
        "--command",
        "check",
        "--form",
        "dz1^dz2 + dz3^dz4",
    ]);
    let rec = &v["records"][0];
    assert_eq!(rec["decomposable"], false);
    assert_eq!(rec["integrable"], Value::Null);

    let literal = "3/2 z1^2 dz2^dz1 - z3 dz1^dz3 + z2 dz1^dz3";
    let v = json(&[
        "--kind",
        "generic",
        "--n",
        "3",
        "--command",
        "check",
        "--form",
        literal,
        "--trials",
        "4",
    ]);
    let rendered = v["records"][0]["form"].as_str().unwrap();
    assert_eq!(parse_form(rendered, 3, Some(2)), parse_form(literal, 3, None));
    assert_eq!(v["job"]["form"], rendered);
}

#[test]
fn embedded_witnesses_reparse() {
    let v = json(&[
        "--kind",
        "intermediary",
        "--n",
        "5",
        "--r",
        "3",
        "--k",
        "2",
        "--command",
        "catalogue",
        "--bound",
        "3",
    ]);
    for rec in v["records"].as_array().unwrap() {
        for key in ["witness", "candidate"] {
            if let Some(w) = rec["nonsingular"][key].as_str() {
                let f = parse_form(w, 5, Some(2)).unwrap();
                assert_eq!(hopf_core::render_form(&f), w);
            }
        }
        if let Some(terms) = rec["normal_form"]["terms"].as_array() {
            for t in terms {
                parse_form(t.as_str().unwrap(), 5, Some(2)).unwrap();
            }
        }
    }
}

#[test]
fn job_file_and_flags_agree() {
    let dir = std::env::temp_dir().join(format!("hopf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.txt");
    std::fs::write(
        &path,
        "# classify one bundle\nkind=intermediary n=4 r=2\nk=2 b=[1, 0, 1]\ncommand=classify\n",
    )
    .unwrap();
    let (code, from_file, _) = hopf(&["--job", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let (_, from_flags, _) = hopf(&[
        "--kind",
        "intermediary",
        "--n",
        "4",
        "--r",
        "2",
        "--k",
        "2",
        "--b",
        "[1,0,1]",
        "--command",
        "classify",
        "--format",
        "json",
    ]);
    assert_eq!(from_file, from_flags);
    let (code, text, _) = hopf(&["--job", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("intermediary-constant{m=1, h=1, special=[4]}"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = hopf(&[
        "--kind",
        "intermediary",
        "--n",
        "4",
        "--r",
        "5",
        "--k",
        "2",
        "--command",
        "dim",
        "--b",
        "[1,0]",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("r out of range 2..n-1"));
    let (code, _, err) = hopf(&["--kind", "generic", "--n", "4", "--k", "2", "--command", "dim"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("missing field 'b'"));
    let (code, _, _) = hopf(&["--job", "/nonexistent/job.txt"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn library_errors_name_their_module() {
    // Sampling needs at least one trial for non-monomial coefficients.
    let cli = Cli::parse_from([
        "hopf",
        "--kind",
        "generic",
        "--n",
        "3",
        "--command",
        "check",
        "--form",
        "z1 dz1 + z2 dz1 + z3^2 dz2",
        "--trials",
        "0",
    ]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(main_with(&cli, Engine::default(), &mut out, &mut err), EXIT_INTERNAL);
    assert!(String::from_utf8(err).unwrap().contains("analysis: inconclusive"));
}

#[test]
fn corrupted_closed_form_is_caught_by_the_oracle() {
    let cli = Cli::parse_from([
        "hopf",
        "--kind",
        "classical",
        "--n",
        "4",
        "--k",
        "2",
        "--command",
        "admissible",
        "--bound",
        "4",
        "--oracle",
        "on",
    ]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with(
        &cli,
        Engine {
            closed_form: off_by_one,
        },
        &mut out,
        &mut err,
    );
    assert_eq!(code, EXIT_ORACLE_MISMATCH);
    assert!(String::from_utf8(out).unwrap().contains("MISMATCH"));

    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(main_with(&cli, Engine::default(), &mut out, &mut err), 0);
}

#[test]
fn library_api_matches_the_binary() {
    let job = parse_jobspec("kind=generic n=5 k=2 command=catalogue bound=3 format=json").unwrap();
    let report = run(&job).unwrap();
    let (_, out, _) = hopf(&[
        "--kind",
        "generic",
        "--n",
        "5",
        "--k",
        "2",
        "--command",
        "catalogue",
        "--bound",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(report.to_json() + "\n", out);
}
