use std::path::PathBuf;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;

use pwlfix::report::{
    to_json, BcbReportDto, ClassifyReport, CyclesReport, FixedPointsReport, SimulateReport, VerifyReportDto,
};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn pwlfix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwlfix"))
        .args(args)
        .env_remove("PWLFIX_EPSILON")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn round_trips<T: Serialize + DeserializeOwned>(args: &[&str]) {
    let o = pwlfix(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    let text = stdout(&o);
    let parsed: T = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json(&parsed), text, "{args:?}");
}

#[test]
fn counterexample_report() {
    let o = pwlfix(&["classify", &data("counterexample.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().next(),
        Some("nondegeneracy fails: u = 0; Theorem inapplicable; no fixed points found")
    );
}

#[test]
fn counterexample_orbit_is_periodic() {
    let o = pwlfix(&["simulate", &data("counterexample.json"), "--x0", "-2/15,-7/5,0", "--steps", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("periodic, period 3"), "{}", stdout(&o));
}

#[test]
fn divergent_report_shows_the_certificate() {
    let o = pwlfix(&["classify", &data("divergent_fold.json")]);
    let text = stdout(&o);
    assert!(text.starts_with("all orbits diverge\n"));
    assert!(text.contains("certificate: u = (1, 0), s = 1"));
}

#[test]
fn invalid_inputs_exit_with_two() {
    let o = pwlfix(&["classify", "missing.json"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("pwlfix-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let syntax = dir.join("syntax.json");
    std::fs::write(&syntax, "{\n  \"n\": 2,\n  \"A\": [[\"1\", \"0\"],\n").unwrap();
    let o = pwlfix(&["classify", syntax.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at line 4"), "{}", stderr(&o));

    let field = dir.join("field.json");
    std::fs::write(&field, r#"{"n": 2, "A": [["1","0"],["0","x"]], "b": ["1","0"], "c": ["0","0"]}"#).unwrap();
    let o = pwlfix(&["fixed-points", field.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("A[2][2]"), "{}", stderr(&o));

    let o = pwlfix(&["convert", "--left", &data("left_piece.json"), "--right", &data("right_piece_broken.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 2"), "{}", stderr(&o));

    let o = pwlfix(&["simulate", &data("counterexample.json"), "--x0", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pwlfix(&["cycles", &data("tent.json"), "--max-period", "50"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pwlfix(&["bcb", &data("divergent_fold.json"), "--mu-from", "1", "--mu-to", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pwlfix(&["classify"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_reports_round_trip() {
    round_trips::<ClassifyReport>(&["classify", &data("counterexample.json"), "--json"]);
    round_trips::<ClassifyReport>(&["classify", &data("divergent_fold.json"), "--json"]);
    round_trips::<ClassifyReport>(&["--json", "classify", &data("half_line.json")]);
    round_trips::<FixedPointsReport>(&["fixed-points", &data("half_line.json"), "--json"]);
    round_trips::<SimulateReport>(&["simulate", &data("counterexample.json"), "--x0", "-2/15,-7/5,0", "--json"]);
    round_trips::<SimulateReport>(&["simulate", &data("float_fold.json"), "--x0", "0.5,0", "--steps", "20", "--json"]);
    round_trips::<CyclesReport>(&["cycles", &data("tent.json"), "--max-period", "5", "--json"]);
    round_trips::<BcbReportDto>(&["bcb", &data("divergent_fold.json"), "--mu-from", "-1", "--mu-to", "1", "--grid", "9", "--json"]);
    round_trips::<VerifyReportDto>(&["verify", &data("divergent_fold.json"), "--trials", "5", "--steps", "50", "--json"]);
}

#[test]
fn outputs_are_deterministic() {
    let runs: Vec<&[&str]> = vec![
        &["bcb", "--mu-from", "-3/2", "--mu-to", "2", "--grid", "64"],
        &["cycles", "--max-period", "7"],
        &["verify", "--trials", "20", "--steps", "200", "--json"],
    ];
    for map in ["counterexample.json", "tent.json", "divergent_fold.json"] {
        for args in &runs {
            let mut full = vec![args[0], ""];
            let path = data(map);
            full[1] = &path;
            full.extend_from_slice(&args[1..]);
            let a = pwlfix(&full);
            let b = pwlfix(&full);
            assert_eq!(a.stdout, b.stdout, "{full:?}");
            assert_eq!(a.status.code(), b.status.code());
        }
    }
}

#[test]
fn bcb_writes_csv() {
    let out = std::env::temp_dir().join(format!("pwlfix-bcb-{}.csv", std::process::id()));
    let o = pwlfix(&[
        "bcb", &data("divergent_fold.json"), "--mu-from", "-1", "--mu-to", "1", "--grid", "3", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("nonsmooth fold: two fixed points for mu<0"));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(
        csv,
        "mu,y_minus_1,y_plus_1,adm_minus,adm_plus,n_fixed_points\n-1,-1/3,1,1,1,2\n0,0,0,1,1,1\n1,1/3,-1,0,0,0\n"
    );
    let _ = std::fs::remove_file(out);
}

#[test]
fn random_then_classify() {
    let o = pwlfix(&["random", "--n", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let map = pwlfix::io::parse_exact_map(&stdout(&o)).unwrap();
    assert_eq!(map, pwlfix::verify::random_map(&pwlfix::verify::GenConfig::new(3, 7)).unwrap());
}

#[test]
fn convert_builds_the_normal_form() {
    let o = pwlfix(&["convert", "--left", &data("left_piece.json"), "--right", &data("right_piece.json")]);
    assert_eq!(o.status.code(), Some(0));
    let map = pwlfix::io::parse_exact_map(&stdout(&o)).unwrap();
    let expected = pwlfix::PwlMap::new(
        pwlfix::fixtures::im(&[&[3, 2], &[5, 4]]),
        pwlfix::fixtures::iv(&[2, 2]),
        pwlfix::fixtures::iv(&[0, 1]),
    )
    .unwrap();
    assert_eq!(map, expected);
}

#[test]
fn epsilon_from_the_environment() {
    let run = |eps: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_pwlfix"));
        cmd.args(["simulate", &data("float_fold.json"), "--x0", "0.5,0", "--steps", "5"]).args(extra);
        match eps {
            Some(e) => cmd.env("PWLFIX_EPSILON", e),
            None => cmd.env_remove("PWLFIX_EPSILON"),
        };
        cmd.output().unwrap()
    };
    assert_eq!(run(Some("1e-6"), &[]).status.code(), Some(0));
    assert_eq!(run(Some("not-a-number"), &[]).status.code(), Some(2));
    assert_eq!(run(Some("-1"), &[]).status.code(), Some(2));
    // The flag wins over the environment.
    assert_eq!(run(Some("not-a-number"), &["--epsilon", "1e-9"]).status.code(), Some(0));
}

#[test]
fn in_process_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = pwlfix::cli::run(["pwlfix", "classify", &data("counterexample.json")], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().starts_with("nondegeneracy fails"));
}
