use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladderrel")).args(args).env_remove("LADDERREL_CACHE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ladderrel-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn rel_at_a_point_and_as_polynomial() {
    let o = run(&["rel", "--family", "k4", "--n", "1", "--p", "1/2", "--rho", "1", "--dest", "s"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3/4");
    let o = run(&["rel", "--family", "k4", "--n", "1"]);
    assert_eq!(stdout(&o).trim(), "(1)*p + (2)*p^2 + (-7)*p^4 + (7)*p^5 + (-2)*p^6");
}

#[test]
fn rel_from_spec_file() {
    use ladderrel::exact::q;
    use ladderrel::graphs::uniform_spec;
    let d = scratch("spec");
    let spec = uniform_spec(ladderrel::graphs::Family::K4Ladder, 1, &q(1, 2), &q(1, 1), Some(ladderrel::graphs::Destination::S)).unwrap();
    let path = d.join("spec.json");
    std::fs::write(&path, spec.to_json()).unwrap();
    let o = run(&["rel", "--spec", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "3/4");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["rel", "--family", "k5", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["rel", "--family", "k4", "--n", "1", "--p", "x"]).status.code(), Some(2));
    assert_eq!(run(&["zeros", "--family", "k4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["critical", "--mode", "bisect", "--structure", "isolated:3", "--bracket", "3/10:1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not monotone"));
}

#[test]
fn series_matches_rel() {
    let o = run(&["series", "--family", "k4", "--n", "3", "--p", "1/2"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "1 3/4");
    let r3 = run(&["rel", "--family", "k4", "--n", "3", "--p", "1/2"]);
    assert_eq!(lines[3], format!("3 {}", stdout(&r3).trim()));
}

#[test]
fn spectral_perfect_network() {
    let o = run(&["spectral", "--p", "1"]);
    let s = stdout(&o);
    assert!(s.contains("lambda_plus=1.0000000000000000000\n"));
    assert!(s.contains("xi=none"));
}

#[test]
fn zeros_are_deterministic_and_cached() {
    let d = scratch("zeros");
    let a = run(&["--threads", "1", "zeros", "--family", "k4", "--n", "6", "--rho", "2/5"]);
    let b = run(&["--threads", "2", "zeros", "--family", "k4", "--n", "6", "--rho", "2/5"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("re,im"));
    assert_eq!(text.lines().count() - 1, 5 * 6 + 1);
    let bin = env!("CARGO_BIN_EXE_ladderrel");
    let cached = |out: &str| {
        Command::new(bin)
            .args(["zeros", "--family", "k4", "--n", "6", "--rho", "2/5", "--out", out])
            .env("LADDERREL_CACHE", d.join("cache"))
            .output()
            .unwrap()
    };
    let o1 = d.join("one.csv");
    let o2 = d.join("two.csv");
    assert!(cached(o1.to_str().unwrap()).status.success());
    assert!(cached(o2.to_str().unwrap()).status.success());
    assert_eq!(std::fs::read(&o1).unwrap(), a.stdout);
    assert_eq!(std::fs::read(&o2).unwrap(), a.stdout);
    let entries: Vec<_> = std::fs::read_dir(d.join("cache")).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let body = std::fs::read_to_string(entries[0].as_ref().unwrap().path()).unwrap();
    assert!(body.contains("\"format_version\":1"));
}

#[test]
fn critical_exact_reports_rho_c1() {
    let o = run(&["critical", "--family", "k4", "--mode", "exact", "--loci", "isolated,opposite"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("rho_c=1.75221381869"));
    assert!(s.contains("p_c=-6.04692601721"));
    assert!(s.contains("(624640)*rho^10"));
    assert!(s.contains("(32)*p^10"));
}

#[test]
fn asym_predict_and_unknown_feature() {
    let o = run(&["asym", "predict", "--feature", "k4-circle", "--rho", "1/10000"]);
    assert!(stdout(&o).contains("exponent=-1/4"));
    assert_eq!(run(&["asym", "predict", "--feature", "nope", "--rho", "1"]).status.code(), Some(2));
}

#[test]
fn oracle_check_small() {
    let o = run(&["oracle-check", "--seed", "7", "--trials", "2", "--graphs", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all passed"));
}

#[test]
fn plot_writes_svg() {
    let d = scratch("plot");
    let csv = d.join("z.csv");
    let svg = d.join("z.svg");
    let z = run(&["zeros", "--family", "k4", "--n", "4", "--out", csv.to_str().unwrap()]);
    assert!(z.status.success());
    let o = run(&["plot", "--input", csv.to_str().unwrap(), "--out", svg.to_str().unwrap(), "--circle", "0,0,1", "--mark", "1,0"]);
    assert!(o.status.success());
    let s = std::fs::read_to_string(svg).unwrap();
    assert!(s.starts_with("<svg"));
    let mut rows: Vec<String> = std::fs::read_to_string(&csv).unwrap().lines().skip(1).map(String::from).collect();
    rows.dedup();
    assert_eq!(s.matches("fill=\"black\"").count(), rows.len());
}
