use std::fs;
use std::process::{Command, Output};

use trotter_depth::bounds::bound_closed;
use trotter_depth::golden::{fixture_file_name, fixture_text};
use trotter_depth::models::{build, Accounting};
use trotter_depth::report::{bound_record, bounds_csv, decomposition_report, to_json};
use trotter_depth::spectra::{chain_spectrum, SectorFilter};
use trotter_depth::{BoundResult, Boundary, LatticeSpec, Model, ModelParams, SimParams};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trotter-depth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(k).unwrap().to_string()).collect()
}

#[test]
fn tj_interior_site_has_64_terms() {
    let o = run(&["decompose", "--model", "t-j", "--nx", "6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = stdout(&o);
    let rows = column(&csv, "site_row");
    let cols = column(&csv, "site_col");
    let interior = rows.iter().zip(&cols).filter(|(r, c)| *r == "2" && *c == "3").count();
    assert_eq!(interior, 64);
}

#[test]
fn chain_hubbard_weight_at_most_three() {
    let o = run(&["decompose", "--dim", "1", "--nx", "6"]);
    assert_eq!(code(&o), 0);
    let weights: Vec<usize> = column(&stdout(&o), "pauli")
        .iter()
        .map(|p| p.chars().filter(|&c| c != 'I').count())
        .collect();
    assert_eq!(weights.iter().max(), Some(&3));
}

#[test]
fn decompose_matches_library_bytes() {
    let l = LatticeSpec::rect(3, 2, Boundary::Periodic).unwrap();
    let report = decomposition_report(Model::Hubbard, &l, Accounting::Literal, &build(Model::Hubbard, &l).unwrap());
    let csv = run(&["decompose", "--nx", "3", "--ny", "2", "--boundary", "pbc"]);
    assert_eq!(stdout(&csv), report.to_csv().unwrap());
    let json = run(&["decompose", "--nx", "3", "--ny", "2", "--boundary", "pbc", "--format", "json"]);
    assert_eq!(stdout(&json), to_json(&report).unwrap());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["decompose", "--model", "ising"])), 2);
    assert_eq!(code(&run(&["decompose", "--nx", "0"])), 2);
    assert_eq!(code(&run(&["bound", "--method", "fastest"])), 2);
    assert_eq!(code(&run(&["sweep", "--vary", "t", "--from", "1", "--to", "2", "--steps", "0"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn worked_example_values() {
    let common = ["bound", "--nx", "6", "--t", "0.1", "--u", "10", "--tau", "1", "--epsilon", "0.0004"];
    let h = run(&common);
    let r: f64 = column(&stdout(&h), "r")[0].parse().unwrap();
    assert!((r / 1.3381e6 - 1.0).abs() < 1e-3, "{r}");
    let mut tj = common.to_vec();
    tj.extend(["--model", "t-j", "--derive-j"]);
    let r: f64 = column(&stdout(&run(&tj)), "r")[0].parse().unwrap();
    assert!((r / 4.1547e4 - 1.0).abs() < 1e-3, "{r}");
}

#[test]
fn bound_matches_library_bytes() {
    let l = LatticeSpec::square(6, Boundary::Open).unwrap();
    let b: BoundResult = bound_closed(Model::Hubbard, &l, SimParams::new(1.0, 0.0004).unwrap()).unwrap();
    let rec = bound_record(&b, &ModelParams::new(0.1, 10.0, 1.0));
    let o = run(&["bound", "--nx", "6", "--t", "0.1", "--u", "10", "--epsilon", "0.0004"]);
    assert_eq!(stdout(&o), bounds_csv(&[rec]).unwrap());
}

#[test]
fn all_methods_agree_on_3x3() {
    for model in ["hubbard", "t-j"] {
        let o = run(&["bound", "--model", model, "--nx", "3", "--method", "all"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let methods = column(&stdout(&o), "method");
        assert_eq!(methods.len(), 5);
        let polys = column(&stdout(&o), "polynomial");
        assert!(polys[..4].iter().all(|p| *p == polys[0]), "{polys:?}");
    }
}

#[test]
fn disagreeing_methods_exit_1() {
    let o = run(&["bound", "--nx", "3", "--method", "all", "--accounting", "literal"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("disagree"));
}

#[test]
fn four_curve_sweep() {
    let o = run(&[
        "sweep", "--vary", "t", "--from", "0", "--to", "2", "--steps", "5", "--u", "1", "--sites", "36",
        "--curves", "1d-obc,1d-pbc,2d-obc,2d-pbc",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = stdout(&o);
    assert_eq!(csv.lines().next().unwrap(), "t,hubbard-1d-obc,hubbard-1d-pbc,hubbard-2d-obc,hubbard-2d-pbc");
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn sweep_against_u_over_t_for_both_models() {
    let o = run(&[
        "sweep", "--models", "hubbard,t-j", "--vary", "U/t", "--values", "1,10,100", "--t", "0.1", "--derive-j",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = stdout(&o);
    assert_eq!(csv.lines().next().unwrap(), "U/t,hubbard-2d-obc,t-j-2d-obc");
    let tj: Vec<f64> = column(&csv, "t-j-2d-obc").iter().map(|v| v.parse().unwrap()).collect();
    assert!(tj[0] > tj[1] && tj[1] > tj[2]);
}

#[test]
fn spectrum_matches_library() {
    let p = ModelParams::new(1.0, 4.0, 1.0);
    let levels = chain_spectrum(Model::Hubbard, 3, &p, SectorFilter::particles(2)).unwrap();
    let o = run(&["spectrum", "--nx", "3", "--u", "4", "--particles", "2", "--format", "json"]);
    assert_eq!(stdout(&o), to_json(&levels).unwrap());
}

#[test]
fn overlap_table() {
    let o = run(&["spectrum", "--overlap", "--t", "0.1", "--u", "10"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    assert!(csv.starts_with("index,hubbard,tj\n"));
    assert_eq!(csv.lines().count(), 17);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bound.json");
    let o = run(&["bound", "--nx", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"method\": \"closed\""), "{text}");
}

#[test]
fn quick_verify_with_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    for model in Model::ALL {
        fs::write(dir.path().join(fixture_file_name(model)), fixture_text(model)).unwrap();
    }
    let path = dir.path().join(fixture_file_name(Model::Hubbard));
    fs::write(&path, fixture_text(Model::Hubbard).replace("U/4 | Z[0,0] Z[0,1]", "U/8 | Z[0,0] Z[0,1]")).unwrap();
    let fixtures = dir.path().to_str().unwrap();
    let o = run(&["verify", "--quick", "--only", "golden-hubbard,golden-tj", "--fixtures", fixtures]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("FAIL golden-hubbard"), "{out}");
    assert!(out.contains("PASS golden-tj"), "{out}");
}

#[test]
fn verify_subset_passes() {
    let o = run(&["verify", "--only", "worked-example,car"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);
    assert_eq!(code(&run(&["verify", "--only", "nonsense"])), 2);
}
