use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use scarlab::io::read_grid_csv;
use scarlab::quantum::{coherent_state, TorusSpace, COHERENT_TRUNCATION};
use scarlab::wigner::wigner_of_state;

fn scarlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scarlab")).args(args).output().expect("spawn scarlab")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn out_arg(dir: &Path) -> String {
    format!("output={}", dir.display())
}

fn ok(o: &Output) {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn golden_scar_grid() {
    let dir = tempfile::tempdir().unwrap();
    let conf = golden("scar_n31.conf");
    ok(&scarlab(&["scar", "--config", conf.to_str().unwrap(), &out_arg(dir.path())]));
    let got = fs::read(dir.path().join("scar.csv")).unwrap();
    assert!(got == fs::read(golden("scar_n31.csv")).unwrap(), "scar.csv differs from golden");
}

#[test]
fn golden_spectral_grid() {
    let dir = tempfile::tempdir().unwrap();
    let conf = golden("spectral_n7.conf");
    ok(&scarlab(&["spectral", "--config", conf.to_str().unwrap(), &out_arg(dir.path())]));
    let got = fs::read(dir.path().join("spectral.csv")).unwrap();
    assert!(got == fs::read(golden("spectral_n7.csv")).unwrap(), "spectral.csv differs from golden");
}

#[test]
fn runs_are_byte_identical() {
    let conf = golden("scar_n31.conf");
    let mut outs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        for cmd in ["scar", "semiclassical"] {
            ok(&scarlab(&[cmd, "--config", conf.to_str().unwrap(), &out_arg(dir.path()), "emit=csv,pgm"]));
        }
        let files: Vec<Vec<u8>> = ["scar.csv", "scar.pgm", "semiclassical.csv", "semiclassical.pgm"]
            .iter()
            .map(|f| fs::read(dir.path().join(f)).unwrap())
            .collect();
        outs.push(files);
    }
    assert!(outs[0] == outs[1]);
}

#[test]
fn short_window_gives_coherent_state() {
    let dir = tempfile::tempdir().unwrap();
    ok(&scarlab(&["scar", "N=31", "point=6/31 9/31", "phi=0.7", "T=2", &out_arg(dir.path())]));
    let (h, g) = read_grid_csv(&dir.path().join("scar.csv")).unwrap();
    assert_eq!(h.n, 31);
    let s = TorusSpace::new(31).unwrap();
    let c = wigner_of_state(&s, &coherent_state(&s, [6.0 / 31.0, 9.0 / 31.0], 1.0, COHERENT_TRUNCATION).unwrap()).unwrap();
    assert!(g.max_abs_diff(&c) <= 1e-10);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = out_arg(dir.path());
    for args in [
        vec!["classical", "map=1 1 1 1", o.as_str()],
        vec!["scar", "N=30", o.as_str()],
        vec!["scar", "colour=red", o.as_str()],
        vec!["scar", "T", o.as_str()],
        vec!["semiclassical", "N=31", "point=0.123 0.456", "phi=0.3", "T=4", o.as_str()],
        vec!["scar", "--config", "/nonexistent/run.conf"],
        vec!["bogus"],
    ] {
        let out = scarlab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn non_periodic_error_lists_neighbours() {
    let dir = tempfile::tempdir().unwrap();
    let out = scarlab(&["semiclassical", "N=31", "point=0.123 0.456", "phi=0.3", "T=4", &out_arg(dir.path())]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("nearby periodic points"), "{err}");
}

#[test]
fn classical_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = scarlab(&["classical", "l=2", &out_arg(dir.path())]);
    ok(&out);
    let csv = fs::read_to_string(dir.path().join("classical.csv")).unwrap();
    let period2 = csv.lines().filter(|l| l.starts_with("2,")).count();
    assert_eq!(period2, 10);
    assert!(csv.contains("1,1,1/2,1/2,2,1,3/4\n"));
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(report.contains("cayley_1: -1/3 0 0 1"));
}

#[test]
fn compare_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let conf = golden("scar_n31.conf");
    for cmd in ["scar", "semiclassical"] {
        ok(&scarlab(&[cmd, "--config", conf.to_str().unwrap(), &out_arg(dir.path())]));
    }
    let a = dir.path().join("scar.csv");
    let b = dir.path().join("semiclassical.csv");
    let ga = format!("grid_a={}", a.display());
    let gb = format!("grid_b={}", b.display());
    ok(&scarlab(&["compare", "N=31", &ga, &gb, &out_arg(dir.path())]));
    let sec = fs::read_to_string(dir.path().join("section_horizontal.csv")).unwrap();
    assert!(sec.starts_with("coordinate,exact_value,sc_value\n"));
    assert!(fs::read_to_string(dir.path().join("compare_report.txt")).unwrap().contains("pearson: "));

    let same = format!("grid_b={}", a.display());
    ok(&scarlab(&["compare", "N=31", &ga, &same, &out_arg(dir.path())]));
    let rep = fs::read_to_string(dir.path().join("compare_report.txt")).unwrap();
    assert!(rep.contains("pearson: 1.0000000000000000e0"), "{rep}");
    assert!(rep.contains("rms_error_after_fit: 0.0000000000000000e0"), "{rep}");
}

#[test]
fn compare_mismatched_grids_fails() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&scarlab(&["scar", "N=31", "T=4", &out_arg(d)]));
    fs::rename(d.join("scar.csv"), d.join("a.csv")).unwrap();
    ok(&scarlab(&["scar", "N=29", "T=4", &out_arg(d)]));
    let out = scarlab(&[
        "compare",
        &format!("grid_a={}", d.join("a.csv").display()),
        &format!("grid_b={}", d.join("scar.csv").display()),
        &out_arg(d),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tiny_tau_spectral_grid_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    ok(&scarlab(&["spectral", "N=31", "T=4", "tau=0.02", &out_arg(dir.path())]));
    let (_, g) = read_grid_csv(&dir.path().join("spectral.csv")).unwrap();
    let s = g.side();
    for a in (0..s).step_by(2) {
        for b in (0..s).step_by(2) {
            assert!((g.get(a, b) - 1.0).abs() < 1e-12);
        }
    }
}
