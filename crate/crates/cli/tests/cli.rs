use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run_with(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ktorus"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("KTORUS_THREADS", t),
        None => cmd.env_remove("KTORUS_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with(args, None)
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_isely_passes() {
    let out = run(&["verify-isely"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let identities: Vec<&str> =
        v["rieffel"]["checks"].as_array().unwrap().iter().map(|c| c["identity"].as_str().unwrap()).collect();
    for want in ["X1^2=0", "X1=X0X1+X1X0", "X0=X0^2+X1*X1+X1X1*"] {
        assert!(identities.contains(&want), "{want}");
    }
    assert!(v["projection"]["checks"].as_array().unwrap().iter().all(|c| c["residual"] == "0"));
}

#[test]
fn integer_results() {
    let cases: [(&[&str], &str, i64); 8] = [
        (&["winding", "s1", "--grid", "64"], "/winding", 1),
        (&["boundary", "isely"], "/boundary/boundary", 1),
        (&["boundary", "loring"], "/boundary/boundary", 1),
        (&["boundary", "trivial"], "/boundary/boundary", 0),
        (&["chern", "isely"], "/chern/chern", 1),
        (&["chern", "loring"], "/chern/chern", 1),
        (&["chern", "isely-complement", "--grid", "64"], "/chern/chern", -1),
        (&["k3", "--grid", "64", "--odd-grid", "0"], "/k3/u_i_invariant", 1),
    ];
    for (args, pointer, want) in cases {
        let out = run(args);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(json(&out).pointer(pointer).and_then(|v| v.as_i64()), Some(want), "{args:?}");
    }
}

#[test]
fn json_inputs() {
    let out = run(&["boundary", &data("isely_data.json")]);
    assert_eq!(json(&out)["boundary"]["boundary"], 1);
    let out = run(&["boundary", &data("trivial_pair.json")]);
    assert_eq!(json(&out)["boundary"]["boundary"], 0);
    let out = run(&["chern", &data("bott_field.json"), "--grid", "64"]);
    assert_eq!(json(&out)["chern"]["chern"], 1);
    assert_eq!(code(&run(&["verify-rieffel", &data("trivial_pair.json")])), 0);
    assert_eq!(code(&run(&["prop-main1", &data("isely_data.json")])), 0);
    assert_eq!(code(&run(&["funcalc", &data("diag_unitaries.json")])), 0);
}

#[test]
fn failed_verification_exits_one() {
    let out = run(&["prop-main1", &data("broken_data.json")]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let failed: Vec<&str> = v["scalar_conditions"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["holds"] == false)
        .map(|c| c["identity"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["a=a^2+|b|^2+2|alpha|^2+|beta|^2+|gamma|^2"]);
    assert_eq!(code(&run(&["winding", "r1"])), 1);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["winding", "s1 +", "--grid", "64"],
        vec!["winding", "s0"],
        vec!["winding", "s1*s2"],
        vec!["winding", "s1", "--grid", "4"],
        vec!["boundary", "missing.json"],
        vec!["fourier", "--N", "4", "--alpha", "0.5"],
        vec!["c1gap", "--N", "0"],
        vec!["nonsense"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}");
    }
    let noncommuting = data("noncommuting.json");
    let out = run(&["funcalc", &noncommuting]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("do not commute"));
    assert_eq!(code(&run_with(&["verify-isely"], Some("zero"))), 2);
}

#[test]
fn byte_identical_across_runs_and_threads() {
    for args in [
        vec!["boundary", "isely"],
        vec!["chern", "loring"],
        vec!["k3", "--grid", "32", "--odd-grid", "8"],
        vec!["fourier", "--N", "50", "--alpha", "1.5"],
    ] {
        let a = run_with(&args, Some("1")).stdout;
        let b = run_with(&args, Some("4")).stdout;
        let c = run(&args).stdout;
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a, c, "{args:?}");
    }
}

#[test]
fn csv_dumps() {
    let cases: [(&[&str], &str, &str); 5] = [
        (&["chern", "isely", "--grid", "16"], "chern.csv", "# theta,phi,re_11,im_11,re_12,im_12,re_21,im_21,re_22,im_22"),
        (&["winding", "s1", "--grid", "16"], "winding.csv", "# theta,re,im"),
        (&["boundary", "isely", "--grid", "16"], "boundary.csv", "# theta,f,re_u,im_u,l_re_11,l_im_11,l_re_12,l_im_12,l_re_21,l_im_21,l_re_22,l_im_22"),
        (&["fourier", "--N", "3"], "fourier.csv", "# k,re,im"),
        (&["k3", "--grid", "16", "--odd-grid", "0", "--field-grid", "8"], "k3.csv", "# theta,phi,psi,re_11,im_11,re_12,im_12,re_21,im_21,re_22,im_22"),
    ];
    for (args, file, header) in cases {
        let path = scratch(file);
        let mut full: Vec<&str> = args.to_vec();
        let p = path.display().to_string();
        full.extend(["--csv", &p]);
        assert_eq!(code(&run(&full)), 0, "{args:?}");
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().next(), Some(header));
    }
    let text = fs::read_to_string(scratch("chern.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 16 * 16);
}

/// Set `UPDATE_GOLDENS=1` to rewrite the files under `tests/golden`.
#[test]
fn goldens() {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let diag = data("diag_unitaries.json");
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("verify_isely", vec!["verify-isely"]),
        ("winding_s1", vec!["winding", "s1", "--grid", "64"]),
        ("boundary_isely", vec!["boundary", "isely"]),
        ("chern_loring_64", vec!["chern", "loring", "--grid", "64"]),
        ("k3_32", vec!["k3", "--grid", "32", "--odd-grid", "8"]),
        ("fourier_10", vec!["fourier", "--N", "10", "--alpha", "2"]),
        ("c1gap_16", vec!["c1gap", "--N", "16", "--grid", "4096"]),
        ("funcalc_diag", vec!["funcalc", diag.as_str()]),
    ];
    let update = std::env::var_os("UPDATE_GOLDENS").is_some();
    for (name, args) in cases {
        let out = run(&args);
        assert_eq!(code(&out), 0, "{args:?}");
        let path = golden_dir.join(format!("{name}.json"));
        if update {
            fs::create_dir_all(&golden_dir).unwrap();
            fs::write(&path, &out.stdout).unwrap();
        } else {
            let want = fs::read(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
            assert!(want == out.stdout, "{name} differs from its golden");
        }
    }
}
