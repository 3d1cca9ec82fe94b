use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(rel)
}

fn galcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = galcoh(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&run_ok(&a)).unwrap();
    assert_eq!(v["schema"], "galcoh/1");
    v
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&p, body).unwrap();
    p
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pic_text() {
    assert_eq!(run_ok(&["pic", path(&corpus("specs/pgl2.json"))]), "Pic(G) = Z/2\n");
    assert_eq!(
        run_ok(&["pic", path(&corpus("specs/d4_adjoint.json"))]),
        "Pic(G) = Z/2 x Z/2\n"
    );
}

#[test]
fn pic_json() {
    let v = json(&["pic", path(&corpus("specs/sl3.json"))]);
    assert_eq!(v["pic"]["invariant_factors"], serde_json::json!([]));
    assert_eq!(v["pic"]["free_rank"], 0);
    let v = json(&["pic", path(&corpus("specs/pgl3.json"))]);
    assert_eq!(v["pic"]["invariant_factors"], serde_json::json!(["3"]));
    assert_eq!(v["dual"], v["pic"]);
    assert_eq!(v["pi1"]["group"], v["pic"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn random_les() {
    let args = [
        "verify-les",
        "--random",
        "--seed",
        "7",
        "--cases",
        "100",
        "--group",
        "cyclic4",
    ];
    assert_eq!(run_ok(&args), "100/100 exact\n");
}

#[test]
fn les_from_file() {
    let out = run_ok(&["verify-les", path(&corpus("complexes/sign_to_regular_c2.json"))]);
    assert!(out.ends_with("9/9 exact\n"), "{out}");
}

#[test]
fn other_commands() {
    assert_eq!(
        run_ok(&["cohomology", path(&corpus("cohomology/sign_c2.json"))]),
        "H^1 = Z/2\n"
    );
    assert_eq!(
        run_ok(&["cohomology", path(&corpus("cohomology/sign_c2.json")), "--degree", "2"]),
        "H^2 = 0\n"
    );
    assert_eq!(
        run_ok(&["hyper", path(&corpus("complexes/times2.json"))]),
        "HH^1 = Z/2\n"
    );
    assert_eq!(run_ok(&["pi1", path(&corpus("specs/gl3.json"))]), "pi1(G) = Z\n");
    assert_eq!(
        run_ok(&["dual", path(&corpus("specs/d5_adjoint.json"))]),
        "dual = Z/4\n"
    );
    let g = scratch("group.json", r#"{"invariant_factors": ["2", "4"], "free_rank": 0}"#);
    assert_eq!(run_ok(&["dual", path(&g)]), "dual = Z/2 x Z/4\n");
    let out = run_ok(&["cross-check", path(&corpus("resolutions/norm_one_torus.json"))]);
    assert!(out.ends_with("agree\n"), "{out}");
}

#[test]
fn corpus_round_trips() {
    for dir in ["specs", "resolutions", "cohomology", "complexes"] {
        for entry in fs::read_dir(corpus(dir)).unwrap() {
            let p = entry.unwrap().path();
            let cmd = match dir {
                "specs" => "pic",
                "resolutions" => "cross-check",
                "cohomology" => "cohomology",
                _ => "hyper",
            };
            let v = json(&[cmd, path(&p)]);
            // re-serialized output parses back to the same document
            let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
            assert_eq!(v, again);
            if dir == "resolutions" {
                assert_eq!(v["agree"], true, "{}", p.display());
            }
        }
    }
}

#[test]
fn deterministic_output() {
    let args = [
        "verify-les",
        "--random",
        "--seed",
        "3",
        "--cases",
        "10",
        "--group",
        "s3",
        "--format",
        "json",
    ];
    assert_eq!(galcoh(&args).stdout, galcoh(&args).stdout);
    let spec = corpus("specs/pu3_quasi_split.json");
    let args = ["pic", path(&spec), "--format", "json"];
    assert_eq!(galcoh(&args).stdout, galcoh(&args).stdout);
}

#[test]
fn malformed_input_exits_2() {
    let cases = [
        ("syntax.json", "{"),
        (
            "unknown.json",
            r#"{"kind": "root_datum", "type": "A", "rank": 2, "colour": "red"}"#,
        ),
        ("cartan.json", r#"{"kind": "root_datum", "type": "D", "rank": 2}"#),
        (
            "ragged.json",
            r#"{"kind": "torus", "galois": {"kind": "cyclic", "order": 2}, "lattice": {"rank": 2, "generator_action": [[["1"]]]}}"#,
        ),
    ];
    for (name, body) in cases {
        let out = galcoh(&["pic", path(&scratch(name, body))]);
        assert_eq!(code(&out), 2, "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(err.lines().count(), 1, "{err}");
    }
    assert_eq!(code(&galcoh(&["pic", "/no/such/file.json"])), 2);
    assert_eq!(code(&galcoh(&["pic"])), 2);
    assert_eq!(code(&galcoh(&["verify-les", "--random", "--group", "a5"])), 2);
}

#[test]
fn computation_failures_exit_1() {
    let out = galcoh(&["pic", path(&corpus("specs/pgl2.json")), "--cap-dim", "1"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = galcoh(&["cohomology", path(&corpus("cohomology/sign_c2.json")), "--degree", "9"]);
    assert_eq!(code(&out), 1);
    let out = galcoh(&["pic", path(&corpus("specs/induced_s3.json")), "--cap-group", "4"]);
    assert_eq!(code(&out), 1);

    let not_equivariant = scratch(
        "bad_map.json",
        r#"{"galois": {"kind": "cyclic", "order": 2},
            "A": {"rank": 1, "generator_action": [[["-1"]]]},
            "B": {"rank": 1},
            "map": [["1"]]}"#,
    );
    assert_eq!(code(&galcoh(&["hyper", path(&not_equivariant)])), 1);

    let not_flasque = scratch(
        "bad_resolution.json",
        r#"{"spec": {"kind": "root_datum", "type": "A", "rank": 1, "isogeny": "adjoint"},
            "resolution": {"galois": {"kind": "cyclic", "order": 2},
                           "P_star": {"rank": 1},
                           "S_star": {"rank": 1, "generator_action": [[["-1"]]]},
                           "map": [["0"]]}}"#,
    );
    assert_eq!(code(&galcoh(&["cross-check", path(&not_flasque)])), 1);
}
