use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ramify");

fn ramify(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("RAMIFY_COLOR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn spec_file(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn documented_examples() {
    let o = ramify(&["unramified", "--ext", "Qi", "--ideal", "(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(2): ramified, e=2"), "{}", stdout(&o));

    let o = ramify(&["disc", "--ext", "Qt-sqrt-t"]);
    assert_eq!(stdout(&o), "4*t1\n");

    let o = ramify(&["audit-thm41", "--n", "1", "--degx", "2", "--tdeg", "2", "--height", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["survivors"], serde_json::json!([]));
    assert_eq!(v["enumerated"], 117649);
    assert!(v["runtime_ms"].is_null());
}

#[test]
fn subcommand_outputs() {
    let o = ramify(&["factor-ideal", "--ext", "Qi", "--ideal", "(5)"]);
    assert!(stdout(&o).starts_with("X^2 + 1 mod (5) = (X + 2) * (X + 3)"), "{}", stdout(&o));
    let o = ramify(&["factor-ideal", "--ext", "Qt-sqrt-t", "--ideal", "(3; t1 - 2)", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["e_list"], serde_json::json!([1]));
    assert_eq!(v["f_list"], serde_json::json!([2]));

    let o = ramify(&["dedekind", "--ext", "Q-sqrt5", "--p", "2"]);
    assert_eq!(stdout(&o), "not 2-maximal, witness X + 1\n");
    let o = ramify(&["dedekind", "--ext", "Q-disc-23", "--p", "23", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["maximal"], true);

    let o = ramify(&["relative", "--tower", "hcf"]);
    assert!(stdout(&o).contains("global: unramified everywhere"), "{}", stdout(&o));
    let o = ramify(&["relative", "--tower", "Qi"]);
    assert!(stdout(&o).contains("(2): ramified, e=2"), "{}", stdout(&o));
    let o = ramify(&["relative", "--base", "K5(sqrt2)", "--tower", "hcf", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["global"].as_str().unwrap().starts_with("unramified everywhere"), "{v}");

    let o = ramify(&["composite", "--ext", "Qi", "--ext", "Q-sqrt5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["f"], "X^4 - 8*X^2 + 36");
    assert_eq!(v["linearly_disjoint"], true);

    let o = ramify(&["lemmas", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["violations"], 0);

    let o = ramify(&["pi1-report", "--n", "0", "--degx", "2", "--tdeg", "1", "--height", "2"]);
    assert!(stdout(&o).contains("[conclusion] pi1_et(Spec Z) = Gal(Q/Q) = {0}"), "{}", stdout(&o));
}

#[test]
fn exit_code_matrix() {
    let bad_syntax = spec_file("bad_syntax.spec", "extension { n = 0; f = \"X^2 + 1\" label = \"Qi\" }\n");
    let undeclared = spec_file(
        "undeclared.spec",
        "extension { n = 0; f = \"X^2 + 5\"; label = \"K5\" }\ntower { label = \"T\"; lower = \"K9\"; upper = \"K5\"; e = \"X\" }\n",
    );
    let failing = spec_file(
        "failing.spec",
        "extension { n = 0; f = \"X^2\"; label = \"nil\" }\nextension { n = 0; f = \"X^2 + 1\"; label = \"Qi\" }\nharness { composite = [\"nil\", \"Qi\"] }\n",
    );
    let empty = spec_file("empty.spec", "# nothing\n");
    let (bad_syntax, undeclared, failing, empty) = (
        bad_syntax.to_str().unwrap(),
        undeclared.to_str().unwrap(),
        failing.to_str().unwrap(),
        empty.to_str().unwrap(),
    );
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["disc", "--ext", "Qi"], 0),
        (vec!["unramified", "--ext", "Qt-sqrt-t", "--ideal", "(5; t1 - 2)"], 0),
        (vec!["audit-thm41", "--n", "0", "--degx", "2", "--tdeg", "1", "--height", "2"], 0),
        (vec!["--help"], 0),
        (vec![], 1),
        (vec!["frobnicate"], 1),
        (vec!["disc"], 1),
        (vec!["disc", "--ext", "Qi", "--bogus"], 1),
        (vec!["disc", "--ext", "K9"], 1),
        (vec!["unramified", "--ext", "Qi", "--ideal", "(4)"], 1),
        (vec!["unramified", "--ext", "Qi", "--ideal", "(5; t1)"], 1),
        (vec!["factor-ideal", "--ext", "Qt-sqrt-t", "--ideal", "(5; t1^2 + 1)"], 1),
        (vec!["dedekind", "--ext", "Qt-sqrt-t", "--p", "2"], 1),
        (vec!["composite", "--ext", "Qi"], 1),
        (vec!["audit-thm41", "--n", "1", "--degx", "2", "--tdeg", "9", "--height", "9"], 1),
        (vec!["audit-thm41", "--n", "1", "--degx", "0", "--tdeg", "1", "--height", "1"], 1),
        (vec!["audit-thm41", "--n", "x", "--degx", "2", "--tdeg", "1", "--height", "1"], 1),
        (vec!["--spec", "/nonexistent/file.spec", "disc", "--ext", "Qi"], 1),
        (vec!["--spec", bad_syntax, "disc", "--ext", "Qi"], 1),
        (vec!["--spec", undeclared, "disc", "--ext", "K5"], 1),
        (vec!["--spec", empty, "lemmas"], 1),
        (vec!["--spec", failing, "lemmas"], 2),
    ];
    for (args, code) in cases {
        let o = ramify(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
        if code == 1 {
            assert!(!stderr(&o).is_empty(), "{args:?} printed no diagnostic");
            assert!(o.stdout.is_empty(), "{args:?} wrote to stdout");
        }
    }
}

#[test]
fn spec_errors_are_located() {
    let bad = spec_file("located.spec", "extension { n = 0; f = \"X^2 + 1\"; label = \"Qi\" }\n\nextension { n = 0 f }\n");
    let o = ramify(&["--spec", bad.to_str().unwrap(), "disc", "--ext", "Qi"]);
    assert!(stderr(&o).contains("line 3, column 19"), "{}", stderr(&o));
    let undeclared = spec_file(
        "k9.spec",
        "extension { n = 0; f = \"X^2 + 5\"; label = \"K5\" }\ntower { label = \"T\"; lower = \"K9\"; upper = \"K5\"; e = \"X\" }\n",
    );
    let o = ramify(&["--spec", undeclared.to_str().unwrap(), "disc", "--ext", "K5"]);
    assert!(stderr(&o).contains("'K9'"), "{}", stderr(&o));
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["factor-ideal", "--ext", "Q-zeta8", "--ideal", "(17)", "--json", "--seed", "3"],
        vec!["relative", "--tower", "K30(sqrt-3)", "--json", "--seed", "3"],
        vec!["audit-thm41", "--n", "1", "--degx", "2", "--tdeg", "1", "--height", "2", "--workers", "4", "--json"],
    ] {
        let a = ramify(&args);
        let b = ramify(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0));
    }
    // Seeds drive only the randomized splitting, never the answer.
    let s1 = ramify(&["factor-ideal", "--ext", "Q-zeta8", "--ideal", "(17)", "--json", "--seed", "1"]);
    let s2 = ramify(&["factor-ideal", "--ext", "Q-zeta8", "--ideal", "(17)", "--json", "--seed", "99"]);
    assert_eq!(s1.stdout, s2.stdout);
    // Worker count does not change the audit report.
    let w1 = ramify(&["audit-thm41", "--n", "1", "--degx", "2", "--tdeg", "1", "--height", "2", "--json"]);
    let w4 = ramify(&["audit-thm41", "--n", "1", "--degx", "2", "--tdeg", "1", "--height", "2", "--json", "--workers", "4"]);
    assert_eq!(w1.stdout, w4.stdout);
}

#[test]
fn color_only_on_request() {
    let plain = ramify(&["unramified", "--ext", "Qi"]);
    assert!(!stdout(&plain).contains('\x1b'));
    let colored = Command::new(BIN).args(["unramified", "--ext", "Qi"]).env("RAMIFY_COLOR", "always").output().unwrap();
    assert!(stdout(&colored).contains("\x1b[31mramified\x1b[0m"));
    let json = Command::new(BIN)
        .args(["unramified", "--ext", "Qi", "--json"])
        .env("RAMIFY_COLOR", "always")
        .output()
        .unwrap();
    assert!(!stdout(&json).contains('\x1b'));
}
