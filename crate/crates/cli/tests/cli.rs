use std::path::PathBuf;
use std::process::{Command, Output};

fn pawit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pawit"))
        .args(args)
        .env_remove("PAWIT_THREADS")
        .output()
        .expect("spawn pawit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pawit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const CERT_1_1: &str = r#"{
  "n": 1,
  "k": 1,
  "primorial": "2",
  "witnesses": [
    {
      "i": 1,
      "m": 2,
      "value": "3",
      "regime": "deterministic"
    }
  ],
  "verdicts": [
    {
      "schema": "alpha",
      "i": 1,
      "p": null,
      "verdict": "True"
    },
    {
      "schema": "beta",
      "i": 1,
      "p": null,
      "verdict": "True"
    },
    {
      "schema": "gamma",
      "i": 1,
      "p": 2,
      "verdict": "True"
    },
    {
      "schema": "omega",
      "i": 1,
      "p": 2,
      "verdict": "True"
    }
  ],
  "tool_version": "pawit 0.1.0"
}
"#;

#[test]
fn witness_golden() {
    let o = pawit(&["witness", "--n", "1", "--k", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), CERT_1_1);
}

#[test]
fn witness_values_and_usage() {
    let o = pawit(&["witness", "--n", "2", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let cert: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["witnesses"][0]["value"], "29");
    assert_eq!(cert["witnesses"][1]["value"], "59");

    assert_eq!(code(&pawit(&["witness", "--n", "0", "--k", "1"])), 64);
    assert_eq!(code(&pawit(&["witness", "--n", "1"])), 64);
    assert_eq!(code(&pawit(&["witness", "--n", "x", "--k", "1"])), 64);
    assert_eq!(code(&pawit(&["frobnicate"])), 64);
    assert_eq!(code(&pawit(&["--help"])), 0);
}

#[test]
fn witness_exhaustion_exits_2() {
    // m <= 5 gives 1, 3, 5, 7, 9: only three primes
    let o = pawit(&["witness", "--n", "5", "--k", "1", "--max-m", "5"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_round_trip_and_tampering() {
    let good = temp("good.json");
    let o = pawit(&["witness", "--n", "2", "--k", "3", "--out", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = pawit(&["verify", good.to_str().unwrap()]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).starts_with("ACCEPTED"));

    let text = std::fs::read_to_string(&good).unwrap();
    let bad = temp("bad.json");
    std::fs::write(&bad, text.replace("\"59\"", "\"60\"")).unwrap();
    let v = pawit(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&v), 1);
    let out = stdout(&v);
    assert!(out.contains("FAIL primality[c2]"), "{out}");
    assert!(out.contains("FAIL gamma:2:2"), "{out}");
    assert!(out.contains("FAIL omega:2:2"), "{out}");
    assert!(out.trim_end().ends_with(')') && out.contains("REJECTED"));

    let truncated = temp("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&pawit(&["verify", truncated.to_str().unwrap()])), 65);
    assert_eq!(code(&pawit(&["verify", "/nonexistent/cert.json"])), 65);

    // well-formed JSON with an inconsistent shape is a data error too
    let shape = temp("shape.json");
    std::fs::write(&shape, text.replace("\"n\": 2", "\"n\": 3")).unwrap();
    assert_eq!(code(&pawit(&["verify", shape.to_str().unwrap()])), 65);
}

#[test]
fn eval_examples() {
    let run = |args: &[&str]| {
        let o = pawit(args);
        (code(&o), stdout(&o))
    };
    assert_eq!(
        run(&["eval", "exists x c1 = x * S(S(0)) + S(0)", "--assign", "c1=29"]),
        (0, "True\n".into())
    );
    assert_eq!(
        run(&[
            "eval",
            "forall z ~(c1 + S(S(0)) = z * S(S(S(0))))",
            "--assign",
            "c1=13",
            "--schema",
            "gamma:1:3"
        ]),
        (0, "False\n".into())
    );
    assert_eq!(run(&["eval", "0 = S(0)"]), (0, "False\n".into()));
    assert_eq!(run(&["eval", "forall x x = x", "--bound", "7"]), (0, "UnknownUpTo(7)\n".into()));
    assert_eq!(
        run(&["eval", &run(&["schema", "sigma:5"]).1, "--schema", "sigma:5", "--bound", "500"]),
        (0, "UnknownUpTo(500)\n".into())
    );

    assert_eq!(run(&["eval", "0 = "]).0, 65);
    assert_eq!(run(&["eval", "x = 0"]).0, 65);
    assert_eq!(run(&["eval", "c2 = 0", "--assign", "c1=4"]).0, 64);
    assert_eq!(run(&["eval", "c1 = 0", "--assign", "c1=four"]).0, 64);
    assert_eq!(run(&["eval", "c1 = 0", "--assign", "c2=4"]).0, 64);
    assert_eq!(run(&["eval", "c1 = 0", "--assign", "c1=0", "--schema", "beta:1"]).0, 64);
    assert_eq!(run(&["eval", "c1 = 0", "--schema", "beta:x"]).0, 64);
}

#[test]
fn schema_printing() {
    let run = |args: &[&str]| {
        let o = pawit(args);
        (code(&o), stdout(&o))
    };
    assert_eq!(run(&["schema", "alpha:1"]), (0, "c1 >= S(S(0))\n".into()));
    assert_eq!(run(&["schema", "alpha:3"]), (0, "c3 > c2\n".into()));
    assert_eq!(
        run(&["schema", "beta:2"]),
        (0, "forall x forall y (x * y = c2 -> (x = c2 \\/ y = c2))\n".into())
    );
    assert_eq!(
        run(&["schema", "gamma:1:5", "--cap", "2"]),
        (0, "forall z ~(c1 + S(S(0)) = z * S^5(0))\n".into())
    );
    assert_eq!(run(&["schema", "gamma:1:4"]).0, 64);
    assert_eq!(run(&["schema", "alpha:0"]).0, 64);
    assert_eq!(run(&["schema", "omega"]).0, 64);
}

#[test]
fn cover_reports() {
    let o = pawit(&[
        "cover",
        r#"[{"kind":"gamma","i":1,"p":2},{"kind":"gamma","i":1,"p":3},{"kind":"beta","i":1},{"kind":"alpha","i":1}]"#,
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("cover n=1 k=2\nc1 = 5 (m=1, deterministic)\n"), "{out}");
    assert!(out.contains("beta:1 True"));
    assert!(out.contains("assumption: Peano axioms are not checked"));

    let path = temp("tags.json");
    std::fs::write(&path, r#"[{"kind":"alpha","i":2},{"kind":"beta","i":2}]"#).unwrap();
    let o = pawit(&["cover", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((report["n"].as_u64(), report["k"].as_u64()), (Some(2), Some(1)));
    assert_eq!(report["witnesses"][1]["value"], "5");

    let o = pawit(&["cover", "--sentence", "forall z ~(c3 + S(S(0)) = z * S^5(0))"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("cover n=3 k=3\n"));

    assert_eq!(code(&pawit(&["cover", r#"[{"kind":"omega","i":1,"p":3}]"#])), 64);
    assert_eq!(code(&pawit(&["cover", r#"[{"kind":"omega","i":1,"p":3}]"#, "--allow-omega"])), 0);
    assert_eq!(code(&pawit(&["cover", r#"[{"kind":"sigma","p":3}]"#])), 64);
    assert_eq!(code(&pawit(&["cover", r#"[{"kind":"gamma","i":1,"p":9}]"#])), 64);
    assert_eq!(code(&pawit(&["cover", "[]"])), 64);
    assert_eq!(code(&pawit(&["cover", "[{"])), 65);
    assert_eq!(code(&pawit(&["cover", "--sentence", "0 = 0"])), 64);
    assert_eq!(code(&pawit(&["cover", r#"[{"kind":"beta","i":3}]"#, "--max-m", "3"])), 2);
}

#[test]
fn stats_outputs() {
    let o = pawit(&["stats", "--k", "1", "--x", "100"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "k                     1\n\
         x                     100\n\
         pi_x                  25\n\
         omega_class_count     24\n\
         gamma_class_count     24\n\
         totient               1\n\
         dirichlet_expectation 25.00\n"
    );
    let o = pawit(&["stats", "--k", "3", "--x", "1000000", "--json"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["dirichlet_expectation"], "9812.25");
    assert_eq!(r["totient"], "8");
    assert_eq!(r["pi_x"], 78498);
    assert_eq!(code(&pawit(&["stats", "--k", "0", "--x", "100"])), 64);
    assert_eq!(code(&pawit(&["stats", "--k", "1", "--x", "1"])), 64);
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_pawit"))
        .args(["witness", "--n", "1", "--k", "1"])
        .env("PAWIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 64);
}
