use std::process::{Command, Output};

use degspivey::{Poly, SeqTable, Series, VerifyReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degspivey"))
        .args(args)
        .env_remove(degspivey::cli::WIDTH_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stirling_triangle_table() {
    let o = run(&[
        "table",
        "--kind",
        "deg-stirling2",
        "--n-max",
        "3",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "# deg-stirling2 (recurrence)\n\
         n=0: 1\n\
         n=1: 0 | 1\n\
         n=2: 0 | 1 - l | 1\n\
         n=3: 0 | 1 - 3*l + 2*l^2 | 3 - 3*l | 1\n"
    );
}

#[test]
fn bound_tables_give_classical_numbers() {
    let o = run(&[
        "table",
        "--kind",
        "deg-fubini",
        "--n-max",
        "2",
        "--bind",
        "l=0",
        "--bind",
        "x=1",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o), "n,poly\n0,1\n1,1\n2,3\n");
    let o = run(&[
        "table",
        "--kind",
        "fully-deg-bell",
        "--n-max",
        "2",
        "--bind",
        "x=1",
        "--bind",
        "l=0",
    ]);
    let t: SeqTable = serde_json::from_str(&stdout(&o)).unwrap();
    let vals: Vec<Poly> = t.values.iter().map(|e| e.poly.clone()).collect();
    assert_eq!(vals, vec![Poly::int(1), Poly::int(1), Poly::int(2)]);
}

#[test]
fn table_methods_agree() {
    let outputs: Vec<String> = ["recurrence", "closed-form", "series-oracle"]
        .iter()
        .map(|m| {
            let o = run(&[
                "table",
                "--kind",
                "deg-stirling2",
                "--n-max",
                "7",
                "--method",
                m,
                "--format",
                "csv",
            ]);
            assert_eq!(o.status.code(), Some(0));
            stdout(&o)
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = run(&[
        "verify", "--id", "theorem1", "--n-max", "6", "--m-max", "6", "--mode", "symbolic",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.grid_size, r.pass, r.fail), (49, 49, 0));

    let o = run(&["verify", "--id", "theorem2", "--n-max", "0", "--m-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.pass, 1);

    let o = run(&[
        "verify", "--id", "theorem3", "--mode", "rational", "--bind", "l=0", "--n-max", "5",
        "--m-max", "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "verify",
        "--id",
        "theorem3-limit",
        "--n-max",
        "5",
        "--m-max",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_all_with_spot_grid() {
    let o = run(&[
        "verify", "--all", "--mode", "rational", "--n-max", "3", "--m-max", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<VerifyReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 10);
    assert!(reports.iter().all(|r| r.ok()));
    let theorem1 = reports
        .iter()
        .find(|r| r.identity.name() == "theorem1")
        .unwrap();
    assert_eq!(theorem1.grid_size, 16 * 12);
}

#[test]
fn series_dumps() {
    let o = run(&["series", "--gf", "deg-exp", "--order", "2"]);
    let s: Series = serde_json::from_str(&stdout(&o)).unwrap();
    let one = Poly::one();
    assert_eq!(
        s.coeffs(),
        &[one.clone(), one.clone(), &one - &Poly::lambda()]
    );

    let o = run(&[
        "series",
        "--gf",
        "fully-deg-bell",
        "--order",
        "2",
        "--format",
        "text",
    ]);
    assert_eq!(
        stdout(&o),
        "# order 2\nn=0: 1\nn=1: x\nn=2: x + x^2 - l*x - l*x^2\n"
    );

    let o = run(&[
        "series",
        "--gf",
        "two-var-fubini:0",
        "--order",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "n,egf_coeff\n0,1\n1,y\n2,y^2 - l*y\n3,y^3 - 3*l*y^2 + 2*l^2*y\n"
    );
    assert_eq!(
        run(&["series", "--gf", "two-var-fubini:x"]).status.code(),
        Some(2)
    );
}

#[test]
fn limit_tables() {
    for kind in ["fully-deg-bell", "deg-fubini", "deg-stirling2"] {
        let o = run(&["limit", "--kind", kind, "--n-max", "8"]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["all_match"], serde_json::Value::Bool(true));
    }
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = [
        "table",
        "--kind",
        "two-var-deg-fubini",
        "--n-max",
        "5",
        "--k-max",
        "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let mut with_file = args.to_vec();
    let p = path.to_str().unwrap();
    with_file.extend(["--output", p]);
    let o = run(&with_file);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn width_hint_elides_text() {
    let o = Command::new(env!("CARGO_BIN_EXE_degspivey"))
        .args([
            "poly",
            "--kind",
            "deg-fubini",
            "--n",
            "6",
            "--format",
            "text",
        ])
        .env(degspivey::cli::WIDTH_ENV, "20")
        .output()
        .unwrap();
    let line = stdout(&o);
    assert_eq!(line.trim_end().chars().count(), 20);
    assert!(line.contains("..."));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["table", "--kind", "unknown"],
        vec!["table", "--kind", "deg-bell", "--bind", "l=abc"],
        vec!["table", "--kind", "deg-bell", "--bind", "q=1"],
        vec!["table", "--kind", "deg-bell", "--format", "xml"],
        vec!["verify", "--id", "theorem1", "--all"],
        vec!["series", "--gf", "nope"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}
