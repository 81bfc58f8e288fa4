use std::process::Command;

use brieskorn::cli::{run, selfcheck_status};
use brieskorn::zeta::RealizedZeta;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("brieskorn").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_brieskorn")).args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap())
}

#[test]
fn normalize() {
    assert_eq!(cli(&["normalize", "-2*x1^3 + x2^2 - x3^2"]).1, "x1^2 - x2^2 - x3^3\n");
    assert_eq!(cli(&["normalize", "x1^2"]).1, "x1^2\n");
    let (code, out, err) = cli(&["normalize", "x1^2 + x1^3"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("more than once at column 8"), "{err}");
}

#[test]
fn classify_verdicts() {
    let (code, out, _) = cli(&["classify", "x1^2+x2^4+x3^4", "-x1^2-x2^4-x3^4"]);
    assert_eq!(code, 1);
    assert_eq!(out, "not equivalent: sign mismatch at exponent 2\n");

    let (code, out, _) = cli(&["classify", "x1^3+x2^6", "x1^3-x2^6"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("equivalent"));

    let (code, out, _) = cli(&["--format", "json", "classify", "x1^2", "x1^4"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["reason"]["cause"], "exponent-mismatch");

    assert_eq!(cli(&["classify", "x1^2", "x1^2+x2^2"]).0, 2);
    assert_eq!(cli(&["classify", "x1^2", "y^2"]).0, 2);
}

#[test]
fn fibers() {
    let (code, out, _) = cli(&["fiber", "x1^4-x2^4", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "closed:    2*u - 1\nrecursive: 2*u - 1\nchi_c:     -3\n");
    assert!(cli(&["fiber", "x1^2+x2^2", "-1"]).1.starts_with("closed:    0\n"));
    let (_, out, _) = cli(&["--format", "json", "fiber", "x1^2+x2^3", "1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["beta_text"], "u");
    assert_eq!(v["beta"], serde_json::json!([[1, 1]]));
    assert_eq!(v["euler_characteristic"], -1);
    assert_eq!(cli(&["fiber", "x1^2", "2"]).0, 2);
}

#[test]
fn zeta_tables() {
    let (_, out, _) = cli(&["zeta", "x1^2", "--order", "2"]);
    assert!(out.ends_with("1: (-u + 1, -1, -1)\n2: (0, u^-1, -u^-1)\n"), "{out}");

    let (_, out, _) = cli(&["--format", "csv", "zeta", "x1^2", "--kind", "plain", "--order", "2"]);
    assert_eq!(out, "n,bbar,fplus,fminus\n1,0,0,0\n2,1 - u^-1,2*u^-1,0\n");

    let (_, out, _) = cli(&["zeta", "x1^1+x2^2", "--format", "json", "--order", "5"]);
    let z: RealizedZeta = serde_json::from_str(&out).unwrap();
    assert_eq!(z.order(), 5);
    assert!(z.is_zero());

    assert_eq!(cli(&["zeta", "x1^2", "--order", "0"]).0, 2);
}

#[test]
fn recovery_reports() {
    let (_, out, _) = cli(&["recover", "x1^4-x2^4"]);
    assert_eq!(out, "k=4: sigma+=1 sigma-=1 pi=u - 1 rho=-1 (negative branch)\n");
    let (_, out, _) = cli(&["recover", "x1^2+x2^2"]);
    assert_eq!(out, "k=2: sigma+=2 sigma-=0 pi=u + 1 rho=1 (positive branch)\n");
    let (_, out, _) = cli(&["--format", "json", "recover", "x1^3+x2^9"]);
    assert_eq!(out.trim(), "[]");
    assert_eq!(cli(&["recover", "x1^2+x2^6", "--order", "4"]).0, 2);
}

fn table_classes(args: &[&str]) -> Vec<Vec<String>> {
    let mut full = vec!["--format", "json", "table"];
    full.extend_from_slice(args);
    let (code, out, err) = cli(&full);
    assert_eq!(code, 0, "{err}");
    let mut classes: Vec<(String, Vec<String>)> = Vec::new();
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let (p, r) = (v["polynomial"].as_str().unwrap(), v["representative"].as_str().unwrap());
        match classes.iter_mut().find(|(rep, _)| rep == r) {
            Some((_, m)) => m.push(p.to_string()),
            None => classes.push((r.to_string(), vec![p.to_string()])),
        }
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

#[test]
fn table_examples() {
    assert_eq!(
        table_classes(&["--max-d", "1", "--max-exp", "3"]),
        vec![vec!["x1^2"], vec!["-x1^2"], vec!["x1^3", "-x1^3"]]
    );
    assert_eq!(
        table_classes(&["--min-d", "2", "--max-d", "2", "--max-exp", "2"]),
        vec![vec!["x1^2 + x2^2"], vec!["x1^2 - x2^2"], vec!["-x1^2 - x2^2"]]
    );
    assert_eq!(table_classes(&["--max-d", "1", "--min-exp", "2", "--max-exp", "2"]).len(), 2);

    let (_, out, _) = cli(&["table", "--max-d", "1", "--max-exp", "3"]);
    assert!(out.ends_with("4 polynomials, 3 classes, 5 zeta comparisons\n"), "{out}");
    let (_, out, _) = cli(&["--format", "csv", "table", "--max-d", "1", "--max-exp", "2"]);
    assert_eq!(out, "polynomial,representative,k_set,sign_counts\nx1^2,x1^2,2,2:1/0\n-x1^2,-x1^2,2,2:0/1\n");
    assert_eq!(cli(&["table", "--max-d", "40"]).0, 2);
    assert_eq!(cli(&["table", "--min-exp", "1"]).0, 2);
}

#[test]
fn selfcheck_reports_every_suite() {
    let (code, out, _) =
        cli(&["--jobs", "2", "selfcheck", "--max-d", "2", "--max-exp", "5", "--order", "10"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("10 suites, 0 failed\n"));
    assert!(out.lines().filter(|l| l.starts_with("PASS ")).count() == 10);

    let (_, out, _) =
        cli(&["--format", "json", "selfcheck", "--max-d", "1", "--max-exp", "3", "--order", "6"]);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert!(reports.iter().all(|r| r["checked"].as_u64().unwrap() > 0 && r["failures"] == 0));
    assert_eq!(cli(&["selfcheck", "--max-exp", "1"]).0, 2);
}

#[test]
fn failing_suite_gives_nonzero_status() {
    let mut reports = brieskorn::checks::run_all(&brieskorn::checks::SelfCheckBounds {
        max_d: 1,
        max_exp: 3,
        order: 6,
        fiber_vars: 1,
        recovery_max_d: 1,
        recovery_max_exp: 3,
        oracle_max_k: 2,
        oracle_max_n: 2,
    });
    assert_eq!(selfcheck_status(&reports), 0);
    reports[3].failures = 1;
    assert_eq!(selfcheck_status(&reports), 1);
}

#[test]
fn completeness_pair_count() {
    let (_, out, _) =
        cli(&["--format", "csv", "selfcheck", "--max-d", "3", "--max-exp", "8", "--order", "16"]);
    let line = out.lines().find(|l| l.starts_with("completeness,")).unwrap();
    let n: usize = (1..=3).map(|d| brieskorn::enumerate::normalized_polys(d, 2, 8).len().pow(2)).sum();
    assert_eq!(line, format!("completeness,{n},0,true"));
}

#[test]
fn binary_exit_statuses() {
    assert_eq!(binary(&["classify", "x1^3+x2^6", "x1^3-x2^6"]).0, 0);
    assert_eq!(binary(&["classify", "x1^2", "-x1^2"]).0, 1);
    assert_eq!(binary(&["classify", "x1^2", "x1^^2"]).0, 2);
    assert_eq!(binary(&["normalize", "-x1^3"]), (0, "-x1^3\n".into()));
    assert_eq!(binary(&["bogus"]).0, 2);
    assert_eq!(binary(&["--help"]).0, 0);
}
