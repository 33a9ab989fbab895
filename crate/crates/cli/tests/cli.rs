use std::path::PathBuf;
use std::process::Command;

use sl2betti::dump::read_dump;
use sl2betti::grammar::parse_poly_file;
use sl2betti_core::invariants::{apply_operator, CoefficientRing, Operator};
use sl2betti_core::report::parse_betti;
use sl2betti_core::resolution::{betti, BettiTable};

const J_WEIGHTS: &str = "3,3,2,3,2,3,3,2,2,3";

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sl2betti").chain(args.iter().copied());
    let code = sl2betti::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// The diagram between the blank line after the header and the numerator.
fn diagram(report: &str) -> BettiTable {
    let text: String = report
        .lines()
        .skip_while(|l| !l.starts_with("-j\\i"))
        .take_while(|l| !l.is_empty())
        .map(|l| format!("{l}\n"))
        .collect();
    parse_betti(&text).unwrap()
}

fn j_table() -> BettiTable {
    BettiTable::new([
        ((0, 0), 1),
        ((1, 5), 3),
        ((1, 6), 6),
        ((2, 8), 8),
        ((2, 9), 8),
        ((3, 11), 6),
        ((3, 12), 3),
        ((4, 17), 1),
    ])
}

#[test]
fn betti_of_printed_relations() {
    let (code, out, err) = run(&["betti", "--gens", &data("J.txt"), "--weights", J_WEIGHTS]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(diagram(&out), j_table());
    assert!(out.contains("length: 4\n"));
    assert!(out.contains("j*: 17\n"));
    assert!(out.contains("1 - 3z^5 - 6z^6 + 8z^8 + 8z^9 - 6z^11 - 3z^12 + z^17"));
    assert!(out.ends_with("palindromic: true\n"));
}

#[test]
fn table_output_is_deterministic() {
    let a = run(&["resolve", "1,1,1,2"]);
    let b = run(&["resolve", "1,1,1,2"]);
    assert_eq!(a, b);
    assert_eq!(diagram(&a.1), j_table());
    assert!(a.1.contains("kernel: 9 minimal generators, degrees 5^3 6^6\n"));
}

#[test]
fn resolve_two_cubics() {
    let (code, out, _) = run(&["resolve", "3,3"]);
    assert_eq!(code, 0);
    assert!(out.contains("resolution: 0 -> R(-20) -> R(-8) + R(-12) -> R\n"), "{out}");
    assert!(out.contains("length: 2\n"));
}

#[test]
fn json_documents() {
    let (code, out, _) = run(&["--format", "json", "resolve", "3,3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degrees"], serde_json::json!([3, 3]));
    assert_eq!(v["generator_weights"], serde_json::json!([2, 4, 4, 4, 4, 4, 6]));
    assert_eq!(v["length"], 2);
    assert_eq!(v["j_star"], 20);
    assert_eq!(v["palindromic"], true);
    assert_eq!(v["betti"], serde_json::json!([[0, 0, 1], [1, 8, 1], [1, 12, 1], [2, 20, 1]]));
    let num = v["poincare_numerator"].as_array().unwrap();
    assert_eq!((num[0].as_i64(), num[8].as_i64(), num[12].as_i64(), num[20].as_i64()), (Some(1), Some(-1), Some(-1), Some(1)));

    let (code, out, _) = run(&["invariants", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["generator_weights"], serde_json::json!([2]));
    assert_eq!(v["complete"], true);
}

#[test]
fn invariants_reparse_and_are_invariant() {
    let (code, out, _) = run(&["invariants", "1,1,1,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("# 10 generators, weights 2^4 3^6"));
    let file = parse_poly_file(&out, None).unwrap();
    assert_eq!(file.polys.len(), 10);
    let ring = CoefficientRing::new(&[1, 1, 1, 2]);
    assert_eq!(file.ring.names(), ring.ring().names());
    for p in &file.polys {
        let p = p.reorder(ring.order());
        assert!(apply_operator(&ring, Operator::Raising, &p).is_zero());
        assert!(apply_operator(&ring, Operator::Lowering, &p).is_zero());
    }
}

#[test]
fn small_bound_is_reported() {
    let (code, _, err) = run(&["invariants", "3", "--bound", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("degree 4"), "{err}");
}

#[test]
fn kernel_of_printed_generators() {
    let (code, out, err) = run(&["kernel", "--gens", &data("L.txt"), "--weights", J_WEIGHTS]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("# 9 minimal relations, degrees 5^3 6^6\n"), "{out}");
    // the printed kernel feeds straight into `betti`
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.txt");
    std::fs::write(&path, &out).unwrap();
    let (code, out, _) = run(&["betti", "--gens", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(diagram(&out), j_table());
}

#[test]
fn dump_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("res.txt");
    let (code, out, _) = run(&["resolve", "1,1,1,1,1", "--dump", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let res = read_dump(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(betti(&res).unwrap(), diagram(&out));
    assert_eq!(res.length(), 3);
}

#[test]
fn verify_single_case() {
    let (code, out, _) = run(&["verify", "4v1"]);
    assert_eq!(code, 0);
    for name in ["weights", "betti", "koszul", "hilbert", "complex", "length", "palindromy"] {
        assert!(out.lines().any(|l| l.trim_start().starts_with(name) && l.contains(" pass ")), "{name}: {out}");
    }
    assert!(out.ends_with("1 of 1 cases passed\n"));
    let (code, out, _) = run(&["verify", "V3+V3", "--format", "json", "--jcap", "12"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["cases"][0]["label"], "V3+V3");
    assert_eq!(v["cases"][0]["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "ring a b;\na + c\n").unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["verify".into(), "V7".into()],
        vec!["resolve".into(), "1,0".into()],
        vec!["betti".into(), "--gens".into(), bad.display().to_string()],
        vec!["betti".into(), "--gens".into(), dir.path().join("missing").display().to_string()],
        vec!["betti".into(), "--gens".into(), data("J.txt"), "--weights".into(), "1,1".into()],
        vec!["kernel".into(), "--gens".into(), data("L.txt"), "--weights".into(), "2,2".into()],
        vec!["kernel".into()],
        vec!["kernel".into(), "1,2".into(), "--gens".into(), data("L.txt")],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = run(&refs);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (code, _, err) = run(&["betti", "--gens", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sl2betti");
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("verify"));
    let bad = Command::new(bin).args(["verify", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(bin).args(["resolve", "1,1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("resolution: 0 -> R\n"));
}

#[test]
fn threads_do_not_change_output() {
    let bin = env!("CARGO_BIN_EXE_sl2betti");
    let outputs: Vec<Vec<u8>> = ["1", "3"]
        .iter()
        .map(|t| {
            Command::new(bin)
                .args(["verify", "all", "--skip-stretch", "--jcap", "6"])
                .env("SL2BETTI_THREADS", t)
                .output()
                .unwrap()
                .stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
}
