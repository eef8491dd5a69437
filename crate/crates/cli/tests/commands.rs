use coxkit_cli::{run, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK};
use serde_json::Value;
use std::io::Write;
use std::process::Command;
use tempfile::NamedTempFile;

fn graph_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const B3: &str = "vertices: s1 s2 s3\nedge s1 s2 4\nedge s2 s3 3\n";
const A1_A3: &str = "vertices: t s1 s2 s3\nedge s1 s2 3\nedge s2 s3 3\n";
const A2: &str = "vertices: s1 s2\nedge s1 s2 3\n";

fn path(f: &NamedTempFile) -> String {
    f.path().to_str().unwrap().to_string()
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coxkit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn classify_reports_type_and_order() {
    let b3 = graph_file(B3);
    let (code, out, _) = binary(&["classify", &path(&b3)]);
    assert_eq!((code, out.trim()), (EXIT_OK, "B3 (order 48)"));
}

#[test]
fn isomorphic_files() {
    let (b3, a1a3, a2) = (graph_file(B3), graph_file(A1_A3), graph_file(A2));
    let (code, out, _) = binary(&["isomorphic", &path(&b3), &path(&a1a3)]);
    assert_eq!((code, out.trim()), (EXIT_OK, "YES"));
    let (code, out, _) = binary(&["isomorphic", &path(&b3), &path(&a2)]);
    assert_eq!((code, out.trim()), (EXIT_NEGATIVE, "NO"));
    let r = run(["isomorphic", &path(&b3), &path(&a1a3), "--verify"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.text.starts_with("YES\nwitness: "));
}

#[test]
fn core_of_normalizer_in_a2() {
    let a2 = graph_file(A2);
    let (code, out, _) = binary(&["core", &path(&a2), "--subset", "s1"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "case (iii): Z(W), order 1"));
}

#[test]
fn json_payload_matches_the_schema() {
    let b3 = graph_file(B3);
    let (code, out, _) = binary(&["core", &path(&b3), "--subset", "s1", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "(i)");
    let ids = v["element_ids"].as_array().unwrap();
    assert_eq!(v["subgroup_order"].as_u64().unwrap() as usize, ids.len());
    assert_eq!(ids.len(), 8);

    let r = run(["centralizer", &path(&b3), "--word", "s1", "--json"]);
    let v = r.json.unwrap();
    assert_eq!(v["case"], "(ii)");
    assert_eq!(v["subgroup_order"], 8);
}

#[test]
fn verify_flag_never_changes_the_answer() {
    let (b3, a2) = (graph_file(B3), graph_file(A2));
    let cases: Vec<Vec<String>> = vec![
        vec!["core".into(), path(&b3), "--subset".into(), "s2".into()],
        vec!["core".into(), path(&a2), "--subset".into(), "s1".into()],
        vec!["centralizer".into(), path(&b3), "--word".into(), "s1,s2,s1,s2".into()],
        vec!["deodhar".into(), path(&b3)],
        vec!["richardson".into(), path(&b3), "--word".into(), "s2,s1,s2".into()],
        vec!["aut".into(), path(&b3)],
    ];
    for args in cases {
        let plain = run(&args);
        let mut checked_args = args.clone();
        checked_args.push("--verify".into());
        let checked = run(&checked_args);
        assert_eq!(plain.code, EXIT_OK, "{args:?}: {}", plain.text);
        assert_eq!(checked.code, EXIT_OK, "{args:?}: {}", checked.text);
        assert!(checked.text.starts_with(&plain.text) || args[0] == "aut", "{args:?}");
    }
}

#[test]
fn roots_table_format() {
    let b3 = graph_file(B3);
    let r = run(["roots", &path(&b3)]);
    let lines: Vec<&str> = r.text.lines().collect();
    assert_eq!(lines.len(), 18);
    assert_eq!(lines[0], "0: 1 0 0");
    assert!(lines.iter().any(|l| l.ends_with(": 1 1.41421356237 0")));
    assert!(lines[9].starts_with("9: -1 0 0"));
}

#[test]
fn longest_and_deodhar() {
    let a2 = graph_file(A2);
    let r = run(["longest", &path(&a2)]);
    assert_eq!(r.text, "w0{s1,s2} = s1 s2 s1 (length 3)\ninduces s1->s2 s2->s1");
    let r = run(["deodhar", &path(&a2)]);
    assert_eq!(r.text.lines().last().unwrap(), "sequence: [s1,s2] []");
}

#[test]
fn orders_including_infinite() {
    let affine = graph_file("vertices: a b c\nedge a b 3\nedge b c 3\nedge a c 3\n");
    assert_eq!(run(["order", &path(&affine)]).text, "infinite");
    let b3 = graph_file(B3);
    assert_eq!(run(["order", &path(&b3)]).text, "48");
}

#[test]
fn errors_exit_with_two() {
    let (code, _, err) = binary(&["classify", "/no/such/file.cox"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.starts_with("error:"));
    let bad = graph_file("vertices: a b\nedge a b 2\n");
    assert_eq!(run(["classify", &path(&bad)]).code, EXIT_ERROR);
    let a2 = graph_file(A2);
    assert_eq!(run(["richardson", &path(&a2), "--word", "s1,s2"]).code, EXIT_ERROR);
    assert_eq!(run(["core", &path(&a2), "--subset", "s9"]).code, EXIT_ERROR);
    let h4 = graph_file("vertices: a b c d\nedge a b 5\nedge b c 3\nedge c d 3\n");
    assert_eq!(run(["core", &path(&h4), "--subset", "a", "--cap", "10000"]).code, EXIT_ERROR);
    let (code, _, _) = binary(&["--bogus-flag", "classify"]);
    assert_eq!(code, EXIT_ERROR);
    assert_eq!(run(["verify", "--suite", "nonsense"]).code, EXIT_ERROR);
}

#[test]
fn aut_order_and_verify_suite() {
    let (code, out, _) = binary(&["aut-order", "--sym", "3,3"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "72"));
    let r = run(["verify", "--suite", "orders", "--seed", "7"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.text.starts_with("PASS criterion  1 orders"));
}

#[test]
fn aut_budget() {
    let b3 = graph_file(B3);
    let r = run(["aut", &path(&b3), "--json"]);
    let v = r.json.unwrap();
    assert_eq!((v["h1"].as_str(), v["h2"].as_str(), v["order"].as_str()), (Some("2"), Some("24"), Some("48")));
}
