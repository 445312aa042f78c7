use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rtt::generators::{gen_sat_general, satisfying_flow, Formula};
use rtt::io::{flow_to_json, instance_to_json};

fn rtt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtt")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const SINGLE: &str = r#"{"format_version":1,"form":"arc","vertices":["s","t"],"source":"s","sink":"t",
  "arcs":[{"tail":"s","head":"t","job":{"step":[[0,"4"],[2,"0"]]}}],"budget":0}"#;

#[test]
fn exact_single_arc() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "one.json", SINGLE);
    let flow = dir.path().join("flow.json");
    let o = rtt(&["solve", &f, "--algo", "exact", "--budget", "2", "--emit-flow", flow.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "makespan"), "0");
    let o = rtt(&["eval", &f, "--flow", flow.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5), "budget in the file is 0");
}

#[test]
fn sp_refuses_non_sp() {
    let dir = tempfile::tempdir().unwrap();
    let wheatstone = r#"{"format_version":1,"form":"arc","vertices":["s","a","b","t"],"source":"s","sink":"t",
      "arcs":[{"tail":"s","head":"a","job":{"step":[[0,"1"]]}},{"tail":"s","head":"b","job":{"step":[[0,"1"]]}},
              {"tail":"a","head":"b","job":{"step":[[0,"1"]]}},{"tail":"a","head":"t","job":{"step":[[0,"1"]]}},
              {"tail":"b","head":"t","job":{"step":[[0,"1"]]}}],"budget":1}"#;
    let f = write(dir.path(), "w.json", wheatstone);
    let o = rtt(&["solve", &f, "--algo", "sp"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not series-parallel"));
}

#[test]
fn bicriteria_on_sat_formula() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sat.json");
    let o = rtt(&["gen", "sat", "--formula", "1,-2,3;-1,2,3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!((field(&s, "budget"), field(&s, "target")), ("7", "1"));
    let cert = fs::read_to_string(dir.path().join("sat.cert.json")).unwrap();
    assert!(cert.contains("\"expected_achievable\": true"));
    let o = rtt(&["solve", out.to_str().unwrap(), "--algo", "bicriteria", "--alpha", "1/2", "--budget", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let m = rtt::rational::parse(field(&stdout(&o), "makespan")).unwrap();
    assert!(m <= rtt::rational::int(2));
}

#[test]
fn eval_reports_makespan() {
    let dir = tempfile::tempdir().unwrap();
    let f = Formula::parse("1,-2,3;-1,2,3").unwrap();
    let g = gen_sat_general(&f).unwrap();
    let inst = write(dir.path(), "i.json", &instance_to_json(&g.instance));
    let good = write(
        dir.path(),
        "good.json",
        &flow_to_json(&satisfying_flow(&f, &g.instance, &[true, true, false])),
    );
    let o = rtt(&["eval", &inst, "--flow", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "makespan"), "1");
    let zero = write(dir.path(), "zero.json", "{}");
    let o = rtt(&["eval", &inst, "--flow", &zero]);
    let zr = rtt::schedule::zero_resource_makespan(&g.instance).unwrap();
    assert_eq!(field(&stdout(&o), "makespan"), zr.to_string());
    let bad = write(dir.path(), "bad.json", "{\"0\": 1}");
    let o = rtt(&["eval", &inst, "--flow", &bad]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("inflow"));
}

#[test]
fn generators_and_guard() {
    let o = rtt(&["gen", "partition", "--set", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.json");
    let o = rtt(&["gen", "partition", "--set", "1,2,3", "--out", out.to_str().unwrap()]);
    let s = stdout(&o);
    assert_eq!((field(&s, "budget"), field(&s, "target")), ("6", "3"));
    let o = rtt(&["gen", "mm", "--n", "4", "--h", "1"]);
    let text = stdout(&o);
    assert_eq!(text.matches("\"binary\": 4").count(), 16);
    let o = Command::new(env!("CARGO_BIN_EXE_rtt"))
        .args(["solve", out.to_str().unwrap(), "--algo", "exact"])
        .env("RTT_SIZE_GUARD", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(rtt(&["gen", "partition", "--set", "1,x"]).status.code(), Some(2));
    assert_eq!(rtt(&["gen", "bogus"]).status.code(), Some(2));
    let f = write(dir.path(), "broken.json", "{");
    assert_eq!(rtt(&["solve", &f, "--algo", "exact"]).status.code(), Some(2));
}

#[test]
fn family_mismatch_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "one.json", SINGLE);
    assert_eq!(rtt(&["solve", &f, "--algo", "kway5"]).status.code(), Some(3));
    let o = rtt(&["gen", "mm", "--n", "2", "--h", "1"]);
    let mm = write(dir.path(), "mm.json", &stdout(&o));
    let o = rtt(&["solve", &mm, "--algo", "binary4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lp = dir.path().join("relax.lp");
    let o = rtt(&["solve", &mm, "--algo", "binary-improved", "--lp-dump", lp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(lp).unwrap().contains("Subject To"));
}
