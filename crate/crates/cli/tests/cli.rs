use std::path::PathBuf;

use mulchar_cli::{run, subcommand_names};

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(std::iter::once("mulchar").chain(args.iter().copied()));
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn code(args: &[&str]) -> i32 {
    run(std::iter::once("mulchar").chain(args.iter().copied())).0
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mulchar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const TWO_LINES: &str = r#"{ "ambient": 2, "fibers": [
  { "V": [ {"gens": ["x1"]}, {"gens": ["x2"]} ], "S": [] }
] }"#;

const LINE_AND_AXIS: &str = r#"{ "ambient": 2, "fibers": [
  { "label": [0], "V": [ {"gens": ["x1"]}, {"gens": ["x2"]} ], "S": [] },
  { "label": [1], "V": [ {"gens": ["x1"]} ], "S": [] }
] }"#;

#[test]
fn documented_examples() {
    assert_eq!(ok(&["mann", "solve", "--coeffs", "1,1"]), "z(1/6),z(5/6)\nz(5/6),z(1/6)\n");
    assert_eq!(ok(&["chi", "--p", "7", "--elem", "fq(7,1,[3])"]), "z(1/6)\n");
    assert_eq!(ok(&["rank", "eval", "--expr", "atom(1,1,0,1)"]), "w*1+0\n");
    assert_eq!(ok(&["rank", "eval", "--expr", "prod(atom(1,1,0,1), atom(0,1,2,3))"]), "w*1+2\n");
    assert_eq!(ok(&["ideal", "member", "--gens", "x1^2+x1+1", "--poly", "x1^3-1", "--radical"]), "true\n");
    assert_eq!(ok(&["pullback", "--p", "7", "--system", "w1+w2"]), "s1+s2\n");
    assert!(ok(&["verify", "character", "--p", "2", "--nmax", "4"]).ends_with("character: pass\n"));
    assert_eq!(ok(&["mtp", "--units", "z(1/3),z(1/6)"]), "[[1,4],[0,6]]\n");
}

#[test]
fn chi_round_trip() {
    assert_eq!(ok(&["chi", "--p", "7", "--root", "z(1/6)"]), "fq(7,1,[3])\n");
    assert_eq!(ok(&["chi", "--p", "7", "--elem", "fq(7,1,[0])"]), "0\n");
}

#[test]
fn every_subcommand_dispatches() {
    let names = subcommand_names();
    let expected = ["chi", "fq", "cyclo", "mtp", "mcl", "mann", "generic", "axiom", "pullback", "ideal", "pcset", "rank", "verify"];
    assert_eq!(names, expected);
    let file = fixture("two_lines.json", TWO_LINES);
    let file = file.to_str().unwrap();
    let calls: [&[&str]; 13] = [
        &["chi", "--p", "2", "--elem", "fq(2,2,[0,1])"],
        &["fq", "conway", "--p", "2", "--n", "4"],
        &["cyclo", "eval", "--expr", "z(1/3)+z(2/3)"],
        &["mtp", "--units", "2,4"],
        &["mcl", "independent", "--set", "2,3"],
        &["mann", "bound", "--n", "2"],
        &["generic", "--g", "2,3"],
        &["axiom", "--p", "3", "--n", "1"],
        &["pullback", "--p", "2", "--system", "w1-1"],
        &["ideal", "dim", "--gens", "x1*x2"],
        &["pcset", "rank", "--file", file],
        &["rank", "gd", "--expr", "atom(0,2,0,2)"],
        &["verify", "rank"],
    ];
    for (name, args) in expected.iter().zip(calls) {
        assert_eq!(args[0], *name);
        assert!(!ok(args).trim().is_empty(), "{name}");
    }
}

#[test]
fn finite_field_commands() {
    assert_eq!(ok(&["fq", "conway", "--p", "2", "--n", "4"]), "x^4+x+1\n");
    assert_eq!(ok(&["fq", "dlog", "--elem", "fq(7,1,[3])"]), "1\n");
    assert_eq!(ok(&["fq", "order", "--elem", "fq(7,1,[2])"]), "3\n");
    assert_eq!(ok(&["fq", "arith", "--a", "fq(7,1,[3])", "--b", "fq(7,1,[5])", "--op", "mul"]), "fq(7,1,[1])\n");
    assert_eq!(code(&["fq", "arith", "--a", "fq(7,1,[3])", "--b", "fq(7,1,[0])", "--op", "div"]), 1);
}

#[test]
fn ideal_commands() {
    assert_eq!(ok(&["ideal", "dim", "--gens", "x1;x2;x1-1"]), "-inf\n");
    assert_eq!(ok(&["ideal", "member", "--gens", "x1^2", "--poly", "x1"]), "false\n");
    assert_eq!(ok(&["ideal", "member", "--gens", "x1^2", "--poly", "x1", "--radical"]), "true\n");
    assert_eq!(ok(&["ideal", "saturate", "--gens", "x1*x2", "--poly", "x1"]), "x2\n");
    let file = fixture("gens.txt", "x1^2-x2\nx1*x2\n");
    assert_eq!(ok(&["ideal", "groebner", "--file", file.to_str().unwrap()]), "x2^2\nx1*x2\nx1^2-x2\n");
    assert_eq!(ok(&["ideal", "type", "--g", "z(1/2),z(1/3)", "--poly", "x1^2-1"]), "I_g: true\nrad J_g: true\n");
}

#[test]
fn pcset_commands() {
    let two = fixture("two.json", TWO_LINES);
    let two = two.to_str().unwrap();
    assert_eq!(ok(&["pcset", "grgd", "--file", two]), "gr = w*1+0\ngd = 2\n");
    assert!(ok(&["pcset", "rank", "--file", two]).contains("rK=1 dK=2"));
    let mixed = fixture("mixed.json", LINE_AND_AXIS);
    let mixed = mixed.to_str().unwrap();
    assert_eq!(ok(&["pcset", "rel", "--file", mixed, "--a", "1", "--b", "0"]), "⊂̃\n");
    assert_eq!(code(&["pcset", "quotient", "--file", mixed]), 1);
    let refined = ok(&["pcset", "refine", "--file", mixed]);
    assert_eq!(refined.lines().count(), 3);
    assert!(refined.contains("V(x2) ∖ (V(x1))"));
    assert_eq!(code(&["pcset", "rel", "--file", mixed, "--a", "7"]), 1);
    assert_eq!(code(&["pcset", "shrink", "--file", mixed]), 1);
}

#[test]
fn json_output() {
    let out = ok(&["--json", "mann", "solve", "--coeffs", "1,1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solutions"].as_array().unwrap().len(), 2);
    let out = ok(&["rank", "eval", "--expr", "atom(1,1,0,1)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gr"], "w*1+0");
    let out = ok(&["--json", "verify", "character", "--p", "3", "--nmax", "2"]);
    assert!(serde_json::from_str::<serde_json::Value>(&out).is_ok());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["nope"]), 2);
    assert_eq!(code(&["chi", "--p", "7", "--elem", "fq(7,1,[3])", "--bogus"]), 2);
    assert_eq!(code(&["chi", "--p", "7"]), 2);
    assert_eq!(code(&["chi", "--p", "6", "--elem", "fq(7,1,[3])"]), 1);
    assert_eq!(code(&["rank", "eval", "--expr", "atom(1"]), 1);
    assert_eq!(code(&["verify", "bogus"]), 1);
    assert_eq!(code(&["--help"]), 0);
    let (_, _, err) = run(["mulchar", "chi", "--p", "6", "--elem", "fq(7,1,[3])"]);
    assert!(err.starts_with("error: "));
}

#[test]
fn output_is_stable() {
    let args = ["mulchar", "mann", "solve", "--coeffs", "1,-1,1"];
    assert_eq!(run(args), run(args));
}
