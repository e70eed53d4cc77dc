use std::io::Write;
use std::process::{Command as Process, Output};

use dakernel::commands::{self, Command, Verb};
use dakernel::{execute, parse_session, Status};
use dakernel_core::monomial::Monomial;
use proptest::prelude::*;
use serde_json::{json, Value};

const SYSTEM: &str = "group cyclic 2 / field gf 2 / vars x / eq x*s(x) / eq x+s(x)-1";
const ROOTS: &str = "group cyclic 2 / field gf 5 / vars x / eq x+s(x) / eq x^2-4";

fn run(text: &str, verb: Verb) -> (Status, Value) {
    let s = parse_session(text).unwrap();
    let rep = execute(&s, &Command::new(verb));
    (rep.status, rep.result)
}

fn bin(args: &[&str], session: &str) -> Output {
    let dir = std::env::temp_dir().join(format!("dakernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{}.das", args.join("_").replace(['/', '-'], "")));
    std::fs::File::create(&path).unwrap().write_all(session.as_bytes()).unwrap();
    let mut all = vec![path.to_str().unwrap().to_string()];
    all.extend(args.iter().map(|a| a.to_string()));
    Process::new(env!("CARGO_BIN_EXE_dakernel")).args(&all).output().unwrap()
}

#[test]
fn session_with_two_equations() {
    let s = parse_session(SYSTEM).unwrap();
    assert_eq!(s.equations.len(), 2);
    assert_eq!(s.ring.format(&s.equations[1]), "x + s(x) + 1");
}

#[test]
fn undeclared_variable_is_a_located_parse_error() {
    let e = parse_session("group cyclic 2\nfield gf 2\neq y1^2\nvars y1").unwrap_err();
    assert_eq!((e.pos.line, e.pos.column), (3, 1));
    let e = parse_session("group cyclic 2\nfield gf 2\nvars y2\neq y1^2").unwrap_err();
    assert_eq!((e.pos.line, e.pos.column), (4, 4));
    assert!(e.message.contains("undeclared variable"));
}

#[test]
fn solve_finds_the_two_idempotent_solutions() {
    let (status, v) = run(SYSTEM, Verb::Solve);
    assert_eq!(status, Status::Ok);
    assert_eq!(v, json!([[[0, 1]], [[1, 0]]]));
}

#[test]
fn solve_square_roots() {
    assert_eq!(run(ROOTS, Verb::Solve).1, json!([[[2, 3]], [[3, 2]]]));
}

#[test]
fn dim_of_the_empty_system() {
    assert_eq!(run("group cyclic 2 / field gf 3 / vars y", Verb::Dim).1, json!(2));
    assert_eq!(run("group cyclic 2 / field gf 3 / vars y1 y2", Verb::Dim).1, json!(4));
}

#[test]
fn pseudoprime_and_pseudomaximal() {
    assert_eq!(run(SYSTEM, Verb::Pseudoprime).1, json!(false));
    let single = "group cyclic 2 / field gf 2 / vars x / eq x / eq s(x) - 1";
    assert_eq!(run(single, Verb::Pseudoprime).1, json!(false));
    let field_like = "group cyclic 2 / field gf 3 / vars x / eq x^2 + 1 / eq x + s(x)";
    assert_eq!(run(field_like, Verb::Pseudomaximal).1, json!(true));
}

#[test]
fn adjoint_and_back() {
    let (_, v) = run(SYSTEM, Verb::Adjoint);
    assert_eq!(v, json!(["x@e + x@s + 1", "x@s^2 + x@s"]));
    let s = "group cyclic 2 / field gf 3 / vars x / adj x@e^2 - 1, x@s";
    let (status, v) = run(s, Verb::FromAdjoint);
    assert_eq!(status, Status::Ok);
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn extension_elements_print_as_strings() {
    let s = parse_session("group trivial / field gf 3 / vars x / eq x^2 + 1").unwrap();
    let mut cmd = Command::new(Verb::Solve);
    cmd.ext = 2;
    let v = execute(&s, &cmd).result;
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[0][0][0].is_string());
    assert_eq!(run("group trivial / field rational / vars x / eq x - 1/2", Verb::Radical).1, json!(["x - 1/2"]));
}

#[test]
fn nss_verdicts() {
    let s = parse_session("group cyclic 2 / field gf 3 / vars y / eq y - s(y) / eq y^2 + 1").unwrap();
    let mut cmd = Command::new(Verb::NssCheck);
    assert_eq!(execute(&s, &cmd).result["verdict"], "insufficient extension degree");
    cmd.ext = 2;
    assert_eq!(execute(&s, &cmd).result["verdict"], "holds");
}

#[test]
fn glue_patches() {
    let s = parse_session("group trivial / field gf 5 / vars u / eq u^3 - u^2").unwrap();
    let mut cmd = Command::new(Verb::Glue);
    cmd.input = Some(r#"[{"num": "u^2", "den": "u"}, {"num": "u - u^2", "den": "1 - u"}]"#.into());
    assert_eq!(execute(&s, &cmd).result, json!("u"));
    cmd.input = Some(r#"[{"num": "u^2", "den": "u"}]"#.into());
    assert_eq!(execute(&s, &cmd).status, Status::Error);
    cmd.input = Some(r#"[{"num": "u^^2", "den": "u"}]"#.into());
    assert_eq!(execute(&s, &cmd).status, Status::ParseError);
}

#[test]
fn ideal_of_solutions_matches_the_radical() {
    let s = parse_session(SYSTEM).unwrap();
    let solved = execute(&s, &Command::new(Verb::Solve)).render_json();
    let mut cmd = Command::new(Verb::IdealOfPoints);
    cmd.input = Some(solved);
    let from_points = execute(&s, &cmd).result;
    assert_eq!(from_points, execute(&s, &Command::new(Verb::Radical)).result);
}

#[test]
fn sigma_ideal_of_a_non_difference_ideal() {
    let s = parse_session("group cyclic 2 / field gf 2 / vars x / ideal J: x").unwrap();
    let mut cmd = Command::new(Verb::SigmaIdeal);
    cmd.ideal = Some("J".into());
    let v = execute(&s, &cmd).result;
    assert_eq!(v["difference"], json!(false));
    // (x) ∩ (s(x)) as a difference ideal.
    assert_eq!(v["generators"], json!(["(1,0)*x*s(x)"]));
}

#[test]
fn taylor_over_the_conjugation_pseudofield() {
    let s = parse_session("group cyclic 2\nfield gf 9 1\n").err();
    assert!(s.is_some());
    let s = parse_session("group cyclic 2\nfield gf 3 2\npseudofield product 2 s (1,0) (1,1)\nvars y").unwrap();
    for sigma in ["e", "s"] {
        let mut cmd = Command::new(Verb::Taylor);
        cmd.sigma = Some(sigma.into());
        let v = execute(&s, &cmd).result;
        assert_eq!(v["evaluation"], json!(true));
        assert_eq!(v["equivariant"], json!(true));
        assert_eq!(v["normalization"], json!("isomorphism"));
    }
}

#[test]
fn lab_reports() {
    let rep = commands::lab(&["verify".into(), "gf5[x]/(x^2)-neg".into()]);
    assert_eq!(rep.status, Status::Ok);
    assert_eq!(rep.result["pseudo_spectrum"], json!(["(x)"]));
    assert_eq!(commands::lab(&["verify".into(), "nope".into()]).status, Status::Error);
}

#[test]
fn binary_exit_codes() {
    let out = bin(&["solve"], SYSTEM);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"command":"solve","result":[[[0,1]],[[1,0]]],"status":"ok"}"#);
    let out = bin(&["pseudoprime"], "group cyclic 2 / field gf 2 / vars x / eq x*s(x)");
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["solve"], "vars x");
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "parse-error");
    let out = bin(&["dim", "--pretty"], "group cyclic 4 / field gf 2 / vars y");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "dim: ok\n  4\n");
    let out = Process::new(env!("CARGO_BIN_EXE_dakernel")).args(["lab", "verify", "gf3^2-swap"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for verb in ["solve", "adjoint", "radical", "nss-check", "sigma-ideal", "taylor"] {
        let a = bin(&[verb], SYSTEM).stdout;
        let b = bin(&[verb], SYSTEM).stdout;
        assert_eq!(a, b, "{verb}");
        assert!(!a.is_empty());
    }
}

fn session_text(group: usize, field: (u64, u32), n: usize, eqs: &[String]) -> String {
    let vars: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let mut t = format!("group cyclic {group}\nfield gf {} {}\nvars {}\n", field.0, field.1, vars.join(" "));
    for e in eqs {
        t += &format!("eq {e}\n");
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_print_parse_is_identity(
        group in 1usize..4,
        field in prop::sample::select(vec![(2u64, 1u32), (3, 1), (5, 1), (2, 2), (3, 2)]),
        n in 1usize..3,
        raw in prop::collection::vec(prop::collection::vec((0u64..50, prop::collection::vec(0u32..3, 6)), 1..4), 0..3),
    ) {
        let base = parse_session(&session_text(group, field, n, &[])).unwrap();
        let r = &base.ring;
        let pf = r.pseudofield();
        let k = pf.base();
        let q = k.size().unwrap();
        let eqs: Vec<String> = raw
            .iter()
            .map(|terms| {
                let f = r.from_terms(terms.iter().map(|(c, exps)| {
                    let mut e = exps.clone();
                    e.resize(r.nflat(), 0);
                    let coords = (0..pf.m()).map(|i| k.element((c + i as u64 * (*c % 3)) % q).unwrap()).collect();
                    (Monomial(e), pf.element(coords).unwrap())
                }));
                r.format(&f)
            })
            .map(|s| if s.is_empty() { "0".into() } else { s })
            .collect();
        let first = parse_session(&session_text(group, field, n, &eqs)).unwrap();
        let printed = first.to_canonical();
        let second = parse_session(&printed).unwrap();
        prop_assert_eq!(&second.to_canonical(), &printed);
        prop_assert_eq!(&first.equations, &second.equations);
        for (text, f) in eqs.iter().zip(&first.equations) {
            prop_assert_eq!(text, &r.format(f));
        }
    }
}
