//! Command dispatch and JSON reports.

use std::fmt;
use std::str::FromStr;

use dakernel_core::adjoint::{self, TaylorHom};
use dakernel_core::diffideal::ComponentIdeal;
use dakernel_core::finitering::{self, LabReport};
use dakernel_core::variety::{self, PointSet};
use dakernel_core::{DiffIdeal, DiffPoly, Field, FieldElem, Ideal, Pseudofield, PseudofieldElem};
use serde_json::{json, Map, Value};

use crate::session::Session;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Solve,
    Adjoint,
    FromAdjoint,
    Dim,
    Pseudoprime,
    Pseudomaximal,
    Radical,
    NssCheck,
    Glue,
    IdealOfPoints,
    Taylor,
    SigmaIdeal,
}

pub const VERBS: &[(&str, Verb)] = &[
    ("solve", Verb::Solve),
    ("adjoint", Verb::Adjoint),
    ("from-adjoint", Verb::FromAdjoint),
    ("dim", Verb::Dim),
    ("pseudoprime", Verb::Pseudoprime),
    ("pseudomaximal", Verb::Pseudomaximal),
    ("radical", Verb::Radical),
    ("nss-check", Verb::NssCheck),
    ("glue", Verb::Glue),
    ("ideal-of-points", Verb::IdealOfPoints),
    ("taylor", Verb::Taylor),
    ("sigma-ideal", Verb::SigmaIdeal),
];

impl Verb {
    pub fn as_str(self) -> &'static str {
        VERBS.iter().find(|(_, v)| *v == self).expect("listed").0
    }

    /// Whether the verb reads an extra input file.
    pub fn needs_input(self) -> bool {
        matches!(self, Verb::Glue | Verb::IdealOfPoints)
    }
}

impl FromStr for Verb {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        VERBS.iter().find(|(n, _)| *n == s).map(|(_, v)| *v).ok_or_else(|| {
            let names: Vec<&str> = VERBS.iter().map(|(n, _)| *n).collect();
            format!("unknown command `{s}`; expected one of: lab, {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone)]
pub struct Command {
    pub verb: Verb,
    /// Extension degree for point enumeration.
    pub ext: u32,
    /// A named ideal of the session instead of its equations.
    pub ideal: Option<String>,
    pub factor: usize,
    pub sigma: Option<String>,
    pub frob: u32,
    /// Contents of the patch or point file.
    pub input: Option<String>,
}

impl Command {
    pub fn new(verb: Verb) -> Self {
        Command { verb, ext: 1, ideal: None, factor: 0, sigma: None, frob: 0, input: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A precondition of the operation failed.
    Error,
    /// Session or input could not be parsed.
    ParseError,
    /// A laboratory check failed.
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::ParseError => "parse-error",
            Status::Failed => "failed",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::ParseError => 1,
            Status::Error | Status::Failed => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub result: Value,
}

impl Report {
    pub fn ok(command: &str, result: Value) -> Self {
        Report { command: command.into(), status: Status::Ok, result }
    }

    pub fn error(command: &str, message: impl fmt::Display) -> Self {
        Report { command: command.into(), status: Status::Error, result: json!({ "message": message.to_string() }) }
    }

    pub fn parse_error(command: &str, e: &crate::session::ParseError) -> Self {
        Report {
            command: command.into(),
            status: Status::ParseError,
            result: json!({ "line": e.pos.line, "column": e.pos.column, "message": e.message }),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "command": self.command, "status": self.status.as_str(), "result": self.result })
    }

    /// One line of compact JSON.
    pub fn render_json(&self) -> String {
        self.to_json().to_string()
    }

    /// Indented plain text.
    pub fn render_pretty(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.status.as_str());
        pretty_value(&self.result, 1, &mut out);
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn pretty_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty_value(x, depth + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty_value(x, depth + 1, out);
                    }
                    Value::Array(items) => {
                        let parts: Vec<String> = items.iter().map(plain).collect();
                        out.push_str(&format!("{pad}{k}: [{}]\n", parts.join(", ")));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", plain(x))),
                }
            }
        }
        Value::Array(items) if items.is_empty() => out.push_str(&format!("{pad}(none)\n")),
        Value::Array(items) => {
            for item in items {
                if item.is_object() {
                    let line: Vec<String> = item.as_object().unwrap().iter().map(|(k, x)| format!("{k}={}", plain(x))).collect();
                    out.push_str(&format!("{pad}- {}\n", line.join("  ")));
                } else {
                    out.push_str(&format!("{pad}{}\n", plain(item)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", plain(other))),
    }
}

/// Prime-field elements as numbers; everything else as strings.
pub fn field_json(k: &Field, a: &FieldElem) -> Value {
    match a.as_finite() {
        Some(v) if k.degree() == 1 => json!(v),
        _ => json!(k.format(a)),
    }
}

pub fn element_json(pf: &Pseudofield, a: &PseudofieldElem) -> Value {
    Value::Array(a.coords().iter().map(|x| field_json(pf.base(), x)).collect())
}

pub fn points_json(pf: &Pseudofield, points: &PointSet) -> Value {
    Value::Array(points.iter().map(|p| Value::Array(p.iter().map(|a| element_json(pf, a)).collect())).collect())
}

fn sorted(mut v: Vec<String>) -> Value {
    v.sort();
    json!(v)
}

fn ideal_json(i: &DiffIdeal) -> Value {
    sorted(i.format_generators())
}

type Outcome = Result<Value, String>;

fn core<T>(r: dakernel_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn generators<'a>(s: &'a Session, cmd: &Command) -> Result<&'a [DiffPoly], String> {
    match &cmd.ideal {
        Some(name) => s.ideal(name).ok_or_else(|| format!("no ideal named `{name}` in the session")),
        None => Ok(&s.equations),
    }
}

fn diff_ideal(s: &Session, cmd: &Command) -> Result<DiffIdeal, String> {
    core(DiffIdeal::new(&s.ring, generators(s, cmd)?.to_vec()))
}

pub fn execute(s: &Session, cmd: &Command) -> Report {
    let name = cmd.verb.as_str();
    match run(s, cmd) {
        Ok(v) => Report::ok(name, v),
        Err(Failure::Precondition(m)) => Report::error(name, m),
        Err(Failure::Parse(e)) => Report::parse_error(name, &e),
    }
}

enum Failure {
    Precondition(String),
    Parse(crate::session::ParseError),
}

impl From<String> for Failure {
    fn from(m: String) -> Self {
        Failure::Precondition(m)
    }
}

fn run(s: &Session, cmd: &Command) -> Result<Value, Failure> {
    let r = &s.ring;
    Ok(match cmd.verb {
        Verb::Solve => {
            let (big, points) = core(variety::solve_points(r, generators(s, cmd)?, cmd.ext))?;
            points_json(big.pseudofield(), &points)
        }
        Verb::Adjoint => {
            let j = core(adjoint::to_adjoint(r, generators(s, cmd)?))?;
            sorted(j.format_basis())
        }
        Verb::FromAdjoint => {
            let j = Ideal::new(&s.adjoint_ring, s.adjoint.clone());
            ideal_json(&core(DiffIdeal::from_adjoint(r, &j))?)
        }
        Verb::Dim => json!(diff_ideal(s, cmd)?.dimension()),
        Verb::Pseudoprime => json!(core(diff_ideal(s, cmd)?.is_pseudoprime())?),
        Verb::Pseudomaximal => json!(core(diff_ideal(s, cmd)?.is_pseudomaximal())?),
        Verb::Radical => ideal_json(&core(diff_ideal(s, cmd)?.radical())?),
        Verb::NssCheck => nss(s, cmd)?,
        Verb::Glue => glue(s, cmd)?,
        Verb::IdealOfPoints => {
            let points = read_points(s, input(cmd)?)?;
            ideal_json(&core(variety::ideal_of_points(r, &points))?)
        }
        Verb::Taylor => taylor(s, cmd)?,
        Verb::SigmaIdeal => {
            let c = core(ComponentIdeal::from_generators(r, generators(s, cmd)?))?;
            let under = c.underscore_sigma();
            json!({ "difference": c.is_difference(), "generators": ideal_json(&under) })
        }
    })
}

fn nss(s: &Session, cmd: &Command) -> Outcome {
    let rep = core(variety::nullstellensatz_check(&diff_ideal(s, cmd)?, cmd.ext))?;
    Ok(json!({
        "verdict": rep.status.as_str(),
        "extension": cmd.ext,
        "points": rep.points.len(),
        "radical_degree": rep.radical_degree,
        "inclusion": rep.inclusion,
    }))
}

fn input(cmd: &Command) -> Result<&str, String> {
    cmd.input.as_deref().ok_or_else(|| format!("`{}` needs an input file argument", cmd.verb.as_str()))
}

fn parse_json(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| {
        Failure::Parse(crate::session::ParseError {
            pos: crate::session::Pos { line: e.line(), column: e.column() },
            message: e.to_string(),
        })
    })
}

fn in_input(e: crate::session::ParseError, what: &str) -> Failure {
    Failure::Parse(crate::session::ParseError { pos: e.pos, message: format!("in {what}: {}", e.message) })
}

/// Patch file: `[{"num": "...", "den": "..."}, …]`.
fn glue(s: &Session, cmd: &Command) -> Result<Value, Failure> {
    let v = parse_json(input(cmd)?)?;
    let items = v.as_array().ok_or_else(|| "patch file must hold a JSON array".to_string())?;
    let mut patches = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let field = |key: &str| -> Result<DiffPoly, Failure> {
            let text = item.get(key).and_then(Value::as_str).ok_or_else(|| format!("patch {i} needs a string `{key}`"))?;
            s.parse_poly(text).map_err(|e| in_input(e, &format!("patch {i} `{key}`")))
        };
        patches.push((field("den")?, field("num")?));
    }
    let x = diff_ideal(s, cmd)?;
    let d = core(variety::glue_regular(&patches, &x))?;
    Ok(json!(s.ring.format(&d)))
}

/// Point file: the `solve` result (or a whole `solve` report), entries as
/// numbers or constant strings.
fn read_points(s: &Session, text: &str) -> Result<PointSet, Failure> {
    let mut v = parse_json(text)?;
    if let Some(inner) = v.get_mut("result") {
        v = inner.take();
    }
    let bad = || Failure::Precondition("point file must be an array of points, each an array of coordinate tuples".into());
    let mut out = Vec::new();
    for p in v.as_array().ok_or_else(bad)? {
        let coords = p.as_array().ok_or_else(bad)?;
        if coords.len() != s.ring.n() {
            return Err(format!("a point needs {} coordinates, got {}", s.ring.n(), coords.len()).into());
        }
        let mut point = Vec::new();
        for c in coords {
            let entries = c.as_array().ok_or_else(bad)?;
            let text: Vec<String> = entries.iter().map(plain).collect();
            let elem = s.parse_constant(&format!("({})", text.join(",")));
            point.push(elem.map_err(|e| in_input(e, "point file"))?);
        }
        out.push(point);
    }
    Ok(out)
}

fn taylor(s: &Session, cmd: &Command) -> Outcome {
    let pf = s.pseudofield();
    let g = s.group();
    let sigma = match &cmd.sigma {
        None => g.identity(),
        Some(sym) => g.parse_symbol(sym).ok_or_else(|| format!("unknown group element `{sym}`"))?,
    };
    let hom = core(TaylorHom::new(pf, cmd.factor, cmd.frob, sigma))?;
    let norm = core(pf.taylor_normalize(cmd.factor))?;
    let probes: Vec<PseudofieldElem> = match pf.elements(4096) {
        Ok(all) => all,
        Err(_) => (0..pf.m()).map(|i| pf.indicator(i)).collect(),
    };
    let exhaustive = probes.len() > pf.m() || pf.m() == 1;
    let target = hom.target();
    let evaluation = probes.iter().all(|a| core(target.gamma_eval(sigma, &hom.apply(a))).is_ok_and(|v| v == hom.phi(a)));
    let equivariant = probes
        .iter()
        .all(|a| g.elements().all(|r| hom.apply(&pf.sigma_act(r, a)) == target.sigma_act(r, &hom.apply(a))));
    let rows: Vec<Value> = hom
        .rows
        .iter()
        .zip(g.elements())
        .map(|(&(f, j), t)| json!({ "tau": g.symbol(t), "factor": f, "frobenius": j }))
        .collect();
    let mut m = Map::new();
    m.insert("sigma".into(), json!(g.symbol(sigma)));
    m.insert("factor".into(), json!(cmd.factor));
    m.insert("frobenius".into(), json!(cmd.frob));
    m.insert("rows".into(), Value::Array(rows));
    m.insert("evaluation".into(), json!(evaluation && hom.verify()));
    m.insert("equivariant".into(), json!(equivariant));
    m.insert("exhaustive".into(), json!(exhaustive));
    m.insert("normalization".into(), json!(norm.kind()));
    Ok(Value::Object(m))
}

pub fn lab_report_json(rep: &LabReport) -> Value {
    let items: Vec<Value> = rep
        .items
        .iter()
        .map(|i| json!({ "check": i.name, "passed": i.passed, "instances": i.checked, "witness": i.witness }))
        .collect();
    json!({
        "ring": rep.ring,
        "size": rep.size,
        "ideals": rep.ideals,
        "difference_ideals": rep.difference_ideals,
        "pseudo_spectrum": rep.pseudo_spectrum,
        "checks": items,
        "passed": rep.all_passed(),
    })
}

/// `lab verify <ring>` and `lab list`.
pub fn lab(args: &[String]) -> Report {
    match args {
        [verb] if verb == "list" => Report::ok("lab", json!(finitering::CATALOGUE)),
        [verb, ring] if verb == "verify" => match finitering::catalogue_ring(ring) {
            Ok(r) => {
                let rep = r.verify_pseudoprime_props();
                let status = if rep.all_passed() { Status::Ok } else { Status::Failed };
                Report { command: "lab".into(), status, result: lab_report_json(&rep) }
            }
            Err(e) => Report::error("lab", e),
        },
        _ => Report::error("lab", "usage: dakernel lab list | dakernel lab verify <ring>"),
    }
}
