//! Session files: declarations of `Σ`, `K`, the pseudofield, variables and
//! equations, in a small line-oriented language.
//!
//! ```text
//! group cyclic 2
//! field gf 5
//! vars x
//! eq x + s(x)
//! eq x^2 = 4
//! ```
//!
//! Statements are separated by newlines or by a `/` that is followed by a
//! keyword, so `group cyclic 2 / field gf 2 / vars x / eq x/2` is one line
//! with four statements. `#` starts a comment.

use std::fmt;

use dakernel_core::adjoint::adjoint_ring;
use dakernel_core::{DiffPoly, DiffRing, Field, FieldElem, Group, GroupElem, Poly, PolyRing, Pseudofield, PseudofieldElem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

const KEYWORDS: &[&str] = &["group", "field", "pseudofield", "vars", "eq", "ideal", "adj"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.pos.line, self.pos.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

fn err<T>(pos: Pos, message: impl Into<String>) -> PResult<T> {
    Err(ParseError { pos, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Newline,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn lex(text: &str) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: l + 1, column: i + 1 };
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Int(s.parse().expect("digits")), pos });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '@') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), pos });
            } else if "+-*/^(),=:".contains(c) {
                out.push(Token { tok: Tok::Sym(c), pos });
                i += 1;
            } else {
                return err(pos, format!("unexpected character `{c}`"));
            }
        }
        out.push(Token { tok: Tok::Newline, pos: Pos { line: l + 1, column: chars.len() + 1 } });
    }
    Ok(out)
}

fn is_keyword_tok(t: Option<&Token>) -> bool {
    matches!(t, Some(Token { tok: Tok::Ident(s), .. }) if KEYWORDS.contains(&s.as_str()))
}

/// Splits the token stream into statements.
fn statements(tokens: Vec<Token>) -> Vec<(Vec<Token>, Pos)> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut iter = tokens.into_iter().peekable();
    while let Some(t) = iter.next() {
        let split = match &t.tok {
            Tok::Newline => true,
            Tok::Sym('/') => is_keyword_tok(iter.peek()),
            _ => false,
        };
        if split {
            if !cur.is_empty() {
                out.push((std::mem::take(&mut cur), t.pos));
            }
        } else {
            cur.push(t);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Cayley(Vec<Vec<usize>>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    fn build(&self) -> dakernel_core::Result<Group> {
        match self {
            GroupSpec::Trivial => Ok(Group::trivial()),
            GroupSpec::Cyclic(n) => Group::cyclic(*n),
            GroupSpec::Cayley(rows) => Group::cayley(rows),
            GroupSpec::Product(a, b) => a.build()?.direct_product(&b.build()?),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "trivial"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic {n}"),
            GroupSpec::Cayley(rows) => {
                write!(f, "cayley {}", rows.len())?;
                rows.iter().flatten().try_for_each(|x| write!(f, " {x}"))
            }
            GroupSpec::Product(a, b) => write!(f, "product {a} {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Gf(u64, u32),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Gf(p, 1) => write!(f, "gf {p}"),
            FieldSpec::Gf(p, k) => write!(f, "gf {p} {k}"),
        }
    }
}

/// `fun`, or `product m` followed by `symbol (perm) (twists)` per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudofieldSpec {
    Fun,
    Product { m: usize, generators: Vec<(String, Vec<usize>, Vec<u32>)> },
}

impl fmt::Display for PseudofieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudofieldSpec::Fun => write!(f, "fun"),
            PseudofieldSpec::Product { m, generators } => {
                write!(f, "product {m}")?;
                for (sym, perm, twists) in generators {
                    let join = |v: Vec<String>| v.join(",");
                    write!(
                        f,
                        " {sym} ({}) ({})",
                        join(perm.iter().map(|x| x.to_string()).collect()),
                        join(twists.iter().map(|x| x.to_string()).collect())
                    )?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    pub group_spec: GroupSpec,
    pub field_spec: FieldSpec,
    pub pseudofield_spec: PseudofieldSpec,
    pub ring: DiffRing,
    pub adjoint_ring: PolyRing,
    pub equations: Vec<DiffPoly>,
    pub ideals: Vec<(String, Vec<DiffPoly>)>,
    pub adjoint: Vec<Poly>,
}

impl Session {
    pub fn group(&self) -> &Group {
        self.ring.group()
    }

    pub fn pseudofield(&self) -> &Pseudofield {
        self.ring.pseudofield()
    }

    pub fn field(&self) -> &Field {
        self.ring.pseudofield().base()
    }

    pub fn ideal(&self, name: &str) -> Option<&[DiffPoly]> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, g)| g.as_slice())
    }

    /// The canonical text of the session; parsing it gives the same session.
    pub fn to_canonical(&self) -> String {
        let r = &self.ring;
        let mut out = format!(
            "group {}\nfield {}\npseudofield {}\nvars {}\n",
            self.group_spec,
            self.field_spec,
            self.pseudofield_spec,
            r.var_names().join(" ")
        );
        for f in &self.equations {
            out += &format!("eq {}\n", r.format(f));
        }
        for (name, gens) in &self.ideals {
            let g: Vec<String> = gens.iter().map(|f| r.format(f)).collect();
            out += &format!("ideal {name}: {}\n", g.join(", "));
        }
        if !self.adjoint.is_empty() {
            let g: Vec<String> = self.adjoint.iter().map(|f| self.adjoint_ring.format(f)).collect();
            out += &format!("adj {}\n", g.join(", "));
        }
        out
    }

    /// Parses one difference polynomial in this session's ring.
    pub fn parse_poly(&self, text: &str) -> PResult<DiffPoly> {
        let tokens: Vec<Token> = lex(text)?.into_iter().filter(|t| t.tok != Tok::Newline).collect();
        let end = tokens.last().map_or(Pos { line: 1, column: 1 }, |t| t.pos);
        let mut c = Cursor { toks: &tokens, i: 0, end };
        let e = c.expr(self.group())?;
        c.finish()?;
        eval_diff(&self.ring, &e)
    }

    /// Parses a constant of the pseudofield: a scalar or a tuple.
    pub fn parse_constant(&self, text: &str) -> PResult<PseudofieldElem> {
        let f = self.parse_poly(text)?;
        constant_of(&self.ring, &f).map_or_else(|| err(Pos { line: 1, column: 1 }, format!("`{text}` is not a constant")), Ok)
    }
}

#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Ident(String),
    Apply(GroupElem, Box<Node>),
    Tuple(Vec<Node>),
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

#[derive(Debug, Clone)]
struct Node {
    expr: Expr,
    pos: Pos,
}

struct Cursor<'a> {
    toks: &'a [Token],
    i: usize,
    end: Pos,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.i);
        self.i += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos(), format!("expected `{c}`"))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Pos)> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Ident(s), .. }) => Ok((s.clone(), pos)),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn int(&mut self, what: &str) -> PResult<(u64, Pos)> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Int(n), .. }) => match n.to_u64() {
                Some(v) => Ok((v, pos)),
                None => err(pos, format!("{what} is too large")),
            },
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn keyword(&mut self, words: &[&str]) -> PResult<(&'a str, Pos)> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Ident(s), .. }) if words.contains(&s.as_str()) => Ok((s.as_str(), pos)),
            _ => err(pos, format!("expected one of: {}", words.join(", "))),
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.i < self.toks.len() {
            err(self.pos(), "unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn expr(&mut self, g: &Group) -> PResult<Node> {
        let pos = self.pos();
        let mut lhs = if self.eat('-') {
            let t = self.term(g)?;
            Node { expr: Expr::Neg(Box::new(t)), pos }
        } else {
            self.eat('+');
            self.term(g)?
        };
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Some(Tok::Sym(c @ ('+' | '-'))) => *c,
                _ => return Ok(lhs),
            };
            self.i += 1;
            let rhs = self.term(g)?;
            lhs = Node { expr: Expr::Bin(op, Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn term(&mut self, g: &Group) -> PResult<Node> {
        let mut lhs = self.factor(g)?;
        loop {
            let pos = self.pos();
            let op = match self.peek() {
                Some(Tok::Sym(c @ ('*' | '/'))) => *c,
                _ => return Ok(lhs),
            };
            self.i += 1;
            let rhs = self.factor(g)?;
            lhs = Node { expr: Expr::Bin(op, Box::new(lhs), Box::new(rhs)), pos };
        }
    }

    fn factor(&mut self, g: &Group) -> PResult<Node> {
        let pos = self.pos();
        if self.eat('-') {
            let f = self.factor(g)?;
            return Ok(Node { expr: Expr::Neg(Box::new(f)), pos });
        }
        let base = self.atom(g)?;
        if self.eat('^') {
            let (k, kpos) = self.int("an exponent")?;
            let k = u32::try_from(k).or_else(|_| err(kpos, "exponent is too large"))?;
            return Ok(Node { expr: Expr::Pow(Box::new(base), k), pos });
        }
        Ok(base)
    }

    fn atom(&mut self, g: &Group) -> PResult<Node> {
        let pos = self.pos();
        match self.next().map(|t| &t.tok) {
            Some(Tok::Int(n)) => Ok(Node { expr: Expr::Int(n.clone()), pos }),
            Some(Tok::Ident(name)) => {
                if self.peek() != Some(&Tok::Sym('(')) {
                    return Ok(Node { expr: Expr::Ident(name.clone()), pos });
                }
                let s = resolve_symbol(g, name, pos)?;
                self.i += 1;
                let inner = self.expr(g)?;
                self.expect(')')?;
                Ok(Node { expr: Expr::Apply(s, Box::new(inner)), pos })
            }
            Some(Tok::Sym('(')) => {
                let first = self.expr(g)?;
                if self.eat(')') {
                    return Ok(first);
                }
                let mut items = vec![first];
                while self.eat(',') {
                    items.push(self.expr(g)?);
                }
                self.expect(')')?;
                Ok(Node { expr: Expr::Tuple(items), pos })
            }
            _ => err(pos, "expected a number, variable, group application or `(`"),
        }
    }

    fn expr_list(&mut self, g: &Group) -> PResult<Vec<Node>> {
        let mut out = vec![self.expr(g)?];
        while self.eat(',') {
            out.push(self.expr(g)?);
        }
        Ok(out)
    }

    /// `(a,b,…)` of non-negative integers.
    fn int_tuple(&mut self, what: &str) -> PResult<(Vec<u64>, Pos)> {
        let pos = self.pos();
        self.expect('(')?;
        let mut out = vec![self.int(what)?.0];
        while self.eat(',') {
            out.push(self.int(what)?.0);
        }
        self.expect(')')?;
        Ok((out, pos))
    }
}

fn resolve_symbol(g: &Group, name: &str, pos: Pos) -> PResult<GroupElem> {
    if !g.looks_like_symbol(name) {
        return err(pos, format!("unknown identifier `{name}`"));
    }
    let digits = name.trim_start_matches(|c: char| c.is_alphabetic());
    let in_range = digits.is_empty() || digits.parse::<usize>().is_ok_and(|k| k < g.order());
    match g.parse_symbol(name) {
        Some(s) if in_range => Ok(s),
        _ => err(pos, format!("group element `{name}` out of range for a group of order {}", g.order())),
    }
}

fn scalar_of_int(k: &Field, n: &BigInt) -> FieldElem {
    if k.is_rational() {
        k.from_rational(BigRational::from_integer(n.clone())).expect("rational field")
    } else {
        let p = BigInt::from(k.characteristic());
        let r = ((n % &p) + &p) % &p;
        k.element(r.to_u64().expect("reduced mod p")).expect("below p")
    }
}

fn constant_of(r: &DiffRing, f: &DiffPoly) -> Option<PseudofieldElem> {
    if f.is_zero() {
        return Some(r.pseudofield().zero());
    }
    let mut terms = f.terms();
    let (m, c) = terms.next()?;
    (terms.next().is_none() && m.is_one()).then(|| c.clone())
}

fn eval_diff(r: &DiffRing, node: &Node) -> PResult<DiffPoly> {
    let pf = r.pseudofield();
    let k = pf.base();
    Ok(match &node.expr {
        Expr::Int(n) => r.scalar(scalar_of_int(k, n)),
        Expr::Ident(name) => match r.var_index(name) {
            Some(i) => r.var(i, GroupElem::IDENTITY),
            None if name == "w" => match k.generator() {
                Some(w) => r.scalar(w),
                None => return err(node.pos, "`w` needs an extension field"),
            },
            None => return err(node.pos, format!("undeclared variable `{name}`")),
        },
        Expr::Apply(s, inner) => r.act_poly(*s, &eval_diff(r, inner)?),
        Expr::Tuple(items) => {
            if items.len() != pf.m() {
                return err(
                    node.pos,
                    format!("arity mismatch: tuple has {} entries but the pseudofield has {} factors", items.len(), pf.m()),
                );
            }
            let mut coords = Vec::new();
            for item in items {
                let v = eval_diff(r, item)?;
                match constant_of(r, &v) {
                    Some(c) if c.coords().windows(2).all(|w| w[0] == w[1]) => coords.push(c.coords()[0].clone()),
                    _ => return err(item.pos, "tuple entries must be field constants"),
                }
            }
            r.constant(pf.element(coords).expect("length checked"))
        }
        Expr::Neg(a) => r.neg(&eval_diff(r, a)?),
        Expr::Pow(a, e) => r.pow(&eval_diff(r, a)?, *e),
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval_diff(r, a)?, eval_diff(r, b)?);
            match op {
                '+' => r.add(&x, &y),
                '-' => r.sub(&x, &y),
                '*' => r.mul(&x, &y),
                _ => match constant_of(r, &y) {
                    Some(c) if pf.is_unit(&c) => r.scale(&x, &pf.pseudo_inverse(&c).astar),
                    Some(_) => return err(b.pos, "division by a constant that is not invertible"),
                    None => return err(b.pos, "division is only allowed by constants"),
                },
            }
        }
    })
}

fn eval_adj(ar: &PolyRing, node: &Node) -> PResult<Poly> {
    let k = ar.field();
    Ok(match &node.expr {
        Expr::Int(n) => ar.constant(scalar_of_int(k, n)),
        Expr::Ident(name) => match ar.var_index(name) {
            Some(i) => ar.var(i),
            None if name == "w" => match k.generator() {
                Some(w) => ar.constant(w),
                None => return err(node.pos, "`w` needs an extension field"),
            },
            None => return err(node.pos, format!("undeclared adjoint variable `{name}`")),
        },
        Expr::Apply(..) => return err(node.pos, "group operators are not allowed in adjoint polynomials; use `name@symbol`"),
        Expr::Tuple(_) => return err(node.pos, "tuples are not allowed in adjoint polynomials"),
        Expr::Neg(a) => ar.neg(&eval_adj(ar, a)?),
        Expr::Pow(a, e) => ar.pow(&eval_adj(ar, a)?, *e),
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval_adj(ar, a)?, eval_adj(ar, b)?);
            match op {
                '+' => ar.add(&x, &y),
                '-' => ar.sub(&x, &y),
                '*' => ar.mul(&x, &y),
                _ if y.is_constant() && !y.is_zero() => {
                    ar.scale(&x, &k.inv(&y.terms()[0].1).expect("nonzero constant"))
                }
                _ => return err(b.pos, "division is only allowed by nonzero constants"),
            }
        }
    })
}

fn group_spec(c: &mut Cursor) -> PResult<GroupSpec> {
    let (kind, _) = c.keyword(&["trivial", "cyclic", "cayley", "product"])?;
    Ok(match kind {
        "trivial" => GroupSpec::Trivial,
        "cyclic" => GroupSpec::Cyclic(c.int("a group order")?.0 as usize),
        "cayley" => {
            let (n, npos) = c.int("a group order")?;
            let n = n as usize;
            if n == 0 || n > dakernel_core::group::MAX_ORDER {
                return err(npos, format!("group order must be in 1..={}", dakernel_core::group::MAX_ORDER));
            }
            let mut entries = Vec::new();
            while let Some(Tok::Int(_)) = c.peek() {
                entries.push(c.int("a table entry")?.0 as usize);
            }
            if entries.len() != n * n {
                return err(npos, format!("arity mismatch: a Cayley table of order {n} needs {} entries, got {}", n * n, entries.len()));
            }
            GroupSpec::Cayley(entries.chunks(n).map(<[usize]>::to_vec).collect())
        }
        _ => {
            let a = group_spec(c)?;
            let b = group_spec(c)?;
            GroupSpec::Product(Box::new(a), Box::new(b))
        }
    })
}

fn core_err<T>(pos: Pos, r: dakernel_core::Result<T>) -> PResult<T> {
    r.or_else(|e| err(pos, e.to_string()))
}

#[derive(Default)]
struct Builder {
    group: Option<(GroupSpec, Group)>,
    field: Option<(FieldSpec, Field)>,
    pseudofield: Option<(PseudofieldSpec, Pseudofield)>,
    ring: Option<(DiffRing, PolyRing)>,
    equations: Vec<DiffPoly>,
    ideals: Vec<(String, Vec<DiffPoly>)>,
    adjoint: Vec<Poly>,
}

impl Builder {
    fn statement(&mut self, toks: &[Token], end: Pos) -> PResult<()> {
        let mut c = Cursor { toks, i: 0, end };
        let (kw, pos) = c.keyword(KEYWORDS)?;
        match kw {
            "group" => {
                if self.group.is_some() {
                    return err(pos, "group already declared; a session has a single group");
                }
                let spec = group_spec(&mut c)?;
                let g = core_err(pos, spec.build())?;
                self.group = Some((spec, g));
            }
            "field" => {
                if self.field.is_some() {
                    return err(pos, "field already declared; a session has a single field");
                }
                let (kind, _) = c.keyword(&["gf", "rational"])?;
                let spec = if kind == "rational" {
                    FieldSpec::Rational
                } else {
                    let p = c.int("a prime")?.0;
                    let k = if let Some(Tok::Int(_)) = c.peek() { c.int("a degree")?.0 as u32 } else { 1 };
                    FieldSpec::Gf(p, k)
                };
                let f = match &spec {
                    FieldSpec::Rational => Field::rationals(),
                    FieldSpec::Gf(p, k) => core_err(pos, Field::gf(*p, *k))?,
                };
                self.field = Some((spec, f));
            }
            "pseudofield" => {
                if self.pseudofield.is_some() {
                    return err(pos, "pseudofield already declared");
                }
                let ((_, g), (_, k)) = self.base(pos, "pseudofield")?;
                let (g, k) = (g.clone(), k.clone());
                let (kind, _) = c.keyword(&["fun", "product"])?;
                let (spec, pf) = if kind == "fun" {
                    (PseudofieldSpec::Fun, Pseudofield::fun_of(&k, &g))
                } else {
                    let m = c.int("a number of factors")?.0 as usize;
                    let mut generators = Vec::new();
                    let mut core_gens = Vec::new();
                    while c.peek().is_some() {
                        let (sym, spos) = c.ident("a group symbol")?;
                        let s = resolve_symbol(&g, &sym, spos)?;
                        let (perm, ppos) = c.int_tuple("a factor index")?;
                        let (twists, tpos) = c.int_tuple("a Frobenius exponent")?;
                        if perm.len() != m || twists.len() != m {
                            let at = if perm.len() != m { ppos } else { tpos };
                            return err(at, format!("arity mismatch: expected {m} entries"));
                        }
                        let perm: Vec<usize> = perm.into_iter().map(|x| x as usize).collect();
                        let twists: Vec<u32> = twists.into_iter().map(|x| x as u32).collect();
                        core_gens.push((s, perm.clone(), twists.clone()));
                        generators.push((g.symbol(s), perm, twists));
                    }
                    let pf = core_err(pos, Pseudofield::product(&k, &g, m, &core_gens))?;
                    (PseudofieldSpec::Product { m, generators }, pf)
                };
                self.pseudofield = Some((spec, pf));
            }
            "vars" => {
                if self.ring.is_some() {
                    return err(pos, "variables already declared");
                }
                let ((_, g), (_, k)) = self.base(pos, "vars")?;
                let (g, k) = (g.clone(), k.clone());
                let mut names: Vec<String> = Vec::new();
                while c.peek().is_some() {
                    let (name, npos) = c.ident("a variable name")?;
                    if KEYWORDS.contains(&name.as_str()) || name == "w" || g.looks_like_symbol(&name) || name.contains('@') {
                        return err(npos, format!("`{name}` is reserved and cannot name a variable"));
                    }
                    if names.contains(&name) {
                        return err(npos, format!("variable `{name}` declared twice"));
                    }
                    names.push(name);
                }
                if names.is_empty() {
                    return err(pos, "expected at least one variable name");
                }
                let pf = match &self.pseudofield {
                    Some((_, pf)) => pf.clone(),
                    None => {
                        let pf = Pseudofield::fun_of(&k, &g);
                        self.pseudofield = Some((PseudofieldSpec::Fun, pf.clone()));
                        pf
                    }
                };
                let r = core_err(pos, DiffRing::with_names(&pf, names))?;
                let ar = adjoint_ring(&r);
                self.ring = Some((r, ar));
            }
            "eq" => {
                let r = self.ring(pos, "eq")?.0.clone();
                let g = r.group().clone();
                let lhs = c.expr(&g)?;
                let mut f = eval_diff(&r, &lhs)?;
                if c.eat('=') {
                    let rhs = c.expr(&g)?;
                    f = r.sub(&f, &eval_diff(&r, &rhs)?);
                }
                c.finish()?;
                self.equations.push(f);
            }
            "ideal" => {
                let r = self.ring(pos, "ideal")?.0.clone();
                let (name, npos) = c.ident("an ideal name")?;
                if self.ideals.iter().any(|(n, _)| *n == name) {
                    return err(npos, format!("ideal `{name}` declared twice"));
                }
                c.expect(':')?;
                let gens = c.expr_list(r.group())?.iter().map(|e| eval_diff(&r, e)).collect::<PResult<_>>()?;
                c.finish()?;
                self.ideals.push((name, gens));
            }
            _ => {
                let (r, ar) = self.ring(pos, "adj")?;
                let (g, ar) = (r.group().clone(), ar.clone());
                let gens = c.expr_list(&g)?;
                c.finish()?;
                for e in &gens {
                    let p = eval_adj(&ar, e)?;
                    self.adjoint.push(p);
                }
            }
        }
        c.finish()
    }

    #[allow(clippy::type_complexity)]
    fn base(&self, pos: Pos, what: &str) -> PResult<(&(GroupSpec, Group), &(FieldSpec, Field))> {
        match (&self.group, &self.field) {
            (Some(g), Some(f)) => Ok((g, f)),
            (None, _) => err(pos, format!("`{what}` needs a preceding `group` declaration")),
            (_, None) => err(pos, format!("`{what}` needs a preceding `field` declaration")),
        }
    }

    fn ring(&self, pos: Pos, what: &str) -> PResult<&(DiffRing, PolyRing)> {
        self.ring.as_ref().map_or_else(|| err(pos, format!("`{what}` needs a preceding `vars` declaration")), Ok)
    }
}

pub fn parse_session(text: &str) -> PResult<Session> {
    let mut b = Builder::default();
    for (toks, end) in statements(lex(text)?) {
        b.statement(&toks, end)?;
    }
    let end = Pos { line: text.lines().count().max(1), column: 1 };
    let (ring, adjoint_ring) = match b.ring.take() {
        Some(r) => r,
        None => return err(end, "session declares no variables"),
    };
    let (group_spec, _) = b.group.expect("checked by vars");
    let (field_spec, _) = b.field.expect("checked by vars");
    let (pseudofield_spec, _) = b.pseudofield.expect("set by vars");
    Ok(Session {
        group_spec,
        field_spec,
        pseudofield_spec,
        ring,
        adjoint_ring,
        equations: b.equations,
        ideals: b.ideals,
        adjoint: b.adjoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statements_split_on_keyword_slashes() {
        let s = parse_session("group cyclic 2 / field gf 5 / vars x / eq x/2 + s(x) / eq x^2 - 4").unwrap();
        assert_eq!(s.equations.len(), 2);
        assert_eq!(s.ring.format(&s.equations[0]), "3*x + s(x)");
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_session("group cyclic 2\nfield gf 3\nvars y1\neq y2 + 1").unwrap_err();
        assert_eq!(e.pos, Pos { line: 4, column: 4 });
        assert!(e.message.contains("undeclared variable"));
        let e = parse_session("group cyclic 2 / field gf 3 / vars y / eq s3(y)").unwrap_err();
        assert!(e.message.contains("out of range"), "{e}");
        let e = parse_session("group cyclic 2 / field gf 3 / vars y / eq (1,2,0)*y").unwrap_err();
        assert!(e.message.contains("arity mismatch"), "{e}");
        let e = parse_session("group cyclic 2 / field gf 3 / vars y / eq t(y)").unwrap_err();
        assert!(e.message.contains("unknown identifier"), "{e}");
    }

    #[test]
    fn tuples_and_extension_constants() {
        let s = parse_session("group cyclic 2\nfield gf 3 2\nvars y\neq (1,w)*s(y) + w + 1").unwrap();
        assert_eq!(s.ring.format(&s.equations[0]), "(1,w)*s(y) + w+1");
        let c = s.parse_constant("(w+1, 2)").unwrap();
        assert_eq!(s.pseudofield().format(&c), "(w+1,2)");
    }
}
