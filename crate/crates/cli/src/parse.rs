//! Line-oriented text formats.
//!
//! Every format shares the same lexical rules: `#` starts a comment,
//! tokens are whitespace separated, and rational literals are `[-]a[/b]`.
//! Directives (`dim`, `basis`, `algebra`, …) come before data lines.

use std::collections::BTreeMap;
use std::fmt;

use jjcoh_core::algebra::ProductRule;
use jjcoh_core::linalg::{format_rational, parse_rational};
use jjcoh_core::{Algebra, AlgebraError, Cochain, GeneralAlgebra, RatMatrix, Rational};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.source, self.message)
        } else {
            write!(f, "{}:{}:{}: {}", self.source, self.line, self.col, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Tok<'a> {
    pub text: &'a str,
    pub col: usize,
}

#[derive(Debug)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub toks: Vec<Tok<'a>>,
}

pub(crate) struct Lexed<'a> {
    pub source: String,
    pub lines: Vec<Line<'a>>,
}

impl<'a> Lexed<'a> {
    pub fn new(source: &str, text: &'a str) -> Self {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        toks.push(Tok {
                            text: &body[s..pos],
                            col: body[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            if !toks.is_empty() {
                lines.push(Line { number: i + 1, toks });
            }
        }
        Lexed {
            source: source.to_string(),
            lines,
        }
    }

    pub fn err(&self, line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            source: self.source.clone(),
            line,
            col,
            message: message.into(),
        }
    }

    pub fn at(&self, line: &Line, tok: &Tok, message: impl Into<String>) -> ParseError {
        self.err(line.number, tok.col, message)
    }

    pub fn whole(&self, message: impl Into<String>) -> ParseError {
        self.err(0, 0, message)
    }
}

pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s.contains(['*', '=', '+', ',', '(', ')', '.', ':'])
        && s.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
}

fn lookup(names: &[String], s: &str) -> Option<usize> {
    names.iter().position(|n| n == s)
}

pub(crate) fn rational_at(lx: &Lexed, line: &Line, tok: &Tok) -> Result<Rational, ParseError> {
    parse_rational(tok.text).map_err(|_| lx.at(line, tok, format!("malformed rational {:?}", tok.text)))
}

fn count_at(lx: &Lexed, line: &Line, tok: &Tok) -> Result<usize, ParseError> {
    tok.text
        .parse()
        .map_err(|_| lx.at(line, tok, format!("expected a non-negative integer, found {:?}", tok.text)))
}

/// `q1 n1 + q2 n2 + …` (a bare name means coefficient 1; a lone `0` is the
/// zero vector).
pub(crate) fn parse_terms(
    lx: &Lexed,
    line: &Line,
    toks: &[Tok],
    names: &[String],
) -> Result<Vec<(usize, Rational)>, ParseError> {
    let end_col = line.toks.last().map_or(1, |t| t.col + t.text.len());
    if toks.is_empty() {
        return Err(lx.err(line.number, end_col, "missing right-hand side"));
    }
    if toks.len() == 1 && parse_rational(toks[0].text).is_ok_and(|q| q.is_zero()) {
        return Ok(Vec::new());
    }
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for group in toks.split(|t| t.text == "+") {
        let (q, name) = match group {
            [n] => (Rational::from_integer(1.into()), n),
            [q, n] => (rational_at(lx, line, q)?, n),
            [] => return Err(lx.err(line.number, end_col, "empty term around '+'")),
            [_, _, extra, ..] => return Err(lx.at(line, extra, "expected '+' between terms")),
        };
        let k = lookup(names, name.text)
            .ok_or_else(|| lx.at(line, name, format!("unknown basis element {:?}", name.text)))?;
        match out.iter_mut().find(|(j, _)| *j == k) {
            Some((_, acc)) => *acc += q,
            None => out.push((k, q)),
        }
    }
    out.retain(|(_, q)| !q.is_zero());
    Ok(out)
}

/// Splits a line at the `=` token.
pub(crate) fn split_eq<'t, 'a>(
    lx: &Lexed,
    line: &'t Line<'a>,
) -> Result<(&'t [Tok<'a>], &'t [Tok<'a>]), ParseError> {
    let pos = line
        .toks
        .iter()
        .position(|t| t.text == "=")
        .ok_or_else(|| lx.at(line, &line.toks[0], "expected '='"))?;
    Ok((&line.toks[..pos], &line.toks[pos + 1..]))
}

/// Joins the left-hand tokens and splits at `op`, so `e1*e2` and
/// `e1 * e2` read the same.
fn binary_lhs(
    lx: &Lexed,
    line: &Line,
    lhs: &[Tok],
    op: char,
    left: &[String],
    right: &[String],
) -> Result<(usize, usize), ParseError> {
    let first = lhs.first().copied().unwrap_or(line.toks[0]);
    let joined: String = lhs.iter().map(|t| t.text).collect();
    let (a, b) = joined
        .split_once(op)
        .ok_or_else(|| lx.at(line, &first, format!("expected `x{op}y` before '='")))?;
    let i = lookup(left, a).ok_or_else(|| lx.at(line, &first, format!("unknown basis element {a:?}")))?;
    let j = lookup(right, b).ok_or_else(|| lx.at(line, &first, format!("unknown basis element {b:?}")))?;
    Ok((i, j))
}

/// `name(a1,…,ap)` → (name, arg indices).
fn call_lhs<'t>(
    lx: &Lexed,
    line: &Line,
    lhs: &'t [Tok],
    names: &[String],
) -> Result<(String, Vec<usize>), ParseError> {
    let first = lhs.first().copied().unwrap_or(line.toks[0]);
    let joined: String = lhs.iter().map(|t| t.text).collect();
    let bad = || lx.at(line, &first, "expected `name(x1,...,xp)` before '='");
    let (head, rest) = joined.split_once('(').ok_or_else(bad)?;
    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
    let args = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|a| lookup(names, a).ok_or_else(|| lx.at(line, &first, format!("unknown basis element {a:?}"))))
            .collect::<Result<_, _>>()?
    };
    Ok((head.to_string(), args))
}

/// Header directives shared by the formats. Returns the index of the first
/// data line.
struct Header<'a> {
    values: BTreeMap<&'static str, (usize, Vec<Tok<'a>>)>,
    first_data: usize,
}

fn read_header<'a>(lx: &Lexed<'a>, known: &[&'static str]) -> Result<Header<'a>, ParseError> {
    let mut values = BTreeMap::new();
    let mut first_data = lx.lines.len();
    for (idx, line) in lx.lines.iter().enumerate() {
        let head = line.toks[0].text;
        match known.iter().find(|k| **k == head) {
            Some(k) => {
                if values.insert(*k, (line.number, line.toks[1..].to_vec())).is_some() {
                    return Err(lx.at(line, &line.toks[0], format!("duplicate `{k}` directive")));
                }
            }
            None => {
                first_data = idx;
                break;
            }
        }
    }
    for line in &lx.lines[first_data..] {
        if known.contains(&line.toks[0].text) {
            return Err(lx.at(line, &line.toks[0], "directives must precede data lines"));
        }
    }
    Ok(Header { values, first_data })
}

impl<'a> Header<'a> {
    fn single(&self, lx: &Lexed, key: &str) -> Result<Option<(usize, Tok<'a>)>, ParseError> {
        match self.values.get(key) {
            None => Ok(None),
            Some((n, toks)) if toks.len() == 1 => Ok(Some((*n, toks[0]))),
            Some((n, toks)) => Err(lx.err(
                *n,
                toks.get(1).map_or(1, |t| t.col),
                format!("`{key}` takes exactly one argument"),
            )),
        }
    }

    fn count(&self, lx: &Lexed, key: &str) -> Result<Option<usize>, ParseError> {
        match self.single(lx, key)? {
            None => Ok(None),
            Some((n, t)) => {
                let line = Line { number: n, toks: vec![t] };
                count_at(lx, &line, &t).map(Some)
            }
        }
    }

    fn flag(&self, lx: &Lexed, key: &str) -> Result<bool, ParseError> {
        match self.values.get(key) {
            None => Ok(false),
            Some((_, toks)) if toks.is_empty() => Ok(true),
            Some((n, toks)) => Err(lx.err(*n, toks[0].col, format!("`{key}` takes no arguments"))),
        }
    }

    fn names(&self, lx: &Lexed, key: &str, n: usize, prefix: &str) -> Result<Vec<String>, ParseError> {
        let Some((line, toks)) = self.values.get(key) else {
            return Ok(default_names(prefix, n));
        };
        if toks.len() != n {
            return Err(lx.err(*line, toks.first().map_or(1, |t| t.col), format!("`{key}` lists {} names, expected {n}", toks.len())));
        }
        let mut out: Vec<String> = Vec::new();
        for t in toks {
            if !valid_name(t.text) || parse_rational(t.text).is_ok() {
                return Err(lx.err(*line, t.col, format!("invalid basis name {:?}", t.text)));
            }
            if out.iter().any(|o| o == t.text) {
                return Err(lx.err(*line, t.col, format!("duplicate basis name {:?}", t.text)));
            }
            out.push(t.text.to_string());
        }
        Ok(out)
    }
}

fn require<T>(lx: &Lexed, v: Option<T>, key: &str) -> Result<T, ParseError> {
    v.ok_or_else(|| lx.whole(format!("missing `{key}` directive")))
}

/// An algebra file. `general` marks a table that is taken literally
/// (no symmetric completion), as needed for admissible targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedAlgebra {
    Commutative(Algebra),
    General(GeneralAlgebra),
}

impl ParsedAlgebra {
    pub fn into_general(self) -> GeneralAlgebra {
        match self {
            ParsedAlgebra::Commutative(a) => a.into_general(),
            ParsedAlgebra::General(g) => g,
        }
    }
}

pub fn parse_algebra_any(source: &str, text: &str) -> Result<ParsedAlgebra, ParseError> {
    let lx = Lexed::new(source, text);
    let h = read_header(&lx, &["dim", "basis", "general"])?;
    let n = require(&lx, h.count(&lx, "dim")?, "dim")?;
    let names = h.names(&lx, "basis", n, "e")?;
    let general = h.flag(&lx, "general")?;
    let mut rules: Vec<ProductRule> = Vec::new();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for line in &lx.lines[h.first_data..] {
        let (lhs, rhs) = split_eq(&lx, line)?;
        let (i, j) = binary_lhs(&lx, line, lhs, '*', &names, &names)?;
        if let Some(prev) = seen.insert((i, j), line.number) {
            return Err(lx.at(line, &line.toks[0], format!("product {}*{} already given on line {prev}", names[i], names[j])));
        }
        rules.push(((i, j), parse_terms(&lx, line, rhs, &names)?));
    }
    let conflict = |e: AlgebraError| match e {
        AlgebraError::SymmetryConflict { i, j } => lx.err(
            seen.get(&(j, i)).copied().unwrap_or(0),
            1,
            format!("products {a}*{b} and {b}*{a} disagree", a = names[i], b = names[j]),
        ),
        other => lx.whole(other.to_string()),
    };
    if general {
        let g = GeneralAlgebra::from_products(n, &rules)
            .and_then(|g| g.with_names(names.clone()))
            .map_err(conflict)?;
        Ok(ParsedAlgebra::General(g))
    } else {
        let a = Algebra::from_products(n, &rules)
            .and_then(|a| a.with_names(names.clone()))
            .map_err(conflict)?;
        Ok(ParsedAlgebra::Commutative(a))
    }
}

/// Parses a commutative algebra (symmetric completion applied).
pub fn parse_algebra(source: &str, text: &str) -> Result<Algebra, ParseError> {
    match parse_algebra_any(source, text)? {
        ParsedAlgebra::Commutative(a) => Ok(a),
        ParsedAlgebra::General(_) => Err(ParseError {
            source: source.to_string(),
            line: 0,
            col: 0,
            message: "expected a commutative algebra, found `general`".into(),
        }),
    }
}

fn render_vector(v: &[Rational], names: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(k, q)| format!("{} {}", format_rational(q), names[k]))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn render_table(out: &mut String, g: &GeneralAlgebra, upper_only: bool) {
    let n = g.dim();
    let names = g.basis_names();
    out.push_str(&format!("dim {n}\nbasis {}\n", names.join(" ")));
    if !upper_only {
        out.push_str("general\n");
    }
    for i in 0..n {
        for j in if upper_only { i..n } else { 0..n } {
            let v = g.basis_product(i, j);
            if v.iter().any(|q| !q.is_zero()) {
                out.push_str(&format!("{}*{} = {}\n", names[i], names[j], render_vector(v, names)));
            }
        }
    }
}

pub fn render_algebra(a: &Algebra) -> String {
    let mut s = String::new();
    render_table(&mut s, a.as_general(), true);
    s
}

pub fn render_general(g: &GeneralAlgebra) -> String {
    let mut s = String::new();
    render_table(&mut s, g, false);
    s
}

/// Symmetric bilinear form: `dim`, optional `basis`, then `x y = q`.
pub fn parse_form(source: &str, text: &str) -> Result<(Vec<String>, RatMatrix), ParseError> {
    let lx = Lexed::new(source, text);
    let h = read_header(&lx, &["dim", "basis"])?;
    let n = require(&lx, h.count(&lx, "dim")?, "dim")?;
    let names = h.names(&lx, "basis", n, "e")?;
    let mut m = RatMatrix::zeros(n, n);
    let mut seen: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for line in &lx.lines[h.first_data..] {
        let (lhs, rhs) = split_eq(&lx, line)?;
        let [a, b] = lhs else {
            return Err(lx.at(line, &line.toks[0], "expected `x y = q`"));
        };
        let idx = |t: &Tok| lookup(&names, t.text).ok_or_else(|| lx.at(line, t, format!("unknown basis element {:?}", t.text)));
        let (i, j) = (idx(a)?, idx(b)?);
        let [q] = rhs else {
            return Err(lx.at(line, &line.toks[0], "expected a single rational after '='"));
        };
        let q = rational_at(&lx, line, q)?;
        let key = (i.min(j), i.max(j));
        if let Some(prev) = seen.get(&key) {
            if *prev != q || i == j {
                return Err(lx.at(line, a, format!("entry ({}, {}) given twice", names[i], names[j])));
            }
        }
        seen.insert(key, q.clone());
        m.set(i, j, q.clone());
        m.set(j, i, q);
    }
    Ok((names, m))
}

pub fn render_form(names: &[String], m: &RatMatrix) -> String {
    let n = m.rows();
    let mut s = format!("dim {n}\nbasis {}\n", names.join(" "));
    for i in 0..n {
        for j in i..n {
            let q = m.get(i, j);
            if !q.is_zero() {
                s.push_str(&format!("{} {} = {}\n", names[i], names[j], format_rational(q)));
            }
        }
    }
    s
}

/// A representation file before its algebra is resolved.
#[derive(Debug)]
pub struct RepSpec {
    pub algebra_ref: String,
    pub module_dim: usize,
    pub module_names: Vec<String>,
    text: String,
    source: String,
}

pub fn parse_rep_header(source: &str, text: &str) -> Result<RepSpec, ParseError> {
    let lx = Lexed::new(source, text);
    let h = read_header(&lx, &["algebra", "module", "basis"])?;
    let algebra_ref = require(&lx, h.single(&lx, "algebra")?, "algebra")?.1.text.to_string();
    let module_dim = require(&lx, h.count(&lx, "module")?, "module")?;
    let module_names = h.names(&lx, "basis", module_dim, "m")?;
    Ok(RepSpec {
        algebra_ref,
        module_dim,
        module_names,
        text: text.to_string(),
        source: source.to_string(),
    })
}

/// Action lines `x.m = q1 m1 + …`, giving one `M×M` matrix per basis
/// element of the algebra.
pub fn parse_rep_actions(spec: &RepSpec, algebra_names: &[String]) -> Result<Vec<RatMatrix>, ParseError> {
    let lx = Lexed::new(&spec.source, &spec.text);
    let h = read_header(&lx, &["algebra", "module", "basis"])?;
    let m = spec.module_dim;
    let mut actions = vec![RatMatrix::zeros(m, m); algebra_names.len()];
    let mut seen = BTreeMap::new();
    for line in &lx.lines[h.first_data..] {
        let (lhs, rhs) = split_eq(&lx, line)?;
        let (i, a) = binary_lhs(&lx, line, lhs, '.', algebra_names, &spec.module_names)?;
        if seen.insert((i, a), line.number).is_some() {
            return Err(lx.at(line, &line.toks[0], "action given twice"));
        }
        for (b, q) in parse_terms(&lx, line, rhs, &spec.module_names)? {
            actions[i].set(b, a, q);
        }
    }
    Ok(actions)
}

/// Cochain file: `degree p`, optional `symmetric`, then
/// `c(x1,…,xp) = q1 m1 + …`.
pub fn parse_cochain(
    source: &str,
    text: &str,
    algebra_names: &[String],
    module_names: &[String],
) -> Result<Cochain, ParseError> {
    let lx = Lexed::new(source, text);
    let h = read_header(&lx, &["degree", "symmetric"])?;
    let p = require(&lx, h.count(&lx, "degree")?, "degree")?;
    let symmetric = h.flag(&lx, "symmetric")?;
    let (n, m) = (algebra_names.len(), module_names.len());
    let mut entries = Vec::new();
    let mut seen = BTreeMap::new();
    for line in &lx.lines[h.first_data..] {
        let (lhs, rhs) = split_eq(&lx, line)?;
        let (head, args) = call_lhs(&lx, line, lhs, algebra_names)?;
        if head != "c" {
            return Err(lx.at(line, &line.toks[0], format!("expected `c(...)`, found {head:?}")));
        }
        if args.len() != p {
            return Err(lx.at(line, &line.toks[0], format!("expected {p} arguments, found {}", args.len())));
        }
        let mut key = args.clone();
        if symmetric {
            key.sort_unstable();
        }
        if seen.insert(key, line.number).is_some() {
            return Err(lx.at(line, &line.toks[0], "value given twice"));
        }
        for (k, q) in parse_terms(&lx, line, rhs, module_names)? {
            entries.push((args.clone(), k, q));
        }
    }
    let c = if symmetric {
        Cochain::symmetric_from_entries(p, n, m, &entries)
    } else {
        Cochain::from_entries(p, n, m, &entries)
    };
    c.map_err(|e| lx.whole(e.to_string()))
}

pub fn render_cochain(c: &Cochain, algebra_names: &[String], module_names: &[String]) -> String {
    let mut s = format!("degree {}\n", c.degree());
    let mut grouped: BTreeMap<Vec<usize>, Vec<Rational>> = BTreeMap::new();
    for (args, k, q) in c.support() {
        grouped
            .entry(args)
            .or_insert_with(|| vec![Rational::zero(); c.module_dim()])[k] = q;
    }
    for (args, v) in grouped {
        let a: Vec<&str> = args.iter().map(|&i| algebra_names[i].as_str()).collect();
        s.push_str(&format!("c({}) = {}\n", a.join(","), render_vector(&v, module_names)));
    }
    s
}

/// Deformation file: `algebra <ref>`, optional `order N`, then
/// `muK(x,y) = …` lines, completed symmetrically.
#[derive(Debug)]
pub struct DeformationSpec {
    pub algebra_ref: String,
    pub order: Option<usize>,
    text: String,
    source: String,
}

pub fn parse_deformation_header(source: &str, text: &str) -> Result<DeformationSpec, ParseError> {
    let lx = Lexed::new(source, text);
    let h = read_header(&lx, &["algebra", "order"])?;
    Ok(DeformationSpec {
        algebra_ref: require(&lx, h.single(&lx, "algebra")?, "algebra")?.1.text.to_string(),
        order: h.count(&lx, "order")?,
        text: text.to_string(),
        source: source.to_string(),
    })
}

fn indexed_head(head: &str, prefix: &str) -> Option<usize> {
    head.strip_prefix(prefix)?.parse().ok()
}

/// Returns `μ_1 … μ_N` as symmetric cochains.
pub fn parse_deformation_terms(spec: &DeformationSpec, names: &[String]) -> Result<Vec<Cochain>, ParseError> {
    let lx = Lexed::new(&spec.source, &spec.text);
    let h = read_header(&lx, &["algebra", "order"])?;
    let n = names.len();
    let mut by_order: BTreeMap<usize, BTreeMap<(usize, usize), (usize, Vec<(usize, Rational)>)>> = BTreeMap::new();
    for line in &lx.lines[h.first_data..] {
        let (lhs, rhs) = split_eq(&lx, line)?;
        let (head, args) = call_lhs(&lx, line, lhs, names)?;
        let k = indexed_head(&head, "mu")
            .filter(|k| *k >= 1)
            .ok_or_else(|| lx.at(line, &line.toks[0], format!("expected `muK(x,y)` with K >= 1, found {head:?}")))?;
        if spec.order.is_some_and(|o| k > o) {
            return Err(lx.at(line, &line.toks[0], format!("term mu{k} exceeds the declared order")));
        }
        let [i, j] = args[..] else {
            return Err(lx.at(line, &line.toks[0], "deformation terms take two arguments"));
        };
        let terms = parse_terms(&lx, line, rhs, names)?;
        let slot = by_order.entry(k).or_default();
        let key = (i.min(j), i.max(j));
        if let Some((prev, v)) = slot.get(&key) {
            if i == j || *v != terms {
                return Err(lx.at(line, &line.toks[0], format!("mu{k}({},{}) conflicts with line {prev}", names[i], names[j])));
            }
        }
        slot.insert(key, (line.number, terms));
    }
    let order = spec
        .order
        .unwrap_or_else(|| by_order.keys().next_back().copied().unwrap_or(0));
    (1..=order)
        .map(|k| {
            let entries: Vec<(Vec<usize>, usize, Rational)> = by_order
                .get(&k)
                .into_iter()
                .flatten()
                .flat_map(|(&(i, j), (_, v))| v.iter().map(move |(l, q)| (vec![i, j], *l, q.clone())))
                .collect();
            Cochain::symmetric_from_entries(2, n, n, &entries).map_err(|e| lx.whole(e.to_string()))
        })
        .collect()
}

/// Hom-deformation file: `source <ref>`, `target <ref>`, optional
/// `order N`, then `phiK(x) = …` lines.
#[derive(Debug)]
pub struct HomSpec {
    pub source_ref: String,
    pub target_ref: String,
    pub order: Option<usize>,
    text: String,
    source: String,
}

pub fn parse_hom_header(source: &str, text: &str) -> Result<HomSpec, ParseError> {
    let lx = Lexed::new(source, text);
    let h = read_header(&lx, &["source", "target", "order"])?;
    Ok(HomSpec {
        source_ref: require(&lx, h.single(&lx, "source")?, "source")?.1.text.to_string(),
        target_ref: require(&lx, h.single(&lx, "target")?, "target")?.1.text.to_string(),
        order: h.count(&lx, "order")?,
        text: text.to_string(),
        source: source.to_string(),
    })
}

/// Returns `Φ_0 … Φ_N` as `m×n` matrices.
pub fn parse_hom_maps(
    spec: &HomSpec,
    source_names: &[String],
    target_names: &[String],
) -> Result<Vec<RatMatrix>, ParseError> {
    let lx = Lexed::new(&spec.source, &spec.text);
    let h = read_header(&lx, &["source", "target", "order"])?;
    let (n, m) = (source_names.len(), target_names.len());
    let mut maps: BTreeMap<usize, RatMatrix> = BTreeMap::new();
    let mut seen = BTreeMap::new();
    for line in &lx.lines[h.first_data..] {
        let (lhs, rhs) = split_eq(&lx, line)?;
        let (head, args) = call_lhs(&lx, line, lhs, source_names)?;
        let k = indexed_head(&head, "phi")
            .ok_or_else(|| lx.at(line, &line.toks[0], format!("expected `phiK(x)`, found {head:?}")))?;
        if spec.order.is_some_and(|o| k > o) {
            return Err(lx.at(line, &line.toks[0], format!("map phi{k} exceeds the declared order")));
        }
        let [i] = args[..] else {
            return Err(lx.at(line, &line.toks[0], "maps take one argument"));
        };
        if seen.insert((k, i), line.number).is_some() {
            return Err(lx.at(line, &line.toks[0], "value given twice"));
        }
        let phi = maps.entry(k).or_insert_with(|| RatMatrix::zeros(m, n));
        for (l, q) in parse_terms(&lx, line, rhs, target_names)? {
            phi.set(l, i, q);
        }
    }
    let order = spec
        .order
        .unwrap_or_else(|| maps.keys().next_back().copied().unwrap_or(0));
    Ok((0..=order)
        .map(|k| maps.remove(&k).unwrap_or_else(|| RatMatrix::zeros(m, n)))
        .collect())
}

/// A matrix as whitespace-separated rows of rationals.
pub fn parse_matrix(source: &str, text: &str) -> Result<RatMatrix, ParseError> {
    let lx = Lexed::new(source, text);
    let mut rows = Vec::new();
    for line in &lx.lines {
        let row = line
            .toks
            .iter()
            .map(|t| rational_at(&lx, line, t))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            let first: &Vec<Rational> = first;
            if first.len() != row.len() {
                return Err(lx.at(line, &line.toks[0], format!("row has {} entries, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(lx.whole("empty matrix"));
    }
    RatMatrix::from_rows(rows).map_err(|e| lx.whole(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use jjcoh_core::linalg::{int, rat};

    #[test]
    fn literal_grammar() {
        let a = parse_algebra("t", "dim 4\ne1*e1 = 1/2 e2 + -3 e4\n").unwrap();
        assert_eq!(a.coeff(0, 0, 1), &rat(1, 2));
        assert_eq!(a.coeff(0, 0, 3), &int(-3));
    }

    #[test]
    fn empty_product_list_is_zero() {
        assert_eq!(parse_algebra("t", "dim 3\n").unwrap(), Algebra::zero(3));
    }

    #[test]
    fn symmetric_completion_and_conflict() {
        let a = parse_algebra("t", "dim 2\ne1 * e2 = e1\n").unwrap();
        assert_eq!(a.coeff(1, 0, 0), &int(1));
        assert!(parse_algebra("t", "dim 2\ne1*e2 = 1 e1\ne2*e1 = 1 e1\n").is_ok());
        let err = parse_algebra("t", "dim 2\ne1*e2 = 1 e1\ne2*e1 = 2 e1\n").unwrap_err();
        assert!(err.message.contains("disagree"), "{err}");
    }

    #[test]
    fn error_positions() {
        let err = parse_algebra("f", "dim 2\n\ne1*e1 = 1/0 e2\n").unwrap_err();
        assert_eq!((err.line, err.col), (3, 9));
        let err = parse_algebra("f", "dim 2\ne1*e3 = e2\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_algebra("f", "e1*e1 = e2\n").is_err());
        assert!(parse_algebra("f", "dim 2\ne1*e1 = e2 e1\n").is_err());
        assert!(parse_algebra("f", "dim 2\ne1*e1 = e2\ndim 3\n").is_err());
    }

    #[test]
    fn general_tables_are_literal() {
        let g = match parse_algebra_any("t", "dim 2\ngeneral\ne1*e2 = e1\n").unwrap() {
            ParsedAlgebra::General(g) => g,
            _ => panic!(),
        };
        assert!(g.coeff(1, 0, 0).is_zero());
        assert_eq!(parse_algebra_any("t", &render_general(&g)).unwrap(), ParsedAlgebra::General(g));
    }

    #[test]
    fn cochain_round_trip() {
        let names = default_names("e", 4);
        let c = parse_cochain("c", "degree 2\nsymmetric\nc(e2,e3) = 1 e2 + -1/2 e4\n", &names, &names).unwrap();
        assert!(c.is_symmetric());
        let back = parse_cochain("c", &render_cochain(&c, &names, &names), &names, &names).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("m", "1 0\n-1/2 3\n").unwrap();
        assert_eq!(m.get(1, 0), &rat(-1, 2));
        assert!(parse_matrix("m", "1 0\n1\n").is_err());
    }
}
