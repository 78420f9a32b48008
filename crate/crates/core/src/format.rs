//! Line-oriented text formats. Vertices are 1-based in files and 0-based in
//! memory.
//!
//! Graph: `p tss <n> <m>`, then `e <u> <v>`, `t <u> <value>` (threshold,
//! default 1), `k <u> <value>` (degeneracy budget) and `c ...` comments.
//! Tree decomposition: `s td <bags> <max bag size> <n>`, `b <id> <v>...`
//! and tree edges `<id> <id>`, bag ids 1-based. Intervals: `i <v> <left>
//! <right>` with decimal or `p/q` endpoints.

use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::decomposition::{Interval, Rational, TreeDecomposition};
use crate::graph::{Budgets, Graph, Thresholds, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn int<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, ParseError> {
    field.parse().or_else(|_| err(line, format!("expected {what}, found `{field}`")))
}

fn vertex(line: usize, field: &str, n: usize) -> Result<Vertex, ParseError> {
    let v: usize = int(line, field, "a vertex number")?;
    if v == 0 || v > n {
        return err(line, format!("vertex {v} is outside 1..={n}"));
    }
    Ok(v - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInstance {
    pub graph: Graph,
    pub tau: Thresholds,
    /// Budgets given by `k` lines; `None` where absent.
    pub budgets: Vec<Option<i64>>,
}

impl GraphInstance {
    pub fn kappa(&self, default: i64) -> Budgets {
        Budgets::new(self.budgets.iter().map(|b| b.unwrap_or(default)).collect())
    }

    pub fn has_budgets(&self) -> bool {
        self.budgets.iter().any(Option::is_some)
    }
}

pub fn parse_graph(text: &str) -> Result<GraphInstance, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(1, "missing `p tss <n> <m>` header");
    };
    if header.len() != 4 || header[0] != "p" || header[1] != "tss" {
        return err(hl, "expected header `p tss <n> <m>`");
    }
    let n: usize = int(hl, header[2], "a vertex count")?;
    let m: usize = int(hl, header[3], "an edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut tau = vec![None; n];
    let mut budgets = vec![None; n];
    let mut last = hl;
    for (ln, f) in lines {
        last = ln;
        match f[0] {
            "e" if f.len() == 3 => {
                let (u, v) = (vertex(ln, f[1], n)?, vertex(ln, f[2], n)?);
                if u == v {
                    return err(ln, format!("self-loop at vertex {}", u + 1));
                }
                edges.push((u.min(v), u.max(v), ln));
            }
            "t" | "k" if f.len() == 3 => {
                let u = vertex(ln, f[1], n)?;
                let value: i64 = int(ln, f[2], "an integer value")?;
                let slot = if f[0] == "t" { &mut tau[u] } else { &mut budgets[u] };
                if slot.replace(value).is_some() {
                    return err(ln, format!("second `{}` line for vertex {}", f[0], u + 1));
                }
            }
            "p" => return err(ln, "repeated header"),
            "e" | "t" | "k" => return err(ln, format!("`{}` takes exactly two fields", f[0])),
            other => return err(ln, format!("unknown line type `{other}`")),
        }
    }
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
        return err(w[1].2.max(w[0].2), format!("duplicate edge {} {}", w[0].0 + 1, w[0].1 + 1));
    }
    if edges.len() != m {
        return err(last, format!("header announces {m} edges but {} were given", edges.len()));
    }
    let graph = Graph::from_edges(n, edges.iter().map(|&(u, v, _)| (u, v))).expect("edges were checked");
    let tau = Thresholds::new(tau.into_iter().map(|t| t.unwrap_or(1)).collect());
    Ok(GraphInstance { graph, tau, budgets })
}

/// Writes every threshold explicitly, and `k` lines for the given budgets.
pub fn emit_graph(g: &Graph, tau: &Thresholds, budgets: &[Option<i64>]) -> String {
    let mut out = format!("p tss {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for u in g.vertices() {
        let _ = writeln!(out, "t {} {}", u + 1, tau[u]);
    }
    for (u, b) in budgets.iter().enumerate() {
        if let Some(b) = b {
            let _ = writeln!(out, "k {} {}", u + 1, b);
        }
    }
    out
}

pub fn emit_instance(instance: &GraphInstance) -> String {
    emit_graph(&instance.graph, &instance.tau, &instance.budgets)
}

/// Parses a tree decomposition of a graph on `n` vertices. Bag and vertex
/// numbers are checked against the header.
pub fn parse_td(text: &str, n: usize) -> Result<TreeDecomposition, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(1, "missing `s td <bags> <max bag size> <n>` header");
    };
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return err(hl, "expected header `s td <bags> <max bag size> <n>`");
    }
    let count: usize = int(hl, header[2], "a bag count")?;
    let max_size: usize = int(hl, header[3], "a bag size")?;
    let declared: usize = int(hl, header[4], "a vertex count")?;
    if declared != n {
        return err(hl, format!("decomposition is for {declared} vertices but the graph has {n}"));
    }
    let mut bags: Vec<Option<Vec<Vertex>>> = vec![None; count];
    let mut edges = Vec::new();
    let mut last = hl;
    let bag_id = |ln: usize, f: &str| -> Result<usize, ParseError> {
        let id: usize = int(ln, f, "a bag id")?;
        if id == 0 || id > count {
            return err(ln, format!("bag {id} is outside 1..={count}"));
        }
        Ok(id - 1)
    };
    for (ln, f) in lines {
        last = ln;
        if f[0] == "b" {
            if f.len() < 2 {
                return err(ln, "bag line needs an id");
            }
            let id = bag_id(ln, f[1])?;
            let members = f[2..].iter().map(|x| vertex(ln, x, n)).collect::<Result<Vec<_>, _>>()?;
            if members.len() > max_size {
                return err(ln, format!("bag has {} vertices, above the declared {max_size}", members.len()));
            }
            if bags[id].replace(members).is_some() {
                return err(ln, format!("bag {} defined twice", id + 1));
            }
        } else if f.len() == 2 {
            edges.push((bag_id(ln, f[0])?, bag_id(ln, f[1])?));
        } else {
            return err(ln, format!("unexpected line `{}`", f.join(" ")));
        }
    }
    if let Some(missing) = bags.iter().position(Option::is_none) {
        return err(last, format!("bag {} is never defined", missing + 1));
    }
    Ok(TreeDecomposition::new(bags.into_iter().map(Option::unwrap).collect(), edges))
}

pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.num_bags(), td.max_bag_size(), n);
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

/// `-1.25`, `3`, `7/2`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    if let Some((p, q)) = s.split_once('/') {
        let (p, q): (i128, i128) = (p.parse().ok()?, q.parse().ok()?);
        return (q != 0).then(|| Ratio::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty()
        || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        || frac.len() > 30
    {
        return None;
    }
    let digits: i128 = format!("{whole}{frac}").parse().ok()?;
    let value = Ratio::new(digits, 10i128.checked_pow(frac.len() as u32)?);
    Some(if neg { -value } else { value })
}

/// Terminating decimals are written as decimals, anything else as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut d = *r.denom();
    let mut scale = 0u32;
    for p in [2, 5] {
        while d % p == 0 {
            d /= p;
        }
    }
    if d != 1 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    while !(*r * Ratio::from_integer(10i128.pow(scale))).is_integer() {
        scale += 1;
    }
    let scaled = (*r * Ratio::from_integer(10i128.pow(scale))).to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let digits = format!("{:0>width$}", scaled.unsigned_abs(), width = scale as usize + 1);
    let (whole, frac) = digits.split_at(digits.len() - scale as usize);
    format!("{sign}{whole}.{frac}")
}

pub fn parse_intervals(text: &str, n: usize) -> Result<Vec<Interval>, ParseError> {
    let mut out: Vec<Option<Interval>> = vec![None; n];
    let mut last = 0;
    for (ln, f) in content_lines(text) {
        last = ln;
        if f.len() != 4 || f[0] != "i" {
            return err(ln, "expected `i <vertex> <left> <right>`");
        }
        let v = vertex(ln, f[1], n)?;
        let bound = |s: &str| parse_rational(s).map_or_else(|| err(ln, format!("bad endpoint `{s}`")), Ok);
        let (left, right) = (bound(f[2])?, bound(f[3])?);
        if left > right {
            return err(ln, "left endpoint exceeds right endpoint");
        }
        if out[v].replace(Interval::new(left, right)).is_some() {
            return err(ln, format!("second interval for vertex {}", v + 1));
        }
    }
    if let Some(v) = out.iter().position(Option::is_none) {
        return err(last.max(1), format!("vertex {} has no interval", v + 1));
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}

pub fn emit_intervals(intervals: &[Interval]) -> String {
    let mut out = String::new();
    for (v, iv) in intervals.iter().enumerate() {
        let _ = writeln!(out, "i {} {} {}", v + 1, format_rational(&iv.left), format_rational(&iv.right));
    }
    out
}

/// Comma- or space-separated 1-based vertex list.
pub fn parse_vertex_list(s: &str, n: usize) -> Result<Vec<Vertex>, ParseError> {
    let mut out = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| vertex(1, x, n))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
