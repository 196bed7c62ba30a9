//! Line-oriented instance format.
//!
//! ```text
//! graph <directed|undirected> <n> <m>
//! budget <k>
//! v <id> <weight> <profit>
//! e <u> <v>
//! ```
//!
//! `#` starts a comment anywhere on a line. Vertex lines come in id order.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Instance, VALUE_LIMIT};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(tok: &str, line: usize, what: &str) -> Result<u64> {
    if tok.starts_with('-') {
        return Err(perr(
            line,
            format!("{what} must be non-negative, got {tok}"),
        ));
    }
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(perr(line, format!("{what} is not a number: {tok:?}")));
    }
    match tok.parse::<u64>() {
        Ok(x) if x < VALUE_LIMIT => Ok(x),
        _ => Err(perr(line, format!("{what} {tok} does not fit in 63 bits"))),
    }
}

fn index(tok: &str, line: usize, what: &str) -> Result<usize> {
    let x = number(tok, line, what)?;
    usize::try_from(x).map_err(|_| perr(line, format!("{what} {tok} is too large")))
}

fn fields<'a>(toks: &[&'a str], expect: usize, line: usize, kind: &str) -> Result<Vec<&'a str>> {
    if toks.len() != expect + 1 {
        return Err(perr(
            line,
            format!(
                "`{kind}` line takes {expect} fields, found {}",
                toks.len() - 1
            ),
        ));
    }
    Ok(toks[1..].to_vec())
}

pub fn parse(text: &str) -> Result<Instance> {
    let mut header: Option<(bool, usize, usize)> = None;
    let mut budget: Option<u64> = None;
    let mut weights = Vec::new();
    let mut profits = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "graph" => {
                if header.is_some() {
                    return Err(perr(line, "second `graph` line"));
                }
                let f = fields(&toks, 3, line, "graph")?;
                let directed = match f[0] {
                    "directed" => true,
                    "undirected" => false,
                    other => {
                        return Err(perr(
                            line,
                            format!("expected `directed` or `undirected`, got {other:?}"),
                        ))
                    }
                };
                header = Some((directed, index(f[1], line, "n")?, index(f[2], line, "m")?));
            }
            kind if header.is_none() => {
                return Err(perr(
                    line,
                    format!("expected `graph` header before `{kind}`"),
                ));
            }
            "budget" => {
                if budget.is_some() {
                    return Err(perr(line, "second `budget` line"));
                }
                let f = fields(&toks, 1, line, "budget")?;
                budget = Some(number(f[0], line, "budget")?);
            }
            "v" => {
                let (_, n, _) = header.expect("checked above");
                let f = fields(&toks, 3, line, "v")?;
                let id = index(f[0], line, "vertex id")?;
                if id != weights.len() {
                    return Err(perr(
                        line,
                        format!("vertex id {id} out of order, expected {}", weights.len()),
                    ));
                }
                if id >= n {
                    return Err(perr(line, format!("more than n = {n} vertex lines")));
                }
                weights.push(number(f[1], line, "weight")?);
                profits.push(number(f[2], line, "profit")?);
            }
            "e" => {
                let (directed, n, m) = header.expect("checked above");
                let f = fields(&toks, 2, line, "e")?;
                let (u, v) = (
                    index(f[0], line, "endpoint")?,
                    index(f[1], line, "endpoint")?,
                );
                if u >= n || v >= n {
                    return Err(perr(
                        line,
                        format!("edge ({u}, {v}) names a vertex outside 0..{n}"),
                    ));
                }
                if u == v {
                    return Err(perr(line, format!("self-loop at vertex {u}")));
                }
                let key = if directed {
                    (u, v)
                } else {
                    (u.min(v), u.max(v))
                };
                if !seen.insert(key) {
                    return Err(perr(line, format!("duplicate edge ({u}, {v})")));
                }
                if edges.len() == m {
                    return Err(perr(line, format!("more than m = {m} edge lines")));
                }
                edges.push((u, v));
            }
            other => return Err(perr(line, format!("unknown line type {other:?}"))),
        }
    }

    let end = last_line.max(1);
    let (directed, n, m) = header.ok_or_else(|| perr(end, "missing `graph` header"))?;
    let budget = budget.ok_or_else(|| perr(end, "missing `budget` line"))?;
    if weights.len() != n {
        return Err(perr(
            end,
            format!("expected {n} vertex lines, found {}", weights.len()),
        ));
    }
    if edges.len() != m {
        return Err(perr(
            end,
            format!("expected {m} edge lines, found {}", edges.len()),
        ));
    }
    Instance::new(directed, weights, profits, edges, budget)
}

/// Canonical text: vertices in id order, edges sorted, undirected edges as `u < v`.
pub fn serialize(instance: &Instance) -> String {
    serialize_with_header(instance, &[])
}

/// Canonical text preceded by one `# ` comment line per entry.
pub fn serialize_with_header(instance: &Instance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let kind = if instance.is_directed() {
        "directed"
    } else {
        "undirected"
    };
    let _ = writeln!(out, "graph {kind} {} {}", instance.n(), instance.m());
    let _ = writeln!(out, "budget {}", instance.budget());
    for v in 0..instance.n() {
        let _ = writeln!(out, "v {v} {} {}", instance.weight(v), instance.profit(v));
    }
    for &(u, v) in instance.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn read_file(path: &std::path::Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}
