//! Plain-text graph format.
//!
//! ```text
//! # comment
//! p <n_a> <n_b> <m>
//! e <a> <b>
//! ```
//!
//! Indices are 0-based. Blank lines and lines starting with `#` are
//! skipped. The header must precede all edges and the number of edge lines
//! must equal `m`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token.parse().map_err(|_| {
        parse_err(
            line,
            format!("{what} {token:?} is not a non-negative integer"),
        )
    })
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                let n_a = field(line, tokens.next(), "n_a")?;
                let n_b = field(line, tokens.next(), "n_b")?;
                let m = field(line, tokens.next(), "m")?;
                header = Some((n_a, n_b, m, line));
            }
            Some("e") => {
                let Some((n_a, n_b, m, _)) = header else {
                    return Err(parse_err(line, "edge before header"));
                };
                let a: usize = field(line, tokens.next(), "A-index")?;
                let b: usize = field(line, tokens.next(), "B-index")?;
                if a >= n_a {
                    return Err(parse_err(
                        line,
                        format!("A-index {a} out of range 0..{n_a}"),
                    ));
                }
                if b >= n_b {
                    return Err(parse_err(
                        line,
                        format!("B-index {b} out of range 0..{n_b}"),
                    ));
                }
                if !seen.insert((a, b)) {
                    return Err(parse_err(line, format!("duplicate edge {a} {b}")));
                }
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than {m} edges")));
                }
                edges.push((a, b));
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type {other:?}"))),
            None => unreachable!("blank lines are skipped"),
        }
        if tokens.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (n_a, n_b, m, header_line) =
        header.ok_or_else(|| parse_err(last_line.max(1), "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    BipartiteGraph::new(n_a, n_b, edges)
}

pub fn serialize_graph(g: &BipartiteGraph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.m());
    writeln!(out, "p {} {} {}", g.n_a(), g.n_b(), g.m()).expect("string write");
    for (a, b) in g.edges() {
        writeln!(out, "e {a} {b}").expect("string write");
    }
    out
}

pub fn read_graph(path: &Path) -> Result<BipartiteGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(path: &Path, g: &BipartiteGraph) -> Result<()> {
    std::fs::write(path, serialize_graph(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_extremal_paths;

    #[test]
    fn single_edge() {
        let g = parse_graph("p 2 2 1\ne 0 1").unwrap();
        assert_eq!(g.m(), 1);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn comments_and_blanks() {
        let g = parse_graph("# hi\n\np 1 1 1\n  # inner\ne 0 0\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn extremal_header() {
        let text = serialize_graph(&gen_extremal_paths(2).unwrap());
        assert!(text.starts_with("p 10 10 16\n"));
        assert_eq!(parse_graph(&text).unwrap(), gen_extremal_paths(2).unwrap());
    }

    fn line_of(text: &str) -> usize {
        match parse_graph(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(line_of("p 1 1 2\ne 0 0"), 1);
        assert_eq!(line_of("p 2 2 1\ne 0 2"), 2);
        assert_eq!(line_of("e 0 0"), 1);
        assert_eq!(line_of("p 2 2 2\ne 0 0\ne 0 0"), 3);
        assert_eq!(line_of("p 2 x 0"), 1);
        assert_eq!(line_of("p 1 1 0\nq"), 2);
        assert_eq!(line_of("p 1 1 1\ne 0 0\ne 0 0"), 3);
        assert_eq!(line_of("# only\n"), 1);
        assert_eq!(line_of("p 1 1 0 9"), 1);
    }
}
