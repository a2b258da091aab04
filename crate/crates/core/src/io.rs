//! Whitespace-delimited text formats for colorings and hypergraphs.
//!
//! Coloring:
//!
//! ```text
//! n k          # vertex count, palette size
//! u v c        # one line per colored pair
//! ```
//!
//! Hypergraph:
//!
//! ```text
//! n r m        # r = 3, 4, or 0 for mixed; m = edge count with multiplicity
//! mult v1 v2 v3 [v4]
//! ```
//!
//! `#` starts a comment. Writers emit the canonical form: sorted pairs or
//! edges, dense colors, duplicate edges aggregated.

use std::fmt::Write as _;
use std::path::Path;

use crate::coloring::{EdgeColoring, Pair};
use crate::error::{Error, Result};
use crate::hypergraph::{MultiHypergraph, Uniformity};

struct Record {
    line: usize,
    fields: Vec<u64>,
}

fn records(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let fields = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line,
                    message: format!("expected a non-negative integer, found `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if !fields.is_empty() {
            out.push(Record { line, fields });
        }
    }
    Ok(out)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_coloring(text: &str) -> Result<EdgeColoring> {
    let recs = records(text)?;
    let (header, body) = recs.split_first().ok_or_else(|| parse_err(1, "missing header `n k`"))?;
    if header.fields.len() != 2 {
        return Err(parse_err(header.line, "header must be `n k`"));
    }
    let n = header.fields[0] as usize;
    let k = header.fields[1] as usize;
    let mut coloring = EdgeColoring::uncolored(n);
    for rec in body {
        let &[u, v, c] = rec.fields.as_slice() else {
            return Err(parse_err(rec.line, "expected `u v c`"));
        };
        let pair = Pair::try_new(u as usize, v as usize, n).map_err(|e| parse_err(rec.line, e.to_string()))?;
        if coloring.color(pair).is_some() {
            return Err(parse_err(rec.line, format!("pair {pair} listed twice")));
        }
        let c = u32::try_from(c).map_err(|_| parse_err(rec.line, "color id too large"))?;
        coloring.set(pair, c)?;
    }
    if coloring.palette_size() != k {
        return Err(parse_err(
            header.line,
            format!("header declares {k} colors but {} are used", coloring.palette_size()),
        ));
    }
    Ok(coloring)
}

/// Canonical serialization: colors normalized, colored pairs in lexicographic order.
pub fn write_coloring(coloring: &EdgeColoring) -> String {
    let norm = coloring.normalized();
    let mut out = String::new();
    writeln!(out, "{} {}", norm.n(), norm.palette_size()).unwrap();
    for (p, c) in norm.colored_pairs() {
        writeln!(out, "{} {} {}", p.u(), p.v(), c).unwrap();
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<MultiHypergraph> {
    let recs = records(text)?;
    let (header, body) = recs.split_first().ok_or_else(|| parse_err(1, "missing header `n r m`"))?;
    let &[n, r, m] = header.fields.as_slice() else {
        return Err(parse_err(header.line, "header must be `n r m`"));
    };
    let uniformity = Uniformity::from_code(r as usize).map_err(|e| parse_err(header.line, e.to_string()))?;
    let mut h = MultiHypergraph::new(n as usize, uniformity)?;
    for rec in body {
        let (&mult, verts) = rec.fields.split_first().expect("records are non-empty");
        if !(3..=4).contains(&verts.len()) {
            return Err(parse_err(rec.line, "expected `mult v1 v2 v3 [v4]`"));
        }
        let mult = u32::try_from(mult).map_err(|_| parse_err(rec.line, "multiplicity too large"))?;
        h.add_edge(verts.iter().map(|&x| x as usize), mult)
            .map_err(|e| parse_err(rec.line, e.to_string()))?;
    }
    if h.total_edges() as u64 != m {
        return Err(parse_err(
            header.line,
            format!("header declares {m} edges but {} were read", h.total_edges()),
        ));
    }
    Ok(h)
}

pub fn write_hypergraph(h: &MultiHypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", h.n(), h.uniformity().code(), h.total_edges()).unwrap();
    for (e, m) in h.edges() {
        write!(out, "{m}").unwrap();
        for v in e.members() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_coloring(path: impl AsRef<Path>) -> Result<EdgeColoring> {
    parse_coloring(&std::fs::read_to_string(path)?)
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<MultiHypergraph> {
    parse_hypergraph(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::VertexSet;

    #[test]
    fn coloring_canonical_form() {
        let text = "# a triangle\n3   2\n1 2 9   # late pair first\n0 1 7\n\n0 2 7\n";
        let c = parse_coloring(text).unwrap();
        assert_eq!(c.palette_size(), 2);
        let canon = write_coloring(&c);
        assert_eq!(canon, "3 2\n0 1 0\n0 2 0\n1 2 1\n");
        assert_eq!(write_coloring(&parse_coloring(&canon).unwrap()), canon);
    }

    #[test]
    fn coloring_parse_errors_carry_lines() {
        let err = parse_coloring("3 1\n0 1 0\n0 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_coloring("3 2\n0 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_coloring("3 1\n0 x 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_coloring("3 1\n0 3 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_coloring("# nothing\n").is_err());
    }

    #[test]
    fn partial_colorings_survive_roundtrip() {
        let c = parse_coloring("4 1\n0 1 5\n2 3 5\n").unwrap();
        assert!(!c.is_total());
        assert_eq!(write_coloring(&c), "4 1\n0 1 0\n2 3 0\n");
    }

    #[test]
    fn duplicate_hyperedge_lines_aggregate() {
        let text = "6 4 4\n1 0 1 2 3\n1 3 2 1 0 # same edge\n2 2 3 4 5\n";
        let h = parse_hypergraph(text).unwrap();
        assert_eq!(h.multiplicity(&VertexSet::new([0, 1, 2, 3])), 2);
        assert_eq!(write_hypergraph(&h), "6 4 4\n2 0 1 2 3\n2 2 3 4 5\n");
    }

    #[test]
    fn hypergraph_parse_errors() {
        assert!(matches!(parse_hypergraph("6 4 2\n1 0 1 2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_hypergraph("6 4 1\n1 0 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("6 5 0\n"), Err(Error::Parse { line: 1, .. })));
        let mixed = parse_hypergraph("5 0 2\n1 0 1 2\n1 0 1 2 3\n").unwrap();
        assert_eq!(mixed.uniformity(), Uniformity::Mixed);
    }
}
