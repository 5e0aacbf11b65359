//! Graph sources: inline literals, graph6 or JSON files, or graph6 on stdin.

use std::fs;
use std::io::{self, BufRead};
use std::path::Path;

use homlor::graph::io::{graph_from_json_str, parse_graph6, read_graph6_stream};
use homlor::{make_family, Error, Family, Result, SparsePolynomial, WeightedGraph};

fn parse_list(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("not a nonnegative integer: {t:?}"))))
        .collect()
}

/// `path:3`, `cycle:6`, `kq:4`, `complete:4`, `kq_circ:3`,
/// `multipartite:2,1,1`, `hardcore`.
pub fn parse_literal(s: &str) -> Option<Result<WeightedGraph>> {
    let (name, params) = s.split_once(':').unwrap_or((s, ""));
    let family: Family = name.parse().ok()?;
    Some(parse_list(params).and_then(|p| make_family(family, &p)))
}

/// Reads a graph from a literal, `-` (first graph6 line on stdin), a `.json`
/// file or a graph6 file.
pub fn load_graph(spec: &str) -> Result<WeightedGraph> {
    if spec == "-" {
        let mut line = String::new();
        io::stdin().lock().read_line(&mut line)?;
        return parse_graph6(line.trim());
    }
    if let Some(g) = parse_literal(spec) {
        return g;
    }
    let text = fs::read_to_string(spec)?;
    if Path::new(spec).extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{') {
        graph_from_json_str(&text)
    } else {
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        parse_graph6(line.trim())
    }
}

/// Every graph in a graph6 stream (`-` for stdin); bad lines are skipped.
pub fn load_graph6_stream(spec: &str) -> Result<Vec<WeightedGraph>> {
    if spec == "-" {
        return Ok(read_graph6_stream(io::stdin().lock()).collect());
    }
    let file = fs::File::open(spec)?;
    Ok(read_graph6_stream(io::BufReader::new(file)).collect())
}

pub fn load_polynomial(path: &str) -> Result<SparsePolynomial> {
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path)?)?;
    SparsePolynomial::from_json(&v)
}

/// `3`, `2..4` (inclusive) or `2,3,5`.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| Error::Parse(format!("bad range {s:?}")))?;
        let hi: usize = hi.trim_start_matches('=').trim().parse().map_err(|_| Error::Parse(format!("bad range {s:?}")))?;
        if lo > hi {
            return Err(Error::Parse(format!("empty range {s:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    parse_list(s)
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    parse_list(s)
}
