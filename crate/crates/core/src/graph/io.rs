//! Weighted-graph JSON and graph6.
//!
//! JSON comes in two shapes:
//!
//! ```json
//! {"n": 3, "weights": [["0","0","1"],["0","0","2"],["1","2","0"]]}
//! {"graph6": "Bw", "loops": [2]}
//! ```
//!
//! Entries of `weights` are `"p/q"` or integer strings (bare JSON integers
//! are accepted too). The second form carries an unweighted graph plus a
//! side list of looped vertices, since graph6 has no loops.

use std::io::BufRead;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

pub fn graph_to_json(g: &WeightedGraph) -> Value {
    let rows: Vec<Vec<String>> = g
        .weights()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect();
    json!({ "n": g.n(), "weights": rows })
}

pub fn graph_to_json_string(g: &WeightedGraph) -> String {
    graph_to_json(g).to_string()
}

fn entry(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => Err(Error::Parse(format!("weight must be a rational string, got {other}"))),
    }
}

pub fn graph_from_json(v: &Value) -> Result<WeightedGraph> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("graph JSON must be an object".into()))?;
    if let Some(g6) = obj.get("graph6") {
        let code = g6
            .as_str()
            .ok_or_else(|| Error::Parse("graph6 field must be a string".into()))?;
        let g = parse_graph6(code)?;
        let loops = match obj.get("loops") {
            None => Vec::new(),
            Some(l) => serde_json::from_value::<Vec<usize>>(l.clone())?,
        };
        return with_loops(&g, &loops);
    }
    let rows = obj
        .get("weights")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("graph JSON needs a \"weights\" array".into()))?;
    let weights = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("weight rows must be arrays".into()))?
                .iter()
                .map(entry)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = obj.get("n") {
        let n = n
            .as_u64()
            .ok_or_else(|| Error::Parse("\"n\" must be a nonnegative integer".into()))? as usize;
        if n != weights.len() {
            return Err(Error::DimensionMismatch { expected: n, found: weights.len() });
        }
    }
    WeightedGraph::new(weights)
}

pub fn graph_from_json_str(s: &str) -> Result<WeightedGraph> {
    graph_from_json(&serde_json::from_str(s)?)
}

/// Adds unit loops at the listed vertices.
pub fn with_loops(g: &WeightedGraph, loops: &[usize]) -> Result<WeightedGraph> {
    let mut w = g.weights().to_vec();
    for &v in loops {
        if v >= g.n() {
            return Err(Error::InvalidParameter(format!("loop vertex {v} out of range")));
        }
        w[v][v] = Rational::one();
    }
    WeightedGraph::new(w)
}

const HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line (optional `>>graph6<<` header).
pub fn parse_graph6(line: &str) -> Result<WeightedGraph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let bad = |why: &str| Error::Parse(format!("malformed graph6 {line:?}: {why}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, rest) = match bytes {
        [] => return Err(bad("empty")),
        [126, 126, r @ ..] => {
            if r.len() < 6 {
                return Err(bad("truncated size"));
            }
            (r[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), &r[6..])
        }
        [126, r @ ..] => {
            if r.len() < 3 {
                return Err(bad("truncated size"));
            }
            (r[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), &r[3..])
        }
        [b, r @ ..] => ((b - 63) as usize, r),
    };
    if n == 0 {
        return Err(bad("graph has no vertices"));
    }
    let nbits = n * (n - 1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(bad("wrong body length"));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut w = vec![vec![Rational::zero(); n]; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                w[i][j] = Rational::one();
                w[j][i] = Rational::one();
            }
            k += 1;
        }
    }
    WeightedGraph::new(w)
}

/// Encodes a loopless `{0,1}` graph.
pub fn to_graph6(g: &WeightedGraph) -> Result<String> {
    g.require_unweighted("graph6 encodes unweighted graphs only")?;
    if g.has_loops() {
        return Err(Error::InvalidParameter("graph6 cannot encode loops".into()));
    }
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Reads a graph6 stream. Malformed lines are skipped with a warning.
pub fn read_graph6_stream<R: BufRead>(reader: R) -> impl Iterator<Item = WeightedGraph> {
    reader.lines().enumerate().filter_map(|(lineno, line)| {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                log::warn!("graph6 line {}: {e}", lineno + 1);
                return None;
            }
        };
        if line.trim().is_empty() {
            return None;
        }
        match parse_graph6(line.trim()) {
            Ok(g) => Some(g),
            Err(e) => {
                log::warn!("skipping graph6 line {}: {e}", lineno + 1);
                None
            }
        }
    })
}
