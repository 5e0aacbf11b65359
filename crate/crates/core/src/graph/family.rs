use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::WeightedGraph;
use crate::error::{Error, Result};

/// Named `{0,1}` graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `[len]`: path with `len` edges (`len + 1` vertices).
    Path,
    /// `[len]`: cycle with `len >= 3` edges.
    Cycle,
    /// `[q]`: `K_q`.
    Complete,
    /// `[r_1, ..., r_k]`: `K(r_1, ..., r_k)`; zero parts are dropped.
    CompleteMultipartite,
    /// `[q]`: `K_q` with the last vertex looped.
    KqCirc,
    /// `[]`: an edge with one looped endpoint (the second vertex).
    Hardcore,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteMultipartite => "multipartite",
            Family::KqCirc => "kq_circ",
            Family::Hardcore => "hardcore",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" | "path_len" => Family::Path,
            "cycle" | "cycle_len" => Family::Cycle,
            "complete" | "kq" => Family::Complete,
            "multipartite" | "complete_multipartite" => Family::CompleteMultipartite,
            "kq_circ" | "k_q_circ" => Family::KqCirc,
            "hardcore" => Family::Hardcore,
            other => return Err(Error::Parse(format!("unknown graph family {other:?}"))),
        })
    }
}

fn single(params: &[usize], family: Family) -> Result<usize> {
    match params {
        [x] => Ok(*x),
        _ => Err(Error::InvalidParameter(format!(
            "{family} takes exactly one parameter, got {}",
            params.len()
        ))),
    }
}

pub fn make_family(kind: Family, params: &[usize]) -> Result<WeightedGraph> {
    match kind {
        Family::Path => {
            let len = single(params, kind)?;
            let edges: Vec<_> = (0..len).map(|i| (i, i + 1)).collect();
            WeightedGraph::from_edges(len + 1, &edges)
        }
        Family::Cycle => {
            let len = single(params, kind)?;
            if len < 3 {
                return Err(Error::InvalidParameter(format!("cycle length must be at least 3, got {len}")));
            }
            let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
            WeightedGraph::from_edges(len, &edges)
        }
        Family::Complete => {
            let q = single(params, kind)?;
            complete(q)
        }
        Family::CompleteMultipartite => {
            if params.iter().all(|&r| r == 0) {
                return Err(Error::InvalidParameter("multipartite graph needs a positive part".into()));
            }
            let mut part_of = Vec::new();
            for (p, &r) in params.iter().enumerate() {
                part_of.extend(std::iter::repeat_n(p, r));
            }
            let n = part_of.len();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if part_of[u] != part_of[v] {
                        edges.push((u, v));
                    }
                }
            }
            WeightedGraph::from_edges(n, &edges)
        }
        Family::KqCirc => {
            let q = single(params, kind)?;
            let g = complete(q)?;
            let mut w = g.weights().to_vec();
            w[q - 1][q - 1] = One::one();
            WeightedGraph::new(w)
        }
        Family::Hardcore => {
            if !params.is_empty() {
                return Err(Error::InvalidParameter("hardcore takes no parameters".into()));
            }
            WeightedGraph::from_edges(2, &[(0, 1), (1, 1)])
        }
    }
}

fn complete(q: usize) -> Result<WeightedGraph> {
    if q == 0 {
        return Err(Error::InvalidParameter("complete graph needs q >= 1".into()));
    }
    let mut edges = Vec::new();
    for u in 0..q {
        for v in u + 1..q {
            edges.push((u, v));
        }
    }
    WeightedGraph::from_edges(q, &edges)
}
