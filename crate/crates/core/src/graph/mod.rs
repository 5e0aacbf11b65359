//! Weighted graphs with loops, standard families, constructions and
//! antiferromagnetism certification.

mod afm;
mod construct;
mod family;
pub mod io;

pub use afm::{find_structural_decomposition, is_antiferromagnetic, AfmCertificate, StructuralDecomposition};
pub use construct::{
    blow_up, f_bipartition, h_blow_up, is_isomorphism, swap_isomorphism, swapped_graph, tensor_with_k2,
};
pub use family::{make_family, Family};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_nonnegative, Rational};

/// Symmetric nonnegative rational weight matrix; diagonal entries are loop
/// weights. Vertices are `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    n: usize,
    weights: Vec<Vec<Rational>>,
}

impl WeightedGraph {
    pub fn new(weights: Vec<Vec<Rational>>) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::InvalidParameter("graph must have at least one vertex".into()));
        }
        for (i, row) in weights.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, w) in row.iter().enumerate() {
                if !is_nonnegative(w) {
                    return Err(Error::NegativeWeight { row: i, col: j });
                }
                if *w != weights[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(WeightedGraph { n, weights })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(vec![vec![Rational::zero(); n]; n])
    }

    /// Unweighted graph from an edge list; `(v, v)` is a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut w = vec![vec![Rational::zero(); n]; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            w[u][v] = Rational::one();
            w[v][u] = Rational::one();
        }
        Self::new(w)
    }

    /// Integer weight matrix, e.g. `[[0,0,1],[0,0,2],[1,2,0]]`.
    pub fn from_int_matrix(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> &Rational {
        &self.weights[u][v]
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.weights
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        !self.weights[u][v].is_zero()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// All weights in `{0, 1}`.
    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().flatten().all(|w| w.is_zero() || w.is_one())
    }

    pub fn require_unweighted(&self, what: &str) -> Result<()> {
        if self.is_unweighted() {
            Ok(())
        } else {
            Err(Error::Weighted(what.to_string()))
        }
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.has_loop(v))
    }

    /// Unordered edges `u <= v` with nonzero weight, loops included.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Neighbours other than `v` itself.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| u != v && self.has_edge(u, v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v).count()
    }

    /// A vertex with no incident edge and no loop.
    pub fn is_isolated(&self, v: usize) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, v))
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.is_isolated(v))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Proper 2-colouring (side 0 / side 1), first vertex of each component
    /// on side 0. `None` if a loop or an odd cycle exists.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        if self.has_loops() {
            return None;
        }
        let mut side = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in self.neighbours(v) {
                    if side[u] == u8::MAX {
                        side[u] = 1 - side[v];
                        stack.push(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    /// `{0,1}` graph with an edge wherever the weight is positive.
    pub fn support(&self) -> WeightedGraph {
        WeightedGraph {
            n: self.n,
            weights: self
                .weights
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|w| if w.is_zero() { Rational::zero() } else { Rational::one() })
                        .collect()
                })
                .collect(),
        }
    }

    /// Principal submatrix on `subset`, keeping the original vertex order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<WeightedGraph> {
        if subset.is_empty() {
            return Err(Error::InvalidParameter("induced subgraph needs a nonempty vertex set".into()));
        }
        let mut vs = subset.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&bad) = vs.iter().find(|&&v| v >= self.n) {
            return Err(Error::InvalidParameter(format!("vertex {bad} out of range")));
        }
        Ok(WeightedGraph {
            n: vs.len(),
            weights: vs
                .iter()
                .map(|&i| vs.iter().map(|&j| self.weights[i][j].clone()).collect())
                .collect(),
        })
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> WeightedGraph {
        let mut w = vec![vec![Rational::zero(); self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                w[perm[i]][perm[j]] = self.weights[i][j].clone();
            }
        }
        WeightedGraph { n: self.n, weights: w }
    }

    /// Vertex-disjoint union, `self` first.
    pub fn disjoint_union(&self, other: &WeightedGraph) -> WeightedGraph {
        let n = self.n + other.n;
        let mut w = vec![vec![Rational::zero(); n]; n];
        for i in 0..self.n {
            for j in 0..self.n {
                w[i][j] = self.weights[i][j].clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                w[self.n + i][self.n + j] = other.weights[i][j].clone();
            }
        }
        WeightedGraph { n, weights: w }
    }

    /// Sum of all matrix entries.
    pub fn total_weight(&self) -> Rational {
        self.weights.iter().flatten().cloned().sum()
    }

    pub(crate) fn from_parts_unchecked(weights: Vec<Vec<Rational>>) -> WeightedGraph {
        WeightedGraph { n: weights.len(), weights }
    }
}

/// A `{0,1}` graph with an ordered bipartition `left ⊔ right` such that
/// every edge crosses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledBipartiteGraph {
    graph: WeightedGraph,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl LabelledBipartiteGraph {
    pub fn new(graph: WeightedGraph, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        graph.require_unweighted("labelled bipartite graphs are {0,1}")?;
        let n = graph.n();
        let mut side = vec![None; n];
        for (s, part) in [(0u8, &left), (1u8, &right)] {
            for &v in part.iter() {
                if v >= n || side[v].is_some() {
                    return Err(Error::InvalidParameter(format!(
                        "vertex {v} repeated or out of range in bipartition"
                    )));
                }
                side[v] = Some(s);
            }
        }
        if side.iter().any(Option::is_none) {
            return Err(Error::InvalidParameter("bipartition does not cover every vertex".into()));
        }
        for (u, v) in graph.edges() {
            if side[u] == side[v] {
                return Err(Error::NotBipartite);
            }
        }
        Ok(LabelledBipartiteGraph { graph, left, right })
    }

    /// Uses the 2-colouring of a bipartite graph (component roots on the left).
    pub fn from_bipartite(graph: WeightedGraph) -> Result<Self> {
        let side = graph.two_colouring().ok_or(Error::NotBipartite)?;
        let left = (0..graph.n()).filter(|&v| side[v] == 0).collect();
        let right = (0..graph.n()).filter(|&v| side[v] == 1).collect();
        Self::new(graph, left, right)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// The same graph with the roles of the two sides exchanged.
    pub fn flipped(&self) -> LabelledBipartiteGraph {
        LabelledBipartiteGraph {
            graph: self.graph.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}
