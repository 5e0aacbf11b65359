use num_traits::{One, Zero};
use serde::Serialize;

use super::WeightedGraph;
use crate::rational::Rational;
use crate::spectrum::positive_eigenvalue_count;

/// Vertex split `V₁ ⊔ V₂` where `V₁` induces a complete multipartite graph
/// (given by its classes) and `V₂` holds looped vertices adjacent to all
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralDecomposition {
    pub multipartite_classes: Vec<Vec<usize>>,
    pub looped_apexes: Vec<usize>,
}

impl StructuralDecomposition {
    /// Rebuilds the `{0,1}` graph described by the decomposition.
    pub fn assemble(&self, n: usize) -> WeightedGraph {
        let mut class = vec![None; n];
        for (c, members) in self.multipartite_classes.iter().enumerate() {
            for &v in members {
                class[v] = Some(c);
            }
        }
        let mut w = vec![vec![Rational::zero(); n]; n];
        for u in 0..n {
            for v in 0..n {
                let joined = match (class[u], class[v]) {
                    (Some(a), Some(b)) => a != b,
                    _ => true,
                };
                if joined {
                    w[u][v] = Rational::one();
                }
            }
        }
        WeightedGraph::from_parts_unchecked(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AfmCertificate {
    pub verdict: bool,
    pub positive_eigenvalue_count: usize,
    pub structural_decomposition: Option<StructuralDecomposition>,
}

/// Exact test for "at most one positive eigenvalue". For unweighted graphs
/// without isolated vertices that pass, the structural decomposition is
/// attached as well.
pub fn is_antiferromagnetic(g: &WeightedGraph) -> AfmCertificate {
    let count = positive_eigenvalue_count(g.weights());
    let verdict = count <= 1;
    let structural_decomposition = if verdict && g.is_unweighted() && !g.has_isolated_vertex() {
        find_structural_decomposition(g)
    } else {
        None
    };
    AfmCertificate { verdict, positive_eigenvalue_count: count, structural_decomposition }
}

/// Purely combinatorial search for the decomposition; independent of the
/// spectrum. Returns `None` for weighted graphs or when no decomposition
/// exists.
pub fn find_structural_decomposition(g: &WeightedGraph) -> Option<StructuralDecomposition> {
    if !g.is_unweighted() {
        return None;
    }
    let n = g.n();
    let looped: Vec<usize> = (0..n).filter(|&v| g.has_loop(v)).collect();
    for &a in &looped {
        if (0..n).any(|v| !g.has_edge(a, v)) {
            return None;
        }
    }
    let plain: Vec<usize> = (0..n).filter(|&v| !g.has_loop(v)).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &plain {
        match classes.iter_mut().find(|c| !g.has_edge(c[0], v)) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            for &u in ci {
                for &v in cj {
                    if u != v && g.has_edge(u, v) != (i != j) {
                        return None;
                    }
                }
            }
        }
    }
    let dec = StructuralDecomposition { multipartite_classes: classes, looped_apexes: looped };
    debug_assert_eq!(&dec.assemble(n), g);
    Some(dec)
}
