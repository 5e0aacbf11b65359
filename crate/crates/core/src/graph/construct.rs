//! Graph constructions. The vertex order of every output is part of its
//! contract and is documented per function.

use num_traits::{One, Zero};

use super::{LabelledBipartiteGraph, WeightedGraph};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `H × K₂`. Vertex `(v, 1)` is `v` and `(v, 2)` is `n + v`; `(i,1) ~ (j,2)`
/// iff `ij ∈ E(H)`, so a loop at `v` becomes the edge `(v,1)(v,2)`.
/// Left side `V(H) × {1}`, right side `V(H) × {2}`.
pub fn tensor_with_k2(h: &WeightedGraph) -> Result<LabelledBipartiteGraph> {
    h.require_unweighted("tensor_with_k2 expects an unweighted graph")?;
    let n = h.n();
    let mut w = vec![vec![Rational::zero(); 2 * n]; 2 * n];
    for (i, j) in h.edges() {
        w[i][n + j] = Rational::one();
        w[n + j][i] = Rational::one();
        w[j][n + i] = Rational::one();
        w[n + i][j] = Rational::one();
    }
    LabelledBipartiteGraph::new(
        WeightedGraph::from_parts_unchecked(w),
        (0..n).collect(),
        (n..2 * n).collect(),
    )
}

/// Replaces vertex `v_i` by `sizes[i]` clones, listed in order: clones of
/// `v_0`, then clones of `v_1`, and so on. Clones of distinct vertices carry
/// `G(v_i, v_k)`; clones of the same vertex (including each clone's loop)
/// carry `G(v_i, v_i)`. A size of zero deletes the vertex.
pub fn blow_up(g: &WeightedGraph, sizes: &[usize]) -> Result<WeightedGraph> {
    if sizes.len() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: sizes.len() });
    }
    let origin: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(v, &r)| std::iter::repeat_n(v, r))
        .collect();
    if origin.is_empty() {
        return Err(Error::InvalidParameter("blow-up deletes every vertex".into()));
    }
    let w = origin
        .iter()
        .map(|&i| origin.iter().map(|&k| g.weight(i, k).clone()).collect())
        .collect();
    Ok(WeightedGraph::from_parts_unchecked(w))
}

fn offsets(parts: &[WeightedGraph]) -> Vec<usize> {
    let mut out = Vec::with_capacity(parts.len() + 1);
    let mut acc = 0;
    out.push(0);
    for p in parts {
        acc += p.n();
        out.push(acc);
    }
    out
}

fn check_pattern(f: &WeightedGraph, parts: &[WeightedGraph]) -> Result<()> {
    f.require_unweighted("pattern graph must be unweighted")?;
    if f.has_loops() {
        return Err(Error::InvalidParameter("pattern graph must be loopless".into()));
    }
    if parts.len() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), found: parts.len() });
    }
    for p in parts {
        p.require_unweighted("blow-up parts must be unweighted")?;
    }
    Ok(())
}

/// Replaces `v_i ∈ V(F)` by `parts[i]` and joins `V(H_i)`, `V(H_j)` completely
/// whenever `v_i v_j ∈ E(F)`. Vertex order: part 0's vertices, then part 1's,
/// and so on.
pub fn h_blow_up(f: &WeightedGraph, parts: &[WeightedGraph]) -> Result<WeightedGraph> {
    check_pattern(f, parts)?;
    let off = offsets(parts);
    let n = off[parts.len()];
    let mut w = vec![vec![Rational::zero(); n]; n];
    for (p, part) in parts.iter().enumerate() {
        for (a, b) in part.edges() {
            w[off[p] + a][off[p] + b] = Rational::one();
            w[off[p] + b][off[p] + a] = Rational::one();
        }
    }
    for (i, j) in f.edges() {
        for x in off[i]..off[i + 1] {
            for y in off[j]..off[j + 1] {
                w[x][y] = Rational::one();
                w[y][x] = Rational::one();
            }
        }
    }
    Ok(WeightedGraph::from_parts_unchecked(w))
}

/// Side (0 = A, 1 = B) of each pattern vertex in the bipartition used by the
/// swap isomorphism.
pub fn f_bipartition(f: &WeightedGraph) -> Result<Vec<u8>> {
    f.two_colouring().ok_or(Error::NotBipartite)
}

/// The swapped graph `H^U`: two copies of `H = h_blow_up(F, parts)`, the
/// first on `0..t` and the second on `t..2t` (same inner order). For
/// `v_j ∈ U` the copies of `H_j ⊔ H_j` are replaced by `H_j × K₂`; blown-up
/// `F`-edges stay inside each copy.
pub fn swapped_graph(f: &WeightedGraph, parts: &[WeightedGraph], u: &[usize]) -> Result<WeightedGraph> {
    check_pattern(f, parts)?;
    if !f.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    if let Some(&bad) = u.iter().find(|&&v| v >= f.n()) {
        return Err(Error::InvalidParameter(format!("swap set contains {bad}, not a vertex of F")));
    }
    let mut in_u = vec![false; f.n()];
    for &v in u {
        in_u[v] = true;
    }
    let off = offsets(parts);
    let t = off[parts.len()];
    let mut w = vec![vec![Rational::zero(); 2 * t]; 2 * t];
    let mut join = |x: usize, y: usize| {
        w[x][y] = Rational::one();
        w[y][x] = Rational::one();
    };
    for (p, part) in parts.iter().enumerate() {
        for (a, b) in part.edges() {
            let (x, y) = (off[p] + a, off[p] + b);
            if in_u[p] {
                join(x, t + y);
                join(y, t + x);
            } else {
                join(x, y);
                join(t + x, t + y);
            }
        }
    }
    for (i, j) in f.edges() {
        for x in off[i]..off[i + 1] {
            for y in off[j]..off[j + 1] {
                join(x, y);
                join(t + x, t + y);
            }
        }
    }
    Ok(WeightedGraph::from_parts_unchecked(w))
}

/// The explicit isomorphism `H × K₂ → H^{V(F)}`: with `V(F) = A ⊔ B`, fix
/// `(v, i)` for `v` in a part blown up from `A` and swap `(v,1) ↔ (v,2)` for
/// parts blown up from `B`. Returns the image of each vertex of
/// `tensor_with_k2(H)` in `swapped_graph(F, parts, V(F))`.
pub fn swap_isomorphism(f: &WeightedGraph, parts: &[WeightedGraph]) -> Result<Vec<usize>> {
    check_pattern(f, parts)?;
    let side = f_bipartition(f)?;
    let off = offsets(parts);
    let t = off[parts.len()];
    let mut map = vec![0; 2 * t];
    for p in 0..parts.len() {
        for v in off[p]..off[p + 1] {
            if side[p] == 0 {
                map[v] = v;
                map[t + v] = t + v;
            } else {
                map[v] = t + v;
                map[t + v] = v;
            }
        }
    }
    Ok(map)
}

/// Whether `map` is a weight-preserving bijection `a → b`.
pub fn is_isomorphism(a: &WeightedGraph, b: &WeightedGraph, map: &[usize]) -> bool {
    if a.n() != b.n() || map.len() != a.n() {
        return false;
    }
    let mut hit = vec![false; a.n()];
    for &m in map {
        if m >= b.n() || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..a.n()).all(|i| (0..a.n()).all(|j| a.weight(i, j) == b.weight(map[i], map[j])))
}
