//! Exact weighted homomorphism counting, G-chromatic polynomials and
//! G-volumes.
//!
//! Every count is reduced to an integer problem: the target's weights are
//! scaled by their common denominator `D` (each source edge, loops included,
//! then contributes one factor of `D`), and each per-vertex weight vector by
//! its own denominator. Counting runs in `i128` with checked arithmetic and
//! is redone in `BigInt` on overflow.
//!
//! Two independent engines are provided:
//!
//! * [`hom_count`] and friends eliminate source vertices along an ordering
//!   that keeps the "frontier" (placed vertices with unplaced neighbours)
//!   small, tabulating partial sums over frontier colourings;
//! * [`hom_count_backtracking`] enumerates maps directly, visiting source
//!   vertices by maximum backward connectivity and pruning zero-weight
//!   branches, with the first level split across threads.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{LabelledBipartiteGraph, WeightedGraph};
use crate::poly::{ExponentVector, SparsePolynomial};
use crate::rational::{common_denominator, scale_to_integers, Rational};

/// Dense DP tables larger than this fall back to backtracking.
const MAX_TABLE: usize = 1 << 24;

/// Source graph as adjacency lists.
#[derive(Debug, Clone)]
struct Pattern {
    adj: Vec<Vec<usize>>,
    loops: Vec<bool>,
    edge_count: usize,
}

impl Pattern {
    fn new(h: &WeightedGraph) -> Result<Self> {
        h.require_unweighted("homomorphism sources must be unweighted")?;
        let n = h.n();
        Ok(Pattern {
            adj: (0..n).map(|v| h.neighbours(v).collect()).collect(),
            loops: (0..n).map(|v| h.has_loop(v)).collect(),
            edge_count: h.edge_count(),
        })
    }

    fn n(&self) -> usize {
        self.adj.len()
    }
}

trait Count: Clone + Zero + One + CheckedAdd + CheckedMul + Send + Sync {}
impl<T: Clone + Zero + One + CheckedAdd + CheckedMul + Send + Sync> Count for T {}

/// Integer instance: `Σ_φ Π_{uv ∈ E(H)} M[φu][φv] · Π_u X_u[φu]`.
struct Instance<'a, T> {
    pattern: &'a Pattern,
    target: Vec<Vec<T>>,
    vertex_weights: Vec<Option<Vec<T>>>,
}

impl<T: Count> Instance<'_, T> {
    fn colours(&self) -> usize {
        self.target.len()
    }

    /// Weight for giving `v` colour `c`, given the colours of already placed
    /// neighbours (`None` for unplaced ones). `None` on overflow.
    fn local_factor(&self, v: usize, c: usize, colour_of: impl Fn(usize) -> Option<usize>) -> Option<T> {
        let mut f = match &self.vertex_weights[v] {
            Some(x) => x[c].clone(),
            None => T::one(),
        };
        if f.is_zero() {
            return Some(f);
        }
        if self.pattern.loops[v] {
            f = f.checked_mul(&self.target[c][c])?;
        }
        for &w in &self.pattern.adj[v] {
            if let Some(cw) = colour_of(w) {
                if f.is_zero() {
                    return Some(f);
                }
                f = f.checked_mul(&self.target[c][cw])?;
            }
        }
        Some(f)
    }

    fn frontier_dp(&self, order: &[usize]) -> Option<Option<T>> {
        let n = self.colours();
        let k = self.pattern.n();
        let mut position = vec![usize::MAX; k];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let mut frontier: Vec<usize> = Vec::new();
        let mut table: Vec<T> = vec![T::one()];
        for (step, &v) in order.iter().enumerate() {
            let size = table.len().checked_mul(n)?;
            if size > MAX_TABLE {
                return None;
            }
            let stride = table.len();
            let mut next = vec![T::zero(); size];
            let back: Vec<(usize, usize)> = frontier
                .iter()
                .enumerate()
                .filter(|(_, w)| self.pattern.adj[v].contains(w))
                .map(|(slot, &w)| (slot, w))
                .collect();
            for (idx, val) in table.iter().enumerate() {
                if val.is_zero() {
                    continue;
                }
                let digit = |slot: usize| (idx / n.pow(slot as u32)) % n;
                for c in 0..n {
                    let f = self.local_factor(v, c, |w| {
                        back.iter().find(|&&(_, bw)| bw == w).map(|&(slot, _)| digit(slot))
                    });
                    let Some(f) = f else { return Some(None) };
                    if f.is_zero() {
                        continue;
                    }
                    let Some(prod) = val.checked_mul(&f) else { return Some(None) };
                    next[idx + c * stride] = prod;
                }
            }
            frontier.push(v);
            table = next;
            // forget vertices whose neighbourhoods are now fully placed
            let mut slot = 0;
            while slot < frontier.len() {
                let w = frontier[slot];
                if self.pattern.adj[w].iter().all(|&x| position[x] <= step) {
                    table = match sum_out(&table, n, frontier.len(), slot) {
                        Some(t) => t,
                        None => return Some(None),
                    };
                    frontier.remove(slot);
                } else {
                    slot += 1;
                }
            }
        }
        debug_assert!(frontier.is_empty());
        Some(Some(table.into_iter().next().unwrap_or_else(T::zero)))
    }

    fn backtrack(&self, order: &[usize], colour: &mut Vec<Option<usize>>, depth: usize) -> Option<T> {
        if depth == order.len() {
            return Some(T::one());
        }
        let v = order[depth];
        let mut acc = T::zero();
        for c in 0..self.colours() {
            let f = self.local_factor(v, c, |w| colour[w])?;
            if f.is_zero() {
                continue;
            }
            colour[v] = Some(c);
            let rest = self.backtrack(order, colour, depth + 1);
            colour[v] = None;
            acc = acc.checked_add(&f.checked_mul(&rest?)?)?;
        }
        Some(acc)
    }

    fn backtrack_parallel(&self, order: &[usize]) -> Option<T> {
        let Some(&first) = order.first() else {
            return Some(T::one());
        };
        let k = self.pattern.n();
        let partials: Vec<Option<T>> = (0..self.colours())
            .into_par_iter()
            .map(|c| {
                let mut colour = vec![None; k];
                let f = self.local_factor(first, c, |w| colour[w])?;
                if f.is_zero() {
                    return Some(T::zero());
                }
                colour[first] = Some(c);
                f.checked_mul(&self.backtrack(order, &mut colour, 1)?)
            })
            .collect();
        // ordered reduction
        partials
            .into_iter()
            .try_fold(T::zero(), |acc, p| acc.checked_add(&p?))
    }
}

/// Removes digit `slot` (of `width` base-`n` digits) by summation.
fn sum_out<T: Count>(table: &[T], n: usize, width: usize, slot: usize) -> Option<Vec<T>> {
    let low = n.pow(slot as u32);
    let high = n.pow((width - slot - 1) as u32);
    let mut out = vec![T::zero(); low * high];
    for hi in 0..high {
        for lo in 0..low {
            let mut acc = T::zero();
            for d in 0..n {
                let v = &table[lo + d * low + hi * low * n];
                if !v.is_zero() {
                    acc = acc.checked_add(v)?;
                }
            }
            out[lo + hi * low] = acc;
        }
    }
    Some(out)
}

/// Greedy elimination order: each step adds the vertex that leaves the
/// smallest frontier, preferring more edges into placed vertices.
fn frontier_order(p: &Pattern) -> Vec<usize> {
    let k = p.n();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let candidates: Vec<usize> = (0..k).filter(|&v| !placed[v]).collect();
        let best = candidates
            .into_iter()
            .min_by_key(|&v| {
                let is_placed = |w: usize| placed[w] || w == v;
                let frontier = (0..k)
                    .filter(|&w| is_placed(w) && p.adj[w].iter().any(|&x| !is_placed(x)))
                    .count();
                let back = p.adj[v].iter().filter(|&&w| placed[w]).count();
                (frontier, std::cmp::Reverse(back), std::cmp::Reverse(p.adj[v].len()), v)
            })
            .expect("unplaced vertex remains");
        placed[best] = true;
        order.push(best);
    }
    order
}

/// Static order maximizing edges back into already placed vertices.
fn backtracking_order(p: &Pattern) -> Vec<usize> {
    let k = p.n();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let best = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = p.adj[v].iter().filter(|&&w| placed[w]).count();
                (back, p.adj[v].len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[best] = true;
        order.push(best);
    }
    order
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Engine {
    Frontier,
    Backtracking,
}

fn to_i128(v: &BigInt) -> Option<i128> {
    v.to_i128()
}

fn run(pattern: &Pattern, target: &[Vec<BigInt>], xs: &[Option<Vec<BigInt>>], engine: Engine) -> BigInt {
    let order = match engine {
        Engine::Frontier => frontier_order(pattern),
        Engine::Backtracking => backtracking_order(pattern),
    };
    let small_target: Option<Vec<Vec<i128>>> =
        target.iter().map(|r| r.iter().map(to_i128).collect()).collect();
    let small_xs: Option<Vec<Option<Vec<i128>>>> = xs
        .iter()
        .map(|x| match x {
            None => Some(None),
            Some(v) => v.iter().map(to_i128).collect::<Option<Vec<_>>>().map(Some),
        })
        .collect();
    if let (Some(t), Some(x)) = (small_target, small_xs) {
        let inst = Instance { pattern, target: t, vertex_weights: x };
        if let Some(v) = solve(&inst, &order, engine) {
            return BigInt::from(v);
        }
    }
    let inst = Instance { pattern, target: target.to_vec(), vertex_weights: xs.to_vec() };
    solve(&inst, &order, engine).expect("BigInt arithmetic does not overflow")
}

fn solve<T: Count>(inst: &Instance<'_, T>, order: &[usize], engine: Engine) -> Option<T> {
    match engine {
        Engine::Frontier => match inst.frontier_dp(order) {
            Some(result) => result,
            None => inst.backtrack_parallel(&backtracking_order(inst.pattern)),
        },
        Engine::Backtracking => inst.backtrack_parallel(order),
    }
}

struct Scaled {
    target: Vec<Vec<BigInt>>,
    denom: BigInt,
}

fn scale_target(g: &WeightedGraph) -> Scaled {
    let denom = common_denominator(g.weights().iter().flatten());
    let target = g.weights().iter().map(|r| scale_to_integers(r, &denom)).collect();
    Scaled { target, denom }
}

fn weighted_count(
    h: &WeightedGraph,
    g: &WeightedGraph,
    vectors: Option<&[Vec<Rational>]>,
    engine: Engine,
) -> Result<Rational> {
    let pattern = Pattern::new(h)?;
    let scaled = scale_target(g);
    let mut divisor = num_traits::pow(scaled.denom.clone(), pattern.edge_count);
    let xs: Vec<Option<Vec<BigInt>>> = match vectors {
        None => vec![None; h.n()],
        Some(vs) => {
            if vs.len() != h.n() {
                return Err(Error::DimensionMismatch { expected: h.n(), found: vs.len() });
            }
            let mut out = Vec::with_capacity(vs.len());
            for v in vs {
                if v.len() != g.n() {
                    return Err(Error::DimensionMismatch { expected: g.n(), found: v.len() });
                }
                let d = common_denominator(v);
                out.push(Some(scale_to_integers(v, &d)));
                divisor *= d;
            }
            out
        }
    };
    let count = run(&pattern, &scaled.target, &xs, engine);
    Ok(Rational::new(count, divisor))
}

/// `hom(H, G) = Σ_φ Π_{uv ∈ E(H)} G(φu, φv)`. A loop at `u` contributes
/// `G(φu, φu)` once; every unordered edge contributes once.
pub fn hom_count(h: &WeightedGraph, g: &WeightedGraph) -> Result<Rational> {
    weighted_count(h, g, None, Engine::Frontier)
}

/// Same value as [`hom_count`] by direct enumeration with pruning.
pub fn hom_count_backtracking(h: &WeightedGraph, g: &WeightedGraph) -> Result<Rational> {
    weighted_count(h, g, None, Engine::Backtracking)
}

/// `V_H(x_1, ..., x_t; G)`: vector `k` weights the image of source vertex
/// `k`. Vectors may have negative entries.
pub fn g_volume(h: &WeightedGraph, vectors: &[Vec<Rational>], g: &WeightedGraph) -> Result<Rational> {
    weighted_count(h, g, Some(vectors), Engine::Frontier)
}

pub fn g_volume_backtracking(h: &WeightedGraph, vectors: &[Vec<Rational>], g: &WeightedGraph) -> Result<Rational> {
    weighted_count(h, g, Some(vectors), Engine::Backtracking)
}

fn indicator(n: usize, set: &[usize]) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); n];
    for &a in set {
        if a >= n {
            return Err(Error::InvalidParameter(format!("vertex {a} out of range for {n} vertices")));
        }
        v[a] = Rational::one();
    }
    Ok(v)
}

/// Indicator vector of a vertex subset.
pub fn indicator_vector(n: usize, set: &[usize]) -> Result<Vec<Rational>> {
    indicator(n, set)
}

/// Homomorphisms sending the left side into `a` and the right side into `b`
/// (subsets of `V(G)`, not necessarily disjoint).
pub fn bipartite_hom_count(
    hb: &LabelledBipartiteGraph,
    g: &WeightedGraph,
    a: &[usize],
    b: &[usize],
) -> Result<BigInt> {
    g.require_unweighted("bipartite_hom_count targets must be unweighted")?;
    let ia = indicator(g.n(), a)?;
    let ib = indicator(g.n(), b)?;
    let mut vectors = vec![Vec::new(); hb.graph().n()];
    for &v in hb.left() {
        vectors[v] = ia.clone();
    }
    for &v in hb.right() {
        vectors[v] = ib.clone();
    }
    let r = g_volume(hb.graph(), &vectors, g)?;
    debug_assert!(r.is_integer());
    Ok(r.to_integer())
}

/// `h_H(x; G) = Σ_φ Π_{uv ∈ E(H)} G(φu, φv) Π_v x_{φ(v)}`.
pub fn g_chromatic_polynomial(h: &WeightedGraph, g: &WeightedGraph) -> Result<SparsePolynomial> {
    let pattern = Pattern::new(h)?;
    let scaled = scale_target(g);
    let inst = Instance { pattern: &pattern, target: scaled.target, vertex_weights: vec![None; h.n()] };
    let order = backtracking_order(&pattern);
    let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
    let mut colour = vec![None; h.n()];
    let mut content = vec![0u32; g.n()];
    enumerate_monomials(&inst, &order, 0, &mut colour, &mut content, BigInt::one(), &mut acc);
    let divisor = Rational::from_integer(num_traits::pow(scaled.denom, pattern.edge_count));
    SparsePolynomial::from_terms(
        g.n(),
        acc.into_iter()
            .map(|(e, c)| (ExponentVector(e), Rational::from_integer(c) / &divisor)),
    )
}

fn enumerate_monomials(
    inst: &Instance<'_, BigInt>,
    order: &[usize],
    depth: usize,
    colour: &mut Vec<Option<usize>>,
    content: &mut Vec<u32>,
    weight: BigInt,
    acc: &mut HashMap<Vec<u32>, BigInt>,
) {
    if depth == order.len() {
        *acc.entry(content.clone()).or_insert_with(BigInt::zero) += weight;
        return;
    }
    let v = order[depth];
    for c in 0..inst.colours() {
        let f = inst.local_factor(v, c, |w| colour[w]).expect("BigInt");
        if f.is_zero() {
            continue;
        }
        colour[v] = Some(c);
        content[c] += 1;
        enumerate_monomials(inst, order, depth + 1, colour, content, &weight * f, acc);
        content[c] -= 1;
        colour[v] = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, tensor_with_k2, Family};
    use crate::rational::{rat, ratio};

    fn k(q: usize) -> WeightedGraph {
        make_family(Family::Complete, &[q]).unwrap()
    }

    fn cycle(l: usize) -> WeightedGraph {
        make_family(Family::Cycle, &[l]).unwrap()
    }

    fn g0() -> WeightedGraph {
        WeightedGraph::from_int_matrix(&[&[0, 0, 1], &[0, 0, 2], &[1, 2, 0]]).unwrap()
    }

    /// Plain enumeration of all maps with rational products.
    fn naive_hom(h: &WeightedGraph, g: &WeightedGraph) -> Rational {
        let (t, n) = (h.n(), g.n());
        let edges = h.edges();
        let mut total = Rational::zero();
        let mut phi = vec![0usize; t];
        loop {
            let mut w = Rational::one();
            for &(u, v) in &edges {
                w *= g.weight(phi[u], phi[v]);
            }
            total += w;
            let mut i = 0;
            loop {
                if i == t {
                    return total;
                }
                phi[i] += 1;
                if phi[i] < n {
                    break;
                }
                phi[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_count(&k(3), &k(3)).unwrap(), rat(6));
        assert_eq!(naive_hom(&cycle(6), &k(3)), rat(66));
        assert_eq!(hom_count(&cycle(6), &k(3)).unwrap(), rat(66));
        assert_eq!(hom_count(&k(2), &g0()).unwrap(), rat(6));
        assert_eq!(hom_count_backtracking(&cycle(6), &k(3)).unwrap(), rat(66));
    }

    #[test]
    fn edgeless_target_gives_n_to_the_t_for_edgeless_source() {
        let e = WeightedGraph::empty(3).unwrap();
        assert_eq!(hom_count(&WeightedGraph::empty(4).unwrap(), &e).unwrap(), rat(81));
        assert_eq!(hom_count(&k(2), &e).unwrap(), rat(0));
    }

    #[test]
    fn weighted_source_rejected() {
        assert!(matches!(hom_count(&g0(), &k(3)), Err(Error::Weighted(_))));
    }

    #[test]
    fn loops_in_source_contribute_once() {
        let looped = WeightedGraph::from_edges(1, &[(0, 0)]).unwrap();
        let g = WeightedGraph::from_int_matrix(&[&[3, 1], &[1, 5]]).unwrap();
        assert_eq!(hom_count(&looped, &g).unwrap(), rat(8));
        assert_eq!(naive_hom(&looped, &g), rat(8));
    }

    #[test]
    fn engines_agree_with_naive_on_rational_targets() {
        let g = WeightedGraph::new(vec![
            vec![ratio(1, 2), ratio(2, 3), rat(0)],
            vec![ratio(2, 3), rat(0), rat(3)],
            vec![rat(0), rat(3), ratio(1, 5)],
        ])
        .unwrap();
        for h in [k(3), cycle(4), cycle(5), make_family(Family::Path, &[4]).unwrap(), make_family(Family::KqCirc, &[3]).unwrap()] {
            let expect = naive_hom(&h, &g);
            assert_eq!(hom_count(&h, &g).unwrap(), expect);
            assert_eq!(hom_count_backtracking(&h, &g).unwrap(), expect);
        }
    }

    #[test]
    fn big_counts_fall_back_to_bigint() {
        let g = WeightedGraph::from_int_matrix(&[&[1000, 999], &[999, 1000]]).unwrap();
        let h = cycle(20);
        let expect = naive_hom_small_closed_form(&g, 20);
        assert_eq!(hom_count(&h, &g).unwrap(), expect);
    }

    /// hom(C_l, G) = trace(G^l) = 1999^l + 1^l for this matrix.
    fn naive_hom_small_closed_form(_: &WeightedGraph, l: u32) -> Rational {
        Rational::from_integer(num_traits::pow(BigInt::from(1999), l as usize) + 1)
    }

    #[test]
    fn bipartite_hom_examples() {
        let kk = tensor_with_k2(&k(2)).unwrap();
        assert_eq!(bipartite_hom_count(&kk, &k(3), &[0, 1], &[0, 1, 2]).unwrap(), BigInt::from(16));
        let c6 = tensor_with_k2(&k(3)).unwrap();
        assert_eq!(bipartite_hom_count(&c6, &k(3), &[0, 1, 2], &[0, 1, 2]).unwrap(), BigInt::from(66));
        // disjoint A, B with no edges between them
        let g = WeightedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(bipartite_hom_count(&c6, &g, &[0, 1], &[2, 3]).unwrap(), BigInt::zero());
        assert!(bipartite_hom_count(&c6, &g0(), &[0], &[1]).is_err());
    }

    #[test]
    fn chromatic_polynomial_examples() {
        let h = g_chromatic_polynomial(&k(2), &k(2)).unwrap();
        assert_eq!(h.to_string(), "2*x0*x1");
        let single = WeightedGraph::empty(1).unwrap();
        assert_eq!(g_chromatic_polynomial(&single, &k(3)).unwrap().to_string(), "1*x2 + 1*x1 + 1*x0");
        let h0 = g_chromatic_polynomial(&k(2), &g0()).unwrap();
        assert_eq!(h0.to_string(), "4*x1*x2 + 2*x0*x2");
        let ones = vec![rat(1); 3];
        assert_eq!(g_chromatic_polynomial(&k(3), &k(3)).unwrap().evaluate(&ones).unwrap(), rat(6));
    }

    #[test]
    fn volume_examples() {
        let e = |i: usize| {
            let mut v = vec![rat(0); 3];
            v[i] = rat(1);
            v
        };
        assert_eq!(g_volume(&k(2), &[e(0), e(1)], &k(3)).unwrap(), rat(1));
        let ones = vec![rat(1); 3];
        assert_eq!(g_volume(&k(3), &[ones.clone(), ones.clone(), ones.clone()], &k(3)).unwrap(), rat(6));
        let a = indicator_vector(3, &[0, 1]).unwrap();
        assert_eq!(g_volume(&k(2), &[a, ones.clone()], &k(3)).unwrap(), rat(4));
        assert!(g_volume(&k(2), std::slice::from_ref(&ones), &k(3)).is_err());
        assert!(g_volume(&k(2), &[ones.clone(), vec![rat(1)]], &k(3)).is_err());
    }

    #[test]
    fn negative_vector_entries_are_allowed() {
        let v1 = vec![rat(-1), rat(2), ratio(1, 3)];
        let v2 = vec![rat(1), rat(1), rat(1)];
        let a = g_volume(&k(2), &[v1.clone(), v2.clone()], &g0()).unwrap();
        let b = g_volume_backtracking(&k(2), &[v1, v2], &g0()).unwrap();
        assert_eq!(a, b);
        // -1*1*1 (0->2) + 2*2*1 (1->2) + 1/3*(1+2) (2->0, 2->1) = -1 + 4 + 1
        assert_eq!(a, rat(4));
    }
}
