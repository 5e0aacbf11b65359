//! Isomorph-free enumeration of small unweighted graphs.
//!
//! Graphs are stored as adjacency bitmasks (bit `v` of row `u`, loops on the
//! diagonal). The canonical form is the lexicographically smallest row
//! sequence over all relabellings that respect a refined vertex partition,
//! so it is exact but only practical for small `n`. Graphs on `n` vertices
//! are generated by adding one vertex to each canonical graph on `n - 1`
//! vertices in every possible way.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Largest vertex count accepted by the canonical form.
pub const MAX_CANONICAL_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u16>);

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn to_graph(&self) -> WeightedGraph {
        let n = self.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u..n {
                if self.0[u] >> v & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        WeightedGraph::from_edges(n, &edges).expect("valid bitmask graph")
    }
}

fn rows_of(g: &WeightedGraph) -> Result<Vec<u16>> {
    g.require_unweighted("canonical forms need unweighted graphs")?;
    if g.n() > MAX_CANONICAL_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "canonical form limited to {MAX_CANONICAL_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    Ok((0..g.n())
        .map(|u| (0..g.n()).filter(|&v| g.has_edge(u, v)).fold(0u16, |m, v| m | 1 << v))
        .collect())
}

/// Iterated colour refinement; returns one class id per vertex.
fn refine(rows: &[u16]) -> Vec<usize> {
    let n = rows.len();
    let mut colour: Vec<usize> = rows.iter().enumerate().map(|(u, r)| (r >> u & 1) as usize).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = (0..n).filter(|&v| v != u && rows[u] >> v & 1 == 1).map(|v| colour[v]).collect();
                nb.sort_unstable();
                (colour[u], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sig.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sig.iter().map(|s| ranked.binary_search(&s).expect("present")).collect();
        let changed = ranked.len() != colour.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if !changed {
            return colour;
        }
    }
}

fn permuted(rows: &[u16], order: &[usize]) -> Vec<u16> {
    // new vertex i is old vertex order[i]
    let n = rows.len();
    let mut pos = vec![0; n];
    for (i, &o) in order.iter().enumerate() {
        pos[o] = i;
    }
    order
        .iter()
        .map(|&o| (0..n).filter(|&v| rows[o] >> v & 1 == 1).fold(0u16, |m, v| m | 1 << pos[v]))
        .collect()
}

fn search(rows: &[u16], classes: &[Vec<usize>], class: usize, order: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut Option<Vec<u16>>) {
    if class == classes.len() {
        let cand = permuted(rows, order);
        if best.as_ref().is_none_or(|b| cand < *b) {
            *best = Some(cand);
        }
        return;
    }
    let members = &classes[class];
    let placed_in_class = members.iter().filter(|&&v| used[v]).count();
    if placed_in_class == members.len() {
        search(rows, classes, class + 1, order, used, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        order.push(v);
        search(rows, classes, class, order, used, best);
        order.pop();
        used[v] = false;
    }
}

/// Exact isomorphism-invariant form of an unweighted graph.
pub fn canonical_form(g: &WeightedGraph) -> Result<CanonicalForm> {
    let rows = rows_of(g)?;
    Ok(canonical_rows(&rows))
}

fn canonical_rows(rows: &[u16]) -> CanonicalForm {
    let colour = refine(rows);
    let n_classes = colour.iter().max().map_or(0, |m| m + 1);
    let mut classes = vec![Vec::new(); n_classes];
    for (v, &c) in colour.iter().enumerate() {
        classes[c].push(v);
    }
    let mut best = None;
    search(rows, &classes, 0, &mut Vec::with_capacity(rows.len()), &mut vec![false; rows.len()], &mut best);
    CanonicalForm(best.unwrap_or_default())
}

pub fn are_isomorphic(a: &WeightedGraph, b: &WeightedGraph) -> Result<bool> {
    Ok(a.n() == b.n() && canonical_form(a)? == canonical_form(b)?)
}

/// All unweighted graphs on exactly `n` vertices up to isomorphism, in
/// canonical-form order.
pub fn graphs_on(n: usize, loops: bool) -> Result<Vec<WeightedGraph>> {
    Ok(canonical_graphs_on(n, loops)?.iter().map(CanonicalForm::to_graph).collect())
}

fn canonical_graphs_on(n: usize, loops: bool) -> Result<BTreeSet<CanonicalForm>> {
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::InvalidParameter(format!("enumeration limited to {MAX_CANONICAL_VERTICES} vertices")));
    }
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::from([CanonicalForm(Vec::new())]);
    for m in 1..=n {
        let mut next = BTreeSet::new();
        let new = m - 1;
        for base in &level {
            for nb in 0u16..(1 << new) {
                for looped in 0..=(loops as u16) {
                    let mut rows: Vec<u16> = base.0.clone();
                    for (u, row) in rows.iter_mut().enumerate() {
                        if nb >> u & 1 == 1 {
                            *row |= 1 << new;
                        }
                    }
                    rows.push(nb | looped << new);
                    next.insert(canonical_rows(&rows));
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Which graphs [`enumerate_graphs`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct EnumerationFilter {
    pub loops: bool,
    pub connected_only: bool,
    pub no_isolated: bool,
}


/// Pairwise non-isomorphic graphs with `1..=n_max` vertices, smallest first.
pub fn enumerate_graphs(n_max: usize, filter: EnumerationFilter) -> Result<Vec<WeightedGraph>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for g in graphs_on(n, filter.loops)? {
            if filter.connected_only && !g.is_connected() {
                continue;
            }
            if filter.no_isolated && g.has_isolated_vertex() {
                continue;
            }
            out.push(g);
        }
    }
    Ok(out)
}

/// Drops graphs isomorphic to an earlier one, keeping first occurrences.
pub fn dedup_isomorphic(graphs: Vec<WeightedGraph>) -> Result<Vec<WeightedGraph>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in graphs {
        if seen.insert(canonical_form(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}

/// An `H`-blow-up together with the data that built it.
#[derive(Debug, Clone)]
pub struct BlowUpInstance {
    pub pattern: WeightedGraph,
    pub parts: Vec<WeightedGraph>,
    pub graph: WeightedGraph,
}

/// Every blow-up of each pattern with parts drawn from `pool` and at most
/// `max_vertices` vertices in total, deduplicated up to isomorphism of the
/// resulting graph (first construction kept).
pub fn h_blow_ups(patterns: &[WeightedGraph], pool: &[WeightedGraph], max_vertices: usize) -> Result<Vec<BlowUpInstance>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in patterns {
        let k = f.n();
        let mut choice = vec![0usize; k];
        'outer: loop {
            let total: usize = choice.iter().map(|&c| pool[c].n()).sum();
            if total <= max_vertices {
                let parts: Vec<WeightedGraph> = choice.iter().map(|&c| pool[c].clone()).collect();
                let graph = crate::graph::h_blow_up(f, &parts)?;
                if seen.insert(canonical_form(&graph)?) {
                    out.push(BlowUpInstance { pattern: f.clone(), parts, graph });
                }
            }
            for slot in choice.iter_mut() {
                *slot += 1;
                if *slot < pool.len() {
                    continue 'outer;
                }
                *slot = 0;
            }
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};

    #[test]
    fn counts_match_known_sequences() {
        // simple graphs: 1, 2, 4, 11, 34, 156
        let simple: Vec<usize> = (1..=6).map(|n| graphs_on(n, false).unwrap().len()).collect();
        assert_eq!(simple, vec![1, 2, 4, 11, 34, 156]);
        // loops allowed: 2, 6, 20, 90, 544
        let looped: Vec<usize> = (1..=5).map(|n| graphs_on(n, true).unwrap().len()).collect();
        assert_eq!(looped, vec![2, 6, 20, 90, 544]);
    }

    #[test]
    fn connected_counts() {
        let f = EnumerationFilter { connected_only: true, ..Default::default() };
        let per_n: Vec<usize> = (1..=5)
            .map(|n| enumerate_graphs(n, f).unwrap().iter().filter(|g| g.n() == n).count())
            .collect();
        assert_eq!(per_n, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn relabelling_preserves_canonical_form() {
        let c6 = make_family(Family::Cycle, &[6]).unwrap();
        let perm = [3, 5, 0, 1, 4, 2];
        assert_eq!(canonical_form(&c6).unwrap(), canonical_form(&c6.permute(&perm)).unwrap());
        let p5 = make_family(Family::Path, &[5]).unwrap();
        assert!(!are_isomorphic(&c6, &p5).unwrap());
        let looped = make_family(Family::KqCirc, &[3]).unwrap();
        let form = canonical_form(&looped).unwrap();
        assert!(are_isomorphic(&form.to_graph(), &looped).unwrap());
    }

    #[test]
    fn blow_ups_of_an_edge() {
        let edge = make_family(Family::Complete, &[2]).unwrap();
        let pool: Vec<_> = (1..=2).map(|q| make_family(Family::Complete, &[q]).unwrap()).collect();
        let all = h_blow_ups(&[edge], &pool, 4).unwrap();
        // K2, K3 (= K1 join K2, twice), K4
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|b| b.graph.n() <= 4));
    }

    #[test]
    fn dedup_keeps_first() {
        let c4 = make_family(Family::Cycle, &[4]).unwrap();
        let k22 = make_family(Family::CompleteMultipartite, &[2, 2]).unwrap();
        let p3 = make_family(Family::Path, &[3]).unwrap();
        let out = dedup_isomorphic(vec![c4.clone(), p3, k22]).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], c4);
    }
}
