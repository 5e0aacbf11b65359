use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sampler::{instance_rng, random_signed_vector, random_vector};
use super::{ClaimId, Instance, Verdict};
use crate::error::{Error, Result};
use crate::formulas::{cycle_chromatic, n_cycle, n_multipartite, n_path_even, n_path_odd, Orientation};
use crate::graph::{make_family, tensor_with_k2, Family, WeightedGraph};
use crate::hom::{bipartite_hom_count, g_volume, hom_count};
use crate::poly::SparsePolynomial;
use crate::rational::{is_nonnegative, Rational};

fn int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn swap_sides(h: &WeightedGraph, g: &WeightedGraph) -> Result<(Rational, Rational)> {
    let hom = hom_count(h, g)?;
    let double = tensor_with_k2(h)?;
    Ok((&hom * &hom, hom_count(double.graph(), g)?))
}

/// `hom(H,G)^2 <= hom(H×K2,G)`.
pub fn check_bipartite_swapping(h: &WeightedGraph, g: &WeightedGraph) -> Result<Verdict> {
    let (lhs, rhs) = swap_sides(h, g)?;
    Ok(Verdict::new(ClaimId::BipartiteSwap, lhs, rhs, Instance::BipartiteSwap { h: h.clone(), g: g.clone() }, None))
}

fn hom_into_subset(h: &WeightedGraph, g: &WeightedGraph, subset: &[usize]) -> Result<Rational> {
    if subset.is_empty() {
        return Ok(if h.n() == 0 { Rational::one() } else { Rational::zero() });
    }
    hom_count(h, &g.induced_subgraph(subset)?)
}

fn cross_sides(h: &WeightedGraph, g: &WeightedGraph, a: &[usize], b: &[usize]) -> Result<(Rational, Rational)> {
    let lhs = hom_into_subset(h, g, a)? * hom_into_subset(h, g, b)?;
    let rhs = bipartite_hom_count(&tensor_with_k2(h)?, g, a, b)?;
    Ok((lhs, int(rhs)))
}

fn prefix(k: usize) -> Vec<usize> {
    (0..k).collect()
}

fn kq_sides(h: &WeightedGraph, q: usize, a: usize, b: usize) -> Result<(Rational, Rational)> {
    if !(1..=b).contains(&a) || b > q {
        return Err(Error::InvalidParameter(format!("need 1 <= a <= b <= q, got a={a}, b={b}, q={q}")));
    }
    let kq = make_family(Family::Complete, &[q])?;
    cross_sides(h, &kq, &prefix(a), &prefix(b))
}

fn require_complete(g: &WeightedGraph) -> Result<usize> {
    let q = g.n();
    let complete = g.is_unweighted() && (0..q).all(|u| (0..q).all(|v| g.has_edge(u, v) == (u != v)));
    if !complete || q == 0 {
        return Err(Error::InvalidParameter("kq_reduced mode needs G = K_q".into()));
    }
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossBipartiteMode {
    /// Every pair of vertex subsets `A, B`, empty ones included.
    ExhaustiveSubsets,
    /// `G = K_q`; only nested `A = {0..a-1} ⊆ B = {0..b-1}`, `1 <= a <= b <= q`.
    KqReduced,
}

/// `hom(H,G[A]) hom(H,G[B]) <= hom_b(H×K2, G[A,B])`, one verdict per pair.
pub fn check_cross_bipartite_swapping(h: &WeightedGraph, g: &WeightedGraph, mode: CrossBipartiteMode) -> Result<Vec<Verdict>> {
    g.require_unweighted("cross-bipartite swapping needs an unweighted target")?;
    match mode {
        CrossBipartiteMode::KqReduced => {
            let q = require_complete(g)?;
            let mut out = Vec::new();
            for a in 1..=q {
                for b in a..=q {
                    let (lhs, rhs) = kq_sides(h, q, a, b)?;
                    out.push(Verdict::new(
                        ClaimId::CrossBipartiteKq,
                        lhs,
                        rhs,
                        Instance::CrossBipartiteKq { h: h.clone(), q, a, b },
                        None,
                    ));
                }
            }
            Ok(out)
        }
        CrossBipartiteMode::ExhaustiveSubsets => {
            let n = g.n();
            if n > 10 {
                return Err(Error::InvalidParameter(format!("exhaustive subsets limited to 10 vertices, got {n}")));
            }
            let subsets: Vec<Vec<usize>> =
                (0u32..1 << n).map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect();
            let homs: Vec<Rational> = subsets.iter().map(|s| hom_into_subset(h, g, s)).collect::<Result<_>>()?;
            let double = tensor_with_k2(h)?;
            let mut out = Vec::with_capacity(subsets.len() * subsets.len());
            for (i, a) in subsets.iter().enumerate() {
                for (j, b) in subsets.iter().enumerate() {
                    let lhs = &homs[i] * &homs[j];
                    let rhs = int(bipartite_hom_count(&double, g, a, b)?);
                    out.push(Verdict::new(
                        ClaimId::CrossBipartite,
                        lhs,
                        rhs,
                        Instance::CrossBipartite { h: h.clone(), g: g.clone(), a: a.clone(), b: b.clone() },
                        None,
                    ));
                }
            }
            Ok(out)
        }
    }
}

/// Source families with closed-form colouring counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CrossFamily {
    /// Path with `len` edges.
    Path { len: usize },
    /// Cycle with `len` edges, `len` even.
    EvenCycle { len: usize },
    Multipartite { parts: Vec<usize> },
}

impl CrossFamily {
    pub fn graph(&self) -> Result<WeightedGraph> {
        match self {
            CrossFamily::Path { len } => make_family(Family::Path, &[*len]),
            CrossFamily::EvenCycle { len } => {
                if len % 2 == 1 {
                    return Err(Error::InvalidParameter(format!("cycle length {len} is odd")));
                }
                make_family(Family::Cycle, &[*len])
            }
            CrossFamily::Multipartite { parts } => make_family(Family::CompleteMultipartite, parts),
        }
    }

    /// `hom(H, K_a)` by formula (`a >= 2`).
    fn plain(&self, a: usize) -> Result<BigInt> {
        match self {
            CrossFamily::Path { len: 0 } => Ok(BigInt::from(a)),
            CrossFamily::Path { len } if len % 2 == 1 => n_path_odd(len.div_ceil(2), a, a),
            CrossFamily::Path { len } => n_path_even(len / 2, a, a, Orientation::Ab),
            CrossFamily::EvenCycle { len } => cycle_chromatic(*len, a),
            CrossFamily::Multipartite { parts } => Ok(n_multipartite(parts, a)),
        }
    }

    /// `hom_b(H×K2, K_q[A,B])` by formula, when one is known (`a >= 2`).
    fn double(&self, a: usize, b: usize) -> Result<Option<BigInt>> {
        Ok(match self {
            CrossFamily::Path { len: 0 } => None,
            CrossFamily::Path { len } if len % 2 == 1 => {
                let n = n_path_odd(len.div_ceil(2), a, b)?;
                Some(&n * &n)
            }
            CrossFamily::Path { len } => {
                let d = len / 2;
                Some(n_path_even(d, a, b, Orientation::Ab)? * n_path_even(d, a, b, Orientation::Ba)?)
            }
            CrossFamily::EvenCycle { len } => {
                let n = n_cycle(len / 2, a, b)?;
                Some(&n * &n)
            }
            CrossFamily::Multipartite { .. } => None,
        })
    }
}

/// Cross-bipartite swapping in `K_q` for a formula family, nested `A ⊆ B`.
/// Closed forms are used where available (`a >= 2`); the rest is counted
/// directly.
pub fn check_cross_bipartite_family(family: &CrossFamily, q: usize) -> Result<Vec<Verdict>> {
    let h = family.graph()?;
    let mut out = Vec::new();
    for a in 1..=q {
        for b in a..=q {
            let (lhs, rhs) = if a >= 2 {
                let lhs = int(family.plain(a)? * family.plain(b)?);
                let rhs = match family.double(a, b)? {
                    Some(v) => int(v),
                    None => kq_sides(&h, q, a, b)?.1,
                };
                (lhs, rhs)
            } else {
                kq_sides(&h, q, a, b)?
            };
            out.push(Verdict::new(
                ClaimId::CrossBipartiteKq,
                lhs,
                rhs,
                Instance::CrossBipartiteKq { h: h.clone(), q, a, b },
                None,
            ));
        }
    }
    Ok(out)
}

fn weighted_cross_sides(h: &WeightedGraph, g: &WeightedGraph, a: &[Rational], b: &[Rational]) -> Result<(Rational, Rational)> {
    let t = h.n();
    let lhs = g_volume(h, &vec![a.to_vec(); t], g)? * g_volume(h, &vec![b.to_vec(); t], g)?;
    let double = tensor_with_k2(h)?;
    let mut vectors = vec![Vec::new(); 2 * t];
    for &v in double.left() {
        vectors[v] = a.to_vec();
    }
    for &v in double.right() {
        vectors[v] = b.to_vec();
    }
    Ok((lhs, g_volume(double.graph(), &vectors, g)?))
}

/// `V_H(a..a;G) V_H(b..b;G) <= V_{H×K2}(a..a,b..b;G)` for `trials` seeded
/// pairs of nonnegative rational vectors; trial `i` uses stream `i`.
pub fn check_weighted_cross_bipartite(h: &WeightedGraph, g: &WeightedGraph, trials: u64, seed: u64) -> Result<Vec<Verdict>> {
    (0..trials)
        .map(|i| {
            let mut rng = instance_rng(seed, i);
            let a = random_vector(&mut rng, g.n());
            let b = random_vector(&mut rng, g.n());
            let (lhs, rhs) = weighted_cross_sides(h, g, &a, &b)?;
            Ok(Verdict::new(
                ClaimId::WeightedCrossBipartite,
                lhs,
                rhs,
                Instance::WeightedCrossBipartite { h: h.clone(), g: g.clone(), a, b },
                Some(seed),
            ))
        })
        .collect()
}

fn af_degree(f: &SparsePolynomial) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("the zero polynomial has no degree to polarize".into()));
    }
    f.homogeneous_degree().ok_or(Error::NotHomogeneous)
}

fn af_sides(f: &SparsePolynomial, vectors: &[Vec<Rational>]) -> Result<(Rational, Rational)> {
    let d = af_degree(f)?;
    if vectors.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: vectors.len() });
    }
    if d < 2 {
        return Err(Error::DegreeTooLow(d));
    }
    if vectors[1..].iter().flatten().any(|x| !is_nonnegative(x)) {
        return Err(Error::InvalidParameter("v2..vd must be nonnegative".into()));
    }
    let with = |x: &Vec<Rational>, y: &Vec<Rational>| {
        let mut vs = vectors.to_vec();
        vs[0] = x.clone();
        vs[1] = y.clone();
        f.mixed_form(&vs)
    };
    let (v1, v2) = (&vectors[0], &vectors[1]);
    let mixed = with(v1, v2)?;
    Ok((with(v1, v1)? * with(v2, v2)?, &mixed * &mixed))
}

/// `F(v1,v2,v3..)^2 >= F(v1,v1,v3..) F(v2,v2,v3..)` for the polarization `F`
/// of `f`, stored as `lhs = F(v1,v1,..)F(v2,v2,..)`, `rhs = F(v1,v2,..)^2`.
pub fn check_af_inequality(f: &SparsePolynomial, vectors: &[Vec<Rational>]) -> Result<Verdict> {
    let (lhs, rhs) = af_sides(f, vectors)?;
    Ok(Verdict::new(
        ClaimId::AfInequality,
        lhs,
        rhs,
        Instance::AfInequality { f: f.clone(), vectors: vectors.to_vec() },
        None,
    ))
}

/// Seeded AF trials: `v1` signed, the rest nonnegative.
pub fn af_inequality_trials(f: &SparsePolynomial, trials: u64, seed: u64) -> Result<Vec<Verdict>> {
    let d = af_degree(f)?;
    (0..trials)
        .map(|i| {
            let mut rng = instance_rng(seed, i);
            let mut vectors = vec![random_signed_vector(&mut rng, f.n_vars())];
            for _ in 1..d {
                vectors.push(random_vector(&mut rng, f.n_vars()));
            }
            let mut v = check_af_inequality(f, &vectors)?;
            v.seed = Some(seed);
            Ok(v)
        })
        .collect()
}

fn corollary_sides(g: &WeightedGraph, t: usize, a: &[Rational], b: &[Rational]) -> Result<(Rational, Rational)> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t must be at least 2, got {t}")));
    }
    for v in [a, b] {
        if v.len() != g.n() {
            return Err(Error::DimensionMismatch { expected: g.n(), found: v.len() });
        }
    }
    let kt = make_family(Family::Complete, &[t])?;
    let vol = |first: &[Rational], rest: &[Rational]| {
        let mut vs = vec![rest.to_vec(); t];
        vs[0] = first.to_vec();
        g_volume(&kt, &vs, g)
    };
    let lhs = vol(a, a)? * vol(b, b)?;
    let rhs = vol(b, a)? * vol(a, b)?;
    Ok((lhs, rhs))
}

/// `V(b,a..a) V(a,b..b) >= V(a..a) V(b..b)` for `V = V_{K_t}(-;G)`, stored
/// as `lhs = V(a..a)V(b..b)`, `rhs = V(b,a..a)V(a,b..b)`.
pub fn check_corollary_product(g: &WeightedGraph, t: usize, a: &[Rational], b: &[Rational]) -> Result<Verdict> {
    let (lhs, rhs) = corollary_sides(g, t, a, b)?;
    Ok(Verdict::new(
        ClaimId::CorollaryProduct,
        lhs,
        rhs,
        Instance::CorollaryProduct { g: g.clone(), t, a: a.to_vec(), b: b.to_vec() },
        None,
    ))
}

pub fn corollary_product_trials(g: &WeightedGraph, t: usize, trials: u64, seed: u64) -> Result<Vec<Verdict>> {
    (0..trials)
        .map(|i| {
            let mut rng = instance_rng(seed, i);
            let a = random_vector(&mut rng, g.n());
            let b = random_vector(&mut rng, g.n());
            let mut v = check_corollary_product(g, t, &a, &b)?;
            v.seed = Some(seed);
            Ok(v)
        })
        .collect()
}

pub(super) fn evaluate(instance: &Instance) -> Result<(Rational, Rational)> {
    match instance {
        Instance::BipartiteSwap { h, g } => swap_sides(h, g),
        Instance::CrossBipartite { h, g, a, b } => cross_sides(h, g, a, b),
        Instance::CrossBipartiteKq { h, q, a, b } => kq_sides(h, *q, *a, *b),
        Instance::WeightedCrossBipartite { h, g, a, b } => weighted_cross_sides(h, g, a, b),
        Instance::AfInequality { f, vectors } => af_sides(f, vectors),
        Instance::CorollaryProduct { g, t, a, b } => corollary_sides(g, *t, a, b),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_antiferromagnetic;
    use crate::hom::g_chromatic_polynomial;
    use crate::rational::{rat, ratio};
    use crate::verify::{replay, AfmSampler};

    fn k(q: usize) -> WeightedGraph {
        make_family(Family::Complete, &[q]).unwrap()
    }

    #[test]
    fn bipartite_swap_examples() {
        let v = check_bipartite_swapping(&k(3), &k(3)).unwrap();
        assert!(v.holds);
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (rat(36), rat(66)));
        let c4 = make_family(Family::Cycle, &[4]).unwrap();
        let g0 = WeightedGraph::from_int_matrix(&[&[0, 0, 1], &[0, 0, 2], &[1, 2, 0]]).unwrap();
        let v = check_bipartite_swapping(&c4, &g0).unwrap();
        assert_eq!(v.lhs, v.rhs);
        let two = k(3).disjoint_union(&k(3));
        let v = check_bipartite_swapping(&k(3), &two).unwrap();
        assert!(!v.holds);
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (rat(144), rat(132)));
        assert!(v.witness.is_some());
        assert!(replay(&v).unwrap());
    }

    #[test]
    fn cross_bipartite_examples() {
        let vs = check_cross_bipartite_swapping(&k(2), &k(3), CrossBipartiteMode::KqReduced).unwrap();
        let v = vs.iter().find(|v| matches!(v.instance, Instance::CrossBipartiteKq { a: 2, b: 3, .. })).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (rat(12), rat(16)));
        assert!(vs.iter().all(|v| v.holds));

        let two_k2 = WeightedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let vs = check_cross_bipartite_swapping(&k(2), &two_k2, CrossBipartiteMode::ExhaustiveSubsets).unwrap();
        assert_eq!(vs.len(), 256);
        let bad = vs
            .iter()
            .find(|v| matches!(&v.instance, Instance::CrossBipartite { a, b, .. } if a == &[0, 1] && b == &[2, 3]))
            .unwrap();
        assert!(!bad.holds);
        assert_eq!(bad.rhs, rat(0));
        assert!(bad.lhs > rat(0));

        let c4 = CrossFamily::EvenCycle { len: 4 };
        assert!(check_cross_bipartite_family(&c4, 4).unwrap().iter().all(|v| v.holds));
        assert!(check_cross_bipartite_swapping(&k(2), &two_k2, CrossBipartiteMode::KqReduced).is_err());
    }

    #[test]
    fn family_formulas_match_direct_counts() {
        let fams = [
            CrossFamily::Path { len: 1 },
            CrossFamily::Path { len: 2 },
            CrossFamily::Path { len: 3 },
            CrossFamily::Path { len: 4 },
            CrossFamily::EvenCycle { len: 4 },
            CrossFamily::EvenCycle { len: 6 },
            CrossFamily::Multipartite { parts: vec![2, 1] },
        ];
        for f in &fams {
            for v in check_cross_bipartite_family(f, 4).unwrap() {
                assert!(replay(&v).unwrap(), "{f:?} {:?}", v.instance);
            }
        }
    }

    #[test]
    fn weighted_cross_bipartite_examples() {
        let s = AfmSampler::new(11, 4);
        let g = s.sample(0).unwrap();
        let vs = check_weighted_cross_bipartite(&k(3), &g, 10, 5).unwrap();
        assert!(vs.iter().all(|v| v.holds));
        assert!(replay(&vs[3]).unwrap());
        let zero = vec![rat(0); g.n()];
        let (l, r) = weighted_cross_sides(&k(3), &g, &zero, &zero).unwrap();
        assert_eq!((l, r), (rat(0), rat(0)));
        let ones = vec![rat(1); 3];
        let (l, r) = weighted_cross_sides(&k(3), &k(3), &ones, &ones).unwrap();
        assert_eq!((l, r), (rat(36), rat(66)));
    }

    #[test]
    fn af_examples() {
        let f = g_chromatic_polynomial(&k(3), &k(3)).unwrap();
        let ones = vec![rat(1); 3];
        let v = check_af_inequality(&f, &[ones.clone(), ones.clone(), ones.clone()]).unwrap();
        assert_eq!(v.lhs, v.rhs);
        let q = SparsePolynomial::quadratic_form(&k(3));
        let v = check_af_inequality(&q, &[vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (rat(0), ratio(1, 4)));
        let f = g_chromatic_polynomial(&k(3), &k(4)).unwrap();
        assert!(af_inequality_trials(&f, 20, 1).unwrap().iter().all(|v| v.holds));
        assert!(check_af_inequality(&f, std::slice::from_ref(&ones)).is_err());
    }

    #[test]
    fn corollary_examples() {
        let a = vec![rat(1), rat(0)];
        let b = vec![rat(0), rat(1)];
        let v = check_corollary_product(&k(2), 2, &a, &b).unwrap();
        assert_eq!((v.lhs.clone(), v.rhs.clone()), (rat(0), rat(1)));
        let v = check_corollary_product(&k(2), 2, &a, &a).unwrap();
        assert_eq!(v.lhs, v.rhs);
        let g = AfmSampler::new(2, 4).sample(1).unwrap();
        assert!(is_antiferromagnetic(&g).verdict);
        assert!(corollary_product_trials(&g, 3, 10, 9).unwrap().iter().all(|v| v.holds));
        assert!(check_corollary_product(&k(2), 1, &a, &b).is_err());
    }

    #[test]
    fn verdict_json_round_trip() {
        let v = check_bipartite_swapping(&k(3), &k(3).disjoint_union(&k(3))).unwrap();
        let line = v.to_json_line();
        assert!(line.contains("\"lhs\":\"144\""));
        let back = super::super::Verdict::from_json_line(&line).unwrap();
        assert_eq!(back, v);
    }
}
