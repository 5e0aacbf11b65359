//! Closed-form list-colouring counts for paths, even cycles and complete
//! multipartite graphs.
//!
//! Colour lists are nested: the `a`-set is `{0..a-1}` and the `b`-set is
//! `{0..b-1}` inside `K_b`. Each family also knows its labelled source graph,
//! so [`FormulaFamily::brute_force`] recomputes every value by direct
//! counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{make_family, Family, LabelledBipartiteGraph, WeightedGraph};
use crate::hom::{bipartite_hom_count, g_volume, hom_count, indicator_vector};

fn big(n: usize) -> BigInt {
    BigInt::from(n)
}

fn choose(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(big(n), big(k))
    }
}

fn falling_factorial(n: usize, k: usize) -> BigInt {
    (0..k).map(|i| big(n - i)).product()
}

/// Stirling numbers of the second kind, `S(0,0) = 1`, `S(r,0) = 0` for `r > 0`.
pub fn stirling2(r: usize, l: usize) -> BigInt {
    if l > r {
        return BigInt::zero();
    }
    // row-by-row recurrence S(i,j) = j S(i-1,j) + S(i-1,j-1)
    let mut row = vec![BigInt::zero(); l + 1];
    row[0] = BigInt::one();
    for i in 1..=r {
        for j in (1..=l.min(i)).rev() {
            row[j] = &row[j] * big(j) + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[l].clone()
}

fn check_colours(a: usize, b: usize) -> Result<()> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("closed forms need a >= 2, got a = {a}")));
    }
    if b < a {
        return Err(Error::InvalidParameter(format!("need b >= a, got a = {a}, b = {b}")));
    }
    Ok(())
}

fn positive(d: usize, what: &str) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(())
}

/// `Σ_ℓ C(m,ℓ) a(a-1)^ℓ (b-1)^(e-ℓ) (b-2)^ℓ` for `ℓ = 0..=m`.
fn path_sum(m: usize, e: usize, a: usize, b: usize) -> BigInt {
    (0..=m)
        .map(|l| {
            choose(m, l) * big(a) * big(a - 1).pow(l) * big(b - 1).pow(e - l) * big(b - 2).pow(l)
        })
        .sum()
}

/// Path of length `2d - 1`; the side containing the first vertex gets the
/// `a`-set.
pub fn n_path_odd(d: usize, a: usize, b: usize) -> Result<BigInt> {
    positive(d, "d")?;
    check_colours(a, b)?;
    Ok(path_sum(d - 1, d, a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// The `d + 1` end-side vertices take the `a`-set.
    Ab,
    /// The `d + 1` end-side vertices take the `b`-set.
    Ba,
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ab" => Ok(Orientation::Ab),
            "ba" => Ok(Orientation::Ba),
            _ => Err(Error::Parse(format!("orientation must be ab or ba, got {s:?}"))),
        }
    }
}

/// Path of length `2d`.
pub fn n_path_even(d: usize, a: usize, b: usize, orientation: Orientation) -> Result<BigInt> {
    positive(d, "d")?;
    check_colours(a, b)?;
    Ok(match orientation {
        Orientation::Ab => path_sum(d, d, a, b),
        Orientation::Ba => path_sum(d - 1, d + 1, a, b),
    })
}

/// Cycle of length `2d`, one side coloured from the `a`-set.
pub fn n_cycle(d: usize, a: usize, b: usize) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("cycle needs d >= 2, got {d}")));
    }
    check_colours(a, b)?;
    let a1 = BigInt::from(a as i64 - 1);
    Ok((0..=d)
        .map(|l| {
            let sign = if l % 2 == 0 { a1.clone() } else { -a1.clone() };
            choose(d, l) * (a1.clone().pow(l) + sign) * big(b - 1).pow(d - l) * big(b - 2).pow(l)
        })
        .sum())
}

/// Proper `a`-colourings of an `l`-cycle.
pub fn cycle_chromatic(l: usize, a: usize) -> Result<BigInt> {
    if l < 3 {
        return Err(Error::InvalidParameter(format!("cycle length must be >= 3, got {l}")));
    }
    positive(a, "a")?;
    let a1 = BigInt::from(a as i64 - 1);
    let sign = if l.is_multiple_of(2) { a1.clone() } else { -a1.clone() };
    Ok(a1.pow(l) + sign)
}

/// `hom(K(r_1, ..., r_k), K_a)`; the empty list gives 1.
pub fn n_multipartite(rs: &[usize], a: usize) -> BigInt {
    match rs.split_first() {
        None => BigInt::one(),
        Some((&r1, rest)) => (0..=a.min(r1))
            .map(|l| {
                let used = choose(a, l) * stirling2(r1, l) * falling_factorial(l, l);
                if used.is_zero() {
                    used
                } else {
                    used * n_multipartite(rest, a - l)
                }
            })
            .sum(),
    }
}

/// Copies of `K(s_1, r_2, ..., r_k)` in `K_b` with the first part inside the
/// `a`-set and the remaining parts inside the `b`-set.
pub fn n_multipartite_first_part(s1: usize, rs: &[usize], a: usize, b: usize) -> Result<BigInt> {
    if b < a {
        return Err(Error::InvalidParameter(format!("need b >= a, got a = {a}, b = {b}")));
    }
    Ok((0..=a.min(s1))
        .map(|l| choose(a, l) * stirling2(s1, l) * falling_factorial(l, l) * n_multipartite(rs, b - l))
        .sum())
}

/// The labelled families behind the closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FormulaFamily {
    PathOdd { d: usize },
    PathEven { d: usize, orientation: Orientation },
    Cycle { d: usize },
    Multipartite { parts: Vec<usize> },
    MultipartiteFirstPart { s1: usize, rest: Vec<usize> },
}

impl fmt::Display for FormulaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaFamily::PathOdd { d } => write!(f, "path-odd(d={d})"),
            FormulaFamily::PathEven { d, orientation } => write!(f, "path-even(d={d},{orientation:?})"),
            FormulaFamily::Cycle { d } => write!(f, "cycle(d={d})"),
            FormulaFamily::Multipartite { parts } => write!(f, "multipartite({parts:?})"),
            FormulaFamily::MultipartiteFirstPart { s1, rest } => write!(f, "multipartite-first-part({s1};{rest:?})"),
        }
    }
}

/// Path with vertices `0..=len`; left side = even positions.
fn labelled_path(len: usize) -> Result<LabelledBipartiteGraph> {
    let g = make_family(Family::Path, &[len])?;
    let left = (0..=len).filter(|v| v % 2 == 0).collect();
    let right = (0..=len).filter(|v| v % 2 == 1).collect();
    LabelledBipartiteGraph::new(g, left, right)
}

/// `u_i = 2i`, `v_i = 2i + 1`, edges `u_i v_i` and `v_i u_{i+1}` (indices mod d).
pub fn labelled_even_cycle(d: usize) -> Result<LabelledBipartiteGraph> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("cycle needs d >= 2, got {d}")));
    }
    let mut edges = Vec::with_capacity(2 * d);
    for i in 0..d {
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i + 1, 2 * ((i + 1) % d)));
    }
    let g = WeightedGraph::from_edges(2 * d, &edges)?;
    LabelledBipartiteGraph::new(g, (0..d).map(|i| 2 * i).collect(), (0..d).map(|i| 2 * i + 1).collect())
}

/// `None` when every part is empty.
fn multipartite(parts: &[usize]) -> Result<Option<WeightedGraph>> {
    if parts.iter().all(|&p| p == 0) {
        return Ok(None);
    }
    make_family(Family::CompleteMultipartite, parts).map(Some)
}

impl FormulaFamily {
    /// Closed-form value. `b` is ignored for [`FormulaFamily::Multipartite`].
    pub fn evaluate(&self, a: usize, b: usize) -> Result<BigInt> {
        match self {
            FormulaFamily::PathOdd { d } => n_path_odd(*d, a, b),
            FormulaFamily::PathEven { d, orientation } => n_path_even(*d, a, b, *orientation),
            FormulaFamily::Cycle { d } => n_cycle(*d, a, b),
            FormulaFamily::Multipartite { parts } => Ok(n_multipartite(parts, a)),
            FormulaFamily::MultipartiteFirstPart { s1, rest } => n_multipartite_first_part(*s1, rest, a, b),
        }
    }

    /// Direct count in `K_b` with colour lists `{0..a-1} ⊆ {0..b-1}`.
    pub fn brute_force(&self, a: usize, b: usize) -> Result<BigInt> {
        let nested = |hb: LabelledBipartiteGraph, a_side_left: bool| -> Result<BigInt> {
            let kb = make_family(Family::Complete, &[b])?;
            let aset: Vec<usize> = (0..a).collect();
            let bset: Vec<usize> = (0..b).collect();
            if a_side_left {
                bipartite_hom_count(&hb, &kb, &aset, &bset)
            } else {
                bipartite_hom_count(&hb, &kb, &bset, &aset)
            }
        };
        if b < a {
            return Err(Error::InvalidParameter(format!("need b >= a, got a = {a}, b = {b}")));
        }
        match self {
            FormulaFamily::PathOdd { d } => {
                positive(*d, "d")?;
                nested(labelled_path(2 * d - 1)?, true)
            }
            FormulaFamily::PathEven { d, orientation } => {
                positive(*d, "d")?;
                nested(labelled_path(2 * d)?, *orientation == Orientation::Ab)
            }
            FormulaFamily::Cycle { d } => nested(labelled_even_cycle(*d)?, true),
            FormulaFamily::Multipartite { parts } => {
                let Some(h) = multipartite(parts)? else {
                    return Ok(BigInt::one());
                };
                Ok(hom_count(&h, &make_family(Family::Complete, &[a])?)?.to_integer())
            }
            FormulaFamily::MultipartiteFirstPart { s1, rest } => {
                first_part_brute_force(*s1, rest, &(0..a).collect::<Vec<_>>(), &(0..b).collect::<Vec<_>>(), b)
            }
        }
    }
}

/// Copies of `K(s_1, rest...)` in `K_q` with the first part inside `first`
/// and all other parts inside `others`. Unlike the closed form, `first` need
/// not be contained in `others`.
pub fn first_part_brute_force(s1: usize, rest: &[usize], first: &[usize], others: &[usize], q: usize) -> Result<BigInt> {
    let mut parts = vec![s1];
    parts.extend_from_slice(rest);
    let Some(h) = multipartite(&parts)? else {
        return Ok(BigInt::one());
    };
    let kq = make_family(Family::Complete, &[q])?;
    let x_first = indicator_vector(q, first)?;
    let x_others = indicator_vector(q, others)?;
    // make_family lists the vertices part by part
    let vectors: Vec<_> = (0..h.n()).map(|v| if v < s1 { x_first.clone() } else { x_others.clone() }).collect();
    Ok(g_volume(&h, &vectors, &kq)?.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(3, 2), n(3));
        assert_eq!(stirling2(4, 2), n(7));
        assert_eq!(stirling2(0, 0), n(1));
        assert_eq!(stirling2(5, 0), n(0));
        assert_eq!(stirling2(2, 5), n(0));
        assert_eq!(stirling2(10, 4), n(34105));
    }

    #[test]
    fn path_values() {
        assert_eq!(n_path_odd(1, 2, 3).unwrap(), n(4));
        assert_eq!(n_path_odd(2, 2, 3).unwrap(), n(12));
        assert_eq!(n_path_odd(2, 3, 3).unwrap(), n(24));
        assert_eq!(n_path_even(1, 2, 3, Orientation::Ab).unwrap(), n(6));
        assert_eq!(n_path_even(1, 2, 3, Orientation::Ba).unwrap(), n(8));
        assert_eq!(n_path_even(1, 3, 3, Orientation::Ab).unwrap(), n(12));
        assert_eq!(n_path_even(1, 3, 3, Orientation::Ba).unwrap(), n(12));
    }

    #[test]
    fn cycle_values() {
        assert_eq!(n_cycle(2, 3, 3).unwrap(), n(18));
        assert_eq!(n_cycle(2, 2, 3).unwrap(), n(10));
        assert_eq!(n_cycle(2, 2, 2).unwrap(), n(2));
        assert_eq!(cycle_chromatic(3, 3).unwrap(), n(6));
        assert_eq!(cycle_chromatic(4, 3).unwrap(), n(18));
        assert_eq!(cycle_chromatic(5, 2).unwrap(), n(0));
        assert_eq!(cycle_chromatic(6, 3).unwrap(), n(66));
    }

    #[test]
    fn multipartite_values() {
        assert_eq!(n_multipartite(&[3], 2), n(8));
        assert_eq!(n_multipartite(&[1, 1, 1], 4), n(24));
        assert_eq!(n_multipartite(&[2, 1], 3), n(12));
        assert_eq!(n_multipartite(&[], 3), n(1));
        assert_eq!(n_multipartite_first_part(1, &[1], 2, 3).unwrap(), n(4));
        assert_eq!(n_multipartite_first_part(0, &[2, 1], 2, 4).unwrap(), n_multipartite(&[2, 1], 4));
        assert_eq!(n_multipartite_first_part(2, &[1, 1], 3, 3).unwrap(), n_multipartite(&[2, 1, 1], 3));
    }

    #[test]
    fn rejections() {
        assert!(n_path_odd(1, 1, 3).is_err());
        assert!(n_path_odd(0, 2, 3).is_err());
        assert!(n_path_even(1, 3, 2, Orientation::Ab).is_err());
        assert!(n_cycle(1, 2, 3).is_err());
        assert!(n_cycle(2, 1, 3).is_err());
        assert!(cycle_chromatic(2, 3).is_err());
        assert!(n_multipartite_first_part(1, &[1], 3, 2).is_err());
    }

    #[test]
    fn diagonal_consistency() {
        for d in 2..=4 {
            for a in 2..=6 {
                assert_eq!(n_cycle(d, a, a).unwrap(), cycle_chromatic(2 * d, a).unwrap());
                assert_eq!(n_path_odd(d, a, a).unwrap(), n(a as i64) * n(a as i64 - 1).pow(2 * d as u32 - 1));
            }
        }
    }

    #[test]
    fn brute_force_agrees_on_small_cases() {
        let fams = [
            FormulaFamily::PathOdd { d: 2 },
            FormulaFamily::PathEven { d: 2, orientation: Orientation::Ab },
            FormulaFamily::PathEven { d: 2, orientation: Orientation::Ba },
            FormulaFamily::Cycle { d: 3 },
            FormulaFamily::Multipartite { parts: vec![2, 1, 1] },
            FormulaFamily::MultipartiteFirstPart { s1: 2, rest: vec![1, 2] },
        ];
        for f in &fams {
            for (a, b) in [(2, 2), (2, 4), (3, 5)] {
                assert_eq!(f.evaluate(a, b).unwrap(), f.brute_force(a, b).unwrap(), "{f} a={a} b={b}");
            }
        }
    }

    #[test]
    fn labelled_cycle_shape() {
        let c = labelled_even_cycle(3).unwrap();
        assert_eq!(c.graph().edge_count(), 6);
        assert!(c.graph().is_connected());
        assert!((0..6).all(|v| c.graph().degree(v) == 2));
    }
}
