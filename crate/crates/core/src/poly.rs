//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rational::{factorial, format_rational, parse_rational, Rational};

/// Exponent tuple `(a_1, ..., a_n)`; orders lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    /// `self - e_i + e_j`, or `None` if entry `i` is zero.
    pub fn exchange(&self, i: usize, j: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut out = self.clone();
        out.0[i] -= 1;
        out.0[j] += 1;
        Some(out)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

/// Terms are kept in a `BTreeMap`, so iteration is lex-sorted and no zero
/// coefficient is ever stored. Equal polynomials are structurally equal,
/// which makes the type usable as a memo key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    n_vars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl SparsePolynomial {
    pub fn zero(n_vars: usize) -> Self {
        SparsePolynomial { n_vars, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n_vars);
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(Error::DimensionMismatch { expected: n_vars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Adds `c · x^e`, dropping the term if it cancels.
    pub fn add_term(&mut self, e: ExponentVector, c: Rational) {
        debug_assert_eq!(e.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `Q_G(x) = ½ xᵀ G x`.
    pub fn quadratic_form(g: &WeightedGraph) -> Self {
        let n = g.n();
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut p = Self::zero(n);
        for i in 0..n {
            for j in i..n {
                let w = g.weight(i, j);
                if w.is_zero() {
                    continue;
                }
                let mut e = ExponentVector::zeros(n);
                e.0[i] += 1;
                e.0[j] += 1;
                let c = if i == j { w * &half } else { w.clone() };
                p.add_term(e, c);
            }
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(ExponentVector::total_degree).max()
    }

    /// The common degree if every term has it.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(ExponentVector::total_degree);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = Self::zero(self.n_vars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, found: other.n_vars });
        }
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }

    /// Substitutes `x_i -> c_i x_i`.
    pub fn scale_variables(&self, c: &[Rational]) -> Result<Self> {
        if c.len() != self.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, found: c.len() });
        }
        let mut p = Self::zero(self.n_vars);
        for (e, v) in &self.terms {
            let mut coef = v.clone();
            for (ci, &a) in c.iter().zip(&e.0) {
                coef *= num_traits::pow(ci.clone(), a as usize);
            }
            p.add_term(e.clone(), coef);
        }
        Ok(p)
    }

    /// Formal `∂/∂x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.n_vars {
            return Err(Error::IndexOutOfRange { index: i, n_vars: self.n_vars });
        }
        let mut p = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            let a = e.0[i];
            if a == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[i] -= 1;
            p.add_term(d, c * Rational::from_integer(BigInt::from(a)));
        }
        Ok(p)
    }

    /// Hessian of a nonnegative quadratic form, returned as a weighted graph.
    pub fn hessian(&self) -> Result<WeightedGraph> {
        let d = self.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if d != 2 {
            return Err(Error::WrongDegree { expected: 2, found: d });
        }
        if !self.has_nonnegative_coefficients() {
            return Err(Error::NegativeCoefficient);
        }
        let n = self.n_vars;
        let mut h = vec![vec![Rational::zero(); n]; n];
        for (e, c) in &self.terms {
            let vars: Vec<usize> = (0..n).filter(|&k| e.0[k] > 0).collect();
            match vars[..] {
                [i] => h[i][i] = c * Rational::from_integer(BigInt::from(2)),
                [i, j] => {
                    h[i][j] = c.clone();
                    h[j][i] = c.clone();
                }
                _ => unreachable!("degree-2 monomial"),
            }
        }
        WeightedGraph::new(h)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, found: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.0.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&a, x)| acc * num_traits::pow(x.clone(), a as usize))
            })
            .sum())
    }

    /// Polarization `F_f(v_1, ..., v_d) = (1/d!) ∂_{λ_1} ⋯ ∂_{λ_d} f(λ_1 v_1 + ⋯ + λ_d v_d)`.
    ///
    /// For each term `c x^a` the multilinear coefficient of `λ_1⋯λ_d` is
    /// `c · Π a_k! · Σ_σ Π_i v_i[σ(i)]` over maps `σ: [d] → [n]` with content
    /// `a`, which is evaluated by a memoized recursion on the remaining
    /// exponent.
    pub fn mixed_form(&self, vectors: &[Vec<Rational>]) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let d = self.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if vectors.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: vectors.len() });
        }
        for v in vectors {
            if v.len() != self.n_vars {
                return Err(Error::DimensionMismatch { expected: self.n_vars, found: v.len() });
            }
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut memo = HashMap::new();
            let inner = content_sum(&mut e.0.clone(), 0, vectors, &mut memo);
            let mult: BigInt = e.0.iter().map(|&a| factorial(a as usize)).product();
            total += c * inner * Rational::from_integer(mult);
        }
        Ok(total / Rational::from_integer(factorial(d)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<PolyTermJson> = self
            .terms
            .iter()
            .map(|(e, c)| PolyTermJson { exp: e.0.clone(), coef: format_rational(c) })
            .collect();
        serde_json::to_value(PolyJson { n_vars: self.n_vars, terms }).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: PolyJson = serde_json::from_value(v.clone())?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            terms.push((ExponentVector(t.exp), parse_rational(&t.coef)?));
        }
        Self::from_terms(raw.n_vars, terms)
    }
}

fn content_sum(
    remaining: &mut Vec<u32>,
    i: usize,
    vectors: &[Vec<Rational>],
    memo: &mut HashMap<Vec<u32>, Rational>,
) -> Rational {
    if i == vectors.len() {
        return Rational::one();
    }
    if let Some(v) = memo.get(remaining) {
        return v.clone();
    }
    let key = remaining.clone();
    let mut acc = Rational::zero();
    for k in 0..remaining.len() {
        if remaining[k] == 0 || vectors[i][k].is_zero() {
            continue;
        }
        remaining[k] -= 1;
        let rest = content_sum(remaining, i + 1, vectors, memo);
        remaining[k] += 1;
        acc += &vectors[i][k] * rest;
    }
    memo.insert(key, acc.clone());
    acc
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n_vars: usize,
    terms: Vec<PolyTermJson>,
}

#[derive(Serialize, Deserialize)]
struct PolyTermJson {
    exp: Vec<u32>,
    coef: String,
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            for (k, &a) in e.0.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*x{k}")?,
                    _ => write!(f, "*x{k}^{a}")?,
                }
            }
        }
        Ok(())
    }
}
