//! M-convexity of exponent sets and recursive Lorentzian certification.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{io::graph_to_json, is_antiferromagnetic, WeightedGraph};
use crate::poly::{ExponentVector, SparsePolynomial};

/// A pair `a, b` and an index `i` with `a_i > b_i` such that no `j` with
/// `a_j < b_j` has `a - e_i + e_j` in the set. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    pub a: ExponentVector,
    pub b: ExponentVector,
    pub i: usize,
}

fn violation_holds(set: &HashSet<&ExponentVector>, v: &ExchangeViolation) -> bool {
    let (a, b, i) = (&v.a, &v.b, v.i);
    if !set.contains(a) || !set.contains(b) || a[i] <= b[i] {
        return false;
    }
    (0..a.len()).all(|j| a[j] >= b[j] || !a.exchange(i, j).is_some_and(|c| set.contains(&c)))
}

/// Checks the exchange property. `Ok(None)` means M-convex.
pub fn is_m_convex(set: &[ExponentVector]) -> Result<Option<ExchangeViolation>> {
    let Some(first) = set.first() else {
        return Ok(None);
    };
    let n = first.len();
    if let Some(bad) = set.iter().find(|e| e.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
    }
    let lookup: HashSet<&ExponentVector> = set.iter().collect();
    for a in set {
        for b in set {
            for i in 0..n {
                if a[i] <= b[i] {
                    continue;
                }
                let ok = (0..n).any(|j| a[j] < b[j] && a.exchange(i, j).is_some_and(|c| lookup.contains(&c)));
                if !ok {
                    return Ok(Some(ExchangeViolation { a: a.clone(), b: b.clone(), i }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LorentzianViolation {
    NotMConvex(ExchangeViolation),
    HessianNotAntiferromagnetic {
        #[serde(serialize_with = "ser_graph")]
        hessian: WeightedGraph,
        positive_eigenvalue_count: usize,
    },
}

fn ser_graph<S: serde::Serializer>(g: &WeightedGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    graph_to_json(g).serialize(s)
}

/// Where the recursion failed: after differentiating along
/// `derivative_path` (0-based variable indices, applied in order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LorentzianWitness {
    pub derivative_path: Vec<usize>,
    pub violation: LorentzianViolation,
}

impl LorentzianWitness {
    /// Re-derives the failing polynomial from `f` and confirms the violation.
    pub fn recheck(&self, f: &SparsePolynomial) -> bool {
        let mut g = f.clone();
        for &i in &self.derivative_path {
            match g.partial_derivative(i) {
                Ok(d) => g = d,
                Err(_) => return false,
            }
        }
        match &self.violation {
            LorentzianViolation::NotMConvex(v) => {
                let supp = g.support();
                violation_holds(&supp.iter().collect(), v)
            }
            LorentzianViolation::HessianNotAntiferromagnetic { hessian, positive_eigenvalue_count } => {
                match g.hessian() {
                    Ok(h) if &h == hessian => {
                        let c = is_antiferromagnetic(&h);
                        c.positive_eigenvalue_count == *positive_eigenvalue_count && !c.verdict
                    }
                    _ => false,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LorentzianCertificate {
    pub verdict: bool,
    pub failure_witness: Option<LorentzianWitness>,
}

/// Recursive certifier with a cache keyed on the (canonical) polynomial.
#[derive(Debug, Default)]
pub struct LorentzianChecker {
    memo: HashMap<SparsePolynomial, Option<LorentzianWitness>>,
}

impl LorentzianChecker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    pub fn check(&mut self, f: &SparsePolynomial) -> Result<LorentzianCertificate> {
        // Same convention as for vanished derivatives: zero is vacuously Lorentzian.
        if f.is_zero() {
            return Ok(LorentzianCertificate { verdict: true, failure_witness: None });
        }
        let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if !f.has_nonnegative_coefficients() {
            return Err(Error::NegativeCoefficient);
        }
        if d < 2 {
            return Err(Error::DegreeTooLow(d));
        }
        let failure = self.failure(f, d);
        Ok(LorentzianCertificate { verdict: failure.is_none(), failure_witness: failure })
    }

    fn failure(&mut self, f: &SparsePolynomial, d: usize) -> Option<LorentzianWitness> {
        // A vanished derivative imposes nothing; the parent's support governs.
        if f.is_zero() {
            return None;
        }
        if let Some(hit) = self.memo.get(f) {
            return hit.clone();
        }
        let result = if d == 2 {
            let h = f.hessian().expect("nonnegative quadratic");
            let cert = is_antiferromagnetic(&h);
            (!cert.verdict).then(|| LorentzianWitness {
                derivative_path: Vec::new(),
                violation: LorentzianViolation::HessianNotAntiferromagnetic {
                    hessian: h,
                    positive_eigenvalue_count: cert.positive_eigenvalue_count,
                },
            })
        } else {
            match is_m_convex(&f.support()).expect("uniform lengths") {
                Some(v) => Some(LorentzianWitness {
                    derivative_path: Vec::new(),
                    violation: LorentzianViolation::NotMConvex(v),
                }),
                None => (0..f.n_vars()).find_map(|i| {
                    let df = f.partial_derivative(i).expect("index in range");
                    self.failure(&df, d - 1).map(|mut w| {
                        w.derivative_path.insert(0, i);
                        w
                    })
                }),
            }
        };
        self.memo.insert(f.clone(), result.clone());
        result
    }
}

pub fn is_lorentzian(f: &SparsePolynomial) -> Result<LorentzianCertificate> {
    LorentzianChecker::new().check(f)
}
