//! Inequality checkers, seeded samplers and counterexample search.
//!
//! Every check produces a [`Verdict`] whose `lhs`/`rhs` are oriented so that
//! the claim holds exactly when `lhs <= rhs`:
//!
//! | claim                     | lhs                              | rhs                          |
//! |---------------------------|----------------------------------|------------------------------|
//! | bipartite swap / zhao     | `hom(H,G)^2`                     | `hom(H×K2,G)`                |
//! | cross-bipartite           | `hom(H,G[A]) hom(H,G[B])`        | `hom_b(H×K2,G[A,B])`         |
//! | weighted cross-bipartite  | `V_H(a..a) V_H(b..b)`            | `V_{H×K2}(a..a,b..b)`        |
//! | AF inequality             | `F(v1,v1,v3..) F(v2,v2,v3..)`    | `F(v1,v2,v3..)^2`            |
//! | corollary product         | `V(a..a) V(b..b)`                | `V(b,a..a) V(a,b..b)`        |
//!
//! The last two are `>=` statements in their usual form; they are stored
//! with sides swapped.

mod checks;
mod sampler;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::poly::SparsePolynomial;
use crate::rational::{serde_rational, Rational};

pub use checks::{
    af_inequality_trials, check_af_inequality, check_bipartite_swapping, check_corollary_product,
    check_cross_bipartite_family, check_cross_bipartite_swapping, check_weighted_cross_bipartite,
    corollary_product_trials, CrossBipartiteMode, CrossFamily,
};
pub use sampler::{random_signed_vector, random_vector, AfmSampler, SamplerStrategy};
pub use search::{
    explore_lorentzian_converse, search_counterexamples, Checkpoint, ConverseRecord, SearchClaim, SearchSummary,
    TargetSource,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    BipartiteSwap,
    BipartiteSwapAfm,
    ZhaoKq,
    CrossBipartite,
    CrossBipartiteKq,
    WeightedCrossBipartite,
    AfInequality,
    CorollaryProduct,
}

/// Inputs needed to recompute a verdict from scratch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    BipartiteSwap {
        #[serde(with = "serde_graph")]
        h: WeightedGraph,
        #[serde(with = "serde_graph")]
        g: WeightedGraph,
    },
    CrossBipartite {
        #[serde(with = "serde_graph")]
        h: WeightedGraph,
        #[serde(with = "serde_graph")]
        g: WeightedGraph,
        a: Vec<usize>,
        b: Vec<usize>,
    },
    /// `A = {0..a-1} ⊆ B = {0..b-1}` inside `K_q`.
    CrossBipartiteKq {
        #[serde(with = "serde_graph")]
        h: WeightedGraph,
        q: usize,
        a: usize,
        b: usize,
    },
    WeightedCrossBipartite {
        #[serde(with = "serde_graph")]
        h: WeightedGraph,
        #[serde(with = "serde_graph")]
        g: WeightedGraph,
        #[serde(with = "serde_vector")]
        a: Vec<Rational>,
        #[serde(with = "serde_vector")]
        b: Vec<Rational>,
    },
    AfInequality {
        #[serde(with = "serde_poly")]
        f: SparsePolynomial,
        #[serde(with = "serde_vectors")]
        vectors: Vec<Vec<Rational>>,
    },
    CorollaryProduct {
        #[serde(with = "serde_graph")]
        g: WeightedGraph,
        t: usize,
        #[serde(with = "serde_vector")]
        a: Vec<Rational>,
        #[serde(with = "serde_vector")]
        b: Vec<Rational>,
    },
}

impl Instance {
    /// Recomputes `(lhs, rhs)`.
    pub fn evaluate(&self) -> Result<(Rational, Rational)> {
        checks::evaluate(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim_id: ClaimId,
    pub holds: bool,
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub instance: Instance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// On failure, the instance that reproduces `lhs > rhs`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Instance>,
}

impl Verdict {
    pub fn new(claim_id: ClaimId, lhs: Rational, rhs: Rational, instance: Instance, seed: Option<u64>) -> Self {
        let holds = lhs <= rhs;
        let witness = (!holds).then(|| instance.clone());
        Verdict { claim_id, holds, lhs, rhs, instance, seed, witness }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        Ok(serde_json::from_str(line)?)
    }

    pub fn with_claim(mut self, claim_id: ClaimId) -> Self {
        self.claim_id = claim_id;
        self
    }
}

/// True iff recomputing the instance gives bit-identical sides.
pub fn replay(v: &Verdict) -> Result<bool> {
    let (lhs, rhs) = v.instance.evaluate()?;
    Ok(lhs == v.lhs && rhs == v.rhs && (lhs <= rhs) == v.holds)
}

/// All verdicts hold.
pub fn all_hold(vs: &[Verdict]) -> bool {
    vs.iter().all(|v| v.holds)
}

pub(crate) mod serde_graph {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::io::{graph_from_json, graph_to_json};
    use crate::graph::WeightedGraph;

    pub fn serialize<S: Serializer>(g: &WeightedGraph, s: S) -> Result<S::Ok, S::Error> {
        graph_to_json(g).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<WeightedGraph, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        graph_from_json(&v).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_poly {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::poly::SparsePolynomial;

    pub fn serialize<S: Serializer>(f: &SparsePolynomial, s: S) -> Result<S::Ok, S::Error> {
        f.to_json().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SparsePolynomial, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        SparsePolynomial::from_json(&v).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_vector {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

pub(crate) mod serde_vectors {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(vs: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(vs.iter().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|v| v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}
