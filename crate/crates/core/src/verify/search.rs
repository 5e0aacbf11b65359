use log::{debug, info};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{check_bipartite_swapping, check_cross_bipartite_swapping, CrossBipartiteMode};
use super::sampler::AfmSampler;
use super::{ClaimId, Verdict};
use crate::error::{Error, Result};
use crate::graph::{make_family, Family, WeightedGraph};
use crate::hom::g_chromatic_polynomial;
use crate::lorentz::{LorentzianChecker, LorentzianWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchClaim {
    /// `hom(H,G)^2 <= hom(H×K2,G)` for sampled antiferromagnetic `G`.
    BipartiteSwapAfm,
    /// Cross-bipartite swapping in `K_q`, nested subsets.
    CrossBipartiteKq,
    /// `hom(H,K_q)^2 <= hom(H×K2,K_q)`.
    ZhaoKq,
}

impl SearchClaim {
    fn claim_id(self) -> ClaimId {
        match self {
            SearchClaim::BipartiteSwapAfm => ClaimId::BipartiteSwapAfm,
            SearchClaim::CrossBipartiteKq => ClaimId::CrossBipartiteKq,
            SearchClaim::ZhaoKq => ClaimId::ZhaoKq,
        }
    }
}

#[derive(Debug, Clone)]
pub enum TargetSource {
    /// Graphs `0..per_source` of the sampler, paired with every source.
    Afm { sampler: AfmSampler, per_source: u64 },
    /// `K_q` for each listed `q`.
    Complete(Vec<usize>),
}

impl TargetSource {
    fn per_source(&self) -> u64 {
        match self {
            TargetSource::Afm { per_source, .. } => *per_source,
            TargetSource::Complete(qs) => qs.len() as u64,
        }
    }

    fn target(&self, j: u64) -> Result<WeightedGraph> {
        match self {
            TargetSource::Afm { sampler, .. } => sampler.sample(j),
            TargetSource::Complete(qs) => make_family(Family::Complete, &[qs[j as usize]]),
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            TargetSource::Afm { sampler, .. } => Some(sampler.seed),
            TargetSource::Complete(_) => None,
        }
    }
}

/// Resumption point: instances `0..cursor` have been checked and emitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub claim: SearchClaim,
    pub cursor: u64,
    pub total: u64,
    pub seed: Option<u64>,
    pub checked: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub checked: u64,
    pub failures: u64,
    pub cursor: u64,
    pub total: u64,
    pub complete: bool,
}

const CHUNK: u64 = 64;

fn check_instance(claim: SearchClaim, h: &WeightedGraph, g: &WeightedGraph, seed: Option<u64>) -> Result<Vec<Verdict>> {
    let mut out = match claim {
        SearchClaim::BipartiteSwapAfm | SearchClaim::ZhaoKq => vec![check_bipartite_swapping(h, g)?],
        SearchClaim::CrossBipartiteKq => check_cross_bipartite_swapping(h, g, CrossBipartiteMode::KqReduced)?,
    };
    for v in &mut out {
        v.claim_id = claim.claim_id();
        v.seed = seed;
    }
    Ok(out)
}

/// Checks source `i / per` against target `i % per` for instance indices
/// `cursor..` up to `budget` instances, in parallel chunks. Verdicts reach
/// `emit` in index order; `checkpoint` is called after every chunk.
pub fn search_counterexamples(
    claim: SearchClaim,
    sources: &[WeightedGraph],
    targets: &TargetSource,
    budget: u64,
    resume: Option<&Checkpoint>,
    mut emit: impl FnMut(&Verdict) -> Result<()>,
    mut checkpoint: impl FnMut(&Checkpoint) -> Result<()>,
) -> Result<SearchSummary> {
    if claim == SearchClaim::BipartiteSwapAfm && !matches!(targets, TargetSource::Afm { .. }) {
        return Err(Error::InvalidParameter("bipartite_swap_afm needs sampled antiferromagnetic targets".into()));
    }
    if claim != SearchClaim::BipartiteSwapAfm && matches!(targets, TargetSource::Afm { .. }) {
        return Err(Error::InvalidParameter(format!("{claim:?} needs complete targets")));
    }
    let per = targets.per_source();
    let total = sources.len() as u64 * per;
    let mut state = match resume {
        Some(c) => {
            if c.claim != claim || c.total != total || c.seed != targets.seed() {
                return Err(Error::InvalidParameter("checkpoint does not match this search".into()));
            }
            info!("resuming at instance {} of {}", c.cursor, total);
            c.clone()
        }
        None => Checkpoint { claim, cursor: 0, total, seed: targets.seed(), checked: 0, failures: 0 },
    };
    let stop = total.min(state.cursor.saturating_add(budget));
    while state.cursor < stop {
        let end = stop.min(state.cursor + CHUNK);
        let results: Vec<Result<Vec<Verdict>>> = (state.cursor..end)
            .into_par_iter()
            .map(|i| {
                let h = &sources[(i / per) as usize];
                let g = targets.target(i % per)?;
                check_instance(claim, h, &g, targets.seed())
            })
            .collect();
        for r in results {
            for v in r? {
                if !v.holds {
                    info!("counterexample: lhs {} > rhs {}", v.lhs, v.rhs);
                    state.failures += 1;
                }
                emit(&v)?;
            }
            state.checked += 1;
        }
        state.cursor = end;
        debug!("checked {}/{}", state.cursor, total);
        checkpoint(&state)?;
    }
    Ok(SearchSummary {
        checked: state.checked,
        failures: state.failures,
        cursor: state.cursor,
        total,
        complete: state.cursor == total,
    })
}

/// Exploration of which sources have a Lorentzian `h_H(-;G)` on every given
/// target.
#[derive(Debug, Clone, Serialize)]
pub struct ConverseRecord {
    #[serde(with = "super::serde_graph")]
    pub h: WeightedGraph,
    pub complete: bool,
    pub lorentzian_on_all: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LorentzianWitness>,
}

fn is_complete(h: &WeightedGraph) -> bool {
    let n = h.n();
    h.is_unweighted() && (0..n).all(|u| (0..n).all(|v| h.has_edge(u, v) == (u != v)))
}

pub fn explore_lorentzian_converse(sources: &[WeightedGraph], targets: &[WeightedGraph]) -> Result<Vec<ConverseRecord>> {
    sources
        .par_iter()
        .map(|h| {
            let mut checker = LorentzianChecker::new();
            for (j, g) in targets.iter().enumerate() {
                let f = g_chromatic_polynomial(h, g)?;
                if f.degree().unwrap_or(0) < 2 {
                    continue;
                }
                let cert = checker.check(&f)?;
                if !cert.verdict {
                    return Ok(ConverseRecord {
                        h: h.clone(),
                        complete: is_complete(h),
                        lorentzian_on_all: false,
                        target_index: Some(j),
                        witness: cert.failure_witness,
                    });
                }
            }
            Ok(ConverseRecord { h: h.clone(), complete: is_complete(h), lorentzian_on_all: true, target_index: None, witness: None })
        })
        .collect()
}
