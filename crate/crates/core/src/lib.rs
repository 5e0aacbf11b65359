//! Exact computations around graph homomorphism inequalities: weighted
//! homomorphism counts, G-chromatic polynomials and G-volumes, exact
//! antiferromagnetism and Lorentzian certification, closed-form
//! list-colouring counts, and verification/search harnesses for swapping
//! inequalities.

// Matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod hom;
pub mod lorentz;
pub mod poly;
pub mod rational;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    blow_up, h_blow_up, is_antiferromagnetic, make_family, swapped_graph, tensor_with_k2, AfmCertificate, Family,
    LabelledBipartiteGraph, WeightedGraph,
};
pub use hom::{bipartite_hom_count, g_chromatic_polynomial, g_volume, hom_count};
pub use lorentz::{is_lorentzian, is_m_convex, LorentzianCertificate};
pub use poly::{ExponentVector, SparsePolynomial};
pub use rational::Rational;
pub use verify::Verdict;
