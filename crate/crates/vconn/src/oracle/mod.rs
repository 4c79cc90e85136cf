//! Ground truth for tests: slow, independent implementations and property checkers.

pub mod brute;
pub mod checks;
mod flow;
pub mod planted;
pub mod random;

pub use brute::{
    brute_isolating, brute_kappa, brute_kappa_guarded, brute_kappa_weighted, brute_pair_kappa, brute_weak_separator,
    subset_kappa, PairKappa,
};
pub use checks::{
    check_clustering, check_crossing_family, check_disperser, check_selector, check_symmetric_crossing, Method, Verdict,
};
pub use planted::{generate_planted, verify_planted, PlantedGraph, PlantedInstance, PlantedKind, PlantedParams};
