//! Pseudorandom combinatorial objects: dispersers, crossing families,
//! selectors and mixing graphs.
//!
//! Randomized backends search seeds deterministically and only release an
//! object once an exhaustive check certifies it; otherwise callers get
//! [`Error::ConstructionFailed`](crate::Error) and fall back to a complete object.

mod bipartite;
mod crossing;
mod disperser;
mod mixing;
mod selector;

pub use bipartite::{check_unique_neighbor_expansion, LeftRegularBipartite};
pub use crossing::{asymmetric_crossing_family, complete_family, crossing_family_or_complete, symmetric_crossing_family, Backend, PairFamily};
pub use disperser::{build_disperser, build_disperser_with_right};
pub use mixing::{build_mixing_graph, MixingGraph};
pub use selector::{build_selector, SubsetFamily};

use crate::config::Config;
use crate::error::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::any::Any;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

type Cache = Mutex<HashMap<String, Box<dyn Any + Send>>>;

/// Constructions are pure functions of their parameters, so finished ones are shared process-wide.
pub(crate) fn memo<T: Clone + Send + 'static>(key: String, build: impl FnOnce() -> Result<T>) -> Result<T> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&key).and_then(|b| b.downcast_ref::<Result<T>>()) {
        return hit.clone();
    }
    let value = build();
    cache.lock().unwrap().insert(key, Box::new(value.clone()));
    value
}

pub(crate) fn cache_key(cfg: &Config) -> String {
    format!("{} {} {} {}", cfg.seed, cfg.seed_tries, cfg.certify_budget, cfg.disperser_right_factor)
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic generator keyed by the base seed, an object tag and its parameters.
pub(crate) fn keyed_rng(base: u64, tag: u64, params: &[u64]) -> ChaCha8Rng {
    let mut h = splitmix(base ^ tag.rotate_left(17));
    for &p in params {
        h = splitmix(h ^ p);
    }
    ChaCha8Rng::seed_from_u64(h)
}
