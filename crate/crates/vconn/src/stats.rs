use crate::config::Config;
use serde::Serialize;
use std::sync::atomic::{AtomicU64, Ordering::Relaxed};
use std::sync::Mutex;

/// One call of the terminal reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionRecord {
    pub terminals_in: usize,
    pub terminals_out: usize,
    pub cut_valid: bool,
    /// Sizes of the four parts of the next terminal set: removed vertices,
    /// kept terminals of large pieces, sampled terminals and spread terminals.
    pub removed: usize,
    pub big: usize,
    pub sampled: usize,
    pub spread: usize,
}

/// Counters shared by every algorithm in one run.
#[derive(Debug, Default)]
pub struct Stats {
    pub flow_calls: AtomicU64,
    pub flow_edges: AtomicU64,
    pub kernel_edges: AtomicU64,
    pub cluster_memberships: AtomicU64,
    pub sparsified_edges: AtomicU64,
    pub naive_edges: AtomicU64,
    pub sparsified_checked: AtomicU64,
    pub sparsified_invalid: AtomicU64,
    pub reductions: Mutex<Vec<ReductionRecord>>,
    pub events: Mutex<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub flow_calls: u64,
    pub flow_edges: u64,
    pub kernel_edges: u64,
    pub cluster_memberships: u64,
    pub sparsified_edges: u64,
    pub naive_edges: u64,
    pub sparsified_checked: u64,
    pub sparsified_invalid: u64,
}

impl Stats {
    pub fn add(&self, counter: &AtomicU64, v: u64) {
        counter.fetch_add(v, Relaxed);
    }

    pub fn event(&self, msg: impl Into<String>) {
        self.events.lock().unwrap().push(msg.into());
    }

    pub fn record_reduction(&self, rec: ReductionRecord) {
        self.reductions.lock().unwrap().push(rec);
    }

    pub fn snapshot(&self) -> Counters {
        Counters {
            flow_calls: self.flow_calls.load(Relaxed),
            flow_edges: self.flow_edges.load(Relaxed),
            kernel_edges: self.kernel_edges.load(Relaxed),
            cluster_memberships: self.cluster_memberships.load(Relaxed),
            sparsified_edges: self.sparsified_edges.load(Relaxed),
            naive_edges: self.naive_edges.load(Relaxed),
            sparsified_checked: self.sparsified_checked.load(Relaxed),
            sparsified_invalid: self.sparsified_invalid.load(Relaxed),
        }
    }
}

/// Configuration plus instrumentation, passed to every algorithm.
#[derive(Debug, Default)]
pub struct Ctx {
    pub cfg: Config,
    pub stats: Stats,
}

impl Ctx {
    pub fn new(cfg: Config) -> Self {
        Ctx { cfg, stats: Stats::default() }
    }
}
