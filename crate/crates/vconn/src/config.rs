use crate::error::{Error, Result};
use serde::Serialize;

/// Every tunable constant in one place. Loaded from `key = value` lines.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    /// Ratio separating lopsided from symmetric cuts.
    pub lambda: u64,
    /// Balanced-terminal slack; the crossing-family branch uses `alpha = 1/eps`.
    pub eps: f64,
    /// Low-degree threshold factor: `deg(v) <= c_low * delta`.
    pub c_low: usize,
    /// Small-cluster gate factor: `|V_i| <= cluster_gate * delta * ceil(log2 n)`.
    pub cluster_gate: usize,
    /// Partition-count bound factor for clustering.
    pub cnc_c1: usize,
    /// Intra-cluster distance bound factor for clustering.
    pub cnc_c2: usize,
    /// Work budget (subset-checks) for exhaustive certification of pseudorandom objects.
    pub certify_budget: u64,
    /// Seeds tried before a randomized backend reports failure.
    pub seed_tries: u64,
    /// Base seed mixed into every construction.
    pub seed: u64,
    /// Right side of a disperser is about `right_factor * k * degree`.
    pub disperser_right_factor: usize,
    /// Largest certified constant accepted for mixing graphs.
    pub mixing_c_target: f64,
    /// Terminal expansion targeted by the expander decomposition.
    pub expander_phi: f64,
    /// Decomposition budget: `|X| < x_budget_frac * |T|`.
    pub x_budget_frac: f64,
    /// Required ratio of naive to sparsified flow-instance edges.
    pub instrumentation_factor: f64,
    /// Worker threads (CLI only).
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            lambda: 8,
            eps: 0.25,
            c_low: 8,
            cluster_gate: 8,
            cnc_c1: 1,
            cnc_c2: 20,
            certify_budget: 2_000_000,
            seed_tries: 64,
            seed: 0x5eed,
            disperser_right_factor: 2,
            mixing_c_target: 1.5,
            expander_phi: 0.1,
            x_budget_frac: 0.01,
            instrumentation_factor: 2.0,
            jobs: 1,
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", idx + 1)))?;
            cfg.set(k.trim(), v.trim())?;
        }
        cfg.check()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn p<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::Config(format!("bad value '{v}' for {key}")))
        }
        match key {
            "lambda" => self.lambda = p(key, value)?,
            "eps" => self.eps = p(key, value)?,
            "c_low" => self.c_low = p(key, value)?,
            "cluster_gate" => self.cluster_gate = p(key, value)?,
            "cnc_c1" => self.cnc_c1 = p(key, value)?,
            "cnc_c2" => self.cnc_c2 = p(key, value)?,
            "certify_budget" => self.certify_budget = p(key, value)?,
            "seed_tries" => self.seed_tries = p(key, value)?,
            "seed" => self.seed = p(key, value)?,
            "disperser_right_factor" => self.disperser_right_factor = p(key, value)?,
            "mixing_c_target" => self.mixing_c_target = p(key, value)?,
            "expander_phi" => self.expander_phi = p(key, value)?,
            "x_budget_frac" => self.x_budget_frac = p(key, value)?,
            "instrumentation_factor" => self.instrumentation_factor = p(key, value)?,
            "jobs" => self.jobs = p(key, value)?,
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    fn check(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps <= 1.0) {
            return Err(Error::Config("eps must lie in (0, 1]".into()));
        }
        if self.lambda == 0 || self.c_low == 0 || self.cluster_gate == 0 || self.cnc_c1 == 0 {
            return Err(Error::Config("integer factors must be positive".into()));
        }
        if self.disperser_right_factor == 0 || self.seed_tries == 0 {
            return Err(Error::Config("disperser_right_factor and seed_tries must be positive".into()));
        }
        if !(self.expander_phi > 0.0) || !(self.x_budget_frac > 0.0) {
            return Err(Error::Config("expander_phi and x_budget_frac must be positive".into()));
        }
        Ok(())
    }
}
