//! `vconn`: batch front end for the vertex connectivity toolkit.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use vconn::gabow::{gabow_vc, Decision};
use vconn::io::{parse_graph, ParsedGraph};
use vconn::isocut::balanced_terminal_vc;
use vconn::oracle::{brute_kappa, brute_kappa_weighted, check_crossing_family, check_disperser, check_selector, check_symmetric_crossing, random, Verdict};
use vconn::pseudorandom::{build_disperser, build_mixing_graph, build_selector, crossing_family_or_complete, symmetric_crossing_family};
use vconn::stats::Counters;
use vconn::unweighted::{unbalanced_vc, vertex_connectivity_unweighted};
use vconn::weighted::vertex_connectivity_weighted;
use vconn::{validate_cut, Config, Connectivity, Ctx, Digraph, Error, VertexCut};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "vconn", version, about = "Exact vertex connectivity")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the construction seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the connectivity of a graph file and print a JSON report.
    Compute {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Threshold for `gabow`; bound for `terminal`.
        #[arg(long)]
        k: Option<usize>,
        /// Also run the brute-force oracle and include its value.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Re-validate a report against its graph.
    Verify {
        graph: PathBuf,
        report: PathBuf,
        /// Compare the value with the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Certify a pseudorandom object exhaustively.
    CheckPr {
        #[arg(value_enum)]
        object: Object,
        #[arg(short, default_value_t = 8)]
        n: usize,
        #[arg(short, default_value_t = 2)]
        k: usize,
        #[arg(short, default_value_t = 0.5)]
        e: f64,
        /// Left size bound (crossing) or degree (disperser, mixing).
        #[arg(short, default_value_t = 1)]
        l: usize,
        /// Right size bound (crossing).
        #[arg(short, default_value_t = 1)]
        r: usize,
        /// Symmetric crossing family with this ratio bound.
        #[arg(long)]
        alpha: Option<f64>,
        /// JSON file holding a handmade family to check instead.
        #[arg(long)]
        family: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a seeded suite and write a CSV table.
    Bench {
        suite: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Algo {
    Auto,
    Unweighted,
    Weighted,
    Gabow,
    Unbalanced,
    Terminal,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Object {
    Crossing,
    Selector,
    Disperser,
    Mixing,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
struct CutJson {
    left: Vec<usize>,
    sep: Vec<usize>,
    right: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
struct Report {
    schema: u32,
    input_digest: String,
    algorithm: String,
    complete: bool,
    value: Option<u64>,
    cut: Option<CutJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    decision: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    oracle_value: Option<Option<u64>>,
    counters: serde_json::Value,
    events: Vec<String>,
    config: serde_json::Value,
    wall_time_ms: f64,
}

/// A failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Config(_) => 2,
            _ => 3,
        };
        Fail(code, e.to_string())
    }
}

fn digest(bytes: &[u8]) -> String {
    // FNV-1a, 64-bit.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

fn load_config(c: &Common) -> Result<Config, Fail> {
    let mut cfg = match &c.config {
        Some(p) => Config::parse(&read(p)?)?,
        None => Config::default(),
    };
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    cfg.jobs = c.jobs.max(1);
    set_jobs(cfg.jobs);
    Ok(cfg)
}

#[cfg(feature = "parallel")]
fn set_jobs(jobs: usize) {
    // Only the first call configures the global pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
}

#[cfg(not(feature = "parallel"))]
fn set_jobs(_: usize) {}

fn cut_json(c: &VertexCut) -> CutJson {
    CutJson { left: c.left.clone(), sep: c.sep.clone(), right: c.right.clone() }
}

fn json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn counters_json(c: &Counters) -> serde_json::Value {
    json(c)
}

fn oracle_value(g: &ParsedGraph) -> Result<Option<u64>, Fail> {
    match g {
        ParsedGraph::Undirected(g) => {
            Ok(brute_kappa(g)?.map(|c| c.value).or_else(|| g.is_complete().then(|| g.n().saturating_sub(1) as u64)))
        }
        ParsedGraph::Weighted { graph, .. } => Ok(brute_kappa_weighted(graph)?.map(|c| c.value)),
    }
}

fn compute(path: &Path, algo: Algo, k: Option<usize>, oracle: bool, common: &Common) -> Result<Report, Fail> {
    let text = read(path)?;
    let cfg = load_config(common)?;
    let parsed = parse_graph(&text)?;
    let ctx = Ctx::new(cfg.clone());
    let start = Instant::now();
    let algo = match (algo, &parsed) {
        (Algo::Auto, ParsedGraph::Undirected(_)) => Algo::Unweighted,
        (Algo::Auto, ParsedGraph::Weighted { .. }) => Algo::Weighted,
        (a, _) => a,
    };
    let undirected = |what: &str| match &parsed {
        ParsedGraph::Undirected(g) => Ok(g),
        _ => Err(Fail(2, format!("--algo {what} needs an unweighted undirected graph"))),
    };
    let mut report = Report {
        schema: SCHEMA,
        input_digest: digest(text.as_bytes()),
        algorithm: format!("{algo:?}").to_lowercase(),
        complete: false,
        value: None,
        cut: None,
        k: None,
        decision: None,
        oracle_value: None,
        counters: serde_json::Value::Null,
        events: Vec::new(),
        config: json(&cfg),
        wall_time_ms: 0.0,
    };
    let conn = |c: Connectivity, r: &mut Report| match c {
        Connectivity::Complete { value } => {
            r.complete = true;
            r.value = value;
        }
        Connectivity::Cut(c) => {
            r.value = Some(c.value);
            r.cut = Some(cut_json(&c));
        }
    };
    match algo {
        Algo::Auto => unreachable!("resolved above"),
        Algo::Unweighted => conn(vertex_connectivity_unweighted(&ctx, undirected("unweighted")?)?, &mut report),
        Algo::Weighted => {
            let d = match &parsed {
                ParsedGraph::Weighted { graph, .. } => graph.clone(),
                ParsedGraph::Undirected(g) => vconn::WeightedDigraph::from_graph(g),
            };
            conn(vertex_connectivity_weighted(&ctx, &d)?, &mut report);
        }
        Algo::Gabow => {
            let g = undirected("gabow")?;
            let k = k.ok_or_else(|| Fail(2, "--algo gabow needs --k".into()))?;
            report.k = Some(k);
            match gabow_vc(&ctx, g, k)? {
                Decision::Cut(c) => {
                    report.decision = Some("cut".into());
                    report.value = Some(c.value);
                    report.cut = Some(cut_json(&c));
                }
                Decision::KConnected => report.decision = Some("k-connected".into()),
            }
        }
        Algo::Unbalanced | Algo::Terminal => {
            let g = undirected("unbalanced/terminal")?;
            if g.is_complete() {
                report.complete = true;
                report.value = Some(g.n().saturating_sub(1) as u64);
            } else {
                let found = if matches!(algo, Algo::Unbalanced) {
                    unbalanced_vc(&ctx, g)?
                } else {
                    let k = k.unwrap_or_else(|| g.min_degree());
                    report.k = Some(k);
                    balanced_terminal_vc(&ctx, g, &(0..g.n()).collect::<Vec<_>>(), k)?
                };
                if let Some(c) = found {
                    report.value = Some(c.value);
                    report.cut = Some(cut_json(&c));
                }
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;
    report.counters = counters_json(&ctx.stats.snapshot());
    report.events = ctx.stats.events.lock().unwrap().clone();
    if oracle {
        report.oracle_value = Some(oracle_value(&parsed)?);
    }
    Ok(report)
}

fn cut_value(g: &ParsedGraph, sep: &[usize]) -> u64 {
    match g {
        ParsedGraph::Undirected(_) => sep.len() as u64,
        ParsedGraph::Weighted { graph, .. } => graph.weight_of(sep),
    }
}

fn verify(graph: &Path, report: &Path, oracle: bool, common: &Common) -> Result<serde_json::Value, Fail> {
    let _ = load_config(common)?;
    let text = read(graph)?;
    let parsed = parse_graph(&text)?;
    let rep: Report = serde_json::from_str(&read(report)?).map_err(|e| Fail(2, format!("report: {e}")))?;
    let mut problems = Vec::new();
    if rep.schema != SCHEMA {
        problems.push(format!("schema {} is not {SCHEMA}", rep.schema));
    }
    if rep.input_digest != digest(text.as_bytes()) {
        problems.push("input digest differs".to_string());
    }
    let is_complete = match &parsed {
        ParsedGraph::Undirected(g) => g.is_complete(),
        ParsedGraph::Weighted { graph, .. } => graph.is_complete(),
    };
    if rep.complete != is_complete {
        problems.push(format!("report says complete={} but the graph says {is_complete}", rep.complete));
    }
    if let Some(c) = &rep.cut {
        let value = cut_value(&parsed, &c.sep);
        let cut = VertexCut { left: c.left.clone(), sep: c.sep.clone(), right: c.right.clone(), value };
        let valid = match &parsed {
            ParsedGraph::Undirected(g) => validate_cut(g, &cut),
            ParsedGraph::Weighted { graph, .. } => validate_cut(graph, &cut),
        };
        if !valid {
            problems.push("cut does not validate".to_string());
        }
        if rep.value != Some(value) {
            problems.push(format!("value {:?} but separator weighs {value}", rep.value));
        }
    }
    let mut oracle_json = serde_json::Value::Null;
    // Only these algorithms claim the minimum.
    if oracle && matches!(rep.algorithm.as_str(), "unweighted" | "weighted") {
        match oracle_value(&parsed) {
            Ok(want) => {
                oracle_json = json(&want);
                if want != rep.value {
                    problems.push(format!("oracle value {want:?}, report value {:?}", rep.value));
                }
            }
            Err(Fail(3, why)) if why.contains("oracle guard") => oracle_json = json(&format!("skipped: {why}")),
            Err(f) => return Err(f),
        }
    }
    let ok = problems.is_empty();
    let out = serde_json::json!({ "schema": SCHEMA, "ok": ok, "problems": problems, "oracle_value": oracle_json });
    if ok {
        Ok(out)
    } else {
        Err(Fail(1, serde_json::to_string_pretty(&out).unwrap()))
    }
}

#[derive(Serialize)]
struct Certificate {
    schema: u32,
    object: Object,
    params: serde_json::Value,
    verdict: String,
    detail: serde_json::Value,
}

fn verdict_word(v: &Verdict) -> &'static str {
    match (v.holds, v.method) {
        (_, vconn::oracle::Method::Skipped) => "skipped",
        (true, _) => "true",
        (false, _) => "false",
    }
}

#[allow(clippy::too_many_arguments)]
fn check_pr(object: Object, n: usize, k: usize, e: f64, l: usize, r: usize, alpha: Option<f64>, family: Option<&Path>, common: &Common) -> Result<Certificate, Fail> {
    let cfg = load_config(common)?;
    let params = serde_json::json!({ "n": n, "k": k, "e": e, "l": l, "r": r, "alpha": alpha });
    let handmade = match family {
        Some(p) => Some(serde_json::from_str::<serde_json::Value>(&read(p)?).map_err(|e| Fail(2, format!("family: {e}")))?),
        None => None,
    };
    let parse_fam = |v: &serde_json::Value| -> Result<Vec<Vec<usize>>, Fail> {
        serde_json::from_value(v.clone()).map_err(|e| Fail(2, format!("family: {e}")))
    };
    let skipped = |why: String| Certificate { schema: SCHEMA, object, params: params.clone(), verdict: "skipped".into(), detail: json(&why) };
    let ground: Vec<usize> = (0..n).collect();
    let verdict = match object {
        Object::Crossing => {
            let pairs: Vec<(usize, usize)> = match &handmade {
                Some(v) => parse_fam(v)?.into_iter().filter(|p| p.len() == 2).map(|p| (p[0], p[1])).collect(),
                None => match alpha {
                    Some(a) => match symmetric_crossing_family(&cfg, n, a) {
                        Ok(f) => f.pairs().to_vec(),
                        Err(e) => return Ok(skipped(e.to_string())),
                    },
                    None => match crossing_family_or_complete(&cfg, &ground, &ground, l, r) {
                        Ok(f) => f.pairs().to_vec(),
                        Err(e) => return Ok(skipped(e.to_string())),
                    },
                },
            };
            match alpha {
                Some(a) => check_symmetric_crossing(n, a, &pairs),
                None => check_crossing_family(n, &ground, &ground, l, r, &pairs),
            }
        }
        Object::Selector => {
            let sets = match &handmade {
                Some(v) => parse_fam(v)?,
                None => match build_selector(&cfg, n, k, e) {
                    Ok(f) => f.sets,
                    Err(err) => return Ok(skipped(err.to_string())),
                },
            };
            check_selector(n, k, e, &sets, cfg.certify_budget)
        }
        Object::Disperser => {
            let (nbrs, right) = match &handmade {
                Some(v) => {
                    let nbrs = parse_fam(v)?;
                    let right = nbrs.iter().flatten().max().map_or(1, |&m| m + 1);
                    (nbrs, right)
                }
                None => match build_disperser(&cfg, n, k, l.max(1), e) {
                    Ok(b) => ((0..b.left()).map(|v| b.neighbors(v)).collect(), b.right),
                    Err(err) => return Ok(skipped(err.to_string())),
                },
            };
            check_disperser(&nbrs, right, k, e, cfg.certify_budget)
        }
        Object::Mixing => {
            return Ok(match build_mixing_graph(&cfg, n, l.max(1)) {
                Ok(m) => Certificate {
                    schema: SCHEMA,
                    object,
                    params,
                    verdict: "true".into(),
                    detail: serde_json::json!({ "degree": m.degree, "host": m.host, "lambda": m.lambda, "c": m.c, "c_target": cfg.mixing_c_target }),
                },
                Err(err) => skipped(err.to_string()),
            });
        }
    };
    Ok(Certificate { schema: SCHEMA, object, params, verdict: verdict_word(&verdict).into(), detail: json(&verdict) })
}

/// Suite lines: `unweighted <n> <p> <seed>` or `weighted <n> <p> <max_weight> <seed>`.
fn bench(suite: &Path, out: &Path, common: &Common) -> Result<usize, Fail> {
    let cfg = load_config(common)?;
    let text = read(suite)?;
    let mut csv = String::from("line,kind,n,arcs,seed,value,flow_calls,flow_edges,sparsified_edges,naive_edges,millis\n");
    let mut rows = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Fail(2, format!("suite line {}: expected 'unweighted n p seed' or 'weighted n p max_weight seed'", i + 1));
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
        let ctx = Ctx::new(cfg.clone());
        let start = Instant::now();
        let (kind, n, arcs, seed, conn) = match toks.as_slice() {
            ["unweighted", n, p, seed] => {
                let (n, seed) = (num(n)? as usize, num(seed)? as u64);
                let g = random::connected_gnp(n, num(p)?, seed);
                ("unweighted", n, g.m(), seed, vertex_connectivity_unweighted(&ctx, &g)?)
            }
            ["weighted", n, p, w, seed] => {
                let (n, seed) = (num(n)? as usize, num(seed)? as u64);
                let d = random::strongly_connected(n, num(p)?, num(w)? as u64, seed);
                ("weighted", n, d.arc_count(), seed, vertex_connectivity_weighted(&ctx, &d)?)
            }
            _ => return Err(bad()),
        };
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        let s = ctx.stats.snapshot();
        let value = conn.value().map_or("complete".to_string(), |v| v.to_string());
        csv.push_str(&format!(
            "{},{kind},{n},{arcs},{seed},{value},{},{},{},{},{ms:.3}\n",
            i + 1,
            s.flow_calls,
            s.flow_edges,
            s.sparsified_edges,
            s.naive_edges
        ));
        rows += 1;
    }
    std::fs::write(out, csv).map_err(|e| Fail(2, format!("{}: {e}", out.display())))?;
    Ok(rows)
}

fn print<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Command::Compute { path, algo, k, oracle, common } => print(&compute(&path, algo, k, oracle, &common)?),
        Command::Verify { graph, report, oracle, common } => print(&verify(&graph, &report, oracle, &common)?),
        Command::CheckPr { object, n, k, e, l, r, alpha, family, common } => {
            let cert = check_pr(object, n, k, e, l, r, alpha, family.as_deref(), &common)?;
            print(&cert);
            if cert.verdict == "false" {
                return Err(Fail(1, "property violated".into()));
            }
        }
        Command::Bench { suite, out, common } => {
            let rows = bench(&suite, &out, &common)?;
            eprintln!("{rows} rows written to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
