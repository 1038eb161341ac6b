use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use transversal_lab::format::{decode_digraph6, encode_digraph6};
use transversal_lab::ramsey::{
    anneal_counterexample, check_counterexample, search_dr, AnnealOptions, CertCache, DrCertificate,
    DrSearchOptions,
};

use super::BudgetArgs;
use crate::error::{verified, CliError, CliResult};
use crate::report::{cache_dir, CachedRun, ReportCache, RunReport};

#[derive(Subcommand, Debug)]
pub enum DrCommand {
    /// Compute or bound dr(n, m) by exhaustive isomorph-free search.
    Compute(ComputeArgs),
    /// Look for a counterexample of one fixed order by simulated annealing.
    Anneal(AnnealArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ComputeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Largest counterexample order to build.
    #[arg(long, default_value_t = 16)]
    pub max_order: usize,
    /// Stop once a counterexample of this order is certified.
    #[arg(long)]
    pub stop_at: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    #[serde(skip)]
    pub threads: usize,
    #[arg(long)]
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long)]
    #[serde(skip)]
    pub no_cache: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct AnnealArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Number of vertices of the counterexample sought.
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub no_cache: bool,
}

pub fn run(cmd: DrCommand) -> CliResult<()> {
    match cmd {
        DrCommand::Compute(a) => transversal_lab::par::with_threads(a.threads, || compute(&a)),
        DrCommand::Anneal(a) => anneal(&a),
    }
}

fn certificate_json(c: Option<&DrCertificate>) -> Value {
    match c {
        Some(c) => json!({ "order": c.order(), "digraph6": encode_digraph6(&c.digraph) }),
        None => Value::Null,
    }
}

/// Re-checks the certificate inside a result payload, if there is one.
fn recheck(result: &Value, n: usize, m: usize) -> bool {
    match result.get("certificate") {
        None | Some(Value::Null) => true,
        Some(c) => c
            .get("digraph6")
            .and_then(Value::as_str)
            .and_then(|s| decode_digraph6(s).ok())
            .is_some_and(|d| check_counterexample(&d, n, m).is_ok()),
    }
}

/// Serves a cached run after re-verifying it, or computes and stores it.
fn cached(
    command: &str,
    parameters: Value,
    cache: Option<&ReportCache>,
    n: usize,
    m: usize,
    compute: impl FnOnce() -> CliResult<CachedRun>,
) -> CliResult<()> {
    let start = Instant::now();
    let key = ReportCache::key(command, &parameters);
    let hit = cache
        .and_then(|c| c.load(&key))
        .filter(|run| recheck(&run.result, n, m));
    let run = match hit {
        Some(run) => run,
        None => {
            let run = compute()?;
            verified(recheck(&run.result, n, m), "certificate")?;
            if let Some(c) = cache {
                c.store(&key, &run)?;
            }
            run
        }
    };
    let mut report = RunReport::new(command, parameters, run.result, run.exact, run.nodes);
    report.timing_ms = start.elapsed().as_millis();
    report.print()
}

fn compute(a: &ComputeArgs) -> CliResult<()> {
    if a.n == 0 || a.m == 0 {
        return Err(CliError::Usage("n and m must be at least 1".into()));
    }
    let root = cache_dir(a.cache_dir.as_deref());
    let reports = (!a.no_cache).then(|| ReportCache::new(&root));
    let certs = (!a.no_cache).then(|| CertCache::new(root.join("certs")));
    cached("dr compute", serde_json::to_value(a)?, reports.as_ref(), a.n, a.m, || {
        let opts = DrSearchOptions {
            max_order: a.max_order,
            budget: a.budget.budget(),
            stop_at_order: a.stop_at,
            ..Default::default()
        };
        let out = search_dr(a.n, a.m, &opts)?;
        let mut r = out.result;
        let mut source = "search";
        if let Some(store) = &certs {
            if let Some(c) = &r.certificate {
                store.store(c)?;
            }
            // a stored certificate from an earlier run may beat this one
            if !r.exact {
                if let Ok(Some(c)) = store.load_best(a.n, a.m) {
                    if c.order() + 1 > r.lower && c.order() < r.upper {
                        r.lower = c.order() + 1;
                        r.exact = r.lower == r.upper;
                        r.certificate = Some(c);
                        source = "cache";
                    }
                }
            }
        }
        let result = json!({
            "n": a.n,
            "m": a.m,
            "value": r.value(),
            "lower": r.lower,
            "upper": r.upper,
            "exact": r.exact,
            "proof_method": r.proof_method,
            "certificate": certificate_json(r.certificate.as_ref()),
            "certificate_source": if r.certificate.is_some() { Some(source) } else { None },
            "classes_per_order": out.classes_per_order,
            "budget_exhausted": out.budget_exhausted,
        });
        Ok(CachedRun {
            result,
            exact: r.exact,
            nodes: out.nodes,
        })
    })
}

fn anneal(a: &AnnealArgs) -> CliResult<()> {
    if a.n == 0 || a.m == 0 {
        return Err(CliError::Usage("n and m must be at least 1".into()));
    }
    let budget = a.budget.budget();
    if budget.max_nodes.is_none() && budget.max_time.is_none() {
        return Err(CliError::Usage("annealing needs --budget-nodes or --budget-secs".into()));
    }
    let root = cache_dir(a.cache_dir.as_deref());
    let reports = (!a.no_cache).then(|| ReportCache::new(&root));
    let certs = (!a.no_cache).then(|| CertCache::new(root.join("certs")));
    cached("dr anneal", serde_json::to_value(a)?, reports.as_ref(), a.n, a.m, || {
        let found = anneal_counterexample(a.n, a.m, a.order, &budget, a.seed, &AnnealOptions::default())?;
        if let (Some(store), Some(c)) = (&certs, &found) {
            store.store(c)?;
        }
        let result = json!({
            "n": a.n,
            "m": a.m,
            "order": a.order,
            "found": found.is_some(),
            "lower_bound": found.as_ref().map(|c| c.order() + 1),
            "certificate": certificate_json(found.as_ref()),
        });
        Ok(CachedRun {
            result,
            exact: false,
            nodes: 0,
        })
    })
}
