use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;
use transversal_lab::ortho::{alpha_check, alpha_lower_search, alpha_violation, integer_pool, rstar_relation, VectorFamily};

use super::BudgetArgs;
use crate::error::{verified, CliResult};
use crate::input;
use crate::report::RunReport;

#[derive(Subcommand, Debug)]
pub enum OrthoCommand {
    /// Whether every m + 1 vectors of a family contain an orthogonal pair.
    Check(CheckArgs),
    /// Largest subfamily of an integer pool with that property.
    Search(SearchArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct CheckArgs {
    /// Family JSON: a list of vectors, each a list of integers or
    /// `[numerator, denominator]` pairs.
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long)]
    pub m: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub m: usize,
    /// Pool entries range over -height..=height.
    #[arg(long, default_value_t = 1)]
    pub pool_height: i64,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

pub fn run(cmd: OrthoCommand) -> CliResult<()> {
    let start = Instant::now();
    let mut report = match cmd {
        OrthoCommand::Check(a) => {
            let value: serde_json::Value = input::json(&a.family)?;
            let f = VectorFamily::from_json(&value)?;
            let ok = alpha_check(&f, a.m)?;
            let violation = alpha_violation(&f, a.m);
            let result = json!({ "ok": ok, "size": f.len(), "violation": violation });
            RunReport::new("ortho check", serde_json::to_value(&a)?, result, true, 0)
        }
        OrthoCommand::Search(a) => {
            let pool = integer_pool(a.dim, a.pool_height);
            let s = alpha_lower_search(a.m, &pool, &a.budget.budget())?;
            verified(alpha_check(&s.best, a.m)?, "best family")?;
            let result = json!({
                "pool_size": pool.len(),
                "size": s.best.len(),
                "family": s.best.to_json(),
                "indices": s.indices,
                "relations": rstar_relation(s.best.len(), a.m),
            });
            RunReport::new("ortho search", serde_json::to_value(&a)?, result, s.exact, s.nodes)
        }
    };
    report.timing_ms = start.elapsed().as_millis();
    report.print()
}
