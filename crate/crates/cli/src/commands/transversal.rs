use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use transversal_lab::format::encode_graph6;
use transversal_lab::transversal::{
    estimate_n, find_transversal, max_profile, Status, Strategy, TransversalQuery,
};

use super::BudgetArgs;
use crate::error::{verified, CliResult};
use crate::input;
use crate::report::RunReport;

#[derive(Subcommand, Debug)]
pub enum TransversalCommand {
    /// Find an independent set meeting m classes in at least ell vertices each.
    Solve(SolveArgs),
    /// Largest m for which `solve` succeeds at the given ell.
    Profile(ProfileArgs),
    /// Search for K_n-free partitioned graphs with no transversal.
    Estimate(EstimateArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SolveArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub classes: PathBuf,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub ell: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ProfileArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub classes: PathBuf,
    #[arg(long)]
    pub ell: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyArg {
    Random,
    LocalSearch,
    Exhaustive,
}

#[derive(Args, Debug, Serialize)]
pub struct EstimateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub ell: usize,
    /// Size of every class.
    #[arg(long)]
    pub class_size: usize,
    /// Number of classes.
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "local-search")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

pub fn run(cmd: TransversalCommand) -> CliResult<()> {
    let start = Instant::now();
    let mut report = match cmd {
        TransversalCommand::Solve(a) => {
            let pg = input::partitioned(&a.graph, &a.classes)?;
            let q = TransversalQuery { m: a.m, ell: a.ell };
            let res = find_transversal(&pg, &q, &a.budget.budget())?;
            verified(res.verify(&pg, &q), "transversal witness")?;
            let exact = res.status != Status::Budget;
            let nodes = res.nodes_explored;
            RunReport::new("transversal solve", serde_json::to_value(&a)?, serde_json::to_value(&res)?, exact, nodes)
        }
        TransversalCommand::Profile(a) => {
            let pg = input::partitioned(&a.graph, &a.classes)?;
            let b = max_profile(&pg, a.ell, &a.budget.budget())?;
            RunReport::new("transversal profile", serde_json::to_value(&a)?, serde_json::to_value(b)?, b.exact, b.nodes)
        }
        TransversalCommand::Estimate(a) => {
            let strategy = match a.strategy {
                StrategyArg::Random => Strategy::Random,
                StrategyArg::LocalSearch => Strategy::LocalSearch,
                StrategyArg::Exhaustive => Strategy::Exhaustive,
            };
            let est = estimate_n(a.n, a.m, a.ell, a.class_size, a.r, strategy, &a.budget.budget(), a.seed)?;
            verified(est.verify(), "counterexample")?;
            let counterexample = est.best_counterexample.as_ref().map(|pg| {
                json!({ "graph6": encode_graph6(&pg.graph), "classes": pg.sidecar().classes })
            });
            let result = json!({
                "counterexample": counterexample,
                "implies_n_greater_than": est.best_counterexample.as_ref().map(|_| a.class_size),
                "instances_examined": est.instances_examined,
                "exhaustive": est.exhaustive,
            });
            let nodes = est.instances_examined;
            RunReport::new("transversal estimate", serde_json::to_value(&a)?, result, est.exhaustive, nodes)
        }
    };
    report.timing_ms = start.elapsed().as_millis();
    report.print()
}
