use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Subcommand};
use serde::Serialize;
use transversal_lab::embed::{
    balanced_induced_embed, half_graph_order, rich_pair_surrogate, BipartitePattern, HalfOrderOptions,
    RichPairVerdict,
};
use transversal_lab::PartitionedGraph;

use super::BudgetArgs;
use crate::error::{verified, CliError, CliResult};
use crate::input;
use crate::report::RunReport;

#[derive(Subcommand, Debug)]
pub enum EmbedCommand {
    /// Largest half graph between the two classes.
    Halforder(HalfArgs),
    /// Empty K_{k,k} or half graph of order k between the two classes.
    Rich(RichArgs),
    /// Induced copy of a bipartite pattern with its sides in different classes.
    Balanced(BalancedArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct HalfArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Classes JSON; its first two classes are the sides.
    #[arg(long)]
    pub classes: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub exact_cap: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct RichArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub classes: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct BalancedArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub classes: PathBuf,
    /// Pattern JSON: {"left": .., "right": .., "edges": [[l, r], ..]}.
    #[arg(long)]
    pub pattern: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub budget: BudgetArgs,
}

fn two_classes(graph: &Path, classes: &Path) -> CliResult<PartitionedGraph> {
    let pg = input::partitioned(graph, classes)?;
    if pg.class_count() != 2 {
        return Err(CliError::Usage(format!("expected 2 classes, found {}", pg.class_count())));
    }
    Ok(pg)
}

pub fn run(cmd: EmbedCommand) -> CliResult<()> {
    let start = Instant::now();
    let mut report = match cmd {
        EmbedCommand::Halforder(a) => {
            let pg = two_classes(&a.graph, &a.classes)?;
            let (sa, sb) = (&pg.classes[0], &pg.classes[1]);
            let opts = HalfOrderOptions {
                exact_cap: a.exact_cap,
                budget: a.budget.budget(),
            };
            let h = half_graph_order(&pg.graph, sa, sb, &opts)?;
            if let Some(w) = &h.witness {
                verified(w.verify(&pg.graph, sa, sb) && w.order() == h.order, "half-graph witness")?;
            }
            RunReport::new("embed halforder", serde_json::to_value(&a)?, serde_json::to_value(&h)?, h.exact, 0)
        }
        EmbedCommand::Rich(a) => {
            let pg = two_classes(&a.graph, &a.classes)?;
            let (sa, sb) = (&pg.classes[0], &pg.classes[1]);
            let v = rich_pair_surrogate(&pg.graph, sa, sb, a.k, &a.budget.budget())?;
            let ok = match &v {
                RichPairVerdict::EmptyPair { a: x, b: y } => {
                    x.len() == a.k
                        && y.len() == a.k
                        && x.iter().all(|&u| sa.contains(u) && y.iter().all(|&w| sb.contains(w) && !pg.graph.has_edge(u, w)))
                }
                RichPairVerdict::HalfGraph(w) => w.order() == a.k && w.verify(&pg.graph, sa, sb),
                RichPairVerdict::Inconclusive => true,
            };
            verified(ok, "rich-pair witness")?;
            let exact = !matches!(v, RichPairVerdict::Inconclusive);
            RunReport::new("embed rich", serde_json::to_value(&a)?, serde_json::to_value(&v)?, exact, 0)
        }
        EmbedCommand::Balanced(a) => {
            let pg = two_classes(&a.graph, &a.classes)?;
            let p: BipartitePattern = input::json(&a.pattern)?;
            let pattern = BipartitePattern::new(p.left, p.right, p.edges)?;
            let out = balanced_induced_embed(&pg, &pattern, &a.budget.budget())?;
            if let Some(r) = &out.report {
                verified(r.verify(&pg, &pattern), "embedding")?;
            }
            RunReport::new(
                "embed balanced",
                serde_json::to_value(&a)?,
                serde_json::to_value(&out.report)?,
                out.exact,
                out.nodes,
            )
        }
    };
    report.timing_ms = start.elapsed().as_millis();
    report.print()
}
