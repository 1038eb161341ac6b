pub mod dr;
pub mod embed;
pub mod gen;
pub mod ortho;
pub mod transversal;

use std::time::Duration;

use clap::Args;
use serde::Serialize;
use transversal_lab::Budget;

#[derive(Args, Clone, Copy, Debug, Default, Serialize)]
pub struct BudgetArgs {
    /// Stop after this many search nodes.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Stop after this many seconds of wall-clock time.
    #[arg(long)]
    pub budget_secs: Option<f64>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget_nodes,
            max_time: self.budget_secs.map(Duration::from_secs_f64),
        }
    }
}
