//! `transversal-lab`: command-line front end for the search toolkit.

mod commands;
mod error;
mod input;
mod report;

use clap::{Parser, Subcommand};

use commands::{dr::DrCommand, embed::EmbedCommand, gen::GenArgs, ortho::OrthoCommand, transversal::TransversalCommand};

#[derive(Parser, Debug)]
#[command(name = "transversal-lab", version, about = "Directed Ramsey numbers, transversals and related searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Directed Ramsey numbers dr(n, m).
    #[command(subcommand)]
    Dr(DrCommand),
    /// Generate a graph as graph6, with a classes sidecar where relevant.
    Gen(GenArgs),
    /// Balanced independent transversals.
    #[command(subcommand)]
    Transversal(TransversalCommand),
    /// Half graphs, rich pairs and balanced embeddings.
    #[command(subcommand)]
    Embed(EmbedCommand),
    /// Orthogonality graphs of rational vector families.
    #[command(subcommand)]
    Ortho(OrthoCommand),
}

fn main() {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Dr(c) => commands::dr::run(c),
        Command::Gen(a) => commands::gen::run(a),
        Command::Transversal(c) => commands::transversal::run(c),
        Command::Embed(c) => commands::embed::run(c),
        Command::Ortho(c) => commands::ortho::run(c),
    };
    if let Err(e) = res {
        eprintln!("transversal-lab: {e}");
        std::process::exit(e.exit_code());
    }
}
