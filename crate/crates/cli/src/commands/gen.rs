use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use transversal_lab::constructions::*;
use transversal_lab::format::encode_graph6;
use transversal_lab::{UGraph, VertexSet};

use crate::error::{CliError, CliResult};
use crate::input;

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Write graph6 here instead of stdout; classes go to `<out>.classes.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Explicit path for the classes sidecar.
    #[arg(long, global = true)]
    pub classes_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Layered graph of a digraph (digraph6 file), one class per vertex.
    Layered {
        #[arg(long)]
        digraph: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Half graph H_{k,k}.
    Half {
        #[arg(long)]
        k: usize,
    },
    /// Complete bipartite graph K_{k,k}.
    Complete {
        #[arg(long)]
        k: usize,
    },
    /// Empty bipartite graph on k + k vertices.
    Empty {
        #[arg(long)]
        k: usize,
    },
    /// Tensor product of two graph6 files.
    Tensor {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    /// tensor(K_n, E_t) with every fibre cut into `parts` classes.
    Blowup {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        parts: usize,
    },
    /// Shift graph on the n-subsets of 0..N.
    Shift {
        #[arg(long)]
        n: usize,
        #[arg(long = "big-n")]
        big_n: usize,
    },
    /// Finite approximation of the Henson graph H_n.
    Henson {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        rounds: usize,
        /// Seed graph (graph6); the empty graph on --seed-order otherwise.
        #[arg(long)]
        seed_graph: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        seed_order: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, default_value_t = 1 << 14)]
        max_vertices: usize,
    },
    /// K_n-free extension of a graph embedding a given split into two classes.
    PartitionWitness {
        #[arg(long)]
        graph: PathBuf,
        /// Vertices for the first class, comma separated.
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        /// Vertices for the second class, comma separated.
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 64)]
        pairs: usize,
    },
    /// Two-class witness built on the half graph of the given depth.
    Rado {
        #[arg(long)]
        depth: usize,
    },
}

fn generate(kind: &GenKind) -> CliResult<(UGraph, Option<Vec<Vec<usize>>>)> {
    let with_classes = |pg: PartitionedGraph| {
        let classes = pg.sidecar().classes;
        (pg.graph, Some(classes))
    };
    Ok(match kind {
        GenKind::Layered { digraph, depth } => with_classes(layered_from_digraph(&LayeredParams {
            digraph: input::digraph(digraph)?,
            depth: *depth,
        })?),
        GenKind::Half { k } => with_classes(half_graph(*k)),
        GenKind::Complete { k } => with_classes(complete_bipartite(*k)),
        GenKind::Empty { k } => with_classes(empty_bipartite(*k)),
        GenKind::Tensor { g, h } => {
            let (g, h) = (input::graph(g)?, input::graph(h)?);
            let fibres = tensor_fibres(g.order(), h.order());
            (tensor(&g, &h), Some(fibres))
        }
        GenKind::Blowup { n, t, parts } => with_classes(split_blowup(*n, *t, *parts)?),
        GenKind::Shift { n, big_n } => (shift_graph(*n, *big_n)?, None),
        GenKind::Henson {
            n,
            rounds,
            seed_graph,
            seed_order,
            rng_seed,
            cap,
            max_vertices,
        } => {
            let seed = match seed_graph {
                Some(p) => input::graph(p)?,
                None => UGraph::empty(*seed_order),
            };
            let opts = HensonOptions {
                cap: *cap,
                max_vertices: *max_vertices,
            };
            (henson_approx(*n, *rounds, &seed, *rng_seed, &opts)?.graph, None)
        }
        GenKind::PartitionWitness { graph, a, b, n, pairs } => {
            let g = input::graph(graph)?;
            let order = g.order();
            if let Some(v) = a.iter().chain(b).find(|&&v| v >= order) {
                return Err(CliError::Usage(format!("vertex {v} out of range")));
            }
            let sa = VertexSet::from_iter_in(order, a.iter().copied());
            let sb = VertexSet::from_iter_in(order, b.iter().copied());
            with_classes(partition_extension_witness(&g, &sa, &sb, *n, *pairs)?)
        }
        GenKind::Rado { depth } => with_classes(rado_partition_witness(*depth)?),
    })
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".classes.json");
    PathBuf::from(s)
}

pub fn run(args: GenArgs) -> CliResult<()> {
    let (graph, classes) = generate(&args.kind)?;
    let line = encode_graph6(&graph);
    let classes_json = classes
        .map(|classes| serde_json::to_string(&ClassesFile { classes }))
        .transpose()?;
    match &args.out {
        Some(out) => {
            fs::write(out, format!("{line}\n"))?;
            if let Some(c) = &classes_json {
                let path = args.classes_out.clone().unwrap_or_else(|| sidecar_path(out));
                fs::write(path, format!("{c}\n"))?;
            }
        }
        None => {
            println!("{line}");
            if let Some(c) = &classes_json {
                match &args.classes_out {
                    Some(path) => fs::write(path, format!("{c}\n"))?,
                    None => println!("{c}"),
                }
            }
        }
    }
    Ok(())
}
