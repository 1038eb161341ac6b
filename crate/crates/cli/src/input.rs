use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use transversal_lab::constructions::ClassesFile;
use transversal_lab::format::{decode_digraph6, decode_graph6};
use transversal_lab::{BitDigraph, PartitionedGraph, UGraph};

use crate::error::{CliError, CliResult};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// First non-empty line, without any `>>graph6<<` style header.
fn first_line(path: &Path) -> CliResult<String> {
    let text = read(path)?;
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .map(|l| l.trim_start_matches(">>graph6<<").trim_start_matches(">>digraph6<<").to_string())
        .ok_or_else(|| CliError::Usage(format!("{} is empty", path.display())))
}

pub fn graph(path: &Path) -> CliResult<UGraph> {
    Ok(decode_graph6(&first_line(path)?)?)
}

pub fn digraph(path: &Path) -> CliResult<BitDigraph> {
    Ok(decode_digraph6(&first_line(path)?)?)
}

pub fn json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn partitioned(graph_path: &Path, classes_path: &Path) -> CliResult<PartitionedGraph> {
    let classes: ClassesFile = json(classes_path)?;
    Ok(PartitionedGraph::from_sidecar(graph(graph_path)?, classes)?)
}
