use std::collections::HashMap;

use super::Graph;
use crate::error::{Error, Result};

/// What the edge-list reader silently dropped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// Yields `(line_number, tokens)` for every non-blank, non-comment line.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn pair<'a>(line: usize, tokens: &[&'a str]) -> Result<(&'a str, &'a str)> {
    match tokens {
        [a, b] => Ok((a, b)),
        _ => Err(Error::Parse {
            line,
            message: format!("expected 2 tokens, found {}", tokens.len()),
        }),
    }
}

/// Reads a whitespace-separated edge list. Node tokens are numbered in
/// first-appearance order and kept as labels.
pub fn parse_edge_list(text: &str) -> Result<(Graph, ParseReport)> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut report = ParseReport::default();

    for (line, tokens) in records(text) {
        let (a, b) = pair(line, &tokens)?;
        let mut intern = |token| {
            *index.entry(token).or_insert_with(|| {
                labels.push(token.to_owned());
                labels.len() - 1
            })
        };
        let (u, v) = (intern(a), intern(b));
        if u == v {
            report.self_loops += 1;
        } else {
            edges.push((u.min(v), u.max(v)));
        }
    }

    edges.sort_unstable();
    let before = edges.len();
    edges.dedup();
    report.duplicate_edges = before - edges.len();

    let graph = Graph::new(labels.len(), edges)?.with_labels(labels)?;
    Ok((graph, report))
}

/// Attaches a total cluster map read from `node cluster` lines.
pub fn parse_clusters(text: &str, graph: Graph) -> Result<Graph> {
    let index: HashMap<String, usize> = (0..graph.node_count())
        .map(|v| (graph.label(v).into_owned(), v))
        .collect();
    let mut assigned: Vec<Option<String>> = vec![None; graph.node_count()];

    for (line, tokens) in records(text) {
        let (node, cluster) = pair(line, &tokens)?;
        let &v = index.get(node).ok_or_else(|| Error::UnknownNode {
            line,
            token: node.to_owned(),
        })?;
        match &assigned[v] {
            Some(existing) if existing != cluster => {
                return Err(Error::ConflictingCluster {
                    token: node.to_owned(),
                    first: existing.clone(),
                    second: cluster.to_owned(),
                });
            }
            _ => assigned[v] = Some(cluster.to_owned()),
        }
    }

    let clusters = assigned
        .into_iter()
        .enumerate()
        .map(|(v, c)| {
            c.ok_or_else(|| Error::MissingCluster {
                token: graph.label(v).into_owned(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    graph.with_clusters(clusters)
}
