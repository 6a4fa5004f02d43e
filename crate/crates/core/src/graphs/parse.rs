use super::Graph;
use crate::error::{Error, Result};

/// Parses the edge-list text format: one `u v` pair per line, `#` starts a
/// comment, blank lines are ignored. Vertex tokens become labels and are
/// indexed in order of first appearance. Repeated edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let index_of = |tok: &str, names: &mut Vec<String>| -> usize {
        match names.iter().position(|n| n == tok) {
            Some(i) => i,
            None => {
                names.push(tok.to_string());
                names.len() - 1
            }
        }
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected two vertex tokens, found {}", toks.len()),
            });
        }
        if toks[0] == toks[1] {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("loop at vertex {}", toks[0]),
            });
        }
        let u = index_of(toks[0], &mut names);
        let v = index_of(toks[1], &mut names);
        edges.push((u, v));
    }
    let mut g = Graph::with_labels(names)?;
    for (u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}
