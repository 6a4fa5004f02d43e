//! k-admissible matchings and the admissible matching number `aim(G, k)`.
//!
//! A matching `M` is k-admissible when it splits into non-empty blocks
//! `M_1, ..., M_r` such that edges from different blocks always form a gap,
//! each block's vertex set induces a forest, and `|M| <= r + k - 1`.
//!
//! Edges that are not a gap must share a block, so the finest admissible
//! block structure is given by the connected components of the "non-gap"
//! relation. Merging blocks only lowers `r` and can only create cycles, so a
//! matching is k-admissible iff its component structure is.

use serde::{Deserialize, Serialize};

use super::matching::{matching_number, visit_k_matchings, Matching};
use super::Graph;
use crate::bits::bit;
use crate::error::{Error, Result};

/// Largest edge count accepted by [`admissible_matching_number`].
pub const MAX_AIM_EDGES: usize = 16;

/// Block structure certifying that a matching is k-admissible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleWitness {
    pub blocks: Vec<Matching>,
}

impl AdmissibleWitness {
    /// The witnessed matching (union of the blocks).
    pub fn matching(&self) -> Matching {
        Matching::new(self.blocks.iter().flat_map(|b| b.edges.iter().copied()).collect())
    }

    /// Checks every admissibility condition directly against `g`.
    pub fn validate(&self, g: &Graph, k: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        if self.blocks.iter().any(|b| b.is_empty()) {
            return fail("empty block".into());
        }
        let all: Vec<(usize, usize)> = self.blocks.iter().flat_map(|b| b.edges.clone()).collect();
        let m = self.matching();
        if m.len() != all.len() {
            return fail("blocks are not pairwise disjoint".into());
        }
        if !m.is_matching_of(g) {
            return fail("union of blocks is not a matching of the graph".into());
        }
        for (i, bi) in self.blocks.iter().enumerate() {
            for bj in &self.blocks[i + 1..] {
                for &e in &bi.edges {
                    for &f in &bj.edges {
                        if !is_gap_by_count(g, e, f) {
                            return fail(format!("{e:?} and {f:?} lie in different blocks but are not a gap"));
                        }
                    }
                }
            }
        }
        let r = self.blocks.len();
        if m.len() + 1 > r + k {
            return fail(format!("|M| = {} exceeds r + k - 1 = {}", m.len(), r + k - 1));
        }
        for b in &self.blocks {
            if has_cycle_dfs(g, &vertices_of(b)) {
                return fail(format!("block {:?} does not induce a forest", b.edges));
            }
        }
        Ok(())
    }
}

/// Gap test by counting edges of the induced subgraph on four vertices.
fn is_gap_by_count(g: &Graph, e: (usize, usize), f: (usize, usize)) -> bool {
    let vs = [e.0, e.1, f.0, f.1];
    let mut count = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(vs[i], vs[j]) {
                count += 1;
            }
        }
    }
    count == 2 && g.has_edge(e.0, e.1) && g.has_edge(f.0, f.1)
}

fn vertices_of(m: &Matching) -> Vec<usize> {
    m.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
}

/// Cycle detection in the induced subgraph by depth-first search.
fn has_cycle_dfs(g: &Graph, vs: &[usize]) -> bool {
    let inside = |v: usize| vs.contains(&v);
    let mut visited = vec![false; g.n()];
    for &root in vs {
        if visited[root] {
            continue;
        }
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, parent)) = stack.pop() {
            if visited[v] {
                return true;
            }
            visited[v] = true;
            for u in 0..g.n() {
                if u != parent && inside(u) && g.has_edge(v, u) {
                    if visited[u] {
                        return true;
                    }
                    stack.push((u, v));
                }
            }
        }
    }
    false
}

/// `aim(G, k)` with a witnessing block structure, or `(0, None)` when no
/// k-admissible matching exists.
///
/// Matchings are searched by decreasing size; the first size with an
/// admissible matching wins. Requires `1 <= k <= ν(G)` and at most
/// [`MAX_AIM_EDGES`] edges.
pub fn admissible_matching_number(g: &Graph, k: usize) -> Result<(usize, Option<AdmissibleWitness>)> {
    let nu = matching_number(g);
    if k == 0 || k > nu {
        return Err(Error::invalid(format!("k = {k} outside 1..={nu}")));
    }
    let edges = g.edges();
    if edges.len() > MAX_AIM_EDGES {
        return Err(Error::CapExceeded {
            what: "edge count for aim",
            cap: MAX_AIM_EDGES,
            got: edges.len(),
        });
    }
    // gap[i] = mask of edges j forming a gap with edge i.
    let gap: Vec<u32> = edges
        .iter()
        .map(|&(a, b)| {
            let close = g.closed_neighbors(a) | g.closed_neighbors(b);
            edges
                .iter()
                .enumerate()
                .filter(|&(_, &(c, d))| close & (bit(c) | bit(d)) == 0)
                .fold(0u32, |m, (j, _)| m | (1 << j))
        })
        .collect();

    for size in (1..=nu).rev() {
        let mut found: Option<Vec<Vec<usize>>> = None;
        let mut stack = Vec::with_capacity(size);
        visit_k_matchings(&edges, size, 0, 0, &mut stack, &mut |m| {
            if found.is_some() {
                return;
            }
            let blocks = non_gap_components(m, &gap);
            if size + 1 > blocks.len() + k {
                return;
            }
            let forest = blocks.iter().all(|b| {
                let support = b.iter().fold(0u64, |s, &i| s | bit(edges[i].0) | bit(edges[i].1));
                g.induces_forest(support)
            });
            if forest {
                found = Some(blocks);
            }
        });
        if let Some(blocks) = found {
            let blocks = blocks
                .into_iter()
                .map(|b| Matching::new(b.into_iter().map(|i| edges[i]).collect()))
                .collect();
            return Ok((size, Some(AdmissibleWitness { blocks })));
        }
    }
    Ok((0, None))
}

/// Connected components of the non-gap relation on the chosen edge indices.
fn non_gap_components(chosen: &[usize], gap: &[u32]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = chosen.to_vec();
    let mut blocks = Vec::new();
    while let Some(seed) = remaining.pop() {
        let mut block = vec![seed];
        let mut frontier = vec![seed];
        while let Some(e) = frontier.pop() {
            let mut i = 0;
            while i < remaining.len() {
                let f = remaining[i];
                if gap[e] & (1 << f) == 0 {
                    remaining.swap_remove(i);
                    block.push(f);
                    frontier.push(f);
                } else {
                    i += 1;
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks.sort();
    blocks
}
