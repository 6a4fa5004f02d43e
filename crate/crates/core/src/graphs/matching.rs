use serde::{Deserialize, Serialize};

use super::Graph;
use crate::bits::{bit, Ones};

/// A set of pairwise vertex-disjoint edges, stored sorted with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Union of the endpoints.
    pub fn support(&self) -> u64 {
        self.edges.iter().fold(0, |m, &(u, v)| m | bit(u) | bit(v))
    }

    /// Edges of `g`, pairwise disjoint.
    pub fn is_matching_of(&self, g: &Graph) -> bool {
        let mut used = 0u64;
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) || used & (bit(u) | bit(v)) != 0 {
                return false;
            }
            used |= bit(u) | bit(v);
        }
        true
    }
}

/// All matchings of `g` with exactly `k` edges, in lexicographic order of
/// their sorted edge lists.
pub fn enumerate_k_matchings(g: &Graph, k: usize) -> Vec<Matching> {
    let edges = g.edges();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    visit_k_matchings(&edges, k, 0, 0, &mut stack, &mut |m| {
        out.push(Matching {
            edges: m.iter().map(|&i| edges[i]).collect(),
        })
    });
    out
}

/// Backtracking over the canonical edge order with a used-vertex mask.
/// Calls `f` with the indices (into `edges`) of each k-matching.
pub(crate) fn visit_k_matchings(
    edges: &[(usize, usize)],
    k: usize,
    start: usize,
    used: u64,
    stack: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if stack.len() == k {
        f(stack);
        return;
    }
    let need = k - stack.len();
    if edges.len() - start < need {
        return;
    }
    for i in start..edges.len() {
        if edges.len() - i < need {
            break;
        }
        let (u, v) = edges[i];
        let m = bit(u) | bit(v);
        if used & m == 0 {
            stack.push(i);
            visit_k_matchings(edges, k, i + 1, used | m, stack, f);
            stack.pop();
        }
    }
}

/// Vertex supports of all k-matchings of `g` (with repetition).
pub(crate) fn k_matching_supports(g: &Graph, k: usize) -> Vec<u64> {
    let edges = g.edges();
    let masks: Vec<u64> = edges.iter().map(|&(u, v)| bit(u) | bit(v)).collect();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    visit_k_matchings(&edges, k, 0, 0, &mut stack, &mut |m| {
        out.push(m.iter().fold(0, |acc, &i| acc | masks[i]))
    });
    out
}

/// Matching number `ν(G)`.
pub fn matching_number(g: &Graph) -> usize {
    fn best(g: &Graph, avail: u64) -> usize {
        // Lowest available vertex with an available neighbour: either it stays
        // unmatched or it is matched to one of those neighbours.
        let mut rest = avail;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let nb = g.neighbors(v) & avail;
            if nb == 0 {
                rest &= !bit(v);
                continue;
            }
            let without_v = avail & !bit(v);
            let mut result = best(g, without_v);
            for u in Ones(nb) {
                result = result.max(1 + best(g, without_v & !bit(u)));
            }
            return result;
        }
        0
    }
    best(g, g.vertex_mask())
}

/// Induced matching number `ν₁(G)`: the largest matching whose vertex set
/// induces exactly the matching edges.
pub fn induced_matching_number(g: &Graph) -> usize {
    fn go(g: &Graph, edges: &[(usize, usize)], start: usize, blocked: u64, size: usize, best: &mut usize) {
        *best = (*best).max(size);
        if size + (edges.len() - start) <= *best {
            return;
        }
        for i in start..edges.len() {
            let (u, v) = edges[i];
            if blocked & (bit(u) | bit(v)) == 0 {
                let nb = g.closed_neighbors(u) | g.closed_neighbors(v);
                go(g, edges, i + 1, blocked | nb, size + 1, best);
            }
        }
    }
    let edges = g.edges();
    let mut best = 0;
    go(g, &edges, 0, 0, 0, &mut best);
    best
}
