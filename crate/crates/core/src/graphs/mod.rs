//! Finite simple graphs, the named graph families, and matching combinatorics.
//!
//! Vertices are dense indices `0..n` (with `n <= 64`) so that vertex sets fit
//! in a single `u64` mask; labels such as `x3`, `y2` or `z1` are display-only.

mod admissible;
mod family;
pub(crate) mod matching;
mod parse;

pub use admissible::{admissible_matching_number, AdmissibleWitness};
pub use family::{forests_up_to_isomorphism, Family};
pub use matching::{enumerate_k_matchings, induced_matching_number, matching_number, Matching};
pub use parse::parse_edge_list;

use crate::bits::{bit, Ones};
use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A finite simple graph on the vertices `0..n`.
///
/// Equality compares vertex count, edges and labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    labels: Vec<String>,
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `x1..xn`.
    pub fn edgeless(n: usize) -> Result<Self> {
        let labels = (1..=n).map(|i| format!("x{i}")).collect();
        Self::with_labels(labels)
    }

    /// Edgeless graph with the given vertex labels.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                cap: MAX_VERTICES,
                got: labels.len(),
            });
        }
        Ok(Graph {
            adj: vec![0; labels.len()],
            labels,
        })
    }

    /// Graph on `n` vertices (labels `x1..xn`) with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        crate::bits::low_mask(self.n())
    }

    /// Open neighbourhood `N(v)` as a mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Closed neighbourhood `N[v]` as a mask.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> u64 {
        self.adj[v] | bit(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] & bit(v) != 0
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in Ones(self.adj[u] & !crate::bits::low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask of vertices with no neighbours.
    pub fn isolated_vertices(&self) -> u64 {
        (0..self.n())
            .filter(|&v| self.adj[v] == 0)
            .fold(0, |m, v| m | bit(v))
    }

    /// Induced subgraph on `V(G) \ w`, re-indexed densely; labels are kept.
    pub fn delete_vertices(&self, w: &[usize]) -> Result<Graph> {
        let mut removed = 0u64;
        for &v in w {
            if v >= self.n() {
                return Err(Error::invalid(format!("unknown vertex {v}")));
            }
            removed |= bit(v);
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| removed & bit(v) == 0).collect();
        Ok(self.induced_on(&keep))
    }

    /// Induced subgraph on the listed vertices, in the listed order.
    pub fn induced_on(&self, keep: &[usize]) -> Graph {
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![0u64; keep.len()];
        for (i, &v) in keep.iter().enumerate() {
            for u in Ones(self.adj[v]) {
                if index[u] != usize::MAX {
                    adj[i] |= bit(index[u]);
                }
            }
        }
        Graph {
            adj,
            labels: keep.iter().map(|&v| self.labels[v].clone()).collect(),
        }
    }

    /// Same vertex set, with every edge meeting `w` removed.
    ///
    /// This is `G \ W` kept inside the original vertex indexing, which is what
    /// ideal comparisons in a fixed ambient ring need.
    pub fn isolate(&self, w: u64) -> Graph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &a)| if w & bit(v) != 0 { 0 } else { a & !w })
            .collect();
        Graph {
            adj,
            labels: self.labels.clone(),
        }
    }

    /// Graph with vertex `v` of `self` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = 0u64;
        for &p in perm {
            if p >= n || seen & bit(p) != 0 {
                return Err(Error::invalid("not a permutation"));
            }
            seen |= bit(p);
        }
        if perm.len() != n {
            return Err(Error::invalid("permutation length mismatch"));
        }
        let mut adj = vec![0u64; n];
        let mut labels = vec![String::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
            for u in Ones(self.adj[v]) {
                adj[perm[v]] |= bit(perm[u]);
            }
        }
        Ok(Graph { adj, labels })
    }

    /// True when the two graphs have the same vertex count and edge set,
    /// ignoring labels.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    /// Whether the induced subgraph on `mask` has no cycle.
    pub fn induces_forest(&self, mask: u64) -> bool {
        // A graph is a forest iff |E| = |V| - #components.
        let mut parent: [u8; MAX_VERTICES] = std::array::from_fn(|i| i as u8);
        fn find(p: &mut [u8; MAX_VERTICES], mut x: usize) -> usize {
            while p[x] as usize != x {
                p[x] = p[p[x] as usize];
                x = p[x] as usize;
            }
            x
        }
        for u in Ones(mask) {
            for v in Ones(self.adj[u] & mask & !crate::bits::low_mask(u + 1)) {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    return false;
                }
                parent[a] = b as u8;
            }
        }
        true
    }

    pub fn is_forest(&self) -> bool {
        self.induces_forest(self.vertex_mask())
    }

    /// Complement graph on the same vertices.
    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let adj = (0..self.n())
            .map(|v| all & !self.adj[v] & !bit(v))
            .collect();
        Graph {
            adj,
            labels: self.labels.clone(),
        }
    }

    /// Chordality via maximum cardinality search and a perfect elimination check.
    pub fn is_chordal(&self) -> bool {
        let n = self.n();
        let mut weight = vec![0usize; n];
        let mut numbered = 0u64;
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| numbered & bit(v) == 0)
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .expect("unnumbered vertex");
            numbered |= bit(v);
            order.push(v);
            for u in Ones(self.adj[v] & !numbered) {
                weight[u] += 1;
            }
        }
        // `order` is the reverse of a perfect elimination ordering when chordal:
        // for each v, its earlier neighbours must form a clique.
        let mut earlier = 0u64;
        for &v in &order {
            let back = self.adj[v] & earlier;
            for u in Ones(back) {
                if back & !bit(u) & !self.adj[u] != 0 {
                    return false;
                }
            }
            earlier |= bit(v);
        }
        true
    }

    pub fn is_co_chordal(&self) -> bool {
        self.complement().is_chordal()
    }
}

impl std::fmt::Display for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}{}", self.labels[u], self.labels[v]))
            .collect();
        write!(f, "G(n={}; {})", self.n(), edges.join(", "))
    }
}

/// Path `P_n` on `x1..xn`.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("path needs at least one vertex"));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges)
}

/// Cycle `C_n` on `x1..xn`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = path(n)?;
    g.add_edge(0, n - 1)?;
    Ok(g)
}

/// Whisker graph `W(G)`: a pendant vertex `y_i` at every vertex `x_i`.
///
/// The new vertex of `v` gets index `n + v`.
pub fn whisker(g: &Graph) -> Result<Graph> {
    let n = g.n();
    let mut labels = g.labels.clone();
    for l in &g.labels {
        labels.push(match l.strip_prefix('x') {
            Some(rest) => format!("y{rest}"),
            None => format!("y_{l}"),
        });
    }
    let mut w = Graph::with_labels(labels)?;
    for (u, v) in g.edges() {
        w.add_edge(u, v)?;
    }
    for v in 0..n {
        w.add_edge(v, n + v)?;
    }
    Ok(w)
}

/// Path `x1..xm` with `r_i` pendant vertices `y_{i,1..r_i}` at `x_i`.
pub fn multi_whiskered_path(m: usize, r: &[usize]) -> Result<Graph> {
    if m == 0 {
        return Err(Error::invalid("multi-whiskered path needs m >= 1"));
    }
    if r.len() != m {
        return Err(Error::invalid(format!(
            "expected {m} whisker multiplicities, got {}",
            r.len()
        )));
    }
    if r.contains(&0) {
        return Err(Error::invalid("whisker multiplicities must be positive"));
    }
    let mut labels: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    for (i, &ri) in r.iter().enumerate() {
        for j in 1..=ri {
            labels.push(format!("y{},{}", i + 1, j));
        }
    }
    let mut g = Graph::with_labels(labels)?;
    for i in 0..m - 1 {
        g.add_edge(i, i + 1)?;
    }
    let mut next = m;
    for (i, &ri) in r.iter().enumerate() {
        for _ in 0..ri {
            g.add_edge(i, next)?;
            next += 1;
        }
    }
    Ok(g)
}

/// Cycle `x1..xm` with whiskers `y_j` at `x_j` for `2 <= j <= m` and `r`
/// pendant vertices `z_1..z_r` at `x1`. For `r = 1` this is `W(C_m)`.
///
/// Vertex order: `x1..xm, y2..ym, z1..zr`.
pub fn multi_whiskered_cycle(m: usize, r: usize) -> Result<Graph> {
    if m < 3 || r == 0 {
        return Err(Error::invalid(format!(
            "multi-whiskered cycle needs m >= 3 and r >= 1, got m={m}, r={r}"
        )));
    }
    let mut labels: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    labels.extend((2..=m).map(|j| format!("y{j}")));
    labels.extend((1..=r).map(|k| format!("z{k}")));
    let mut g = Graph::with_labels(labels)?;
    for i in 0..m - 1 {
        g.add_edge(i, i + 1)?;
    }
    g.add_edge(0, m - 1)?;
    for j in 1..m {
        g.add_edge(j, m + j - 1)?;
    }
    for k in 0..r {
        g.add_edge(0, 2 * m - 1 + k)?;
    }
    Ok(g)
}
