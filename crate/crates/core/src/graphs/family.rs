//! Closed graph-family descriptors such as `path:6` or `mwcycle:5:2`.

use std::collections::BTreeSet;
use std::fmt;

use super::{cycle, multi_whiskered_cycle, multi_whiskered_path, path, whisker, Graph};
use crate::error::{Error, Result};

/// Largest forest order accepted by [`forests_up_to_isomorphism`].
pub const MAX_FOREST_ORDER: usize = 7;

/// A named graph family instance.
///
/// Descriptor syntax:
///
/// | descriptor              | graph                                             |
/// |-------------------------|---------------------------------------------------|
/// | `path:N`                | `P_N`                                             |
/// | `cycle:N`               | `C_N`                                             |
/// | `wpath:M`               | `W(P_M)`                                          |
/// | `wcycle:M`              | `W(C_M)`                                          |
/// | `mwpath:R1,R2,...`      | path `x1..xM` with `R_i` whiskers at `x_i`        |
/// | `mwcycle:M:R`           | cycle with whiskers at `x2..xM` and `R` at `x1`   |
/// | `cmforest:M:U-V,...`    | `W(T)` for the forest `T` on `M` vertices (1-based) |
/// | `cmforest:U-V,...`      | as above with `M` the largest vertex mentioned    |
///
/// Anything else (an edge-list file, say) is [`Family::Custom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    WhiskeredPath { m: usize },
    WhiskeredCycle { m: usize },
    MultiWhiskeredPath { r: Vec<usize> },
    MultiWhiskeredCycle { m: usize, r: usize },
    /// `W(T)` for a forest `T` on vertices `0..m`.
    CmForest { m: usize, tree_edges: Vec<(usize, usize)> },
    Custom { name: String, graph: Graph },
}

fn num(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::invalid(format!("bad {what} '{s}'")))
}

impl Family {
    pub fn parse(desc: &str) -> Result<Family> {
        let (kind, rest) = desc
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("family descriptor '{desc}' has no ':'")))?;
        let fam = match kind {
            "path" => Family::Path { n: num(rest, "n")? },
            "cycle" => Family::Cycle { n: num(rest, "n")? },
            "wpath" => Family::WhiskeredPath { m: num(rest, "m")? },
            "wcycle" => Family::WhiskeredCycle { m: num(rest, "m")? },
            "mwpath" => Family::MultiWhiskeredPath {
                r: rest.split(',').map(|s| num(s, "multiplicity")).collect::<Result<_>>()?,
            },
            "mwcycle" => {
                let (m, r) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::invalid("mwcycle needs M:R"))?;
                Family::MultiWhiskeredCycle {
                    m: num(m, "m")?,
                    r: num(r, "r")?,
                }
            }
            "cmforest" => parse_cmforest(rest)?,
            _ => return Err(Error::invalid(format!("unknown family '{kind}'"))),
        };
        // Validate parameters eagerly.
        fam.graph()?;
        Ok(fam)
    }

    pub fn graph(&self) -> Result<Graph> {
        match self {
            Family::Path { n } => path(*n),
            Family::Cycle { n } => cycle(*n),
            Family::WhiskeredPath { m } => whisker(&path(*m)?),
            Family::WhiskeredCycle { m } => {
                if *m < 3 {
                    return Err(Error::invalid("wcycle needs m >= 3"));
                }
                whisker(&cycle(*m)?)
            }
            Family::MultiWhiskeredPath { r } => multi_whiskered_path(r.len(), r),
            Family::MultiWhiskeredCycle { m, r } => multi_whiskered_cycle(*m, *r),
            Family::CmForest { m, tree_edges } => {
                let t = Graph::from_edges(*m, tree_edges)?;
                if !t.is_forest() {
                    return Err(Error::invalid("cmforest edge list contains a cycle"));
                }
                whisker(&t)
            }
            Family::Custom { graph, .. } => Ok(graph.clone()),
        }
    }

    /// The forest `T` with `W(T)` equal to this graph, when the family is a
    /// Cohen–Macaulay forest by construction.
    pub fn cm_forest_base(&self) -> Option<Graph> {
        match self {
            Family::CmForest { m, tree_edges } => Graph::from_edges(*m, tree_edges).ok(),
            Family::WhiskeredPath { m } => path(*m).ok(),
            Family::MultiWhiskeredPath { r } if r.iter().all(|&x| x == 1) => path(r.len()).ok(),
            _ => None,
        }
    }

    /// Short family name (`path`, `cycle`, ...).
    pub fn kind(&self) -> &'static str {
        match self {
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::WhiskeredPath { .. } => "wpath",
            Family::WhiskeredCycle { .. } => "wcycle",
            Family::MultiWhiskeredPath { .. } => "mwpath",
            Family::MultiWhiskeredCycle { .. } => "mwcycle",
            Family::CmForest { .. } => "cmforest",
            Family::Custom { .. } => "custom",
        }
    }

    /// Descriptor without the family name.
    pub fn params(&self) -> String {
        match self {
            Family::Path { n } | Family::Cycle { n } => n.to_string(),
            Family::WhiskeredPath { m } | Family::WhiskeredCycle { m } => m.to_string(),
            Family::MultiWhiskeredPath { r } => join(r.iter()),
            Family::MultiWhiskeredCycle { m, r } => format!("{m}:{r}"),
            Family::CmForest { m, tree_edges } => {
                let edges: Vec<String> = tree_edges
                    .iter()
                    .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
                    .collect();
                if edges.is_empty() {
                    m.to_string()
                } else {
                    format!("{m}:{}", edges.join(","))
                }
            }
            Family::Custom { name, .. } => name.clone(),
        }
    }
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind(), self.params())
    }
}

fn parse_cmforest(rest: &str) -> Result<Family> {
    let (m_explicit, list) = match rest.split_once(':') {
        Some((m, list)) => (Some(num(m, "m")?), list),
        None if !rest.contains('-') => (Some(num(rest, "m")?), ""),
        None => (None, rest),
    };
    let mut edges = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (u, v) = item
            .split_once('-')
            .ok_or_else(|| Error::invalid(format!("bad forest edge '{item}'")))?;
        let (u, v) = (num(u, "vertex")?, num(v, "vertex")?);
        if u == 0 || v == 0 {
            return Err(Error::invalid("forest vertices are 1-based"));
        }
        edges.push(((u - 1).min(v - 1), (u - 1).max(v - 1)));
    }
    edges.sort_unstable();
    edges.dedup();
    let max_vertex = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let m = m_explicit.unwrap_or(max_vertex);
    if m == 0 || max_vertex > m {
        return Err(Error::invalid(format!("cmforest with m = {m} and vertex {max_vertex}")));
    }
    Ok(Family::CmForest { m, tree_edges: edges })
}

/// One representative edge list of every forest on `m` vertices, up to
/// isomorphism, in a deterministic order.
pub fn forests_up_to_isomorphism(m: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if m == 0 || m > MAX_FOREST_ORDER {
        return Err(Error::invalid(format!("forest order {m} outside 1..={MAX_FOREST_ORDER}")));
    }
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
        .collect();
    let perms = permutations(m);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in 0u32..(1u32 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&i| s & (1 << i) != 0)
            .map(|i| pairs[i])
            .collect();
        if edges.len() >= m {
            continue;
        }
        let g = Graph::from_edges(m, &edges)?;
        if !g.is_forest() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    Ok(out)
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(m, &mut cur, &mut out);
    out
}
