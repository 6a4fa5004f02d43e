use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{bit, from_indices, Ones};
use crate::error::{Error, Result};
use crate::graphs::{matching_number, path, Graph};
use crate::homalg::{betti_hochster, depth_quotient, regularity};
use crate::ideals::{
    colon_exchange_identity, colon_identity_edge, colon_identity_second_power, colon_identity_star,
    colon_identity_vertex, deletion_identity, sqf_power, SqfIdeal,
};
use crate::simplicial::FieldSpec;

use super::REPORT_SCHEMA;

/// The randomized checks. Ideal identities compare minimal generating sets;
/// the others compare regularity or depth computed from Betti tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `((I + <x_1..x_{r-1}>) : x_r) = (I : x_r) + <x_1..x_{r-1}>`.
    ColonExchange,
    /// `I(G)^[k] + <x> = I(G \ x)^[k] + <x>`.
    VertexDeletion,
    /// `(I(G)^[k] : x)` as a sum over the neighbours of `x`.
    VertexColon,
    /// `(I(G)^[k] : xy)` as a sum of powers of the graphs `G_i`.
    EdgeColon,
    /// `((I(G)^[k] + <x N(x)>) : x) = I(G \ N[x])^[k] + <N(x)>`.
    StarColon,
    /// `(I(G)^[2] : xy) = I(G')`.
    SecondPowerColon,
    /// `reg(I_1 + I_2) = reg(I_1) + reg(I_2) - 1` in disjoint variables.
    RegDisjointSum,
    /// `reg(I + <x>) ≤ reg I`, `reg(I : x) ≤ reg I` and
    /// `reg I ≤ max(reg(I : m) + deg m, reg(I + <m>))`.
    RegColonBounds,
    /// Depth is additive over sums in disjoint variables.
    DepthDisjointSum,
    /// `depth(R/(J + <x_{m+1}..x_r>)) = depth(R'/J) + (n - r)`.
    DepthExtraVariables,
    /// `depth(R/I)` lies in `{depth(R/(I + <f>)), depth(R/(I : f))}` and is at
    /// most `depth(R/(I : f))`.
    DepthColonSum,
    /// `depth(R/I(G)^[ν]) = 2ν - 1` when `G` has no isolated vertices.
    TopPowerDepth,
    /// Induced subgraphs do not raise the regularity of `I(G)^[k]`, and
    /// `β_{0,2k}` counts the generators.
    RegInducedSubgraph,
}

impl Identity {
    pub const ALL: [Identity; 13] = [
        Identity::ColonExchange,
        Identity::VertexDeletion,
        Identity::VertexColon,
        Identity::EdgeColon,
        Identity::StarColon,
        Identity::SecondPowerColon,
        Identity::RegDisjointSum,
        Identity::RegColonBounds,
        Identity::DepthDisjointSum,
        Identity::DepthExtraVariables,
        Identity::DepthColonSum,
        Identity::TopPowerDepth,
        Identity::RegInducedSubgraph,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::ColonExchange => "colon-exchange",
            Identity::VertexDeletion => "vertex-deletion",
            Identity::VertexColon => "vertex-colon",
            Identity::EdgeColon => "edge-colon",
            Identity::StarColon => "star-colon",
            Identity::SecondPowerColon => "second-power-colon",
            Identity::RegDisjointSum => "reg-disjoint-sum",
            Identity::RegColonBounds => "reg-colon-bounds",
            Identity::DepthDisjointSum => "depth-disjoint-sum",
            Identity::DepthExtraVariables => "depth-extra-variables",
            Identity::DepthColonSum => "depth-colon-sum",
            Identity::TopPowerDepth => "top-power-depth",
            Identity::RegInducedSubgraph => "reg-induced-subgraph",
        }
    }

    fn stream(&self) -> u64 {
        Identity::ALL.iter().position(|i| i == self).expect("listed") as u64
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown identity '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityConfig {
    pub trials: usize,
    pub seed: u64,
    /// Largest random graph order.
    pub max_vertices: usize,
    pub field_char: u32,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig {
            trials: 200,
            seed: 1,
            max_vertices: 10,
            field_char: FieldSpec::DEFAULT_PRIME,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub identity: Identity,
    /// Trial number; absent for pinned regression cases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    /// Seed that reproduces this trial through [`run_identity_trial`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: bool,
    /// The instance: graph as `n:u-v,...` (1-based) plus parameters.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub schema: u32,
    pub config: IdentityConfig,
    pub cases: Vec<IdentityCase>,
    /// `identity -> [passed, failed]`.
    pub summary: BTreeMap<String, [usize; 2]>,
}

impl IdentityReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }

    /// 0 when every identity held, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures() > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Per-identity counts followed by the failing cases with their seeds.
    pub fn table(&self) -> String {
        let width = Identity::ALL.iter().map(|i| i.name().len()).max().unwrap_or(0);
        let mut out = format!("{:<width$}  {:>6}  {:>6}\n", "identity", "pass", "fail");
        for (name, [p, f]) in &self.summary {
            out.push_str(&format!("{name:<width$}  {p:>6}  {f:>6}\n"));
        }
        for c in self.cases.iter().filter(|c| !c.passed) {
            let seed = c.seed.map_or("pinned".to_string(), |s| s.to_string());
            out.push_str(&format!("FAILED {} seed {seed}: {}\n", c.identity, c.detail));
        }
        out.push_str(&format!("{} cases, {} failed\n", self.cases.len(), self.failures()));
        out
    }
}

fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    format!("{}:{}", g.n(), edges.join(","))
}

fn random_graph(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> Graph {
    let n = rng.random_range(min_n..=max_n.max(min_n));
    let p: f64 = rng.random_range(0.2..0.8);
    let mut g = Graph::edgeless(n).expect("small graph");
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("valid edge");
            }
        }
    }
    g
}

/// A random graph with matching number at least `min_nu`.
fn graph_with_matching(rng: &mut ChaCha8Rng, min_nu: usize, max_n: usize) -> (Graph, usize) {
    loop {
        let g = random_graph(rng, (2 * min_nu).max(2), max_n);
        let nu = matching_number(&g);
        if nu >= min_nu {
            return (g, nu);
        }
    }
}

fn random_vertex(rng: &mut ChaCha8Rng, mask: u64) -> usize {
    let vs: Vec<usize> = Ones(mask).collect();
    vs[rng.random_range(0..vs.len())]
}

fn non_isolated(g: &Graph) -> u64 {
    g.vertex_mask() & !g.isolated_vertices()
}

/// A monomial of degree 1..=3 outside `i`.
fn monomial_outside(rng: &mut ChaCha8Rng, i: &SqfIdeal) -> Option<u64> {
    let n = i.ambient();
    for _ in 0..100 {
        let d = rng.random_range(1..=3.min(n));
        let m = from_indices(sample(rng, n, d));
        if !i.contains_mask(m) {
            return Some(m);
        }
    }
    None
}

fn sides((l, r): (SqfIdeal, SqfIdeal), detail: String) -> Result<(bool, String)> {
    let ok = l.equals(&r)?;
    let detail = if ok { detail } else { format!("{detail}; left {l}, right {r}") };
    Ok((ok, detail))
}

/// Runs one trial from its seed.
pub fn run_identity_trial(identity: Identity, seed: u64, cfg: &IdentityConfig) -> Result<IdentityCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (passed, detail) = trial(identity, &mut rng, cfg)?;
    Ok(IdentityCase {
        identity,
        trial: None,
        seed: Some(seed),
        passed,
        detail,
    })
}

fn trial(identity: Identity, rng: &mut ChaCha8Rng, cfg: &IdentityConfig) -> Result<(bool, String)> {
    let f = FieldSpec::new(cfg.field_char)?;
    let maxv = cfg.max_vertices.max(4);
    let reg = |i: &SqfIdeal| regularity(i, f);
    let depth = |i: &SqfIdeal| depth_quotient(i, f);
    match identity {
        Identity::ColonExchange => {
            let (g, nu) = graph_with_matching(rng, 1, maxv);
            let k = rng.random_range(1..=nu);
            let r = rng.random_range(1..=4.min(g.n()));
            let vars: Vec<usize> = sample(rng, g.n(), r).into_iter().collect();
            let detail = format!("G={} k={k} vars={vars:?}", describe(&g));
            sides(colon_exchange_identity(&sqf_power(&g, k), &vars)?, detail)
        }
        Identity::VertexDeletion | Identity::VertexColon | Identity::StarColon => {
            let min_k = if identity == Identity::StarColon { 1 } else { 2 };
            let (g, nu) = graph_with_matching(rng, min_k, maxv);
            let k = rng.random_range(min_k..=nu);
            let x = random_vertex(rng, non_isolated(&g));
            let detail = format!("G={} k={k} x={}", describe(&g), x + 1);
            let pair = match identity {
                Identity::VertexDeletion => deletion_identity(&g, k, x)?,
                Identity::VertexColon => colon_identity_vertex(&g, k, x)?,
                _ => colon_identity_star(&g, k, x)?,
            };
            sides(pair, detail)
        }
        Identity::EdgeColon | Identity::SecondPowerColon => {
            let (g, nu) = graph_with_matching(rng, 2, maxv);
            let edges = g.edges();
            let (mut x, mut y) = edges[rng.random_range(0..edges.len())];
            if rng.random_bool(0.5) {
                std::mem::swap(&mut x, &mut y);
            }
            if identity == Identity::EdgeColon {
                let k = rng.random_range(2..=nu);
                let detail = format!("G={} k={k} x={} y={}", describe(&g), x + 1, y + 1);
                sides(colon_identity_edge(&g, k, x, y)?, detail)
            } else {
                let detail = format!("G={} x={} y={}", describe(&g), x + 1, y + 1);
                sides(colon_identity_second_power(&g, x, y)?, detail)
            }
        }
        Identity::RegDisjointSum | Identity::DepthDisjointSum => {
            let half = (maxv / 2).max(2);
            let (g1, nu1) = graph_with_matching(rng, 1, half);
            let (g2, nu2) = graph_with_matching(rng, 1, half);
            let (k1, k2) = (rng.random_range(1..=nu1), rng.random_range(1..=nu2));
            let (n1, n2) = (g1.n(), g2.n());
            let i1 = sqf_power(&g1, k1);
            let i2 = sqf_power(&g2, k2);
            let sum = i1.embed(n1 + n2, 0)?.add(&i2.embed(n1 + n2, n1)?)?;
            let detail = format!("G1={} k1={k1} G2={} k2={k2}", describe(&g1), describe(&g2));
            let (lhs, rhs) = if identity == Identity::RegDisjointSum {
                (reg(&sum)?, reg(&i1)? + reg(&i2)? - 1)
            } else {
                (depth(&sum)?, depth(&i1)? + depth(&i2)?)
            };
            Ok((lhs == rhs, format!("{detail}; {lhs} vs {rhs}")))
        }
        Identity::RegColonBounds => {
            let (g, nu) = graph_with_matching(rng, 1, maxv);
            let k = rng.random_range(1..=nu);
            let i = sqf_power(&g, k);
            let n = g.n();
            let x = rng.random_range(0..n);
            let Some(m) = monomial_outside(rng, &i) else {
                return Ok((true, format!("G={} k={k}: no monomial outside", describe(&g))));
            };
            let r = reg(&i)?;
            let r_sum_x = reg(&i.add(&SqfIdeal::variables(n, bit(x))?)?)?;
            let r_colon_x = reg(&i.colon_mask(bit(x))?)?;
            let r_colon_m = reg(&i.colon_mask(m)?)?;
            let r_sum_m = reg(&i.add(&SqfIdeal::from_masks(n, vec![m])?)?)?;
            let d = m.count_ones() as usize;
            let ok = r_sum_x <= r && r_colon_x <= r && r <= (r_colon_m + d).max(r_sum_m);
            let detail = format!(
                "G={} k={k} x={} m={:?}; reg {r}, +x {r_sum_x}, :x {r_colon_x}, :m {r_colon_m}, +m {r_sum_m}",
                describe(&g),
                x + 1,
                Ones(m).map(|v| v + 1).collect::<Vec<_>>()
            );
            Ok((ok, detail))
        }
        Identity::DepthExtraVariables => {
            let (g, nu) = graph_with_matching(rng, 1, maxv.saturating_sub(3).max(2));
            let k = rng.random_range(1..=nu);
            let m = g.n();
            let r = rng.random_range(m..=m + 2);
            let n = rng.random_range(r..=r + 2);
            let j = sqf_power(&g, k);
            let extra = SqfIdeal::variables(n, (m..r).map(bit).fold(0, |a, b| a | b))?;
            let i = j.embed(n, 0)?.add(&extra)?;
            let (lhs, rhs) = (depth(&i)?, depth(&j)? + (n - r));
            let detail = format!("G={} k={k} r={r} n={n}; {lhs} vs {rhs}", describe(&g));
            Ok((lhs == rhs, detail))
        }
        Identity::DepthColonSum => {
            let (g, nu) = graph_with_matching(rng, 1, maxv);
            let k = rng.random_range(1..=nu);
            let i = sqf_power(&g, k);
            let Some(fm) = monomial_outside(rng, &i) else {
                return Ok((true, format!("G={} k={k}: no monomial outside", describe(&g))));
            };
            let d = depth(&i)?;
            let d_sum = depth(&i.add(&SqfIdeal::from_masks(g.n(), vec![fm])?)?)?;
            let d_colon = depth(&i.colon_mask(fm)?)?;
            let ok = (d == d_sum || d == d_colon) && d >= d_sum.min(d_colon) && d <= d_colon;
            let detail = format!(
                "G={} k={k} f={:?}; depth {d}, +f {d_sum}, :f {d_colon}",
                describe(&g),
                Ones(fm).map(|v| v + 1).collect::<Vec<_>>()
            );
            Ok((ok, detail))
        }
        Identity::TopPowerDepth => {
            let (g, _) = graph_with_matching(rng, 1, maxv);
            let keep: Vec<usize> = Ones(non_isolated(&g)).collect();
            let h = g.induced_on(&keep);
            let nu = matching_number(&h);
            let d = depth(&sqf_power(&h, nu))?;
            Ok((d == 2 * nu - 1, format!("G={} nu={nu}; depth {d}", describe(&h))))
        }
        Identity::RegInducedSubgraph => {
            let (g, nu) = graph_with_matching(rng, 1, maxv);
            let k = rng.random_range(1..=nu);
            let i = sqf_power(&g, k);
            let table = betti_hochster(&i, f)?;
            let gens_ok = table.get(0, 2 * k) == i.num_generators();
            let size = rng.random_range(2..=g.n());
            let keep: Vec<usize> = {
                let mut v: Vec<usize> = sample(rng, g.n(), size).into_iter().collect();
                v.sort_unstable();
                v
            };
            let h = g.induced_on(&keep);
            let ih = sqf_power(&h, k);
            let rg = table.regularity().expect("nonzero ideal");
            let rh = if ih.is_zero() { None } else { Some(reg(&ih)?) };
            let ok = gens_ok && rh.is_none_or(|rh| rh <= rg);
            let detail = format!(
                "G={} k={k} U={:?}; reg {rg}, induced {rh:?}, beta0 {}",
                describe(&g),
                keep.iter().map(|v| v + 1).collect::<Vec<_>>(),
                table.get(0, 2 * k)
            );
            Ok((ok, detail))
        }
    }
}

/// The path `x1x2x3x4`, `k = 2`, edge `x2x3`: both sides are `<x1x4>`.
fn pinned_cases() -> Result<Vec<IdentityCase>> {
    let g = path(4)?;
    let (l, r) = colon_identity_edge(&g, 2, 1, 2)?;
    let expected = SqfIdeal::from_masks(4, vec![bit(0) | bit(3)])?;
    Ok(vec![IdentityCase {
        identity: Identity::EdgeColon,
        trial: None,
        seed: None,
        passed: l == expected && r == expected,
        detail: format!("G={} k=2 x=2 y=3; left {l}, right {r}", describe(&g)),
    }])
}

/// Per-trial seeds: identity `i` draws from stream `i` of the master seed.
fn trial_seeds(identity: Identity, cfg: &IdentityConfig) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    master.set_stream(identity.stream());
    (0..cfg.trials).map(|_| master.next_u64()).collect()
}

/// Runs `cfg.trials` random trials of each identity plus the pinned cases.
///
/// Errors inside a trial count as failures rather than aborting the run.
pub fn run_identities(identities: &[Identity], cfg: &IdentityConfig) -> Result<IdentityReport> {
    FieldSpec::new(cfg.field_char)?;
    let jobs: Vec<(Identity, usize, u64)> = identities
        .iter()
        .flat_map(|&id| trial_seeds(id, cfg).into_iter().enumerate().map(move |(t, s)| (id, t, s)))
        .collect();
    let mut cases: Vec<IdentityCase> = jobs
        .par_iter()
        .map(|&(id, t, seed)| {
            let mut case = run_identity_trial(id, seed, cfg).unwrap_or_else(|e| IdentityCase {
                identity: id,
                trial: None,
                seed: Some(seed),
                passed: false,
                detail: format!("error: {e}"),
            });
            case.trial = Some(t);
            case
        })
        .collect();
    if identities.contains(&Identity::EdgeColon) {
        cases.extend(pinned_cases()?);
    }
    let mut summary: BTreeMap<String, [usize; 2]> = BTreeMap::new();
    for id in identities {
        summary.insert(id.name().to_string(), [0, 0]);
    }
    for c in &cases {
        let e = summary.get_mut(c.identity.name()).expect("identity listed");
        e[usize::from(!c.passed)] += 1;
    }
    Ok(IdentityReport {
        schema: REPORT_SCHEMA,
        config: *cfg,
        cases,
        summary,
    })
}
