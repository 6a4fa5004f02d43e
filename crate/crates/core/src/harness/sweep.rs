use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formulas::{family_matching_number, predict, Invariant, PredictionResult, ProofStatus, Value};
use crate::graphs::{forests_up_to_isomorphism, Family};
use crate::homalg::InvariantBundle;
use crate::ideals::sqf_power;
use crate::simplicial::FieldSpec;

use super::checkpoint::{Checkpoint, CheckpointEntry};
use super::report::{CaseRecord, CaseStatus, CharZeroCheck, ReportConfig, VerificationReport};

/// Default largest graph order a sweep accepts.
pub const DEFAULT_MAX_N: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub field: FieldSpec,
    pub max_n: usize,
    /// Recompute every `char0_every`-th instance over the rationals; 0 disables.
    pub char0_every: usize,
    pub timings: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            field: FieldSpec::default(),
            max_n: DEFAULT_MAX_N,
            char0_every: 5,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KSelection {
    /// `1..=ν(G)` for each instance.
    All,
    /// The listed values that lie in `1..=ν(G)`.
    Only(Vec<usize>),
}

impl KSelection {
    fn values(&self, nu: usize) -> Vec<usize> {
        match self {
            KSelection::All => (1..=nu).collect(),
            KSelection::Only(ks) => ks.iter().copied().filter(|&k| (1..=nu).contains(&k)).collect(),
        }
    }
}

/// Parameter ranges for [`family_set`]; `None` picks the family default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyRanges {
    pub n: Option<RangeInclusive<usize>>,
    pub m: Option<RangeInclusive<usize>>,
    pub r: Option<RangeInclusive<usize>>,
    pub max_tree_vertices: Option<usize>,
}

/// Parses `A..B` or `A..=B` (both inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::invalid(format!("bad range '{s}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(bad());
    }
    Ok(r)
}

/// Default parameter range of a family kind: `n` for paths and cycles, `m`
/// otherwise.
pub fn default_range(kind: &str) -> Option<RangeInclusive<usize>> {
    Some(match kind {
        "path" => 2..=10,
        "cycle" => 3..=12,
        "wpath" => 1..=6,
        "wcycle" | "mwcycle" => 3..=6,
        "mwpath" => 1..=4,
        "cmforest" => 1..=5,
        _ => return None,
    })
}

/// Every instance of a family kind over the given ranges.
///
/// `mwpath` takes every multiplicity vector of length `m` with entries in
/// the `r` range; `cmforest` takes every forest up to isomorphism on at most
/// `max_tree_vertices` vertices.
pub fn family_set(kind: &str, ranges: &FamilyRanges) -> Result<Vec<Family>> {
    let unknown = || Error::invalid(format!("unknown family '{kind}'"));
    let default = default_range(kind).ok_or_else(unknown)?;
    let n = ranges.n.clone().unwrap_or(default.clone());
    let m = ranges.m.clone().unwrap_or(default.clone());
    let r = ranges.r.clone().unwrap_or(1..=2);
    let fams = match kind {
        "path" => n.map(|n| Family::Path { n }).collect(),
        "cycle" => n.map(|n| Family::Cycle { n }).collect(),
        "wpath" => m.map(|m| Family::WhiskeredPath { m }).collect(),
        "wcycle" => m.map(|m| Family::WhiskeredCycle { m }).collect(),
        "mwcycle" => m
            .flat_map(|m| r.clone().map(move |r| Family::MultiWhiskeredCycle { m, r }))
            .collect(),
        "mwpath" => {
            let mut out = Vec::new();
            for len in m {
                let mut tuples: Vec<Vec<usize>> = vec![vec![]];
                for _ in 0..len {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            r.clone().map(move |x| {
                                let mut t = t.clone();
                                t.push(x);
                                t
                            })
                        })
                        .collect();
                }
                out.extend(tuples.into_iter().map(|r| Family::MultiWhiskeredPath { r }));
            }
            out
        }
        "cmforest" => {
            let max = ranges.max_tree_vertices.unwrap_or(*default.end());
            let mut out = Vec::new();
            for order in 1..=max {
                for tree_edges in forests_up_to_isomorphism(order)? {
                    out.push(Family::CmForest { m: order, tree_edges });
                }
            }
            out
        }
        _ => return Err(unknown()),
    };
    // Surface invalid parameters (cycle:2, wcycle:2, ...) before any work.
    for f in &fams {
        f.graph()?;
    }
    Ok(fams)
}

struct Instance<'a> {
    family: &'a Family,
    k: usize,
}

fn expand<'a>(families: &'a [Family], ks: &KSelection, max_n: usize) -> Result<Vec<Instance<'a>>> {
    let mut out = Vec::new();
    for f in families {
        let n = f.graph()?.n();
        if n > max_n {
            return Err(Error::CapExceeded {
                what: "graph order",
                cap: max_n,
                got: n,
            });
        }
        for k in ks.values(family_matching_number(f)?) {
            out.push(Instance { family: f, k });
        }
    }
    Ok(out)
}

fn compute(inst: &Instance, index: usize, opts: &SweepOptions, ckpt: Option<&Checkpoint>) -> Result<CheckpointEntry> {
    let kind = inst.family.kind();
    let params = inst.family.params();
    let want_char0 = opts.char0_every > 0 && index.is_multiple_of(opts.char0_every);
    let cached = ckpt.and_then(|c| c.get(kind, &params, inst.k));
    if let Some(e) = cached {
        if e.char0.is_some() || !want_char0 {
            return Ok(e.clone());
        }
    }
    let start = Instant::now();
    let ideal = sqf_power(&inst.family.graph()?, inst.k);
    let bundle = match cached {
        Some(e) => e.bundle.clone(),
        None => InvariantBundle::compute(&ideal, opts.field)?.0,
    };
    let char0 = if want_char0 {
        Some(InvariantBundle::compute(&ideal, FieldSpec::rationals())?.0)
    } else {
        None
    };
    let entry = CheckpointEntry {
        family: kind.to_string(),
        params,
        k: inst.k,
        field_char: opts.field.characteristic(),
        bundle,
        char0,
        elapsed_ms: cached.map_or(0.0, |e| e.elapsed_ms) + start.elapsed().as_secs_f64() * 1e3,
    };
    if let Some(c) = ckpt {
        c.record(&entry)?;
    }
    Ok(entry)
}

fn computed_value(inv: Invariant, b: &InvariantBundle) -> Value {
    match inv {
        Invariant::Reg => Value::Int(b.reg as i64),
        Invariant::Depth => Value::Int(b.depth_quotient as i64),
        Invariant::Cm => Value::Bool(b.is_cm),
        Invariant::Linear => Value::Bool(b.linear_resolution),
    }
}

fn run(
    command: String,
    families: &[Family],
    ks: &KSelection,
    invariants: &[Invariant],
    opts: &SweepOptions,
    ckpt: Option<&Checkpoint>,
    keep: impl Fn(&PredictionResult) -> bool + Sync,
) -> Result<VerificationReport> {
    if let Some(c) = ckpt {
        if c.field_char() != opts.field.characteristic() {
            return Err(Error::invalid("checkpoint was opened for a different field"));
        }
    }
    let instances = expand(families, ks, opts.max_n)?;
    let entries: Vec<CheckpointEntry> = instances
        .par_iter()
        .enumerate()
        .map(|(idx, inst)| compute(inst, idx, opts, ckpt))
        .collect::<Result<_>>()?;

    let mut cases = Vec::new();
    let mut checks = Vec::new();
    for (idx, (inst, e)) in instances.iter().zip(&entries).enumerate() {
        let elapsed_ms = opts.timings.then_some(e.elapsed_ms);
        for &inv in invariants {
            let computed = computed_value(inv, &e.bundle);
            for p in predict(inv, inst.family, inst.k)?.into_iter().filter(|p| keep(p)) {
                cases.push(CaseRecord {
                    family: e.family.clone(),
                    params: e.params.clone(),
                    k: e.k,
                    invariant: inv,
                    status: CaseStatus::judge(&p, computed),
                    predicted: p,
                    computed,
                    elapsed_ms,
                });
            }
        }
        // Resumed entries may carry a check this run would not have made.
        let sampled = opts.char0_every > 0 && idx % opts.char0_every == 0;
        if let (true, Some(c0)) = (sampled, &e.char0) {
            checks.push(CharZeroCheck {
                family: e.family.clone(),
                params: e.params.clone(),
                k: e.k,
                agrees: *c0 == e.bundle,
            });
        }
    }
    let config = ReportConfig {
        command,
        field_char: opts.field.characteristic(),
        max_n: opts.max_n,
        char0_every: opts.char0_every,
    };
    Ok(VerificationReport::new(config, cases, checks))
}

/// Checks every prediction, proven and conjectural, for each family
/// instance, each selected `k` and each invariant.
pub fn verify(
    label: &str,
    families: &[Family],
    ks: &KSelection,
    invariants: &[Invariant],
    opts: &SweepOptions,
    ckpt: Option<&Checkpoint>,
) -> Result<VerificationReport> {
    run(format!("verify {label}"), families, ks, invariants, opts, ckpt, |_| true)
}

/// The open conjectures on depth and regularity that the scans target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conjecture {
    /// `depth(R/I(C_n)^[k])` for `k ≥ 2`.
    CycleDepth,
    /// `reg(I(W(C_m))^[k])`.
    WhiskeredCycleRegularity,
    /// `depth(R/I(W(C_m))^[k])`.
    WhiskeredCycleDepth,
}

impl Conjecture {
    pub const ALL: [Conjecture; 3] = [
        Conjecture::CycleDepth,
        Conjecture::WhiskeredCycleRegularity,
        Conjecture::WhiskeredCycleDepth,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Conjecture::CycleDepth => "cycle-depth",
            Conjecture::WhiskeredCycleRegularity => "wcycle-reg",
            Conjecture::WhiskeredCycleDepth => "wcycle-depth",
        }
    }

    pub fn invariant(&self) -> Invariant {
        match self {
            Conjecture::WhiskeredCycleRegularity => Invariant::Reg,
            _ => Invariant::Depth,
        }
    }

    /// Name of the range parameter (`n` for cycles, `m` for whiskered cycles).
    pub fn parameter(&self) -> &'static str {
        match self {
            Conjecture::CycleDepth => "n",
            _ => "m",
        }
    }

    pub fn default_range(&self) -> RangeInclusive<usize> {
        match self {
            Conjecture::CycleDepth => 4..=12,
            _ => 3..=6,
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<&str> = Conjecture::ALL.iter().map(|c| c.name()).collect();
                Error::invalid(format!("unknown conjecture '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

/// Family instances covered by a scan over `range`.
pub fn scan_instances(conj: Conjecture, range: RangeInclusive<usize>) -> Vec<Family> {
    match conj {
        Conjecture::CycleDepth => range.map(|n| Family::Cycle { n }).collect(),
        _ => range.map(|m| Family::WhiskeredCycle { m }).collect(),
    }
}

/// Compares the conjectured value with the computation at every `k` the
/// conjecture speaks about.
pub fn scan(
    conj: Conjecture,
    range: RangeInclusive<usize>,
    opts: &SweepOptions,
    ckpt: Option<&Checkpoint>,
) -> Result<VerificationReport> {
    let families = scan_instances(conj, range);
    for f in &families {
        f.graph()?;
    }
    run(
        format!("scan {conj}"),
        &families,
        &KSelection::All,
        &[conj.invariant()],
        opts,
        ckpt,
        |p| p.status == ProofStatus::Conjectural,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..10").unwrap(), 2..=10);
        assert_eq!(parse_range("2..=10").unwrap(), 2..=10);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn family_sets() {
        let paths = family_set("path", &FamilyRanges { n: Some(2..=4), ..Default::default() }).unwrap();
        assert_eq!(paths.len(), 3);
        let mw = family_set(
            "mwpath",
            &FamilyRanges {
                m: Some(1..=3),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(mw.len(), 2 + 4 + 8);
        // Forests on 1..=4 vertices: 1 + 2 + 3 + 6.
        let forests = family_set(
            "cmforest",
            &FamilyRanges {
                max_tree_vertices: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(forests.len(), 12);
        assert!(family_set("cycle", &FamilyRanges { n: Some(2..=4), ..Default::default() }).is_err());
        assert!(family_set("tree", &FamilyRanges::default()).is_err());
    }

    #[test]
    fn small_sweep() {
        let fams = family_set("path", &FamilyRanges { n: Some(2..=6), ..Default::default() }).unwrap();
        let opts = SweepOptions::default();
        let r = verify("path", &fams, &KSelection::All, &Invariant::ALL, &opts, None).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", r.table());
        assert_eq!(r.count(CaseStatus::Fail), 0);
        assert!(r.count(CaseStatus::Pass) > 0);
        assert!(!r.char0_checks.is_empty());
        assert_eq!(r.char0_disagreements(), 0);
        // Only k in range is kept.
        let r2 = verify("path", &fams, &KSelection::Only(vec![3]), &[Invariant::Reg], &opts, None).unwrap();
        assert!(r2.cases.iter().all(|c| c.k == 3 && c.params == "6"));
    }

    #[test]
    fn cap_refusal() {
        let fams = vec![Family::Cycle { n: 20 }];
        let err = verify("cycle", &fams, &KSelection::All, &[Invariant::Reg], &SweepOptions::default(), None);
        assert!(matches!(err, Err(Error::CapExceeded { got: 20, .. })));
    }

    #[test]
    fn scan_keeps_only_conjectures() {
        let r = scan(Conjecture::CycleDepth, 4..=7, &SweepOptions::default(), None).unwrap();
        assert!(r.cases.iter().all(|c| c.predicted.status == ProofStatus::Conjectural && c.k >= 2));
        assert_eq!(r.exit_code(), 0);
        assert!("cycle".parse::<Conjecture>().is_err());
        assert_eq!("wcycle-reg".parse::<Conjecture>().unwrap(), Conjecture::WhiskeredCycleRegularity);
    }
}
