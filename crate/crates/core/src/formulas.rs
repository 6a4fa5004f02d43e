//! Closed-form predictions of regularity, depth, Cohen–Macaulayness and
//! linear resolutions for the named graph families.
//!
//! Every applicable statement is returned separately, proven results and
//! conjectures alike, so callers can check each one on its own. Arbitrary
//! graphs get [`PredictionKind::NotCovered`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{matching_number, Family, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    Reg,
    Depth,
    Cm,
    Linear,
}

impl Invariant {
    pub const ALL: [Invariant; 4] = [Invariant::Reg, Invariant::Depth, Invariant::Cm, Invariant::Linear];

    pub fn name(&self) -> &'static str {
        match self {
            Invariant::Reg => "reg",
            Invariant::Depth => "depth",
            Invariant::Cm => "cm",
            Invariant::Linear => "linear",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "reg" | "regularity" => Ok(Invariant::Reg),
            "depth" => Ok(Invariant::Depth),
            "cm" => Ok(Invariant::Cm),
            "linear" | "lin" => Ok(Invariant::Linear),
            other => Err(Error::invalid(format!("unknown invariant '{other}'"))),
        }
    }
}

/// A computed or predicted value: an integer invariant or a yes/no property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofStatus {
    Proven,
    Conjectural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PredictionKind {
    Exact { value: Value },
    Interval { lo: i64, hi: i64 },
    NotCovered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionResult {
    #[serde(flatten)]
    pub kind: PredictionKind,
    pub status: ProofStatus,
    pub source: String,
}

impl PredictionResult {
    fn exact(v: i64, status: ProofStatus, source: &str) -> Self {
        PredictionResult {
            kind: PredictionKind::Exact { value: Value::Int(v) },
            status,
            source: source.to_string(),
        }
    }

    fn truth(b: bool, status: ProofStatus, source: &str) -> Self {
        PredictionResult {
            kind: PredictionKind::Exact { value: Value::Bool(b) },
            status,
            source: source.to_string(),
        }
    }

    fn interval(lo: i64, hi: i64, source: &str) -> Self {
        debug_assert!(lo <= hi, "{source}: [{lo}, {hi}]");
        PredictionResult {
            kind: PredictionKind::Interval { lo, hi },
            status: ProofStatus::Proven,
            source: source.to_string(),
        }
    }

    pub fn not_covered() -> Self {
        PredictionResult {
            kind: PredictionKind::NotCovered,
            status: ProofStatus::Proven,
            source: "no formula for this family".to_string(),
        }
    }

    /// Whether `computed` agrees with the prediction; `None` when nothing is predicted.
    pub fn agrees(&self, computed: Value) -> Option<bool> {
        match (&self.kind, computed) {
            (PredictionKind::Exact { value }, c) => Some(*value == c),
            (PredictionKind::Interval { lo, hi }, Value::Int(v)) => Some(*lo <= v && v <= *hi),
            (PredictionKind::Interval { .. }, Value::Bool(_)) => Some(false),
            (PredictionKind::NotCovered, _) => None,
        }
    }
}

impl fmt::Display for PredictionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            ProofStatus::Proven => "proven",
            ProofStatus::Conjectural => "conjectural",
        };
        match &self.kind {
            PredictionKind::Exact { value } => write!(f, "{value} ({status}: {})", self.source),
            PredictionKind::Interval { lo, hi } => write!(f, "[{lo}, {hi}] ({status}: {})", self.source),
            PredictionKind::NotCovered => write!(f, "not covered"),
        }
    }
}

use ProofStatus::{Conjectural, Proven};

#[inline]
fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

#[inline]
fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Matching number of a family instance.
pub fn family_matching_number(f: &Family) -> Result<usize> {
    Ok(match f {
        Family::Path { n } | Family::Cycle { n } => n / 2,
        Family::WhiskeredPath { m } | Family::WhiskeredCycle { m } | Family::MultiWhiskeredCycle { m, .. } => *m,
        Family::MultiWhiskeredPath { r } => r.len(),
        Family::CmForest { m, .. } => *m,
        Family::Custom { graph, .. } => matching_number(graph),
    })
}

fn check_k(f: &Family, k: usize) -> Result<usize> {
    let nu = family_matching_number(f)?;
    if k == 0 || k > nu {
        return Err(Error::invalid(format!("k = {k} outside 1..={nu} for {f}")));
    }
    Ok(nu)
}

/// Shapes that share formulas.
enum Shape {
    Path(i64),
    Cycle(i64),
    /// Path `x_1..x_m` with at least one whisker at every vertex.
    WhiskeredPathClass(i64),
    /// Cycle with whiskers at `x_2..x_m` and `r` at `x_1`; `r = 1` is `W(C_m)`.
    WhiskeredCycleClass { m: i64, r: usize },
    /// `W(T)` for a forest `T` on `m` vertices that is not a path.
    CmForest(i64),
    Other,
}

fn is_path_shaped(t: &Graph) -> bool {
    let n = t.n();
    n >= 1 && t.edge_count() + 1 == n && t.is_forest() && (0..n).all(|v| t.degree(v) <= 2)
}

fn shape(f: &Family) -> Shape {
    match f {
        Family::Path { n } => Shape::Path(*n as i64),
        Family::Cycle { n } => Shape::Cycle(*n as i64),
        Family::WhiskeredPath { m } => Shape::WhiskeredPathClass(*m as i64),
        Family::MultiWhiskeredPath { r } => Shape::WhiskeredPathClass(r.len() as i64),
        Family::WhiskeredCycle { m } => Shape::WhiskeredCycleClass { m: *m as i64, r: 1 },
        Family::MultiWhiskeredCycle { m, r } => Shape::WhiskeredCycleClass { m: *m as i64, r: *r },
        Family::CmForest { m, .. } => match f.cm_forest_base() {
            Some(t) if is_path_shaped(&t) => Shape::WhiskeredPathClass(*m as i64),
            _ => Shape::CmForest(*m as i64),
        },
        Family::Custom { .. } => Shape::Other,
    }
}

/// `W(T)` for a forest `T`: the Cohen–Macaulay forests.
fn is_cm_forest(f: &Family) -> bool {
    match f {
        Family::WhiskeredPath { .. } | Family::CmForest { .. } => true,
        Family::MultiWhiskeredPath { r } => r.iter().all(|&x| x == 1),
        _ => false,
    }
}

fn or_not_covered(v: Vec<PredictionResult>) -> Vec<PredictionResult> {
    if v.is_empty() {
        vec![PredictionResult::not_covered()]
    } else {
        v
    }
}

/// Regularity predictions for `I(G)^[k]`.
pub fn predict_regularity(f: &Family, k: usize) -> Result<Vec<PredictionResult>> {
    let nu = check_k(f, k)? as i64;
    let k = k as i64;
    let mut out = Vec::new();
    let top = |out: &mut Vec<PredictionResult>| {
        if k == nu {
            out.push(PredictionResult::exact(2 * k, Proven, "top square-free power has linear quotients"));
        }
    };
    match shape(f) {
        Shape::Path(n) => {
            out.push(PredictionResult::exact(2 * k + floor_div(n - 2 * k, 3), Proven, "path regularity formula"));
            top(&mut out);
        }
        Shape::Cycle(n) => {
            out.push(PredictionResult::exact(2 * k + floor_div(n - 2 * k, 3), Proven, "cycle regularity formula"));
            out.push(PredictionResult::interval(
                2 * k + floor_div(n - 2 * k - 1, 3),
                2 * k + floor_div(n - 2 * k, 3),
                "cycle regularity bounds",
            ));
            top(&mut out);
        }
        Shape::WhiskeredPathClass(m) => {
            out.push(PredictionResult::exact(
                2 * k + floor_div(m - k, 2),
                Proven,
                "multi-whiskered path regularity formula",
            ));
            top(&mut out);
        }
        Shape::WhiskeredCycleClass { m, r } => {
            if k >= 2 {
                out.push(PredictionResult::interval(
                    2 * k + floor_div(m - k - 1, 2),
                    2 * k + floor_div(m - k, 2),
                    "multi-whiskered cycle regularity bounds",
                ));
            }
            if k == 2 {
                out.push(PredictionResult::exact(
                    4 + floor_div(m - 3, 2),
                    Proven,
                    "multi-whiskered cycle second power regularity",
                ));
            }
            if m == 3 {
                out.push(PredictionResult::exact(2 * k, Proven, "co-chordal graph"));
            }
            if r == 1 {
                if k == 1 {
                    out.push(PredictionResult::exact(floor_div(m, 2) + 1, Proven, "whiskered cycle edge ideal regularity"));
                }
                // At k = m the floor term is read as 0: a literal -1 would put the
                // regularity below the generator degree 2k.
                out.push(PredictionResult::exact(
                    2 * k + floor_div(m - k - 1, 2).max(0),
                    Conjectural,
                    "whiskered cycle regularity conjecture",
                ));
            }
            top(&mut out);
        }
        Shape::CmForest(_) => top(&mut out),
        Shape::Other => {}
    }
    Ok(or_not_covered(out))
}

/// Depth predictions for `R/I(G)^[k]`.
pub fn predict_depth(f: &Family, k: usize) -> Result<Vec<PredictionResult>> {
    let nu = check_k(f, k)? as i64;
    let k = k as i64;
    let mut out = Vec::new();
    let is_custom = matches!(f, Family::Custom { .. });
    if k == nu && !is_custom {
        out.push(PredictionResult::exact(2 * k - 1, Proven, "top square-free power is polymatroidal"));
    }
    let cm_forest = |m: i64, out: &mut Vec<PredictionResult>| {
        out.push(PredictionResult::exact(m + k - 1, Proven, "CM forest depth formula"));
    };
    match (shape(f), f) {
        (Shape::Path(n), _) => {
            let c = ceil_div(n, 3);
            let v = if k <= c { c + k - 1 } else { 2 * k - 1 };
            out.push(PredictionResult::exact(v, Proven, "path depth formula"));
        }
        (Shape::Cycle(n), _) => {
            let c = ceil_div(n, 3);
            if k == 1 {
                out.push(PredictionResult::exact(ceil_div(n - 1, 3), Proven, "cycle edge ideal depth"));
            } else {
                out.push(PredictionResult::interval(c + k - 1, n - 1, "cycle depth lower bound"));
                if k == 2 {
                    out.push(PredictionResult::exact(c + 1, Proven, "cycle second power depth"));
                }
                let v = if k <= c { c + k - 1 } else { 2 * k - 1 };
                out.push(PredictionResult::exact(v, Conjectural, "cycle depth conjecture"));
            }
            if n % 2 == 0 && k == nu - 1 && k >= 1 {
                out.push(PredictionResult::exact(2 * k - 1, Proven, "even cycle depth below the top power"));
            }
        }
        (Shape::WhiskeredPathClass(m), _) | (Shape::CmForest(m), _) if is_cm_forest(f) => cm_forest(m, &mut out),
        (Shape::WhiskeredCycleClass { m, r: 1 }, _) => {
            if k == 1 {
                out.push(PredictionResult::exact(m, Proven, "whisker graphs are Cohen-Macaulay"));
            }
            if k == 2 {
                out.push(PredictionResult::exact(
                    if m == 3 { 3 } else { m + 1 },
                    Proven,
                    "whiskered cycle second power depth",
                ));
            }
            out.push(PredictionResult::interval(2 * k - 1, m + k - 1, "whiskered cycle depth upper bound"));
            let v = if k <= floor_div(m, 2) { m + k - 1 } else { 2 * k - 1 };
            out.push(PredictionResult::exact(v, Conjectural, "whiskered cycle depth conjecture"));
        }
        _ => {}
    }
    Ok(or_not_covered(out))
}

/// Cohen–Macaulay predictions for `R/I(G)^[k]`.
pub fn predict_cm(f: &Family, k: usize) -> Result<Vec<PredictionResult>> {
    check_k(f, k)?;
    let mut out = Vec::new();
    match (shape(f), f) {
        _ if is_cm_forest(f) => {
            out.push(PredictionResult::truth(true, Proven, "square-free powers of CM forests are CM"));
        }
        (Shape::WhiskeredCycleClass { r: 1, .. }, _) if k == 1 => {
            out.push(PredictionResult::truth(true, Proven, "whisker graphs are Cohen-Macaulay"));
        }
        _ => {}
    }
    Ok(or_not_covered(out))
}

/// Linear-resolution predictions for `I(G)^[k]`, derived from the regularity
/// statements: an exact value decides the question, an interval decides it
/// when it lies entirely above `2k` or pins it to `2k`.
pub fn predict_linear_resolution(f: &Family, k: usize) -> Result<Vec<PredictionResult>> {
    let nu = check_k(f, k)? as i64;
    let mut out = Vec::new();
    if let Shape::Cycle(n) = shape(f) {
        let k = k as i64;
        let linear = k == nu || (n % 2 == 0 && k == nu - 1);
        out.push(PredictionResult::truth(linear, Proven, "cycle linear resolution criterion"));
    }
    let twice_k = 2 * k as i64;
    for p in predict_regularity(f, k)? {
        if p.status != Proven {
            continue;
        }
        let decided = match p.kind {
            PredictionKind::Exact { value: Value::Int(v) } => Some(v == twice_k),
            PredictionKind::Interval { lo, .. } if lo > twice_k => Some(false),
            PredictionKind::Interval { hi, .. } if hi == twice_k => Some(true),
            _ => None,
        };
        if let Some(b) = decided {
            out.push(PredictionResult::truth(b, Proven, &format!("from {}", p.source)));
        }
    }
    Ok(or_not_covered(out))
}

/// Dispatches on the invariant.
pub fn predict(inv: Invariant, f: &Family, k: usize) -> Result<Vec<PredictionResult>> {
    match inv {
        Invariant::Reg => predict_regularity(f, k),
        Invariant::Depth => predict_depth(f, k),
        Invariant::Cm => predict_cm(f, k),
        Invariant::Linear => predict_linear_resolution(f, k),
    }
}
