use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{Invariant, PredictionKind, PredictionResult, ProofStatus, Value};

use super::REPORT_SCHEMA;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Pass,
    BoundOk,
    Skipped,
    CounterexampleCandidate,
    Fail,
}

impl CaseStatus {
    pub const ALL: [CaseStatus; 5] = [
        CaseStatus::Pass,
        CaseStatus::BoundOk,
        CaseStatus::Skipped,
        CaseStatus::CounterexampleCandidate,
        CaseStatus::Fail,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseStatus::Pass => "pass",
            CaseStatus::BoundOk => "bound-ok",
            CaseStatus::Skipped => "skipped",
            CaseStatus::CounterexampleCandidate => "counterexample-candidate",
            CaseStatus::Fail => "fail",
        }
    }

    /// Verdict for one prediction against a computed value.
    ///
    /// Only proven statements can fail; a conjecture that disagrees with the
    /// computation is a counterexample candidate.
    pub fn judge(p: &PredictionResult, computed: Value) -> CaseStatus {
        match (p.agrees(computed), &p.kind, p.status) {
            (None, _, _) => CaseStatus::Skipped,
            (Some(true), PredictionKind::Interval { .. }, _) => CaseStatus::BoundOk,
            (Some(true), _, _) => CaseStatus::Pass,
            (Some(false), _, ProofStatus::Proven) => CaseStatus::Fail,
            (Some(false), _, ProofStatus::Conjectural) => CaseStatus::CounterexampleCandidate,
        }
    }
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One prediction checked against one computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub family: String,
    pub params: String,
    pub k: usize,
    pub invariant: Invariant,
    pub predicted: PredictionResult,
    pub computed: Value,
    pub status: CaseStatus,
    /// Wall time of the instance computation, only when timings are requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Whether characteristic 0 reproduced the invariants of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharZeroCheck {
    pub family: String,
    pub params: String,
    pub k: usize,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    /// What was run, e.g. `verify path` or `scan cycle-depth`.
    pub command: String,
    pub field_char: u32,
    pub max_n: usize,
    /// Every `char0_every`-th instance is recomputed over the rationals; 0 disables.
    pub char0_every: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub config: ReportConfig,
    pub cases: Vec<CaseRecord>,
    pub char0_checks: Vec<CharZeroCheck>,
    pub summary: BTreeMap<String, usize>,
}

impl VerificationReport {
    pub fn new(config: ReportConfig, cases: Vec<CaseRecord>, char0_checks: Vec<CharZeroCheck>) -> Self {
        let mut summary: BTreeMap<String, usize> =
            CaseStatus::ALL.iter().map(|s| (s.name().to_string(), 0)).collect();
        for c in &cases {
            *summary.get_mut(c.status.name()).expect("all statuses present") += 1;
        }
        VerificationReport {
            schema: REPORT_SCHEMA,
            config,
            cases,
            char0_checks,
            summary,
        }
    }

    pub fn count(&self, status: CaseStatus) -> usize {
        self.summary.get(status.name()).copied().unwrap_or(0)
    }

    pub fn char0_disagreements(&self) -> usize {
        self.char0_checks.iter().filter(|c| !c.agrees).count()
    }

    /// 0 when everything held, 2 on a proven-formula failure, otherwise 3 on
    /// a conjecture counterexample candidate.
    pub fn exit_code(&self) -> i32 {
        if self.count(CaseStatus::Fail) > 0 {
            2
        } else if self.count(CaseStatus::CounterexampleCandidate) > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record([
            "family", "params", "k", "invariant", "predicted", "proof", "source", "computed", "status",
            "elapsed_ms",
        ])
        .map_err(csv_err)?;
        for c in &self.cases {
            let elapsed = c.elapsed_ms.map(|t| format!("{t:.3}")).unwrap_or_default();
            w.write_record([
                c.family.as_str(),
                c.params.as_str(),
                &c.k.to_string(),
                c.invariant.name(),
                &predicted_text(&c.predicted),
                proof_text(&c.predicted),
                c.predicted.source.as_str(),
                &c.computed.to_string(),
                c.status.name(),
                &elapsed,
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Fixed-width table followed by the status counts.
    pub fn table(&self) -> String {
        let header = ["family", "params", "k", "invariant", "predicted", "computed", "status", "source"];
        let rows: Vec<[String; 8]> = self
            .cases
            .iter()
            .map(|c| {
                [
                    c.family.clone(),
                    c.params.clone(),
                    c.k.to_string(),
                    c.invariant.name().to_string(),
                    predicted_text(&c.predicted),
                    c.computed.to_string(),
                    c.status.name().to_string(),
                    c.predicted.source.clone(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[&str]| -> String {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    s.push_str(&format!("{cell:<w$}  "));
                }
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = line(&header);
        for r in &rows {
            let cells: Vec<&str> = r.iter().map(String::as_str).collect();
            out.push_str(&line(&cells));
        }
        out.push_str(&self.summary_line());
        out.push('\n');
        out
    }

    pub fn summary_line(&self) -> String {
        let mut parts: Vec<String> = CaseStatus::ALL
            .iter()
            .map(|s| format!("{} {}", self.count(*s), s.name()))
            .collect();
        if !self.char0_checks.is_empty() {
            parts.push(format!(
                "char 0 agreement {}/{}",
                self.char0_checks.len() - self.char0_disagreements(),
                self.char0_checks.len()
            ));
        }
        format!("{} cases: {}", self.cases.len(), parts.join(", "))
    }
}

fn predicted_text(p: &PredictionResult) -> String {
    match &p.kind {
        PredictionKind::Exact { value } => value.to_string(),
        PredictionKind::Interval { lo, hi } => format!("[{lo},{hi}]"),
        PredictionKind::NotCovered => "-".to_string(),
    }
}

fn proof_text(p: &PredictionResult) -> &'static str {
    match (&p.kind, p.status) {
        (PredictionKind::NotCovered, _) => "",
        (_, ProofStatus::Proven) => "proven",
        (_, ProofStatus::Conjectural) => "conjectural",
    }
}
