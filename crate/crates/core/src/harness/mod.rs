//! Verification sweeps, conjecture scans and randomized identity suites.
//!
//! A sweep computes the invariants of `I(G)^[k]` for every family instance
//! and every `k`, then checks each applicable prediction from
//! [`crate::formulas`] on its own. Instances run in the current rayon pool;
//! results are assembled in input order, so reports do not depend on the
//! thread count.

mod checkpoint;
mod identities;
mod report;
mod sweep;

pub use checkpoint::{Checkpoint, CheckpointEntry};
pub use identities::{
    run_identities, run_identity_trial, Identity, IdentityCase, IdentityConfig, IdentityReport,
};
pub use report::{CaseRecord, CaseStatus, CharZeroCheck, ReportConfig, VerificationReport};
pub use sweep::{
    default_range, family_set, parse_range, scan, scan_instances, verify, Conjecture, FamilyRanges,
    KSelection, SweepOptions,
};

/// Schema version written into every JSON report.
pub const REPORT_SCHEMA: u32 = 1;
