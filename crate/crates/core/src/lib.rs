//! Square-free powers of edge ideals.
//!
//! Builds the square-free (matching) powers `I(G)^[k]` of edge ideals of
//! finite simple graphs and computes their graded Betti tables, regularity,
//! projective dimension, depth, Krull dimension and Cohen–Macaulayness by
//! exact linear algebra over a prime field or over the rationals.
//!
//! * [`graphs`]: graphs, named families, matchings and admissible matchings.
//! * [`ideals`]: square-free monomial ideals, square-free powers, colon ideals.
//! * [`simplicial`]: simplicial complexes, exact rank and reduced homology.
//! * [`homalg`]: Betti tables (three independent routes) and derived invariants.
//! * [`formulas`]: closed-form predictions for the graph families.
//! * [`harness`]: verification sweeps, conjecture scans and identity suites.

pub mod error;
pub mod formulas;
pub mod graphs;
pub mod harness;
pub mod homalg;
pub mod ideals;
pub mod simplicial;

pub(crate) mod bits;

pub use error::{Error, Result};
pub use formulas::{PredictionKind, PredictionResult, ProofStatus};
pub use graphs::{Family, Graph, Matching};
pub use homalg::{BettiTable, InvariantBundle};
pub use ideals::{SqfIdeal, SqfMonomial};
pub use simplicial::{FieldSpec, HomologyProfile, SimplicialComplex};
