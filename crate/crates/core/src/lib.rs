//! Exact computations around the alternating form `σ_λ(y, z) = λ([y, z])`
//! on the degree-one piece of the grading attached to a weighted Dynkin
//! diagram.
//!
//! The pipeline is: [`rootsys`] builds the root system, [`chevalley`] the
//! integral structure constants, [`wdd`] enumerates weighted Dynkin
//! diagrams with their reference metadata, [`grading`] splits the positive
//! roots by weight, [`gram`] assembles the symbolic Gram matrix, and
//! [`pfaffian`] computes its Pfaffian and determinant exactly. The
//! [`admissibility`] module turns all of that into verdicts and
//! conjecture reports.

pub mod admissibility;
pub mod chevalley;
pub mod error;
pub mod field;
pub mod grading;
pub mod gram;
pub mod linalg;
pub mod pfaffian;
pub mod poly;
pub mod rootsys;
pub mod wdd;

pub use admissibility::{
    check_conjecture_k2, check_conjecture_special, k2_decide, unimodular_decide, Budget,
    ConjectureReport, K2Status, K2Verdict, ReportRow, UnimodularStatus, UnimodularVerdict,
    Witness,
};
pub use chevalley::StructureConstants;
pub use error::{Error, Result};
pub use grading::GradedPieces;
pub use gram::GramMatrix;
pub use pfaffian::{det_via_pfaffian, pfaffian, rank_at, SkewPolyMatrix};
pub use poly::{Domain, Monomial, SparsePoly};
pub use rootsys::{CartanType, Family, Root, RootId, RootSystem};
pub use wdd::{Condition, WeightedDiagram};
