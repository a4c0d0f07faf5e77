//! Cayley graphs on dihedral groups and their metric dimension.
//!
//! * [`dihedral`]: element algebra in `D_2n`, connection sets, generating tests.
//! * [`cayley`]: `Cay(D_2n, S)` construction and export.
//! * [`metric`]: resolving sets and an exact metric-dimension solver.
//! * [`structure`]: cycle / prism / Möbius-ladder recognition.
//! * [`classifier`]: closed-form test for metric dimension two, plus predicted values.
//! * [`verify`]: exhaustive classifier-versus-solver cross-checks.

pub mod cayley;
pub mod classifier;
pub mod dihedral;
pub mod error;
pub mod graph;
pub mod metric;
pub mod structure;
pub mod verify;

pub use cayley::{CayleyDocument, CayleyGraph, ExportFormat};
pub use classifier::{classify_dim2, predicted_dimension, CaseLabel, Classification, Prediction};
pub use dihedral::{closure, ConnectionSet, DihedralElement, Kind};
pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, UNREACHABLE};
pub use metric::{
    dim2_basis_properties, is_resolving, metric_dimension_exact, DimensionResult,
    ResolvingCertificate, SearchConfig,
};
pub use structure::{isomorphic, recognize, StructureKind, StructureVerdict};
pub use verify::{enumerate_connection_sets, verify_range, VerificationReport};
