//! Finite-dimensional calculus of linear relations (multivalued operators).
//!
//! A linear relation between Hilbert spaces `H` and `K` is a linear subspace
//! of the product `H × K`; an operator is the special case with trivial
//! multivalued part. This crate represents every relation by an orthonormal
//! basis of its graph and builds the whole calculus on top of tolerance-aware
//! subspace arithmetic: parts (domain, range, kernel, multivalued part),
//! flips, adjoints `S* = V(S)^⊥`, intersections, spans, compositions and
//! scalar shifts.
//!
//! On top of the calculus sit executable checkers for range-kernel
//! characterizations of mutually adjoint pairs (`characterize`), the
//! block-operator-matrix resolvent criterion and its self-adjoint,
//! skew-adjoint and unitary specializations (`resolvent`), seeded instance
//! generators (`generate`), and a CLI front end (`problem`, `verify`, `cli`)
//! for problem files, theorem-verification campaigns and resolvent norm
//! profiles.

pub mod characterize;
pub mod check;
pub mod cli;
pub mod error;
pub mod generate;
pub mod problem;
pub mod relation;
pub mod resolvent;
pub mod scalar;
pub mod subspace;
pub mod svd;
pub mod verify;

pub use check::{CheckResult, TolerancePolicy};
pub use error::{Error, Result};
pub use relation::{LinearRelation, OperatorSpec, RelationParts};
pub use scalar::{FieldTag, Scalar};
pub use subspace::Subspace;
