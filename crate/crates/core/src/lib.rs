//! Radon transforms and their duals on coset spaces of finite groups, with exact
//! rational arithmetic throughout.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: Cayley tables, subgroups, coset spaces and canonical projections.
//! * [`linalg`]: exact rational matrices, rank, nullspace and inverse.
//! * [`measure`]: Haar measures, rho-functions and quotient integral formulas.
//! * [`functions`]: `P_H`, `T_H`, invariant subspaces and convolution.
//! * [`radon`]: nested and general Radon transforms, their duals and matrices.
//! * [`operators`]: named operators and their matrices.
//! * [`transport`]: the isomorphisms induced by conjugate subgroups.
//! * [`circle`]: the `C^×` example evaluated in floating point.
//! * [`verify`]: the claim suite, reports and output formats.

pub mod circle;
pub mod error;
pub mod functions;
pub mod group;
pub mod linalg;
pub mod measure;
pub mod operators;
pub mod par;
pub mod radon;
pub mod random;
pub mod transport;
pub mod verify;

pub use error::{Error, Result};
pub use functions::{GroupFunction, InvariantSubspace, QuotientFunction};
pub use group::{CosetSpace, FiniteGroup, GroupSpec, Subgroup};
pub use linalg::{Matrix, Rational};
pub use measure::{HaarConvention, QuotientMeasure, RhoFunction};
pub use operators::{operator_matrix, OperatorKind, OperatorSpec};
pub use par::Execution;
pub use radon::{GeneralRadon, NestedRadon, OperatorMatrix};
pub use transport::{ConjugacyWitness, Transport};
pub use verify::{run_suite, Family, SuiteConfig, VerificationReport};
