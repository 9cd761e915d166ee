//! Exact computations in the rank-one lattice generalized vertex algebra
//! V_{A₁°} = ⊕_r M(1, rϖ), its principal subalgebras W = ⟨e^α⟩ and
//! W° = ⟨e^ϖ⟩, and the commutant C = Com(W, V_{A₁}).
//!
//! Every coefficient is an exact rational; every check is a literal equality
//! of canonical vectors on a finite graded slice.

pub mod combinatorics;
pub mod error;
pub mod fock;
pub mod graded;
pub mod grammar;
pub mod identities;
pub mod jet;
pub mod linalg;
pub mod qseries;
pub mod report;
pub mod scalar;
pub mod subspace;
pub mod vertex;
pub mod zhu;

pub use error::{Error, Result};
pub use fock::{FockMonomial, FockVector};
pub use scalar::{ExactScalar, HalfInt, LatticeElement};
