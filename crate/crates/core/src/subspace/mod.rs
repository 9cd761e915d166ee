//! Distinguished subspaces of V_{A₁°} and their structure.

pub mod commutant;
pub mod spaces;
pub mod structure;
pub mod vectors;
