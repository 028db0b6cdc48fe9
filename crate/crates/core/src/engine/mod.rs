//! Stabilizer-group algebra: codewords, logical operators and distance.

pub mod codewords;
pub mod distance;
pub mod group;
pub mod logicals;
pub mod report;

pub use codewords::{codeword_zero, codeword_zero_sparse, logical_basis, logical_basis_state};
pub use distance::{distance_kl_oracle, distance_symplectic, DistanceOutcome};
pub use group::StabilizerGroup;
pub use logicals::{find_logical_set, verify_logical_set, LogicalReport, LogicalSet, LogicalViolation};
pub use report::{verify_code, Verdict, VerificationReport, VerifyOptions};
