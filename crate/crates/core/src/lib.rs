//! Exact variation-of-GIT computations for a torus acting linearly on
//! affine space: semistable loci, the chamber fan, stabilizer censuses of
//! the stack quotients, quasimap degree cones, and a checker for the
//! duality `A(θ) = relint(NE(θ)^∨)` between GIT classes and degree cones.
//!
//! All arithmetic is exact; there are no tolerances anywhere.

pub mod cone;
pub mod corpus;
mod error;
mod fan;
pub mod git;
mod linalg;
pub mod quasimap;
pub mod snf;
pub mod vector;

pub use cone::{Cone, Containment};
pub use error::{Error, Result};
pub use fan::{FanCone, GitFan};
pub use git::{
    Character, ChargeMatrix, Stabilizer, StackCensus, Stratum, Support, SupportFamily, ToricGit,
};
pub use quasimap::{
    hm_weight, limit_exists, ne_cone, positivity_check, verify_kleiman, witness_negative,
    Cocharacter, KleimanVerifier, PointVerdict, QuasimapDatum, TestSetPolicy, VerificationReport,
};
pub use vector::{IntVec, RatVec};
