//! Exact-arithmetic toolkit for smooth projective hypersurfaces.
//!
//! The crate computes the cohomological invariants of a smooth degree-`d`
//! hypersurface in `P^{n+1}`, audits the fixed-point argument showing that
//! tame linear automorphisms act faithfully on middle cohomology, searches
//! for the primes that occur as orders of linear automorphisms in
//! characteristic zero, and does the numeric bookkeeping for level-`N`
//! structures on the moduli of hypersurfaces.
//!
//! Every quantity is an exact integer; nothing in the crate uses floating
//! point.

pub mod arith;
pub mod cli;
mod error;
pub mod invariants;
pub mod json;
pub mod lefschetz;
pub mod moduli;
pub mod store;
pub mod symmetry;
pub mod torsion;

pub use error::{Error, Result};
pub use invariants::{
    chern_euler_oracle, euler_characteristic, middle_betti, HypersurfaceClass, InvariantRecord,
};
pub use lefschetz::{
    enumerate_profiles, inequality_audit, profile_euler, trivial_action_solutions, FixedLocusProfile,
    InequalityAudit, LocusKind, LocusPart,
};
pub use moduli::{gl_order, level_scheme_hypotheses, torsor_degree, LevelReport, LevelVerdict};
pub use symmetry::{
    candidate_primes, is_admissible, prime_admits_order, tame_prime_set, verify_certificate,
    AdmissibilityCertificate, Budget, PrimeOrderTable, Verdict, WeightSystem,
};
pub use torsion::{
    matrix_order, minkowski_serre_check, random_finite_order_matrix, MsVerdict, SquareIntegerMatrix,
};
