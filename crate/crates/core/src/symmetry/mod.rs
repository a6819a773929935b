//! Primes that occur as orders of linear automorphisms, characteristic 0 part.
//!
//! An automorphism of order `p` of a smooth hypersurface over an algebraically
//! closed field of characteristic 0 is diagonalizable, so it is described by a
//! [`WeightSystem`]. A smooth semi-invariant hypersurface exists exactly when
//! every coordinate `x_i` has a partner `x_j` with `x_i^{d-1} x_j` of the
//! semi-invariance weight. Everything computed here is the tame part of the
//! prime set: primes equal to the characteristic are never searched.

mod certificate;
mod field;
mod search;
mod weights;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use certificate::{verify_certificate, AdmissibilityCertificate, Smoothness, Verdict};
pub use field::{find_singular_point, projective_point_count, FieldPoly};
pub use search::{invertible_assignment, prime_admits_order};
pub use weights::WeightSystem;

use crate::arith::{big_pow, big_prime_divisors, prime_divisors};
use crate::invariants::HypersurfaceClass;
use crate::Result;

pub const TAME_CAVEAT: &str = "tame part only: primes equal to the characteristic (wild automorphisms) \
are not searched, so a_tame divides a_{d,n} and may be a proper divisor";

/// Resource limits for the weight search and the finite-field oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of search-tree nodes per prime.
    pub nodes: u64,
    /// Maximum number of projective points scanned by the smoothness oracle.
    pub field_points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            nodes: 10_000_000,
            field_points: 20_000_000,
        }
    }
}

/// Returns `j` with `(d-1) w_i + w_{j(i)} = lambda (mod p)` for every `i`,
/// choosing the smallest `j` each time, or `None` if some `i` has no partner.
pub fn is_admissible(d: u32, ws: &WeightSystem) -> Option<Vec<usize>> {
    let w = ws.weights();
    w.iter()
        .map(|&wi| {
            let target = ws.partner_weight(d, wi);
            w.iter().position(|&wj| wj == target)
        })
        .collect()
}

/// `(d-1)^{n+2} + 1`, an upper bound for every candidate prime.
pub fn search_bound(cls: &HypersurfaceClass) -> BigInt {
    big_pow(cls.degree() as i64 - 1, cls.dim() + 2) + 1
}

/// Primes dividing `d - 1` or some `(1-d)^L - 1` with `1 <= L <= n + 2`.
///
/// A closed value set for `s -> lambda - (d-1) s` is either a fixed-point
/// configuration (`p | d` or `p | d-1`) or contains a cycle whose length is
/// the order of `1 - d` modulo `p`; these are the primes where that order is
/// at most `n + 2`.
pub fn candidate_primes(cls: &HypersurfaceClass) -> Result<Vec<u64>> {
    cls.require_moduli_range()?;
    let d = cls.degree() as i64;
    let mut primes = prime_divisors(d as u64 - 1);
    for len in 1..=cls.dim() + 2 {
        primes.extend(big_prime_divisors(&(big_pow(1 - d, len) - 1))?);
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub p: u64,
    pub certificate: AdmissibilityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeOrderTable {
    pub d: u32,
    pub n: u32,
    pub primes: Vec<PrimeEntry>,
    #[serde(with = "crate::json::exact")]
    pub a_tame: BigUint,
    #[serde(with = "crate::json::exact")]
    pub search_bound: BigInt,
    pub caveat: String,
}

impl PrimeOrderTable {
    pub fn prime_list(&self) -> Vec<u64> {
        self.primes.iter().map(|e| e.p).collect()
    }
}

/// All candidate primes realized by a certificate, searched concurrently.
pub fn tame_prime_set(cls: &HypersurfaceClass, budget: &Budget) -> Result<PrimeOrderTable> {
    let candidates = candidate_primes(cls)?;
    let found: Vec<Option<AdmissibilityCertificate>> = candidates
        .par_iter()
        .map(|&p| prime_admits_order(cls, p, budget))
        .collect::<Result<_>>()?;
    let primes: Vec<PrimeEntry> = candidates
        .iter()
        .zip(found)
        .filter_map(|(&p, cert)| cert.map(|certificate| PrimeEntry { p, certificate }))
        .collect();
    let a_tame = primes
        .iter()
        .fold(BigUint::one(), |acc, e| acc * BigUint::from(e.p));
    Ok(PrimeOrderTable {
        d: cls.degree(),
        n: cls.dim(),
        primes,
        a_tame,
        search_bound: search_bound(cls),
        caveat: TAME_CAVEAT.to_string(),
    })
}
