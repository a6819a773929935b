//! Euler characteristic and middle Betti number of a smooth hypersurface.
//!
//! For a smooth hypersurface `X` of degree `d` in `P^{n+1}` the cohomology
//! outside the middle degree is that of projective space (rank one in even
//! degrees, zero in odd degrees), so the Euler characteristic determines the
//! middle Betti number.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::big_pow;
use crate::{Error, Result};

/// A smooth degree-`d` hypersurface class in `P^{n+1}`.
///
/// Degrees 1 and 2 and dimension 0 are admitted so that the formulas can be
/// checked against projective spaces, quadrics and point sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HypersurfaceClass {
    d: u32,
    n: u32,
}

impl HypersurfaceClass {
    pub fn new(d: u32, n: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::Invalid(format!("degree must be >= 1, got {d}")));
        }
        Ok(Self { d, n })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    /// Number of homogeneous coordinates, `n + 2`.
    pub fn vars(&self) -> usize {
        self.n as usize + 2
    }

    /// Rejects classes outside `d >= 3, n >= 1`, the range where the
    /// automorphism and moduli statements apply.
    pub fn require_moduli_range(&self) -> Result<()> {
        if self.d < 3 || self.n < 1 {
            return Err(Error::Invalid(format!(
                "requires d >= 3 and n >= 1, got (d, n) = ({}, {})",
                self.d, self.n
            )));
        }
        Ok(())
    }

    /// Plane cubics, the one case where a nontrivial automorphism can act trivially.
    pub fn is_excluded(&self) -> bool {
        self.d == 3 && self.n == 1
    }

    pub fn invariants(&self) -> InvariantRecord {
        InvariantRecord {
            chi: euler_characteristic(self),
            b_middle: middle_betti(self),
        }
    }
}

impl std::fmt::Display for HypersurfaceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(d={}, n={})", self.d, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    #[serde(with = "crate::json::exact")]
    pub chi: BigInt,
    #[serde(with = "crate::json::exact")]
    pub b_middle: BigInt,
}

/// `m + ((1 - d)^m - 1) / d`: the Euler characteristic of a smooth degree-`d`
/// hypersurface in `P^{m-1}`. The division is exact because `1 - d = 1 (mod d)`.
pub(crate) fn hypersurface_euler_in(d: u32, m: u32) -> BigInt {
    let d_big = BigInt::from(d);
    let numer: BigInt = big_pow(1 - d as i64, m) - 1;
    let (q, r) = numer.div_rem(&d_big);
    assert!(r.is_zero(), "{d} does not divide (1-{d})^{m} - 1");
    BigInt::from(m) + q
}

/// `chi(X) = n + 2 + ((1 - d)^{n+2} - 1) / d`.
pub fn euler_characteristic(cls: &HypersurfaceClass) -> BigInt {
    hypersurface_euler_in(cls.d, cls.n + 2)
}

/// Independent route to `chi(X)` through the total Chern class: `d` times the
/// coefficient of `h^n` in `(1 + h)^{n+2} / (1 + d h)`.
pub fn chern_euler_oracle(cls: &HypersurfaceClass) -> BigInt {
    let n = cls.n as usize;
    let d = BigInt::from(cls.d);

    // (1 + h)^{n+2} truncated at h^n
    let mut binom = vec![BigInt::zero(); n + 1];
    binom[0] = BigInt::from(1);
    for _ in 0..n + 2 {
        for k in (1..=n).rev() {
            let prev = binom[k - 1].clone();
            binom[k] += prev;
        }
    }
    // 1 / (1 + d h) = sum (-d)^k h^k
    let mut geom = Vec::with_capacity(n + 1);
    let mut term = BigInt::from(1);
    for _ in 0..=n {
        geom.push(term.clone());
        term *= -&d;
    }
    let coeff: BigInt = (0..=n).map(|k| &binom[k] * &geom[n - k]).sum();
    d * coeff
}

/// Rank of `H^n`: `chi - n` for even `n`, `n + 1 - chi` for odd `n`.
pub fn middle_betti(cls: &HypersurfaceClass) -> BigInt {
    let chi = euler_characteristic(cls);
    let n = BigInt::from(cls.n);
    let b = if cls.n % 2 == 0 { chi - n } else { n + 1 - chi };
    debug_assert!(!b.is_negative());
    b
}

/// Middle Betti number as a machine integer, for matrix sizes.
pub(crate) fn middle_betti_u64(cls: &HypersurfaceClass) -> Result<u64> {
    middle_betti(cls)
        .to_u64()
        .ok_or_else(|| Error::Invalid(format!("middle Betti number of {cls} exceeds 64 bits")))
}
