use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_inv};
use crate::{Error, Result};

/// Diagonal automorphism of prime order `p`: coordinate `x_i` is scaled by
/// `zeta^{w_i}` and the defining form by `zeta^lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWeights", into = "RawWeights")]
pub struct WeightSystem {
    p: u64,
    w: Vec<u64>,
    lambda: u64,
}

#[derive(Serialize, Deserialize)]
struct RawWeights {
    p: u64,
    w: Vec<u64>,
    lambda: u64,
}

impl TryFrom<RawWeights> for WeightSystem {
    type Error = Error;
    fn try_from(r: RawWeights) -> Result<Self> {
        if r.w.iter().any(|&x| x >= r.p) || r.lambda >= r.p {
            return Err(Error::Invalid("weights must be reduced modulo p".into()));
        }
        WeightSystem::new(r.p, r.w, r.lambda)
    }
}

impl From<WeightSystem> for RawWeights {
    fn from(ws: WeightSystem) -> Self {
        RawWeights {
            p: ws.p,
            w: ws.w,
            lambda: ws.lambda,
        }
    }
}

impl WeightSystem {
    /// Reduces all residues modulo `p`. Rejects composite `p` and constant
    /// weight vectors (those induce the identity of projective space).
    pub fn new(p: u64, w: Vec<u64>, lambda: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let w: Vec<u64> = w.into_iter().map(|x| x % p).collect();
        if w.len() < 2 || w.iter().all(|&x| x == w[0]) {
            return Err(Error::Invalid(
                "weight vector must be non-constant with at least 2 entries".into(),
            ));
        }
        Ok(Self {
            p,
            w,
            lambda: lambda % p,
        })
    }

    pub(crate) fn new_unchecked(p: u64, w: Vec<u64>, lambda: u64) -> Self {
        Self { p, w, lambda }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn weights(&self) -> &[u64] {
        &self.w
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// Weight of a monomial with the given exponent vector.
    pub fn weight_of(&self, exponents: &[u32]) -> u64 {
        let p = self.p as u128;
        exponents
            .iter()
            .zip(&self.w)
            .fold(0u128, |acc, (&e, &w)| (acc + e as u128 * w as u128) % p) as u64
    }

    /// Target weight `lambda - (d-1) w_i` that `x_j` must carry for
    /// `x_i^{d-1} x_j` to be semi-invariant.
    pub(crate) fn partner_weight(&self, d: u32, wi: u64) -> u64 {
        partner(self.p, d, self.lambda, wi)
    }

    /// `w -> u w + c`, `lambda -> u lambda + d c`, which preserves admissibility
    /// for every unit `u`.
    pub fn reparametrize(&self, d: u32, u: u64, c: u64) -> Result<Self> {
        let p = self.p as u128;
        if (u as u128) % p == 0 {
            return Err(Error::Invalid("scaling factor must be a unit".into()));
        }
        let map = |x: u64| ((u as u128 * x as u128 + c as u128) % p) as u64;
        let lambda = ((u as u128 * self.lambda as u128 + d as u128 % p * (c as u128 % p)) % p) as u64;
        Ok(Self::new_unchecked(
            self.p,
            self.w.iter().map(|&x| map(x)).collect(),
            lambda,
        ))
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        Self::new_unchecked(self.p, perm.iter().map(|&i| self.w[i]).collect(), self.lambda)
    }

    /// Orbit representative under permutations and reparametrizations: the
    /// lexicographically least `(lambda, sorted w)`. When `p` does not divide
    /// `d` every orbit meets `lambda = 0`, so the representative has `lambda = 0`.
    pub fn canonical(&self, d: u32) -> Self {
        let p = self.p;
        let mut best: Option<(u64, Vec<u64>)> = None;
        let d_mod = d as u64 % p;
        for u in 1..p {
            // With p ∤ d the shift is forced by lambda' = 0.
            let shifts: Vec<u64> = if d_mod == 0 {
                (0..p).collect()
            } else {
                let ul = (u as u128 * self.lambda as u128 % p as u128) as u64;
                let c = (((p - ul) % p) as u128 * mod_inv(d_mod, p) as u128 % p as u128) as u64;
                vec![c]
            };
            for c in shifts {
                let Ok(img) = self.reparametrize(d, u, c) else {
                    continue;
                };
                let mut w = img.w;
                w.sort_unstable();
                let key = (img.lambda, w);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        let (lambda, w) = best.expect("p >= 2 gives a nonempty orbit");
        Self::new_unchecked(p, w, lambda)
    }

    pub fn is_canonical(&self, d: u32) -> bool {
        *self == self.canonical(d)
    }
}

pub(crate) fn partner(p: u64, d: u32, lambda: u64, wi: u64) -> u64 {
    let p128 = p as u128;
    let dm1 = (d as u128 - 1) % p128;
    ((lambda as u128 + p128 * p128 - dm1 * wi as u128) % p128) as u64
}
