//! Level-`N` bookkeeping: torsor degrees `|GL_b(Z/N)|` and the hypotheses under
//! which the level-`N` moduli of hypersurfaces is a smooth affine scheme.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{big_upow, factorize};
use crate::invariants::{middle_betti, middle_betti_u64, HypersurfaceClass};
use crate::symmetry::{tame_prime_set, Budget, PrimeOrderTable, TAME_CAVEAT};
use crate::{Error, Result};

/// `|GL_b(Z/N)| = prod_{q^e || N} q^{(e-1) b^2} prod_{i<b} (q^b - q^i)`.
pub fn gl_order(b: u64, modulus: u64) -> Result<BigUint> {
    if modulus < 2 {
        return Err(Error::Invalid(format!("modulus must be >= 2, got {modulus}")));
    }
    if b < 1 {
        return Err(Error::Invalid("rank must be >= 1".into()));
    }
    let mut total = BigUint::one();
    for (q, e) in factorize(modulus) {
        let qb = big_upow(q, b);
        for i in 0..b {
            total *= &qb - big_upow(q, i);
        }
        total *= big_upow(q, (e as u64 - 1) * b * b);
    }
    Ok(total)
}

/// Degree of the forgetful map from level-`N` structures: `|GL_{b_{d,n}}(Z/N)|`.
pub fn torsor_degree(cls: &HypersurfaceClass, modulus: u64) -> Result<BigUint> {
    cls.require_moduli_range()?;
    if cls.is_excluded() {
        return Err(Error::ExcludedCase);
    }
    gl_order(middle_betti_u64(cls)?, modulus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelVerdict {
    SchemeHypothesesMet,
    #[serde(rename = "fails-N-lower-bound")]
    FailsNLowerBound,
    FailsCoprimality,
    ExcludedCase,
}

impl std::fmt::Display for LevelVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LevelVerdict::SchemeHypothesesMet => "scheme-hypotheses-met",
            LevelVerdict::FailsNLowerBound => "fails-N-lower-bound",
            LevelVerdict::FailsCoprimality => "fails-coprimality",
            LevelVerdict::ExcludedCase => "excluded-case",
        })
    }
}

const PLANE_CUBIC_NOTE: &str = "plane cubics: the stack is still uniformisable (through \
level-3 structures on elliptic curves), but the level-N stack is not a scheme; not computed here";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub d: u32,
    pub n: u32,
    pub level: u64,
    #[serde(with = "crate::json::exact")]
    pub b: BigInt,
    /// `|GL_b(Z/N)|`; absent for the excluded case and for `N = 1`.
    #[serde(with = "crate::json::exact_opt")]
    pub torsor_degree: Option<BigUint>,
    /// Tame part of `a_{d,n}`; computed only when the coprimality check is reached.
    #[serde(with = "crate::json::exact_opt")]
    pub a_tame: Option<BigUint>,
    pub tame_primes: Option<Vec<u64>>,
    pub verdict: LevelVerdict,
    /// Always set: coprimality is only checked against the tame primes.
    pub wild_caveat: bool,
    pub caveat: String,
    pub note: Option<String>,
}

/// Checks `(d, n) != (3, 1)`, `N >= 3` and `gcd(N, a_tame) = 1`, in that order.
/// The check is one-sided: meeting the hypotheses is sufficient, failing them
/// decides nothing.
pub fn level_scheme_hypotheses(
    cls: &HypersurfaceClass,
    level: u64,
    budget: &Budget,
) -> Result<LevelReport> {
    level_scheme_hypotheses_with(cls, level, || tame_prime_set(cls, budget))
}

/// As [`level_scheme_hypotheses`], with the prime table supplied by the caller
/// (for instance from a certificate store).
pub fn level_scheme_hypotheses_with(
    cls: &HypersurfaceClass,
    level: u64,
    table: impl FnOnce() -> Result<PrimeOrderTable>,
) -> Result<LevelReport> {
    cls.require_moduli_range()?;
    if level < 1 {
        return Err(Error::Invalid("level must be >= 1".into()));
    }
    let b = middle_betti(cls);
    let mut report = LevelReport {
        d: cls.degree(),
        n: cls.dim(),
        level,
        b,
        torsor_degree: None,
        a_tame: None,
        tame_primes: None,
        verdict: LevelVerdict::ExcludedCase,
        wild_caveat: true,
        caveat: TAME_CAVEAT.to_string(),
        note: None,
    };
    if cls.is_excluded() {
        report.note = Some(PLANE_CUBIC_NOTE.to_string());
        return Ok(report);
    }
    if level >= 2 {
        report.torsor_degree = Some(torsor_degree(cls, level)?);
    }
    if level < 3 {
        report.verdict = LevelVerdict::FailsNLowerBound;
        return Ok(report);
    }
    let table = table()?;
    if (table.d, table.n) != (cls.degree(), cls.dim()) {
        return Err(Error::Invalid(format!(
            "prime table is for (d={}, n={}), expected {cls}",
            table.d, table.n
        )));
    }
    let coprime = BigUint::from(level).gcd(&table.a_tame).is_one();
    report.verdict = if coprime {
        LevelVerdict::SchemeHypothesesMet
    } else {
        LevelVerdict::FailsCoprimality
    };
    report.tame_primes = Some(table.prime_list());
    report.a_tame = Some(table.a_tame);
    Ok(report)
}
