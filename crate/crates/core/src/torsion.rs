//! Finite-order integer matrices and the Minkowski–Serre rigidity check.
//!
//! A finite-order integer matrix congruent to the identity modulo `N >= 3`
//! is the identity. For `N = 2` the statement fails (`-I`). The order of a
//! matrix is decided exactly: the characteristic polynomial must be a product
//! of cyclotomic polynomials, and then `A` has finite order iff `A^L = I` for
//! `L` the lcm of their indices (semisimplicity over `Q`).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::factorize;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Rows", into = "Rows")]
pub struct SquareIntegerMatrix {
    rows: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Rows(#[serde(with = "crate::json::exact_rows")] Vec<Vec<BigInt>>);

impl TryFrom<Rows> for SquareIntegerMatrix {
    type Error = Error;
    fn try_from(r: Rows) -> Result<Self> {
        SquareIntegerMatrix::new(r.0)
    }
}

impl From<SquareIntegerMatrix> for Rows {
    fn from(m: SquareIntegerMatrix) -> Self {
        Rows(m.rows)
    }
}

impl SquareIntegerMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid(format!("matrix with {dim} rows is not square")));
        }
        Ok(Self { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Parses a JSON array of rows of integers.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("integer rows always serialize")
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell += a * &other.rows[k][j];
                }
            }
        }
        Self { rows }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn trace(&self) -> BigInt {
        (0..self.dim()).map(|i| self.rows[i][i].clone()).sum()
    }

    /// Whether `A = I (mod modulus)`.
    pub fn congruent_to_identity(&self, modulus: u64) -> bool {
        let m = BigInt::from(modulus);
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| {
                let target = if i == j { BigInt::one() } else { BigInt::zero() };
                (x - target).mod_floor(&m).is_zero()
            })
        })
    }

    /// Coefficients of `det(x I - A)`, constant term first.
    pub fn charpoly(&self) -> Vec<BigInt> {
        // Faddeev–LeVerrier; the divisions by k are exact over Z.
        let n = self.dim();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self {
            rows: vec![vec![BigInt::zero(); n]; n],
        };
        for k in 1..=n {
            m = self.mul(&m);
            for i in 0..n {
                m.rows[i][i] += &coeffs[n - k + 1];
            }
            let (q, r) = (-self.mul(&m).trace()).div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[n - k] = q;
        }
        coeffs
    }
}

type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division by a monic polynomial; `None` if the remainder is nonzero.
fn div_exact(num: &Poly, den: &Poly) -> Option<Poly> {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for shift in (0..quot.len()).rev() {
        let c = rem[shift + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[shift + i] -= &c * dc;
        }
        quot[shift] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

fn totient(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

/// `Phi_m` as integer coefficients, constant term first.
pub fn cyclotomic(m: u64, cache: &mut HashMap<u64, Poly>) -> Poly {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for e in 1..m {
        if m % e == 0 {
            let phi_e = cyclotomic(e, cache);
            poly = div_exact(&poly, &phi_e).expect("x^m - 1 is divisible by Phi_e for e | m");
        }
    }
    cache.insert(m, poly.clone());
    poly
}

/// Indices `m` (with multiplicity) such that the characteristic polynomial is
/// the product of the `Phi_m`, or `None` if it is not a product of cyclotomics.
fn cyclotomic_factors(charpoly: &Poly) -> Option<Vec<u64>> {
    let dim = (charpoly.len() - 1) as u64;
    let mut rest = charpoly.clone();
    let mut cache = HashMap::new();
    let mut found = Vec::new();
    // totient(m) >= sqrt(m / 2), so totient(m) <= dim forces m <= 2 dim^2
    for m in 1..=2 * dim * dim + 2 {
        if totient(m) > dim {
            continue;
        }
        let phi = cyclotomic(m, &mut cache);
        while rest.len() > 1 {
            match div_exact(&rest, &phi) {
                Some(q) => {
                    rest = q;
                    found.push(m);
                }
                None => break,
            }
        }
    }
    (rest.len() == 1 && rest[0].is_one()).then_some(found)
}

/// Multiplicative order of `A`, or `None` if it is infinite.
pub fn matrix_order(a: &SquareIntegerMatrix) -> Option<u64> {
    let factors = cyclotomic_factors(&a.charpoly())?;
    let cap = factors.iter().fold(1u64, |acc, &m| acc.lcm(&m));
    if !a.pow(cap).is_identity() {
        return None;
    }
    let mut order = cap;
    for (p, _) in factorize(cap) {
        while order % p == 0 && a.pow(order / p).is_identity() {
            order /= p;
        }
    }
    Some(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MsVerdict {
    /// `A = I`.
    Identity { order: u64 },
    /// `A` is not congruent to `I`; nothing to check.
    NotCongruent { order: u64 },
    /// `N >= 3`, `A = I (mod N)` but `A != I`. Never expected.
    Violation { order: u64, matrix: SquareIntegerMatrix },
    /// `N = 2`, `A = I (mod 2)` with `A != I`: the statement fails modulo 2.
    Mod2Counterexample { order: u64, matrix: SquareIntegerMatrix },
}

impl MsVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, MsVerdict::Violation { .. })
    }
}

pub fn minkowski_serre_check(a: &SquareIntegerMatrix, modulus: u64) -> Result<MsVerdict> {
    if modulus < 2 {
        return Err(Error::Invalid(format!("modulus must be >= 2, got {modulus}")));
    }
    let order = matrix_order(a)
        .ok_or_else(|| Error::Invalid("matrix has infinite order".into()))?;
    if !a.congruent_to_identity(modulus) {
        return Ok(MsVerdict::NotCongruent { order });
    }
    if a.is_identity() {
        return Ok(MsVerdict::Identity { order });
    }
    let matrix = a.clone();
    Ok(if modulus == 2 {
        MsVerdict::Mod2Counterexample { order, matrix }
    } else {
        MsVerdict::Violation { order, matrix }
    })
}

fn companion(poly: &Poly) -> Vec<Vec<BigInt>> {
    let k = poly.len() - 1;
    let mut rows = vec![vec![BigInt::zero(); k]; k];
    for i in 1..k {
        rows[i][i - 1] = BigInt::one();
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[k - 1] = -&poly[i];
    }
    rows
}

/// `U D U^{-1}` with `D` block-diagonal in cyclotomic companion matrices and
/// `U` a product of elementary integer operations. Deterministic in `(dim, seed)`.
pub fn random_finite_order_matrix(dim: usize, seed: u64) -> Result<SquareIntegerMatrix> {
    if dim == 0 || dim > 8 {
        return Err(Error::Invalid(format!("dimension must be in 1..=8, got {dim}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((dim as u64) << 56));
    let mut cache = HashMap::new();
    let orders: Vec<u64> = (1..=30).filter(|&m| totient(m) <= 8).collect();

    let mut d = SquareIntegerMatrix::identity(dim);
    let mut at = 0;
    while at < dim {
        let room = (dim - at) as u64;
        let fits: Vec<u64> = orders.iter().copied().filter(|&m| totient(m) <= room).collect();
        let m = fits[rng.gen_range(0..fits.len())];
        let block = companion(&cyclotomic(m, &mut cache));
        for (i, row) in block.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                d.rows[at + i][at + j] = x.clone();
            }
        }
        at += block.len();
    }

    let mut u = SquareIntegerMatrix::identity(dim);
    let mut u_inv = SquareIntegerMatrix::identity(dim);
    if dim > 1 {
        for _ in 0..2 * dim {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            let c = BigInt::from([-2i64, -1, 1, 2][rng.gen_range(0..4)]);
            // U <- U (I + c e_ij): column j += c * column i
            for row in u.rows.iter_mut() {
                let add = &row[i] * &c;
                row[j] += add;
            }
            // U^{-1} <- (I - c e_ij) U^{-1}: row i -= c * row j
            let sub: Vec<BigInt> = u_inv.rows[j].iter().map(|x| x * &c).collect();
            for (x, s) in u_inv.rows[i].iter_mut().zip(sub) {
                *x -= s;
            }
        }
    }
    debug_assert!(u.mul(&u_inv).is_identity());
    Ok(u.mul(&d).mul(&u_inv))
}

/// Largest absolute entry, for reporting.
pub fn max_entry(a: &SquareIntegerMatrix) -> BigInt {
    a.rows
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap_or_default()
}
