//! Existence certificates for a smooth hypersurface with a diagonal symmetry of prime order.

use serde::{Deserialize, Serialize};

use super::field::{find_singular_point, projective_point_count, FieldPoly};
use super::weights::WeightSystem;
use super::Budget;
use crate::arith::is_prime;
use crate::{Error, Result};

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Smoothness {
    /// Prime field used by the singular-point search.
    pub q: u64,
    /// True when the exhaustive search over `P^{n+1}(F_q)` ran and found no singular point.
    pub checked: bool,
}

/// A weight system together with an assignment `i -> j(i)` such that every
/// `x_i^{d-1} x_{j(i)}` is semi-invariant of weight `lambda`. The certificate
/// polynomial is `sum_k (k + 1) * monomial_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateJson", into = "CertificateJson")]
pub struct AdmissibilityCertificate {
    pub d: u32,
    pub n: u32,
    pub weights: WeightSystem,
    pub assignment: Vec<usize>,
    pub monomials: Vec<Vec<u32>>,
    pub smoothness: Smoothness,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    schema: u32,
    d: u32,
    n: u32,
    p: u64,
    w: Vec<u64>,
    lambda: u64,
    assignment: Vec<usize>,
    monomials: Vec<Vec<u32>>,
    smoothness: Smoothness,
}

impl TryFrom<CertificateJson> for AdmissibilityCertificate {
    type Error = Error;
    fn try_from(c: CertificateJson) -> Result<Self> {
        if c.schema != CERTIFICATE_SCHEMA {
            return Err(Error::Parse(format!("unsupported certificate schema {}", c.schema)));
        }
        if c.w.iter().any(|&x| x >= c.p) || c.lambda >= c.p {
            return Err(Error::Parse("weights must be reduced modulo p".into()));
        }
        Ok(Self {
            d: c.d,
            n: c.n,
            weights: WeightSystem::new(c.p, c.w, c.lambda)?,
            assignment: c.assignment,
            monomials: c.monomials,
            smoothness: c.smoothness,
        })
    }
}

impl From<AdmissibilityCertificate> for CertificateJson {
    fn from(c: AdmissibilityCertificate) -> Self {
        CertificateJson {
            schema: CERTIFICATE_SCHEMA,
            d: c.d,
            n: c.n,
            p: c.weights.p(),
            w: c.weights.weights().to_vec(),
            lambda: c.weights.lambda(),
            assignment: c.assignment,
            monomials: c.monomials,
            smoothness: c.smoothness,
        }
    }
}

impl AdmissibilityCertificate {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn field_poly(&self) -> FieldPoly {
        certificate_poly(self.smoothness.q, self.weights.weights().len(), &self.monomials)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Combinatorial checks pass and the certificate polynomial has no
    /// singular point over `F_q`.
    Smooth { q: u64 },
    /// Combinatorial checks pass; the field search exceeds the budget.
    CombinatorialOnly {
        q: u64,
        #[serde(with = "crate::json::exact_opt")]
        points: Option<u128>,
    },
    Invalid { reason: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        !matches!(self, Verdict::Invalid { .. })
    }
}

/// `x_i^{d-1} x_{j(i)}` for each `i`, without duplicates, in index order.
pub(crate) fn assignment_monomials(d: u32, assignment: &[usize]) -> Vec<Vec<u32>> {
    let k = assignment.len();
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(k);
    for (i, &j) in assignment.iter().enumerate() {
        let mut e = vec![0u32; k];
        e[i] += d - 1;
        e[j] += 1;
        if !out.contains(&e) {
            out.push(e);
        }
    }
    out
}

pub(crate) fn certificate_poly(q: u64, vars: usize, monomials: &[Vec<u32>]) -> FieldPoly {
    FieldPoly::new(
        q,
        vars,
        monomials.iter().enumerate().map(|(k, e)| (k as u64 + 1, e.clone())),
    )
}

/// Smallest prime `q = 1 (mod p)` not dividing `d (d - 1)` and larger than the
/// number of coefficients, so that the coefficients stay distinct and nonzero
/// and the symmetry is defined over `F_q`.
pub(crate) fn select_field(p: u64, d: u32, coefficients: usize) -> Option<u64> {
    let dd = d as u64 * (d as u64 - 1);
    let mut q = p.checked_add(1)?;
    loop {
        if q > coefficients as u64 && dd % q != 0 && is_prime(q) {
            return Some(q);
        }
        q = q.checked_add(p)?;
    }
}

/// Recomputes every claim of a certificate from scratch.
pub fn verify_certificate(cert: &AdmissibilityCertificate, budget: &Budget) -> Verdict {
    match check_structure(cert) {
        Err(reason) => Verdict::Invalid { reason },
        Ok(()) => {
            let q = cert.smoothness.q;
            let points = projective_point_count(q, cert.weights.weights().len());
            match points {
                Some(pts) if pts <= budget.field_points as u128 => {
                    match find_singular_point(&cert.field_poly()) {
                        None => Verdict::Smooth { q },
                        Some(pt) => Verdict::Invalid {
                            reason: format!("certificate polynomial is singular at {pt:?} over F_{q}"),
                        },
                    }
                }
                _ => Verdict::CombinatorialOnly { q, points },
            }
        }
    }
}

fn check_structure(cert: &AdmissibilityCertificate) -> std::result::Result<(), String> {
    let ws = &cert.weights;
    let d = cert.d;
    let k = ws.weights().len();
    if d < 3 || cert.n < 1 {
        return Err(format!("(d, n) = ({d}, {}) outside d >= 3, n >= 1", cert.n));
    }
    if k != cert.n as usize + 2 {
        return Err(format!("{k} weights for {} coordinates", cert.n as usize + 2));
    }
    if cert.assignment.len() != k {
        return Err(format!(
            "assignment covers {} of {k} indices",
            cert.assignment.len()
        ));
    }
    for (i, &j) in cert.assignment.iter().enumerate() {
        if j >= k {
            return Err(format!("assignment sends {i} to out-of-range index {j}"));
        }
        if ws.partner_weight(d, ws.weights()[i]) != ws.weights()[j] {
            return Err(format!("x_{i}^{} x_{j} does not have weight lambda", d - 1));
        }
    }
    for e in &cert.monomials {
        if e.len() != k {
            return Err(format!("monomial {e:?} has wrong arity"));
        }
        if e.iter().map(|&x| x as u64).sum::<u64>() != d as u64 {
            return Err(format!("monomial {e:?} is not of degree {d}"));
        }
        if ws.weight_of(e) != ws.lambda() {
            return Err(format!("monomial {e:?} does not have weight lambda"));
        }
    }
    if cert.monomials != assignment_monomials(d, &cert.assignment) {
        return Err("monomial family does not match the assignment".into());
    }
    let q = cert.smoothness.q;
    if !is_prime(q) || (d as u64) % q == 0 || q as usize <= cert.monomials.len() {
        return Err(format!("field size {q} is unusable"));
    }
    if (q - 1) % ws.p() != 0 {
        return Err(format!("F_{q} has no primitive {}-th root of unity", ws.p()));
    }
    Ok(())
}
