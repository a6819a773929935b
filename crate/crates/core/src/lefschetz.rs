//! Fixed-locus profiles of tame linear automorphisms and the trace-formula audit.
//!
//! A tame automorphism `sigma` of `X` splits the linear forms into `t >= 2`
//! eigenspaces of dimensions `m_1, ..., m_t` summing to `n + 2`. The fixed
//! locus is the disjoint union of `X ∩ P(V_i)`, and each piece is either a
//! smooth degree-`d` hypersurface in `P^{m_i - 1}`, the whole of
//! `P^{m_i - 1}`, or empty. If `sigma` acted trivially on cohomology the
//! Lefschetz trace formula would force `chi(X) = chi(X^sigma)`. This module
//! enumerates every such profile and checks that the equality never holds
//! outside plane cubics, together with the inequality chain that rules it out
//! by hand.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::big_pow;
use crate::invariants::{euler_characteristic, hypersurface_euler_in, HypersurfaceClass};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusKind {
    /// `X ∩ P(V)` is a smooth degree-`d` hypersurface of `P(V)`.
    Hypersurface,
    /// `P(V) ⊂ X`.
    Linear,
    /// `X ∩ P(V) = ∅`; only possible for a point, since a hypersurface meets every line.
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocusPart {
    pub kind: LocusKind,
    pub m: u32,
}

impl LocusPart {
    pub fn new(kind: LocusKind, m: u32) -> Self {
        Self { kind, m }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.kind.cmp(&other.kind).then(other.m.cmp(&self.m))
    }
}

impl fmt::Display for LocusPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            LocusKind::Hypersurface => "H",
            LocusKind::Linear => "L",
            LocusKind::Empty => "E",
        };
        write!(f, "{tag}{}", self.m)
    }
}

/// Eigenspace profile of a nontrivial tame automorphism, parts in canonical
/// order (kind, then dimension descending).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<LocusPart>", into = "Vec<LocusPart>")]
pub struct FixedLocusProfile {
    parts: Vec<LocusPart>,
}

impl FixedLocusProfile {
    /// Validates and canonicalizes. The ambient dimension is `sum(m) - 2`.
    pub fn new(mut parts: Vec<LocusPart>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::Invalid(format!(
                "a nontrivial automorphism has at least 2 eigenspaces, got {}",
                parts.len()
            )));
        }
        for part in &parts {
            let ok = match part.kind {
                LocusKind::Hypersurface => part.m >= 2,
                LocusKind::Linear => part.m >= 1,
                LocusKind::Empty => part.m == 1,
            };
            if !ok {
                return Err(Error::Invalid(format!("inadmissible part {part}")));
            }
        }
        parts.sort_by(LocusPart::canonical_cmp);
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[LocusPart] {
        &self.parts
    }

    /// Sum of the eigenspace dimensions, `n + 2`.
    pub fn total(&self) -> u32 {
        self.parts.iter().map(|p| p.m).sum()
    }

    pub fn t(&self) -> usize {
        self.parts.len()
    }

    /// Number of hypersurface pieces.
    pub fn r(&self) -> usize {
        self.count(LocusKind::Hypersurface)
    }

    /// Number of nonempty pieces.
    pub fn s(&self) -> usize {
        self.t() - self.count(LocusKind::Empty)
    }

    fn count(&self, kind: LocusKind) -> usize {
        self.parts.iter().filter(|p| p.kind == kind).count()
    }
}

impl TryFrom<Vec<LocusPart>> for FixedLocusProfile {
    type Error = Error;

    fn try_from(parts: Vec<LocusPart>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<FixedLocusProfile> for Vec<LocusPart> {
    fn from(p: FixedLocusProfile) -> Self {
        p.parts
    }
}

impl fmt::Display for FixedLocusProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Partitions of `total` into parts `>= min`, each listed in descending order.
fn partitions(total: u32, min: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (min..=max.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, min.max(1), &mut Vec::new(), &mut out);
    out
}

/// Every canonical profile with `t >= 2` for the class, without duplicates.
pub fn enumerate_profiles(cls: &HypersurfaceClass) -> Result<Vec<FixedLocusProfile>> {
    cls.require_moduli_range()?;
    let total = cls.vars() as u32;
    let mut out = Vec::new();
    for hyp_total in 0..=total {
        for empty_count in 0..=total - hyp_total {
            let lin_total = total - hyp_total - empty_count;
            for hyp in partitions(hyp_total, 2) {
                for lin in partitions(lin_total, 1) {
                    if hyp.len() + lin.len() + (empty_count as usize) < 2 {
                        continue;
                    }
                    let parts = hyp
                        .iter()
                        .map(|&m| LocusPart::new(LocusKind::Hypersurface, m))
                        .chain(lin.iter().map(|&m| LocusPart::new(LocusKind::Linear, m)))
                        .chain((0..empty_count).map(|_| LocusPart::new(LocusKind::Empty, 1)))
                        .collect();
                    out.push(FixedLocusProfile::new(parts)?);
                }
            }
        }
    }
    Ok(out)
}

/// `chi(X^sigma)` for a list of pieces. Accepts any list, including the
/// single-part profile of the identity and degenerate `Hypersurface(1)` parts.
pub fn profile_euler(d: u32, parts: &[LocusPart]) -> BigInt {
    parts
        .iter()
        .map(|p| match p.kind {
            LocusKind::Hypersurface => hypersurface_euler_in(d, p.m),
            LocusKind::Linear => BigInt::from(p.m),
            LocusKind::Empty => BigInt::from(0),
        })
        .sum()
}

/// Both sides of the rearranged trace-formula identity
/// `(1-d)^{n+2} = 1 - r - d(t-s) + sum_{hypersurface parts} (1-d)^{m_i}`.
pub fn rearranged_sides(d: u32, parts: &[LocusPart]) -> (BigInt, BigInt) {
    let total: u32 = parts.iter().map(|p| p.m).sum();
    let base = 1 - d as i64;
    let lhs = big_pow(base, total);
    let mut rhs = BigInt::one();
    for p in parts {
        match p.kind {
            LocusKind::Hypersurface => rhs += big_pow(base, p.m) - 1,
            LocusKind::Linear => {}
            LocusKind::Empty => rhs -= BigInt::from(d),
        }
    }
    (lhs, rhs)
}

/// One line of the trace-formula audit: `lhs = chi(X)`, `rhs = chi(X^sigma)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub d: u32,
    pub n: u32,
    pub profile: FixedLocusProfile,
    #[serde(with = "crate::json::exact")]
    pub lhs: BigInt,
    #[serde(with = "crate::json::exact")]
    pub rhs: BigInt,
    pub solution: bool,
}

/// Evaluates every profile both directly and through the rearranged identity.
pub fn audit_profiles(cls: &HypersurfaceClass) -> Result<Vec<ProfileRecord>> {
    let chi = euler_characteristic(cls);
    let d = cls.degree();
    enumerate_profiles(cls)?
        .into_iter()
        .map(|profile| {
            let rhs = profile_euler(d, profile.parts());
            let direct = chi == rhs;
            let (l4, r4) = rearranged_sides(d, profile.parts());
            if direct != (l4 == r4) {
                return Err(Error::Inconsistent(format!(
                    "{cls} {profile}: chi equality is {direct} but rearranged identity is {}",
                    l4 == r4
                )));
            }
            Ok(ProfileRecord {
                d,
                n: cls.dim(),
                profile,
                lhs: chi.clone(),
                rhs,
                solution: direct,
            })
        })
        .collect()
}

/// Profiles whose fixed locus has the same Euler characteristic as `X`,
/// i.e. those compatible with `sigma` acting trivially on cohomology.
pub fn trivial_action_solutions(cls: &HypersurfaceClass) -> Result<Vec<FixedLocusProfile>> {
    Ok(audit_profiles(cls)?
        .into_iter()
        .filter(|r| r.solution)
        .map(|r| r.profile)
        .collect())
}

/// Per-class outcome of the full audit: trace-formula solutions plus the
/// inequality chain (or the fixed-point count for curves) on every profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub d: u32,
    pub n: u32,
    pub profiles: usize,
    pub solutions: Vec<FixedLocusProfile>,
    /// Profiles whose inequality record does not pass.
    pub inequality_failures: Vec<FixedLocusProfile>,
    #[serde(with = "crate::json::exact_opt")]
    pub curve_fixed_points: Option<BigInt>,
}

impl AuditSummary {
    /// No solutions and every inequality record passes, except for plane
    /// cubics where solutions are expected.
    pub fn as_expected(&self) -> bool {
        if self.d == 3 && self.n == 1 {
            !self.solutions.is_empty()
        } else {
            self.solutions.is_empty() && self.inequality_failures.is_empty()
        }
    }
}

pub fn audit_summary(cls: &HypersurfaceClass) -> Result<(AuditSummary, Vec<ProfileRecord>)> {
    let records = audit_profiles(cls)?;
    let mut inequality_failures = Vec::new();
    let mut curve_fixed_points = None;
    for r in &records {
        let audit = inequality_audit(cls, &r.profile)?;
        if let InequalityAudit::Curve { fixed_points, .. } = &audit {
            curve_fixed_points = Some(fixed_points.clone());
        }
        if !audit.passes() {
            inequality_failures.push(r.profile.clone());
        }
    }
    let summary = AuditSummary {
        d: cls.degree(),
        n: cls.dim(),
        profiles: records.len(),
        solutions: records.iter().filter(|r| r.solution).map(|r| r.profile.clone()).collect(),
        inequality_failures,
        curve_fixed_points,
    };
    Ok((summary, records))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum InequalityAudit {
    /// `n >= 2`. With `x = d - 1`:
    /// `deviation = |1 - r - d(t-s) + sum (1-d)^{m_i}|`,
    /// `bound = t - 1 + sum_i x^{m_i}`, `top = x^{n+2}`.
    Chain {
        #[serde(with = "crate::json::exact")]
        deviation: BigInt,
        #[serde(with = "crate::json::exact")]
        bound: BigInt,
        #[serde(with = "crate::json::exact")]
        top: BigInt,
        /// `deviation <= bound`
        deviation_le_bound: bool,
        /// `4 (n + 2) <= x^{n+2}`
        dimension_quarter: bool,
        /// `4 sum_i x^{m_i} <= 3 x^{n+2}`
        power_sum_three_quarters: bool,
        /// `4 bound <= 4 top - 4`, hence `bound < top`
        bound_lt_top: bool,
    },
    /// `n = 1`: the trace formula counts fixed points, `#X^sigma = 2 - (d-1)(d-2)`.
    Curve {
        #[serde(with = "crate::json::exact")]
        fixed_points: BigInt,
        negative: bool,
    },
}

impl InequalityAudit {
    /// Whether the record excludes a trivially acting automorphism with this profile.
    pub fn passes(&self) -> bool {
        match self {
            InequalityAudit::Chain {
                deviation_le_bound,
                dimension_quarter,
                power_sum_three_quarters,
                bound_lt_top,
                deviation,
                top,
                ..
            } => {
                *deviation_le_bound
                    && *dimension_quarter
                    && *power_sum_three_quarters
                    && *bound_lt_top
                    && deviation < top
            }
            InequalityAudit::Curve { negative, .. } => *negative,
        }
    }
}

pub fn inequality_audit(
    cls: &HypersurfaceClass,
    profile: &FixedLocusProfile,
) -> Result<InequalityAudit> {
    cls.require_moduli_range()?;
    if profile.total() as usize != cls.vars() {
        return Err(Error::Invalid(format!(
            "profile {profile} sums to {}, expected {}",
            profile.total(),
            cls.vars()
        )));
    }
    let d = cls.degree() as i64;
    let n = cls.dim();
    if n == 1 {
        let fixed_points = BigInt::from(2 - (d - 1) * (d - 2));
        let negative = fixed_points.is_negative();
        return Ok(InequalityAudit::Curve {
            fixed_points,
            negative,
        });
    }

    let x = d - 1;
    let (_, rhs) = rearranged_sides(cls.degree(), profile.parts());
    let deviation = rhs.abs();
    let power_sum: BigInt = profile.parts().iter().map(|p| big_pow(x, p.m)).sum();
    let bound = BigInt::from(profile.t() as i64 - 1) + &power_sum;
    let top = big_pow(x, n + 2);
    let four = BigInt::from(4);

    Ok(InequalityAudit::Chain {
        deviation_le_bound: deviation <= bound,
        dimension_quarter: &four * BigInt::from(n + 2) <= top,
        power_sum_three_quarters: &four * &power_sum <= BigInt::from(3) * &top,
        bound_lt_top: &four * &bound <= &four * &top - &four,
        deviation,
        bound,
        top,
    })
}

#[cfg(test)]
mod tests {
    use super::LocusKind::*;
    use super::*;

    fn cls(d: u32, n: u32) -> HypersurfaceClass {
        HypersurfaceClass::new(d, n).unwrap()
    }

    fn profile(parts: &[(LocusKind, u32)]) -> FixedLocusProfile {
        FixedLocusProfile::new(parts.iter().map(|&(k, m)| LocusPart::new(k, m)).collect()).unwrap()
    }

    #[test]
    fn profile_validation() {
        assert!(FixedLocusProfile::new(vec![LocusPart::new(Linear, 3)]).is_err());
        assert!(FixedLocusProfile::new(vec![
            LocusPart::new(Hypersurface, 1),
            LocusPart::new(Linear, 2)
        ])
        .is_err());
        assert!(FixedLocusProfile::new(vec![
            LocusPart::new(Empty, 2),
            LocusPart::new(Linear, 2)
        ])
        .is_err());
        let p = profile(&[(Empty, 1), (Linear, 1), (Hypersurface, 2), (Linear, 3)]);
        assert_eq!(p.to_string(), "[H2 L3 L1 E1]");
        assert_eq!((p.t(), p.r(), p.s()), (4, 1, 3));
    }

    #[test]
    fn profile_euler_examples() {
        assert_eq!(profile_euler(3, profile(&[(Hypersurface, 3), (Empty, 1)]).parts()), 0.into());
        assert_eq!(profile_euler(5, profile(&[(Linear, 2), (Linear, 3)]).parts()), 5.into());
        assert_eq!(
            profile_euler(4, profile(&[(Hypersurface, 2), (Empty, 1), (Empty, 1)]).parts()),
            4.into()
        );
    }

    #[test]
    fn identity_profile_recovers_chi() {
        for d in 3..=7 {
            for n in 1..=6 {
                let c = cls(d, n);
                let whole = [LocusPart::new(Hypersurface, n + 2)];
                assert_eq!(profile_euler(d, &whole), euler_characteristic(&c));
            }
        }
    }

    #[test]
    fn degenerate_hypersurface_point_matches_empty_point() {
        let h1 = [LocusPart::new(Hypersurface, 1)];
        let e1 = [LocusPart::new(Empty, 1)];
        for d in 3..=9 {
            assert_eq!(profile_euler(d, &h1), profile_euler(d, &e1));
            assert_eq!(rearranged_sides(d, &h1).1, rearranged_sides(d, &e1).1);
        }
    }

    #[test]
    fn plane_cubic_solutions() {
        let sols = trivial_action_solutions(&cls(3, 1)).unwrap();
        assert!(sols.contains(&profile(&[(Empty, 1), (Empty, 1), (Empty, 1)])));
        let (l, r) = rearranged_sides(3, profile(&[(Empty, 1), (Empty, 1), (Empty, 1)]).parts());
        assert_eq!((l, r), (BigInt::from(-8), BigInt::from(-8)));
    }

    #[test]
    fn no_solutions_examples() {
        for (d, n) in [(4, 1), (3, 2), (5, 4)] {
            assert!(trivial_action_solutions(&cls(d, n)).unwrap().is_empty(), "({d},{n})");
        }
    }

    #[test]
    fn rejects_small_classes() {
        assert!(enumerate_profiles(&cls(2, 2)).is_err());
        assert!(enumerate_profiles(&cls(3, 0)).is_err());
        assert!(trivial_action_solutions(&cls(2, 3)).is_err());
    }

    #[test]
    fn inequality_examples() {
        let a = inequality_audit(&cls(3, 2), &profile(&[(Linear, 1); 4])).unwrap();
        match &a {
            InequalityAudit::Chain { deviation, top, .. } => {
                assert_eq!(*deviation, 1.into());
                assert_eq!(*top, 16.into());
            }
            _ => panic!("expected chain"),
        }
        assert!(a.passes());
        let b = inequality_audit(&cls(3, 2), &profile(&[(Hypersurface, 3), (Empty, 1)])).unwrap();
        match &b {
            InequalityAudit::Chain { deviation, .. } => assert_eq!(*deviation, 11.into()),
            _ => panic!("expected chain"),
        }
        assert!(b.passes());
        let c = inequality_audit(&cls(4, 1), &profile(&[(Linear, 2), (Empty, 1)])).unwrap();
        assert_eq!(
            c,
            InequalityAudit::Curve {
                fixed_points: (-4).into(),
                negative: true
            }
        );
        let wrong_size = inequality_audit(&cls(4, 2), &profile(&[(Linear, 2), (Empty, 1)]));
        assert!(wrong_size.is_err());
    }

    #[test]
    fn profile_json_shape() {
        let p = profile(&[(Empty, 1), (Hypersurface, 2)]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"[{"kind":"hypersurface","m":2},{"kind":"empty","m":1}]"#);
        let back: FixedLocusProfile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<FixedLocusProfile>(r#"[{"kind":"empty","m":3}]"#).is_err());
    }
}
