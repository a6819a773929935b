//! Exhaustive search over canonical diagonal weight systems modulo a prime.
//!
//! A weight vector is admissible exactly when its set of values is closed
//! under `s -> lambda - (d-1) s`, so the depth-first search over sorted
//! vectors keeps the forward closure of the values chosen so far and
//! abandons a prefix as soon as that closure cannot fit in the remaining
//! slots.

use std::collections::BTreeSet;

use super::certificate::{
    assignment_monomials, certificate_poly, select_field, AdmissibilityCertificate, Smoothness,
};
use super::field::{find_singular_point, projective_point_count};
use super::weights::{partner, WeightSystem};
use super::Budget;
use crate::invariants::HypersurfaceClass;
use crate::{Error, Result};

struct Search<'a> {
    d: u32,
    p: u64,
    lambda: u64,
    k: usize,
    budget: &'a Budget,
    nodes: u64,
    saw_admissible: bool,
    prefix: Vec<u64>,
}

enum Step {
    Found(Box<AdmissibilityCertificate>),
    Continue,
}

impl Search<'_> {
    fn closure(&self, values: &BTreeSet<u64>) -> Option<BTreeSet<u64>> {
        let mut out = values.clone();
        let mut frontier: Vec<u64> = values.iter().copied().collect();
        while let Some(s) = frontier.pop() {
            let t = partner(self.p, self.d, self.lambda, s);
            if out.insert(t) {
                if out.len() > self.k {
                    return None;
                }
                frontier.push(t);
            }
        }
        Some(out)
    }

    fn feasible(&self) -> bool {
        let present: BTreeSet<u64> = self.prefix.iter().copied().collect();
        let Some(closed) = self.closure(&present) else {
            return false;
        };
        let last = self.prefix.last().copied().unwrap_or(0);
        let missing = closed.difference(&present).copied().collect::<Vec<_>>();
        // sorted prefix: nothing below `last` can be added later
        if missing.iter().any(|&m| m < last) {
            return false;
        }
        missing.len() <= self.k - self.prefix.len()
    }

    fn dfs(&mut self) -> Result<Step> {
        self.nodes += 1;
        if self.nodes > self.budget.nodes {
            return Err(Error::Budget(format!(
                "weight search for p = {} exceeded {} nodes",
                self.p, self.budget.nodes
            )));
        }
        if !self.feasible() {
            return Ok(Step::Continue);
        }
        if self.prefix.len() == self.k {
            return self.leaf();
        }
        let start = self.prefix.last().copied().unwrap_or(0);
        for v in start..self.p {
            self.prefix.push(v);
            let step = self.dfs()?;
            self.prefix.pop();
            if let Step::Found(c) = step {
                return Ok(Step::Found(c));
            }
        }
        Ok(Step::Continue)
    }

    fn leaf(&mut self) -> Result<Step> {
        let w = &self.prefix;
        if w.iter().all(|&x| x == w[0]) {
            return Ok(Step::Continue);
        }
        let ws = WeightSystem::new_unchecked(self.p, w.clone(), self.lambda);
        if !ws.is_canonical(self.d) {
            return Ok(Step::Continue);
        }
        self.saw_admissible = true;
        let Some(assignment) = invertible_assignment(self.d, &ws) else {
            return Ok(Step::Continue);
        };
        let monomials = assignment_monomials(self.d, &assignment);
        let q = select_field(self.p, self.d, monomials.len())
            .ok_or_else(|| Error::Budget(format!("no usable field for p = {}", self.p)))?;
        let checked = match projective_point_count(q, self.k) {
            Some(pts) if pts <= self.budget.field_points as u128 => {
                if find_singular_point(&certificate_poly(q, self.k, &monomials)).is_some() {
                    return Ok(Step::Continue);
                }
                true
            }
            _ => false,
        };
        Ok(Step::Found(Box::new(AdmissibilityCertificate {
            d: self.d,
            n: (self.k - 2) as u32,
            weights: ws,
            assignment,
            monomials,
            smoothness: Smoothness { q, checked },
        })))
    }
}

/// An assignment in which every index is the target of at most one other
/// index. The monomials `x_i^{d-1} x_{j(i)}` then split into Fermat, chain and
/// loop blocks, whose sum is smooth in characteristic 0. Self-loops are
/// preferred, then the smallest target.
pub fn invertible_assignment(d: u32, ws: &WeightSystem) -> Option<Vec<usize>> {
    fn go(
        i: usize,
        options: &[Vec<usize>],
        taken: &mut [bool],
        out: &mut Vec<usize>,
    ) -> bool {
        if i == options.len() {
            return true;
        }
        for &j in &options[i] {
            if j == i {
                out.push(j);
                if go(i + 1, options, taken, out) {
                    return true;
                }
                out.pop();
            } else if !taken[j] {
                taken[j] = true;
                out.push(j);
                if go(i + 1, options, taken, out) {
                    return true;
                }
                out.pop();
                taken[j] = false;
            }
        }
        false
    }

    let w = ws.weights();
    let options: Vec<Vec<usize>> = (0..w.len())
        .map(|i| {
            let target = ws.partner_weight(d, w[i]);
            let mut js: Vec<usize> = (0..w.len()).filter(|&j| w[j] == target).collect();
            if let Some(pos) = js.iter().position(|&j| j == i) {
                js.remove(pos);
                js.insert(0, i);
            }
            js
        })
        .collect();
    if options.iter().any(|o| o.is_empty()) {
        return None;
    }
    let mut taken = vec![false; w.len()];
    let mut out = Vec::with_capacity(w.len());
    go(0, &options, &mut taken, &mut out).then_some(out)
}

/// Searches canonical weight systems modulo `p`, in increasing `(lambda, w)`
/// order, for one admitting a smooth semi-invariant hypersurface. The first
/// certificate found is returned; `None` means the canonical space holds no
/// admissible system.
pub fn prime_admits_order(
    cls: &HypersurfaceClass,
    p: u64,
    budget: &Budget,
) -> Result<Option<AdmissibilityCertificate>> {
    cls.require_moduli_range()?;
    if !crate::arith::is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let d = cls.degree();
    // p ∤ d: shift so lambda = 0; p | d: scale so lambda ∈ {0, 1}
    let lambdas: &[u64] = if d as u64 % p == 0 { &[0, 1] } else { &[0] };
    let mut nodes = 0;
    let mut saw_admissible = false;
    for &lambda in lambdas {
        let mut search = Search {
            d,
            p,
            lambda,
            k: cls.vars(),
            budget,
            nodes,
            saw_admissible,
            prefix: Vec::with_capacity(cls.vars()),
        };
        let step = search.dfs()?;
        nodes = search.nodes;
        saw_admissible |= search.saw_admissible;
        if let Step::Found(cert) = step {
            return Ok(Some(*cert));
        }
    }
    if saw_admissible {
        return Err(Error::Inconsistent(format!(
            "{cls}: admissible weight systems mod {p} exist but none yields a certificate"
        )));
    }
    Ok(None)
}
