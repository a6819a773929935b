//! Brute-force search for singular points of a projective hypersurface over a prime field.

use crate::arith::mod_pow;

/// A polynomial over `F_q` as `(coefficient, exponent vector)` terms.
#[derive(Clone, Debug)]
pub struct FieldPoly {
    q: u64,
    vars: usize,
    terms: Vec<(u64, Vec<u32>)>,
}

impl FieldPoly {
    pub fn new(q: u64, vars: usize, terms: impl IntoIterator<Item = (u64, Vec<u32>)>) -> Self {
        let terms = terms
            .into_iter()
            .map(|(c, e)| (c % q, e))
            .filter(|(c, _)| *c != 0)
            .collect();
        Self { q, vars, terms }
    }

    fn derivative(&self, v: usize) -> FieldPoly {
        let q = self.q as u128;
        let terms = self.terms.iter().filter(|(_, e)| e[v] > 0).map(|(c, e)| {
            let mut e = e.clone();
            let c = (*c as u128 * (e[v] as u128 % q) % q) as u64;
            e[v] -= 1;
            (c, e)
        });
        FieldPoly::new(self.q, self.vars, terms)
    }

    fn eval(&self, point: &[u64]) -> u64 {
        let q = self.q as u128;
        let mut acc = 0u128;
        for (c, e) in &self.terms {
            let mut t = *c as u128;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t * mod_pow(point[i], k as u64, self.q) as u128 % q;
                    if t == 0 {
                        break;
                    }
                }
            }
            acc = (acc + t) % q;
        }
        acc as u64
    }
}

/// Odometer step; false once the digits wrap back to zero.
fn advance(digits: &mut [u64], q: u64) -> bool {
    for x in digits.iter_mut().rev() {
        *x += 1;
        if *x < q {
            return true;
        }
        *x = 0;
    }
    false
}

/// `|P^{k-1}(F_q)| = (q^k - 1) / (q - 1)`, or `None` on overflow.
pub fn projective_point_count(q: u64, k: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..k {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(q as u128)?;
    }
    Some(total)
}

/// First `F_q`-rational point (normalized so its first nonzero coordinate is 1)
/// where every partial derivative of `f` vanishes.
pub fn find_singular_point(f: &FieldPoly) -> Option<Vec<u64>> {
    let q = f.q;
    let k = f.vars;
    let partials: Vec<FieldPoly> = (0..k).map(|v| f.derivative(v)).collect();
    let mut point = vec![0u64; k];

    for lead in 0..k {
        point.iter_mut().for_each(|x| *x = 0);
        point[lead] = 1;
        loop {
            if partials.iter().all(|g| g.eval(&point) == 0) {
                return Some(point);
            }
            if !advance(&mut point[lead + 1..], q) {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat(q: u64, k: usize, d: u32) -> FieldPoly {
        FieldPoly::new(
            q,
            k,
            (0..k).map(|i| {
                let mut e = vec![0; k];
                e[i] = d;
                (1, e)
            }),
        )
    }

    #[test]
    fn point_count() {
        assert_eq!(projective_point_count(3, 3), Some(13));
        assert_eq!(projective_point_count(2, 1), Some(1));
        assert_eq!(projective_point_count(u64::MAX, 5), None);
    }

    #[test]
    fn fermat_smooth_unless_char_divides_degree() {
        assert_eq!(find_singular_point(&fermat(7, 4, 3)), None);
        assert!(find_singular_point(&fermat(3, 4, 3)).is_some());
    }

    #[test]
    fn detects_node() {
        // x0 x1 - x2^2 is a smooth conic; x0 x1 is two lines meeting at (0:0:1)
        let conic = FieldPoly::new(5, 3, [(1, vec![1, 1, 0]), (4, vec![0, 0, 2])]);
        assert_eq!(find_singular_point(&conic), None);
        let lines = FieldPoly::new(5, 3, [(1, vec![1, 1, 0])]);
        assert_eq!(find_singular_point(&lines), Some(vec![0, 0, 1]));
    }

    #[test]
    fn reaches_last_coordinate_point() {
        // x0^2 + x1^2 is a double line pair in P^2, singular only at (0:0:1) over F_5
        let f = FieldPoly::new(5, 3, [(1, vec![2, 0, 0]), (1, vec![0, 2, 0])]);
        assert_eq!(find_singular_point(&f), Some(vec![0, 0, 1]));
    }
}
