//! Cross-checks of the library against small brute-force oracles that share
//! no code with it.

use std::collections::{BTreeSet, HashSet};

use hyperlevel::{
    candidate_primes, enumerate_profiles, gl_order, matrix_order, prime_admits_order,
    random_finite_order_matrix, trivial_action_solutions, Budget, HypersurfaceClass, LocusKind,
    SquareIntegerMatrix,
};
use num_bigint::{BigInt, BigUint};

fn cls(d: u32, n: u32) -> HypersurfaceClass {
    HypersurfaceClass::new(d, n).unwrap()
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Top Chern number of a degree-`d` hypersurface of dimension `k`, as the
/// coefficient of `h^k` in `d (1+h)^{k+2} / (1+dh)`.
fn chern_top(d: i128, k: i128) -> i128 {
    (0..=k)
        .map(|j| d * binom(k + 2, j) * (-d).pow((k - j) as u32))
        .sum()
}

/// Euler characteristic of `X ∩ P^{m-1}` for each kind of piece.
fn piece_euler(d: i128, kind: char, m: i128) -> i128 {
    match kind {
        'H' => chern_top(d, m - 2),
        'L' => m,
        _ => 0,
    }
}

/// All profiles as sorted multisets, built from ordered compositions.
fn brute_profiles(total: u32) -> BTreeSet<Vec<(char, u32)>> {
    fn go(left: u32, cur: &mut Vec<(char, u32)>, out: &mut BTreeSet<Vec<(char, u32)>>) {
        if left == 0 {
            if cur.len() >= 2 {
                let mut key = cur.clone();
                key.sort();
                out.insert(key);
            }
            return;
        }
        for m in 1..=left {
            for kind in ['H', 'L', 'E'] {
                let ok = match kind {
                    'H' => m >= 2,
                    'L' => true,
                    _ => m == 1,
                };
                if ok {
                    cur.push((kind, m));
                    go(left - m, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    go(total, &mut Vec::new(), &mut out);
    out
}

fn library_key(p: &hyperlevel::FixedLocusProfile) -> Vec<(char, u32)> {
    let mut key: Vec<(char, u32)> = p
        .parts()
        .iter()
        .map(|part| {
            let c = match part.kind {
                LocusKind::Hypersurface => 'H',
                LocusKind::Linear => 'L',
                LocusKind::Empty => 'E',
            };
            (c, part.m)
        })
        .collect();
    key.sort();
    key
}

#[test]
fn profile_enumeration_matches_compositions() {
    for n in 1..=6 {
        let brute = brute_profiles(n + 2);
        let lib = enumerate_profiles(&cls(4, n)).unwrap();
        let keys: BTreeSet<_> = lib.iter().map(library_key).collect();
        assert_eq!(keys.len(), lib.len(), "duplicates for n={n}");
        assert_eq!(keys, brute, "n={n}");
    }
}

#[test]
fn trace_formula_solutions_match_direct_sum() {
    for d in 3..=8u32 {
        for n in 1..=6u32 {
            let chi = chern_top(d as i128, n as i128);
            let brute: BTreeSet<_> = brute_profiles(n + 2)
                .into_iter()
                .filter(|p| p.iter().map(|&(k, m)| piece_euler(d as i128, k, m as i128)).sum::<i128>() == chi)
                .collect();
            let lib: BTreeSet<_> = trivial_action_solutions(&cls(d, n))
                .unwrap()
                .iter()
                .map(library_key)
                .collect();
            assert_eq!(lib, brute, "(d,n)=({d},{n})");
        }
    }
}

/// Admissible iff some nonconstant `w` and `lambda` give every variable a
/// monomial `x_i^{d-1} x_j` of weight `lambda`. Translating `w` keeps the
/// condition, so `w_0 = 0` is enough.
fn brute_admissible(d: u64, k: usize, p: u64) -> bool {
    let mut w = vec![0u64; k];
    loop {
        if w.iter().any(|&x| x != 0) {
            for lambda in 0..p {
                let ok = w.iter().all(|&wi| {
                    w.iter().any(|&wj| ((d - 1) * wi + wj) % p == lambda)
                });
                if ok {
                    return true;
                }
            }
        }
        let mut i = 1;
        loop {
            if i == k {
                return false;
            }
            w[i] += 1;
            if w[i] < p {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| (2..p).all(|q| p % q != 0)).collect()
}

#[test]
fn admissibility_matches_exhaustive_search() {
    let budget = Budget::default();
    for (d, n) in [(3u32, 1u32), (3, 2), (4, 1)] {
        let c = cls(d, n);
        let candidates = candidate_primes(&c).unwrap();
        let top = *candidates.iter().max().unwrap();
        for p in small_primes(50.max(2 * top)) {
            let brute = brute_admissible(d as u64, n as usize + 2, p);
            let lib = prime_admits_order(&c, p, &budget).unwrap().is_some();
            assert_eq!(lib, brute, "(d,n,p)=({d},{n},{p})");
            if brute {
                assert!(candidates.contains(&p), "{p} missing from candidates of ({d},{n})");
            }
        }
    }
}

fn all_matrices(b: usize, modulus: u64) -> impl Iterator<Item = Vec<u64>> {
    let cells = b * b;
    (0..modulus.pow(cells as u32)).map(move |mut code| {
        (0..cells)
            .map(|_| {
                let v = code % modulus;
                code /= modulus;
                v
            })
            .collect()
    })
}

fn det_mod(m: &[u64], b: usize, modulus: u64) -> u64 {
    // Laplace expansion; b is tiny.
    if b == 1 {
        return m[0] % modulus;
    }
    let mut total = 0i128;
    for col in 0..b {
        let minor: Vec<u64> = (1..b)
            .flat_map(|r| (0..b).filter(move |&c| c != col).map(move |c| (r, c)))
            .map(|(r, c)| m[r * b + c])
            .collect();
        let sign = if col % 2 == 0 { 1 } else { -1 };
        total += sign * m[col] as i128 * det_mod(&minor, b - 1, modulus) as i128;
    }
    total.rem_euclid(modulus as i128) as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn gl_order_matches_enumeration() {
    for (b, modulus) in [(1, 7), (1, 12), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 8), (2, 9), (3, 2), (3, 3), (4, 2)] {
        let count = all_matrices(b, modulus)
            .filter(|m| gcd(det_mod(m, b, modulus), modulus) == 1)
            .count();
        assert_eq!(
            gl_order(b as u64, modulus).unwrap(),
            BigUint::from(count),
            "b={b} N={modulus}"
        );
    }
}

#[test]
fn gl_order_is_multiplicative() {
    let pairs = [
        (2, 3), (3, 4), (4, 5), (5, 7), (7, 8), (8, 9), (9, 10), (11, 12), (3, 16), (5, 27),
        (13, 2), (17, 25), (4, 49), (19, 6), (23, 9), (7, 10), (29, 30), (31, 32), (25, 64), (37, 11),
    ];
    for b in [1u64, 2, 3, 6, 10] {
        for (x, y) in pairs {
            assert_eq!(gcd(x, y), 1);
            assert_eq!(
                gl_order(b, x * y).unwrap(),
                gl_order(b, x).unwrap() * gl_order(b, y).unwrap(),
                "b={b} {x}*{y}"
            );
        }
    }
}

fn naive_order(a: &SquareIntegerMatrix, cap: u64) -> Option<u64> {
    let mut p = a.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(a);
    }
    None
}

#[test]
fn matrix_order_matches_repeated_multiplication() {
    for dim in 1..=5 {
        for seed in 0..150 {
            let a = random_finite_order_matrix(dim, seed).unwrap();
            let order = matrix_order(&a).expect("generator returns finite-order matrices");
            assert_eq!(naive_order(&a, 400), Some(order), "dim={dim} seed={seed}");
        }
    }
    let infinite = [
        SquareIntegerMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap(),
        SquareIntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap(),
        SquareIntegerMatrix::from_i64(&[&[2]]).unwrap(),
        SquareIntegerMatrix::from_i64(&[&[0, 0], &[0, 0]]).unwrap(),
    ];
    for a in &infinite {
        assert_eq!(matrix_order(a), None);
        assert_eq!(naive_order(a, 400), None);
    }
}

#[test]
fn matrix_orders_cover_expected_values() {
    // Orders attained in GL_2(Z): 1, 2, 3, 4, 6.
    let mut seen = HashSet::new();
    for seed in 0..400 {
        seen.insert(matrix_order(&random_finite_order_matrix(2, seed).unwrap()).unwrap());
    }
    let allowed: HashSet<u64> = [1, 2, 3, 4, 6].into_iter().collect();
    assert!(seen.is_subset(&allowed), "{seen:?}");
    assert!(seen.len() >= 4, "{seen:?}");
}

#[test]
fn euler_characteristic_matches_local_oracle() {
    for d in 1..=10u32 {
        for n in 0..=8u32 {
            assert_eq!(
                hyperlevel::euler_characteristic(&cls(d, n)),
                BigInt::from(chern_top(d as i128, n as i128)),
                "({d},{n})"
            );
        }
    }
}
