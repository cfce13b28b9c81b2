//! Prime-field arithmetic and reduction of tower fields modulo primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::field::FieldElement;
use super::rational::Rational;
use super::tower::Tower;
use super::univariate::UniPoly;

/// `a·b mod p`.
#[inline]
#[must_use]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u64::from(u32::MAX) {
        (a % p) * (b % p) % p
    } else {
        ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
    }
}

/// `a^e mod p`.
#[must_use]
pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime (`a` must be nonzero mod `p`).
#[must_use]
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
#[must_use]
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reduction of a rational number, `None` when `p` divides the denominator.
#[must_use]
pub fn rational_mod(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = r.numer().mod_floor(&pb).to_u64()?;
    Some(mul_mod(n, inv_mod(d, p), p))
}

// ---------------------------------------------------------------------------
// polynomials over F_p, ascending coefficients

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = inv_mod(b[db], p);
    let mut qq = vec![0u64; r.len() - db];
    while r.len() > db {
        let top = r.pop().expect("nonempty");
        if top == 0 {
            continue;
        }
        let shift = r.len() - db;
        let c = mul_mod(top, inv, p);
        for (i, &bi) in b[..db].iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mul_mod(c, bi, p)) % p;
        }
        qq[shift] = c;
    }
    trim(&mut r);
    trim(&mut qq);
    (qq, r)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = poly_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for x in &mut a {
            *x = mul_mod(*x, inv, p);
        }
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_divrem(&out, m, p).1
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = poly_divrem(&[1], m, p).1;
    let mut b = poly_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
        .collect();
    trim(&mut out);
    out
}

/// Distinct roots in F_p of a polynomial (ascending coefficients), sorted.
#[must_use]
pub fn roots_mod(f: &[u64], p: u64) -> Vec<u64> {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() <= 1 {
        return Vec::new();
    }
    let xp = poly_powmod(&[0, 1], p, &f, p);
    let g = poly_gcd(&f, &poly_sub(&xp, &[0, 1], p), p);
    let mut roots = Vec::new();
    split_linear(&g, p, &mut roots, 1);
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn split_linear(g: &[u64], p: u64, out: &mut Vec<u64>, mut seed: u64) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(mul_mod(p - g[0], inv_mod(g[1], p), p)),
        _ => loop {
            let h = poly_powmod(&[seed % p, 1], (p - 1) / 2, g, p);
            let h = poly_gcd(g, &poly_sub(&h, &[1], p), p);
            seed += 1;
            if h.len() > 1 && h.len() < g.len() {
                let (other, _) = poly_divrem(g, &h, p);
                split_linear(&h, p, out, seed);
                split_linear(&other, p, out, seed);
                return;
            }
        },
    }
}

/// True when `f` has no repeated factor over F_p.
#[must_use]
pub fn is_squarefree_mod(f: &[u64], p: u64) -> bool {
    poly_gcd(f, &derivative(f, p), p).len() <= 1
}

// ---------------------------------------------------------------------------
// homomorphisms from tower fields to F_p

/// A ring homomorphism from (the p-integral part of) a tower field onto
/// F_p, fixed by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerHom {
    /// The prime.
    pub p: u64,
    /// Image of each generator, bottom level first.
    pub images: Vec<u64>,
    basis: Vec<u64>,
}

impl TowerHom {
    /// Image of a flat coordinate vector (a prefix of the tower basis).
    #[must_use]
    pub fn map_coords(&self, c: &[Rational]) -> Option<u64> {
        let mut acc = 0u64;
        for (x, b) in c.iter().zip(&self.basis) {
            if x.is_zero() {
                continue;
            }
            acc = (acc + mul_mod(rational_mod(x, self.p)?, *b, self.p)) % self.p;
        }
        Some(acc)
    }

    /// Images of the flat tower basis.
    #[must_use]
    pub fn basis_images(&self) -> &[u64] {
        &self.basis
    }

    /// Image of a field element, `None` when a denominator vanishes mod p.
    #[must_use]
    pub fn map(&self, x: &FieldElement) -> Option<u64> {
        if x.coords().len() > self.basis.len() {
            return None;
        }
        self.map_coords(x.coords())
    }
}

/// Enumerates homomorphisms from `tower` to F_p in lexicographic order of
/// generator images, choosing only simple roots of each reduced minimal
/// polynomial.  With `complete` set, every reduced minimal polynomial on the
/// path must split into distinct linear factors.
#[must_use]
pub fn tower_homs(tower: &Tower, p: u64, complete: bool, limit: usize) -> Vec<TowerHom> {
    let mut out = Vec::new();
    let start = TowerHom {
        p,
        images: Vec::new(),
        basis: vec![1],
    };
    extend_homs(tower, start, complete, limit, &mut out);
    out
}

fn extend_homs(tower: &Tower, h: TowerHom, complete: bool, limit: usize, out: &mut Vec<TowerHom>) {
    if out.len() >= limit {
        return;
    }
    let k = h.images.len();
    if k == tower.height() {
        out.push(h);
        return;
    }
    let level = &tower.levels()[k];
    let Some(f) = level
        .minpoly()
        .iter()
        .map(|c| h.map_coords(c))
        .collect::<Option<Vec<u64>>>()
    else {
        return;
    };
    if !is_squarefree_mod(&f, h.p) {
        return;
    }
    let roots = roots_mod(&f, h.p);
    if complete && roots.len() != level.degree() {
        return;
    }
    for r in roots {
        let mut basis = Vec::with_capacity(h.basis.len() * level.degree());
        let mut pw = 1u64;
        for _ in 0..level.degree() {
            basis.extend(h.basis.iter().map(|b| mul_mod(*b, pw, h.p)));
            pw = mul_mod(pw, r, h.p);
        }
        let mut images = h.images.clone();
        images.push(r);
        extend_homs(
            tower,
            TowerHom { p: h.p, images, basis },
            complete,
            limit,
            out,
        );
        if out.len() >= limit {
            return;
        }
    }
}

/// Smallest prime `p > start` with `p ≡ 1 (mod 6)` at which every level of
/// `tower` splits into distinct linear factors and `accept` holds for the
/// homomorphism sending each generator to its smallest admissible root.
pub fn splitting_prime(
    tower: &Tower,
    start: u64,
    mut accept: impl FnMut(&TowerHom) -> bool,
) -> Option<TowerHom> {
    let mut p = start + 1;
    while p % 6 != 1 {
        p += 1;
    }
    for _ in 0..2_000_000 {
        if is_prime(p) {
            if let Some(h) = tower_homs(tower, p, true, 1).into_iter().next() {
                if accept(&h) {
                    return Some(h);
                }
            }
        }
        p += 6;
    }
    None
}

/// Certifies that a monic polynomial of degree at most three has no root in
/// its coefficient field, using a prime of residue degree one at which the
/// reduction has no root.
#[must_use]
pub fn certify_rootless(poly: &UniPoly) -> bool {
    let tower = poly.tower();
    let mut p = 1009u64;
    let mut tested = 0;
    while tested < 4000 {
        p += 2;
        if !is_prime(p) {
            continue;
        }
        tested += 1;
        for h in tower_homs(tower, p, false, 8) {
            let Some(f) = poly.coeffs().iter().map(|c| h.map(c)).collect::<Option<Vec<u64>>>()
            else {
                continue;
            };
            if roots_mod(&f, p).is_empty() {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
    }

    #[test]
    fn roots_of_split_cubic() {
        // (x-1)(x-2)(x-5) = x^3 - 8x^2 + 17x - 10 over F_13
        let p = 13;
        let f = vec![p - 10, 17 % p, p - 8, 1];
        assert_eq!(roots_mod(&f, p), vec![1, 2, 5]);
    }

    #[test]
    fn no_roots_of_irreducible_quadratic() {
        // x^2 + 1 is irreducible mod 7
        assert!(roots_mod(&[1, 0, 1], 7).is_empty());
        assert_eq!(roots_mod(&[1, 0, 1], 5), vec![2, 3]);
    }

    #[test]
    fn rational_reduction() {
        assert_eq!(rational_mod(&q(1, 2), 7), Some(4));
        assert_eq!(rational_mod(&q(-1, 3), 7), Some(2));
        assert_eq!(rational_mod(&q(1, 7), 7), None);
    }

    #[test]
    fn eisenstein_splits_at_primes_one_mod_six() {
        let t = Tower::eisenstein();
        let h = splitting_prime(&t, 1_000_000, |_| true).unwrap();
        assert_eq!(h.p % 6, 1);
        let e = h.images[0];
        // e^2 - e + 1 = 0
        assert_eq!((mul_mod(e, e, h.p) + h.p - e + 1) % h.p, 0);
    }
}
