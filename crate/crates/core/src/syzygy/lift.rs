//! Exact kernel vectors recovered from their images modulo many primes.
//!
//! For each prime at which the tower splits completely, the kernel vectors
//! are computed under every embedding into `F_p`; inverting the matrix of
//! basis images gives the tower coordinates modulo `p`.  The coordinates are
//! combined by the Chinese remainder theorem and recovered by rational
//! reconstruction, and every candidate is checked exactly as a syzygy.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::matrix::{rref, LinearField};
use crate::algebra::modp::{is_prime, mul_mod, tower_homs};
use crate::algebra::{FieldElement, MPoly, PrimeField, Rational, Var};

use super::engine::{equation_rows, Basis, Gradient};

const MAX_PRIMES: usize = 4096;

fn next_prime_one_mod_six(mut p: u64) -> u64 {
    p += 1;
    while p % 6 != 1 {
        p += 1;
    }
    while !is_prime(p) {
        p += 6;
    }
    p
}

/// Inverse of a square matrix over `F_p`, `None` if singular.
fn invert_mod(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let field = PrimeField { p };
    let rows: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    let e = rref(&field, rows, 2 * n);
    if e.pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(e.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `x ≡ acc (mod m)` and `x ≡ r (mod p)` combined in place.
fn crt_update(acc: &mut [BigInt], modulus: &mut BigInt, images: &[u64], p: u64) {
    let pb = BigInt::from(p);
    let m_mod_p = modulus.mod_floor(&pb);
    let inv = m_mod_p.modpow(&BigInt::from(p - 2), &pb);
    for (a, &r) in acc.iter_mut().zip(images) {
        let diff = (BigInt::from(r) - a.mod_floor(&pb)).mod_floor(&pb);
        let t = (diff * &inv).mod_floor(&pb);
        if !t.is_zero() {
            *a += &*modulus * t;
        }
    }
    *modulus *= pb;
}

/// The rational `a/b ≡ r (mod m)` with `|a|, b ≤ √(m/2)`, if any.
fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<Rational> {
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn is_syzygy(f: &MPoly, k: u32, v: &[FieldElement]) -> bool {
    let src = Basis::of_degree(k);
    let tower = f.tower();
    let mut total = MPoly::zero(tower);
    for (j, var) in Var::ALL.iter().enumerate() {
        let terms = src
            .monos
            .iter()
            .enumerate()
            .filter(|(i, _)| !v[j * src.len() + i].is_zero())
            .map(|(i, m)| (*m, v[j * src.len() + i].clone()));
        let a = MPoly::from_terms(tower, terms).expect("same tower");
        total = total.add(&a.mul(&f.partial(*var)));
    }
    total.is_zero()
}

/// Exact kernel vectors of `S_k³ → S_{k+d−1}` with a one in each column of
/// `free` and zeros in the other non-pivot columns, assuming the pivot
/// columns over the tower field are `pivots`.  Returns `None` when the
/// vectors cannot be recovered within the prime budget.
pub(crate) fn lift_kernel_vectors(
    f: &MPoly,
    k: u32,
    pivots: &[usize],
    free: &[usize],
    start: u64,
) -> Option<Vec<Vec<FieldElement>>> {
    let tower = f.tower().clone();
    let deg = tower.degree();
    let d = f.total_degree()?;
    let src = Basis::of_degree(k);
    let dst = Basis::of_degree(k + d - 1);
    let cols = 3 * src.len();
    let free_set: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let n = free.len() * cols * deg;
    let mut acc = vec![BigInt::zero(); n];
    let mut modulus = BigInt::one();
    let mut p = start;
    let mut used = 0usize;
    let mut next_attempt = 1usize;
    for _ in 0..MAX_PRIMES {
        p = next_prime_one_mod_six(p);
        let homs = tower_homs(&tower, p, true, deg);
        if homs.len() != deg {
            continue;
        }
        let basis: Vec<Vec<u64>> = homs.iter().map(|h| h.basis_images().to_vec()).collect();
        let Some(inv) = invert_mod(&basis, p) else { continue };
        let field = PrimeField { p };
        let mut images: Vec<Vec<Vec<u64>>> = Vec::with_capacity(deg);
        for h in &homs {
            let Some(grad) = Gradient::from_poly(f, |c| h.map(c)) else { break };
            let e = rref(&field, equation_rows(&field, &grad, &src, &dst), cols);
            if e.pivots != pivots {
                break;
            }
            let vectors = free
                .iter()
                .map(|&j| {
                    let mut v = vec![0u64; cols];
                    v[j] = 1;
                    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                        v[pc] = field.neg(&row[j]);
                    }
                    v
                })
                .collect();
            images.push(vectors);
        }
        if images.len() != deg {
            continue;
        }
        let mut local = vec![0u64; n];
        for vi in 0..free.len() {
            for c in 0..cols {
                for b in 0..deg {
                    let mut s = 0u64;
                    for (i, img) in images.iter().enumerate() {
                        s = (s + mul_mod(inv[b][i], img[vi][c], p)) % p;
                    }
                    local[(vi * cols + c) * deg + b] = s;
                }
            }
        }
        crt_update(&mut acc, &mut modulus, &local, p);
        used += 1;
        if used < next_attempt {
            continue;
        }
        next_attempt = (next_attempt * 2).min(used + 64);
        if let Some(vs) = reconstruct(&acc, &modulus, free.len(), cols, deg, &tower) {
            let consistent = vs.iter().zip(free).all(|(v, &j)| {
                free_set.iter().all(|&c| if c == j { v[c].is_one() } else { v[c].is_zero() })
            });
            if consistent && vs.iter().all(|v| is_syzygy(f, k, v)) {
                return Some(vs);
            }
        }
    }
    None
}

fn reconstruct(
    acc: &[BigInt],
    modulus: &BigInt,
    count: usize,
    cols: usize,
    deg: usize,
    tower: &std::sync::Arc<crate::algebra::Tower>,
) -> Option<Vec<Vec<FieldElement>>> {
    let mut out = Vec::with_capacity(count);
    for vi in 0..count {
        let mut v = Vec::with_capacity(cols);
        for c in 0..cols {
            let base = (vi * cols + c) * deg;
            let coords = acc[base..base + deg]
                .iter()
                .map(|r| rational_reconstruction(r, modulus))
                .collect::<Option<Vec<Rational>>>()?;
            v.push(FieldElement::from_coords(tower, coords));
        }
        out.push(v);
    }
    Some(out)
}
