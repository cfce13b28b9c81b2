//! Root search for polynomials over a tower field.
//!
//! Candidate roots come from the complex embeddings of the tower: choosing a
//! numeric root of the polynomial under every embedding determines a vector
//! of basis coordinates, which is rounded to rationals and then checked
//! exactly.  The search is complete in practice for the small polynomials
//! used in this crate, and it never reports a false root.

use num_complex::Complex64;

use super::field::FieldElement;
use super::rational::{rationalize, to_f64, Rational};
use super::tower::Tower;
use super::univariate::UniPoly;

const MAX_COMBINATIONS: usize = 1 << 18;

/// Values of the tower generators under every complex embedding.
#[must_use]
pub fn embeddings(tower: &Tower) -> Vec<Vec<Complex64>> {
    let mut embs: Vec<Vec<Complex64>> = vec![Vec::new()];
    for (k, level) in tower.levels().iter().enumerate() {
        let mut next = Vec::new();
        for e in &embs {
            let basis = basis_values(tower, k, e);
            let coeffs: Vec<Complex64> = level
                .minpoly()
                .iter()
                .map(|c| eval_coords(c, &basis))
                .collect();
            for r in complex_roots(&coeffs) {
                let mut g = e.clone();
                g.push(r);
                next.push(g);
            }
        }
        embs = next;
    }
    embs
}

/// Numeric values of the flat basis of the first `k` levels.
#[must_use]
pub fn basis_values(tower: &Tower, k: usize, gens: &[Complex64]) -> Vec<Complex64> {
    let mut vals = vec![Complex64::new(1.0, 0.0)];
    for (j, level) in tower.levels()[..k].iter().enumerate() {
        let mut next = Vec::with_capacity(vals.len() * level.degree());
        let mut pw = Complex64::new(1.0, 0.0);
        for _ in 0..level.degree() {
            next.extend(vals.iter().map(|v| v * pw));
            pw *= gens[j];
        }
        vals = next;
    }
    vals
}

fn eval_coords(c: &[Rational], basis: &[Complex64]) -> Complex64 {
    c.iter()
        .zip(basis)
        .filter(|(x, _)| **x != Rational::default())
        .map(|(x, b)| b * to_f64(x))
        .sum()
}

/// Numeric value of an element under an embedding given by generator values.
#[must_use]
pub fn eval_numeric(x: &FieldElement, gens: &[Complex64]) -> Complex64 {
    let t = x.tower();
    let basis = basis_values(t, t.height(), gens);
    eval_coords(x.coords(), &basis)
}

/// All complex roots of a polynomial with ascending coefficients.
#[must_use]
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let a: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    if n == 1 {
        return vec![-a[0]];
    }
    if n == 2 {
        let disc = (a[1] * a[1] - a[0] * 4.0).sqrt();
        let r1 = if (-a[1] + disc).norm() >= (-a[1] - disc).norm() {
            (-a[1] + disc) / 2.0
        } else {
            (-a[1] - disc) / 2.0
        };
        let r2 = if r1.norm() > 0.0 { a[0] / r1 } else { -a[1] - r1 };
        return vec![polish(&a, r1), polish(&a, r2)];
    }
    let bound = 1.0 + a[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&a, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 * bound {
            break;
        }
    }
    z.into_iter().map(|r| polish(&a, r)).collect()
}

fn horner(a: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in a.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

fn polish(a: &[Complex64], mut r: Complex64) -> Complex64 {
    for _ in 0..4 {
        let (p, dp) = horner(a, r);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        r -= step;
    }
    r
}

/// Inverts a square complex matrix by Gauss-Jordan elimination.
fn invert(m: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        let inv = Complex64::new(1.0, 0.0) / a[col][col];
        for x in &mut a[col] {
            *x *= inv;
        }
        let pivot_row = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == col {
                continue;
            }
            let f = row[col];
            if f.norm() == 0.0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Searches for a root of `poly` in its coefficient field.
///
/// Returns an exactly verified root, or `None` when the numeric search finds
/// nothing (which is expected exactly when no root exists).
#[must_use]
pub fn find_root(poly: &UniPoly) -> Option<FieldElement> {
    let tower = poly.tower();
    poly.degree().filter(|&d| d >= 1)?;
    let n = tower.degree();
    let embs = embeddings(tower);
    if embs.len() != n {
        return None;
    }
    let vmat: Vec<Vec<Complex64>> = embs
        .iter()
        .map(|g| basis_values(tower, tower.height(), g))
        .collect();
    let vinv = invert(&vmat)?;

    // conjugate partner of every embedding
    let partner: Vec<usize> = embs
        .iter()
        .map(|g| {
            (0..n)
                .min_by(|&i, &j| {
                    conj_dist(g, &embs[i]).total_cmp(&conj_dist(g, &embs[j]))
                })
                .expect("nonempty")
        })
        .collect();

    let mut free: Vec<usize> = Vec::new();
    let mut choices: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n {
        if partner[j] < j {
            continue;
        }
        let coeffs: Vec<Complex64> = poly.coeffs().iter().map(|c| eval_numeric(c, &embs[j])).collect();
        let mut roots = complex_roots(&coeffs);
        if partner[j] == j {
            roots.retain(|r| r.im.abs() <= 1e-6 * (1.0 + r.norm()));
            for r in &mut roots {
                r.im = 0.0;
            }
        }
        if roots.is_empty() {
            return None;
        }
        free.push(j);
        choices.push(roots);
    }

    let mut idx = vec![0usize; free.len()];
    let mut tried = 0usize;
    loop {
        tried += 1;
        if tried > MAX_COMBINATIONS {
            return None;
        }
        let mut s = vec![Complex64::new(0.0, 0.0); n];
        for (f, (&j, &i)) in free.iter().zip(&idx).enumerate() {
            let v = choices[f][i];
            s[j] = v;
            s[partner[j]] = v.conj();
        }
        if let Some(root) = candidate(poly, tower, &vinv, &s) {
            return Some(root);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn conj_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.conj() - y).norm()).sum()
}

fn candidate(
    poly: &UniPoly,
    tower: &std::sync::Arc<Tower>,
    vinv: &[Vec<Complex64>],
    s: &[Complex64],
) -> Option<FieldElement> {
    let mut coords = Vec::with_capacity(s.len());
    for row in vinv {
        let c: Complex64 = row.iter().zip(s).map(|(a, b)| a * b).sum();
        let scale = 1.0 + c.re.abs();
        if c.im.abs() > 1e-6 * scale {
            return None;
        }
        coords.push(rationalize(c.re, 10_000_000, 1e-7 * scale)?);
    }
    let y = FieldElement::from_coords(tower, coords);
    poly.eval(&y).is_zero().then_some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qi;

    #[test]
    fn eisenstein_has_two_complex_embeddings() {
        let e = embeddings(&Tower::eisenstein());
        assert_eq!(e.len(), 2);
        for g in e {
            assert!((g[0].re - 0.5).abs() < 1e-12);
            assert!((g[0].im.abs() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cubic_roots_numerically() {
        let c: Vec<Complex64> = [2.0, 1.0, 0.0, 1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let r = complex_roots(&c);
        assert!(r.iter().any(|z| (z - Complex64::new(-1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn rational_root_of_cubic_over_eps() {
        let t = Tower::eisenstein();
        let p = UniPoly::new(
            &t,
            [2, 1, 0, 1].iter().map(|&x| FieldElement::from_int(&t, x)).collect(),
        );
        let r = find_root(&p).unwrap();
        assert_eq!(r, FieldElement::from_rational(&t, qi(-1)));
    }

    #[test]
    fn root_involving_eps() {
        // w^2 + 3 has the root 2*eps - 1 in Q(eps)
        let t = Tower::eisenstein();
        let p = UniPoly::new(
            &t,
            [3, 0, 1].iter().map(|&x| FieldElement::from_int(&t, x)).collect(),
        );
        let r = find_root(&p).unwrap();
        assert!(p.eval(&r).is_zero());
        assert!(r.as_rational().is_none());
    }
}
