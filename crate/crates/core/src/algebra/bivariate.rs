//! Greatest common divisors of polynomials in `x, y` by primitive
//! remainder sequences in `y` over `K[x]`.

use std::sync::Arc;

use super::field::FieldElement;
use super::mpoly::MPoly;
use super::tower::Tower;
use super::univariate::UniPoly;

type BiPoly = Vec<UniPoly>;

fn to_bivariate(p: &MPoly) -> BiPoly {
    let tower = p.tower().clone();
    let dy = p.terms().map(|(m, _)| m.0[1]).max().unwrap_or(0) as usize;
    let mut rows: Vec<Vec<FieldElement>> = vec![Vec::new(); dy + 1];
    for (m, c) in p.terms() {
        let row = &mut rows[m.0[1] as usize];
        let i = m.0[0] as usize;
        if row.len() <= i {
            row.resize(i + 1, FieldElement::zero(&tower));
        }
        row[i] = c.clone();
    }
    let mut out: BiPoly = rows.into_iter().map(|r| UniPoly::new(&tower, r)).collect();
    trim(&mut out);
    out
}

fn from_bivariate(p: &BiPoly, tower: &Arc<Tower>) -> MPoly {
    let mut terms = Vec::new();
    for (j, row) in p.iter().enumerate() {
        for (i, c) in row.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.push(([i as u32, j as u32, 0], c.clone()));
            }
        }
    }
    MPoly::from_terms(tower, terms).expect("same tower")
}

fn trim(p: &mut BiPoly) {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
}

fn content(p: &BiPoly, tower: &Arc<Tower>) -> UniPoly {
    p.iter().fold(UniPoly::zero(tower), |acc, c| acc.gcd(c))
}

fn primitive(p: &BiPoly, tower: &Arc<Tower>) -> BiPoly {
    let c = content(p, tower);
    if c.is_zero() {
        return p.clone();
    }
    p.iter().map(|x| x.divrem(&c).expect("nonzero content").0).collect()
}

fn pseudo_remainder(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut a = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() && !a.is_empty() {
        let la = a.last().expect("nonempty").clone();
        let shift = a.len() - b.len();
        let mut next: BiPoly = a.iter().map(|c| c.mul(&lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[shift + i] = next[shift + i].sub(&bc.mul(&la));
        }
        trim(&mut next);
        a = next;
    }
    a
}

/// A greatest common divisor of two polynomials in `x` and `y` (the `z`
/// exponent is ignored), defined up to a nonzero scalar.  Both inputs
/// must live in the same tower.
#[must_use]
pub fn bivariate_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    let tower = f.tower().clone();
    let (a, b) = (to_bivariate(f), to_bivariate(g));
    let gc = content(&a, &tower).gcd(&content(&b, &tower));
    let mut a = primitive(&a, &tower);
    let mut b = primitive(&b, &tower);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_remainder(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { primitive(&r, &tower) };
    }
    if gc.is_zero() {
        return from_bivariate(&a, &tower);
    }
    let with_content: BiPoly = a.iter().map(|row| row.mul(&gc)).collect();
    from_bivariate(&with_content, &tower)
}
