//! Sparse polynomials in x, y, z over a tower field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::{common_tower, FieldElement};
use super::matrix::DenseMatrix;
use super::rational::{qi, Rational};
use super::tower::Tower;
use super::AlgebraError;

/// Variable index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// x
    X = 0,
    /// y
    Y = 1,
    /// z
    Z = 2,
}

impl Var {
    /// All three variables in order.
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    /// Index 0, 1 or 2.
    #[must_use]
    pub fn index(self) -> usize {
        self as usize
    }
}

/// Exponent triple ordered graded-lexicographically with x > y > z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    /// Total degree.
    #[must_use]
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Product of monomials.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        Self([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    /// Quotient when `other` divides `self`.
    #[must_use]
    pub fn div(&self, other: &Self) -> Option<Self> {
        if (0..3).all(|i| self.0[i] >= other.0[i]) {
            Some(Self([
                self.0[0] - other.0[0],
                self.0[1] - other.0[1],
                self.0[2] - other.0[2],
            ]))
        } else {
            None
        }
    }

    /// All monomials of total degree `k`, graded-lex descending.
    #[must_use]
    pub fn of_degree(k: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(((k + 1) * (k + 2) / 2) as usize);
        for a in (0..=k).rev() {
            for b in (0..=k - a).rev() {
                out.push(Monomial([a, b, k - a - b]));
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in x, y, z with coefficients in a tower field.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    tower: Arc<Tower>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MPoly {
    /// The zero polynomial.
    #[must_use]
    pub fn zero(tower: &Arc<Tower>) -> Self {
        Self {
            tower: tower.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// A constant.
    #[must_use]
    pub fn constant(c: &FieldElement) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    /// `c·x^a y^b z^c`.
    #[must_use]
    pub fn monomial(c: &FieldElement, exp: [u32; 3]) -> Self {
        let mut p = Self::zero(c.tower());
        if !c.is_zero() {
            p.terms.insert(Monomial(exp), c.clone());
        }
        p
    }

    /// A single variable.
    #[must_use]
    pub fn var(tower: &Arc<Tower>, v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(&FieldElement::one(tower), e)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(
        tower: &Arc<Tower>,
        terms: impl IntoIterator<Item = ([u32; 3], FieldElement)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(tower);
        for (e, c) in terms {
            let c = c.embed(tower)?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Builds a polynomial with integer coefficients.
    #[must_use]
    pub fn from_int_terms(tower: &Arc<Tower>, terms: &[([u32; 3], i64)]) -> Self {
        Self::from_terms(
            tower,
            terms.iter().map(|(e, c)| (*e, FieldElement::from_int(tower, *c))),
        )
        .expect("same tower")
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Coefficient tower.
    #[must_use]
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    /// Number of terms.
    #[must_use]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial.
    #[must_use]
    pub fn coeff(&self, e: [u32; 3]) -> FieldElement {
        self.terms
            .get(&Monomial(e))
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    /// True for zero.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (`None` for zero).
    #[must_use]
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when all terms share one total degree (zero counts as
    /// homogeneous).
    #[must_use]
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Leading term in graded-lex order.
    #[must_use]
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Re-expresses the polynomial over a compatible tower.
    pub fn embed(&self, tower: &Arc<Tower>) -> Result<Self, AlgebraError> {
        if Arc::ptr_eq(tower, &self.tower) {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((*m, c.embed(tower)?)))
            .collect::<Result<BTreeMap<_, _>, AlgebraError>>()?;
        Ok(Self {
            tower: tower.clone(),
            terms,
        })
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self), AlgebraError> {
        if Arc::ptr_eq(&self.tower, &other.tower) {
            return Ok((self.clone(), other.clone()));
        }
        let t = common_tower(&self.tower, &other.tower)?;
        Ok((self.embed(&t)?, other.embed(&t)?))
    }

    /// Checked sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let (mut a, b) = self.aligned(other)?;
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        Ok(a)
    }

    /// Checked difference.
    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        let (mut a, b) = self.aligned(other)?;
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        Ok(a)
    }

    /// Checked product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let (a, b) = self.aligned(other)?;
        let mut out = Self::zero(&a.tower);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Sum (panics on incompatible towers).
    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("incompatible towers")
    }

    /// Difference (panics on incompatible towers).
    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("incompatible towers")
    }

    /// Product (panics on incompatible towers).
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("incompatible towers")
    }

    /// Negation.
    #[must_use]
    pub fn neg(&self) -> Self {
        Self {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    /// Multiplies by a field element.
    #[must_use]
    pub fn scale(&self, c: &FieldElement) -> Self {
        let t = common_tower(&self.tower, c.tower()).expect("incompatible towers");
        let c = c.embed(&t).expect("embeds");
        let mut out = Self::zero(&t);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(*m, &a.embed(&t).expect("embeds") * &c);
        }
        out
    }

    /// Multiplies by a rational.
    #[must_use]
    pub fn scale_rational(&self, r: &Rational) -> Self {
        if *r == Rational::default() {
            return Self::zero(&self.tower);
        }
        Self {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.scale(r))).collect(),
        }
    }

    /// Multiplies by an integer.
    #[must_use]
    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_rational(&qi(n))
    }

    /// Multiplies by a monomial.
    #[must_use]
    pub fn shift(&self, e: [u32; 3]) -> Self {
        let m = Monomial(e);
        Self {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect(),
        }
    }

    /// Nonnegative integer power.
    #[must_use]
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(&FieldElement::one(&self.tower));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative.
    #[must_use]
    pub fn partial(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = Self::zero(&self.tower);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0;
            e[i] -= 1;
            out.terms.insert(Monomial(e), c.scale(&qi(i64::from(m.0[i]))));
        }
        out
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, point: &[FieldElement; 3]) -> Result<FieldElement, AlgebraError> {
        let mut tower = self.tower.clone();
        for c in point {
            tower = common_tower(&tower, c.tower())?;
        }
        let pt: Vec<FieldElement> = point
            .iter()
            .map(|c| c.embed(&tower))
            .collect::<Result<_, _>>()?;
        let max: Vec<u32> = (0..3)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<FieldElement>> = (0..3)
            .map(|i| {
                let mut v = vec![FieldElement::one(&tower)];
                for _ in 0..max[i] {
                    let next = v.last().expect("nonempty") * &pt[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = FieldElement::zero(&tower);
        for (m, c) in &self.terms {
            let term = &(&powers[0][m.0[0] as usize] * &powers[1][m.0[1] as usize])
                * &powers[2][m.0[2] as usize];
            acc = &acc + &(&term * &c.embed(&tower)?);
        }
        Ok(acc)
    }

    /// Substitutes polynomials for x, y and z.
    pub fn compose(&self, subs: &[MPoly; 3]) -> Result<Self, AlgebraError> {
        let mut tower = self.tower.clone();
        for s in subs {
            tower = common_tower(&tower, s.tower())?;
        }
        let subs: Vec<MPoly> = subs.iter().map(|s| s.embed(&tower)).collect::<Result<_, _>>()?;
        let max: Vec<u32> = (0..3)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MPoly>> = (0..3)
            .map(|i| {
                let mut v = vec![MPoly::constant(&FieldElement::one(&tower))];
                for _ in 0..max[i] {
                    let next = v.last().expect("nonempty").mul(&subs[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(&tower);
        for (m, c) in &self.terms {
            let term = powers[0][m.0[0] as usize]
                .mul(&powers[1][m.0[1] as usize])
                .mul(&powers[2][m.0[2] as usize])
                .scale(c);
            out = out.add(&term);
        }
        Ok(out)
    }

    /// The polynomial `p(m·(x, y, z)ᵀ)` for an invertible 3×3 matrix `m`.
    pub fn linear_substitute(&self, m: &DenseMatrix) -> Result<Self, AlgebraError> {
        if m.nrows() != 3 || m.ncols() != 3 {
            return Err(AlgebraError::DimensionMismatch);
        }
        if m.det()?.is_zero() {
            return Err(AlgebraError::SingularMatrix);
        }
        let tower = common_tower(&self.tower, &m.tower())?;
        let subs: Vec<MPoly> = (0..3)
            .map(|i| {
                MPoly::from_terms(
                    &tower,
                    (0..3).map(|j| {
                        let mut e = [0u32; 3];
                        e[j] = 1;
                        (e, m.get(i, j).clone())
                    }),
                )
            })
            .collect::<Result<_, _>>()?;
        self.compose(&[subs[0].clone(), subs[1].clone(), subs[2].clone()])
    }

    /// Division by a single divisor under graded-lex order: returns
    /// `(quotient, remainder)` with `self = quotient·f + remainder` and no
    /// term of the remainder divisible by the leading monomial of `f`.
    pub fn divide(&self, f: &MPoly) -> Result<(MPoly, MPoly), AlgebraError> {
        let (p, f) = self.aligned(f)?;
        let (lm, lc) = f.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lm = *lm;
        let lc_inv = lc.inv()?;
        let mut work = p.terms;
        let mut quotient = MPoly::zero(&f.tower);
        let mut remainder = MPoly::zero(&f.tower);
        while let Some((m, c)) = work.pop_last() {
            if let Some(qm) = m.div(&lm) {
                let qc = &c * &lc_inv;
                for (fm, fc) in f.terms.iter().rev().skip(1) {
                    let key = fm.mul(&qm);
                    let delta = -(&qc * fc);
                    match work.get_mut(&key) {
                        Some(old) => {
                            let s = &*old + &delta;
                            if s.is_zero() {
                                work.remove(&key);
                            } else {
                                *old = s;
                            }
                        }
                        None => {
                            work.insert(key, delta);
                        }
                    }
                }
                quotient.terms.insert(qm, qc);
            } else {
                remainder.terms.insert(m, c);
            }
        }
        Ok((quotient, remainder))
    }

    /// Normal form modulo the principal ideal `(f)`.
    pub fn reduce_mod(&self, f: &MPoly) -> Result<MPoly, AlgebraError> {
        Ok(self.divide(f)?.1)
    }

    /// Exact quotient when `f` divides `self`.
    #[must_use]
    pub fn exact_div(&self, f: &MPoly) -> Option<MPoly> {
        let (q, r) = self.divide(f).ok()?;
        r.is_zero().then_some(q)
    }

    /// True when `self = c·other` for a nonzero scalar `c` (both zero also
    /// counts), by cross-multiplication of coefficient vectors.
    #[must_use]
    pub fn is_proportional(&self, other: &MPoly) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let Some((m0, a0)) = self.terms.iter().next() else {
            return true;
        };
        let Some(b0) = other.terms.get(m0) else {
            return false;
        };
        self.terms.iter().all(|(m, a)| match other.terms.get(m) {
            Some(b) => a * b0 == b * a0,
            None => false,
        })
    }

    /// Human-readable expansion, highest monomials first.
    #[must_use]
    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (i, v) in ["x", "y", "z"].iter().enumerate() {
                match m.0[i] {
                    0 => {}
                    1 => mono.push((*v).to_string()),
                    e => mono.push(format!("{v}^{e}")),
                }
            }
            let cs = c.to_string();
            let simple = c.as_rational().is_some();
            let term = if mono.is_empty() {
                if simple { cs } else { format!("({cs})") }
            } else if c.is_one() {
                mono.join("*")
            } else if simple {
                format!("{cs}*{}", mono.join("*"))
            } else {
                format!("({cs})*{}", mono.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Determinant of the Jacobian matrix of three polynomials.
pub fn jacobian_det(f: &MPoly, g: &MPoly, h: &MPoly) -> Result<MPoly, AlgebraError> {
    let rows: Vec<Vec<MPoly>> = [f, g, h]
        .iter()
        .map(|p| Var::ALL.iter().map(|&v| p.partial(v)).collect())
        .collect();
    det3(&rows)
}

/// Determinant of a 3×3 matrix of polynomials.
pub fn det3(m: &[Vec<MPoly>]) -> Result<MPoly, AlgebraError> {
    let t1 = m[1][1].checked_mul(&m[2][2])?.checked_sub(&m[1][2].checked_mul(&m[2][1])?)?;
    let t2 = m[1][0].checked_mul(&m[2][2])?.checked_sub(&m[1][2].checked_mul(&m[2][0])?)?;
    let t3 = m[1][0].checked_mul(&m[2][1])?.checked_sub(&m[1][1].checked_mul(&m[2][0])?)?;
    m[0][0]
        .checked_mul(&t1)?
        .checked_sub(&m[0][1].checked_mul(&t2)?)?
        .checked_add(&m[0][2].checked_mul(&t3)?)
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the first row.
pub fn det_poly(m: &[Vec<MPoly>]) -> Result<MPoly, AlgebraError> {
    let n = m.len();
    if n == 3 {
        return det3(m);
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let tower = m[0][0].tower().clone();
    let mut acc = MPoly::zero(&tower);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].checked_mul(&det_poly(&minor)?)?;
        acc = if j % 2 == 0 {
            acc.checked_add(&term)?
        } else {
            acc.checked_sub(&term)?
        };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Arc<Tower> {
        Tower::rationals()
    }

    fn hesse(tv: i64) -> MPoly {
        MPoly::from_int_terms(
            &t(),
            &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1), ([1, 1, 1], tv)],
        )
    }

    #[test]
    fn grlex_order() {
        assert!(Monomial([3, 0, 0]) > Monomial([0, 0, 3]));
        assert!(Monomial([0, 0, 4]) > Monomial([3, 0, 0]));
        assert!(Monomial([1, 2, 0]) > Monomial([1, 1, 1]));
        let m2 = Monomial::of_degree(2);
        assert_eq!(m2[0], Monomial([2, 0, 0]));
        assert_eq!(m2[5], Monomial([0, 0, 2]));
        assert!(m2.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn evaluation_on_the_curve() {
        let f = hesse(1);
        let one = FieldElement::one(&t());
        let p = [one.clone(), one.clone(), -one];
        assert!(f.eval(&p).unwrap().is_zero());
    }

    #[test]
    fn partial_of_hesse() {
        let f = hesse(5);
        let fx = f.partial(Var::X);
        assert_eq!(fx, MPoly::from_int_terms(&t(), &[([2, 0, 0], 3), ([0, 1, 1], 5)]));
        assert!(MPoly::from_int_terms(&t(), &[([3, 0, 0], 1)]).partial(Var::Y).is_zero());
    }

    #[test]
    fn jacobian_of_coordinates_is_one() {
        let x = MPoly::var(&t(), Var::X);
        let y = MPoly::var(&t(), Var::Y);
        let z = MPoly::var(&t(), Var::Z);
        let j = jacobian_det(&x, &y, &z).unwrap();
        assert_eq!(j, MPoly::constant(&FieldElement::one(&t())));
        let f = hesse(2);
        assert!(jacobian_det(&f, &f, &x).unwrap().is_zero());
    }

    #[test]
    fn reduce_self_is_zero() {
        let f = hesse(3);
        assert!(f.reduce_mod(&f).unwrap().is_zero());
    }

    #[test]
    fn swap_matrix_substitution() {
        let tw = t();
        let o = FieldElement::one(&tw);
        let z = FieldElement::zero(&tw);
        let m = DenseMatrix::from_rows(vec![
            vec![o.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), o.clone()],
            vec![z.clone(), o.clone(), z.clone()],
        ])
        .unwrap();
        let p = MPoly::from_int_terms(&tw, &[([2, 1, 0], 1)]);
        let q = p.linear_substitute(&m).unwrap();
        assert_eq!(q, MPoly::from_int_terms(&tw, &[([2, 0, 1], 1)]));
    }
}
