//! Dense univariate polynomials over a tower field.

use std::sync::Arc;

use super::field::FieldElement;
use super::tower::Tower;
use super::AlgebraError;

/// Univariate polynomial with ascending coefficients; never has a zero
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    tower: Arc<Tower>,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    /// Builds a polynomial from ascending coefficients, embedding each one
    /// into `tower`.
    ///
    /// # Panics
    /// Panics when a coefficient does not embed into `tower`.
    #[must_use]
    pub fn new(tower: &Arc<Tower>, coeffs: Vec<FieldElement>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.embed(tower).expect("coefficient outside tower"))
            .collect();
        let mut p = Self {
            tower: tower.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// The zero polynomial.
    #[must_use]
    pub fn zero(tower: &Arc<Tower>) -> Self {
        Self {
            tower: tower.clone(),
            coeffs: Vec::new(),
        }
    }

    /// A constant polynomial.
    #[must_use]
    pub fn constant(c: FieldElement) -> Self {
        let tower = c.tower().clone();
        Self::new(&tower, vec![c])
    }

    /// The polynomial `s`.
    #[must_use]
    pub fn variable(tower: &Arc<Tower>) -> Self {
        Self::new(
            tower,
            vec![FieldElement::zero(tower), FieldElement::one(tower)],
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Coefficient tower.
    #[must_use]
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    /// Ascending coefficients.
    #[must_use]
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `s^i` (zero past the degree).
    #[must_use]
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.tower))
    }

    /// Degree, or `None` for the zero polynomial.
    #[must_use]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for the zero polynomial.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient.
    ///
    /// # Panics
    /// Panics on the zero polynomial.
    #[must_use]
    pub fn lead(&self) -> &FieldElement {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    /// Re-expresses the polynomial over another compatible tower.
    pub fn embed(&self, tower: &Arc<Tower>) -> Result<Self, AlgebraError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(tower))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            tower: tower.clone(),
            coeffs,
        })
    }

    /// Horner evaluation.
    #[must_use]
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.tower);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Sum.
    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::new(&self.tower, coeffs)
    }

    /// Difference.
    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Self::new(&self.tower, coeffs)
    }

    /// Product.
    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.tower);
        }
        let mut out = vec![FieldElement::zero(&self.tower); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.tower, out)
    }

    /// Multiplies every coefficient by `c`.
    #[must_use]
    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.tower, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Formal derivative.
    #[must_use]
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&super::rational::qi(i as i64)))
            .collect();
        Self::new(&self.tower, coeffs)
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let lead_inv = d.lead().inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.tower), self.clone()));
        }
        let mut qc = vec![FieldElement::zero(&self.tower); r.len() - dd];
        while r.len() > dd {
            let top = r.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - dd;
            let c = &top * &lead_inv;
            for (i, di) in d.coeffs[..dd].iter().enumerate() {
                if !di.is_zero() {
                    r[shift + i] = &r[shift + i] - &(&c * di);
                }
            }
            qc[shift] = c;
        }
        Ok((Self::new(&self.tower, qc), Self::new(&self.tower, r)))
    }

    /// Monic greatest common divisor (zero if both are zero).
    #[must_use]
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides by the leading coefficient (zero stays zero).
    #[must_use]
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        self.scale(&inv)
    }

    /// The polynomial `p(s + a)`.
    #[must_use]
    pub fn shift(&self, a: &FieldElement) -> Self {
        // Horner with the linear polynomial s + a
        let lin = Self::new(&self.tower, vec![a.clone(), FieldElement::one(&self.tower)]);
        let mut acc = Self::zero(&self.tower);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.embed(&self.tower).expect("same tower")));
        }
        acc
    }

    /// Order of vanishing at `s = 0` (`None` for the zero polynomial).
    #[must_use]
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Human-readable form using `var` as the variable name.
    #[must_use]
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = c.to_string();
            let term = if mono.is_empty() {
                format!("({cs})")
            } else if c.is_one() {
                mono
            } else {
                format!("({cs})*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(c: &[i64]) -> UniPoly {
        let t = Tower::rationals();
        UniPoly::new(&t, c.iter().map(|&x| FieldElement::from_int(&t, x)).collect())
    }

    #[test]
    fn division_of_cubic_by_root_factor() {
        // z^3 + z + 2 = (z + 1)(z^2 - z + 2)
        let (qq, r) = qpoly(&[2, 1, 0, 1]).divrem(&qpoly(&[1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(qq, qpoly(&[2, -1, 1]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = qpoly(&[-2, 0, 2]); // 2(x-1)(x+1)
        let b = qpoly(&[-3, 3]); // 3(x-1)
        assert_eq!(a.gcd(&b), qpoly(&[-1, 1]));
    }

    #[test]
    fn shift_moves_roots() {
        let p = qpoly(&[-1, 0, 1]); // s^2 - 1
        let s = p.shift(&FieldElement::from_int(&Tower::rationals(), 1));
        assert_eq!(s.order_at_zero(), Some(1));
    }
}
