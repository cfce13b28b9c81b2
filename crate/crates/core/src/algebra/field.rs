//! Elements of a tower field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::tower::{format_coords, is_zero, Tower};
use super::AlgebraError;

/// An element of the field defined by a [`Tower`].
///
/// The value is stored as flat coordinates in the product power basis of the
/// tower.  Two elements are equal when they live in compatible towers (one a
/// prefix of the other) and their coordinates agree after zero padding.
#[derive(Clone)]
pub struct FieldElement {
    tower: Arc<Tower>,
    coords: Vec<Rational>,
}

/// Returns the larger of two towers when one is a prefix of the other.
pub fn common_tower(a: &Arc<Tower>, b: &Arc<Tower>) -> Result<Arc<Tower>, AlgebraError> {
    if Arc::ptr_eq(a, b) {
        return Ok(a.clone());
    }
    if a.height() >= b.height() {
        if b.is_prefix_of(a) {
            return Ok(a.clone());
        }
    } else if a.is_prefix_of(b) {
        return Ok(b.clone());
    }
    Err(AlgebraError::IncompatibleTowers)
}

impl FieldElement {
    /// Zero of the given tower.
    #[must_use]
    pub fn zero(tower: &Arc<Tower>) -> Self {
        Self {
            tower: tower.clone(),
            coords: vec![Rational::zero(); tower.degree()],
        }
    }

    /// One of the given tower.
    #[must_use]
    pub fn one(tower: &Arc<Tower>) -> Self {
        Self::from_rational(tower, Rational::one())
    }

    /// Embeds a rational number.
    #[must_use]
    pub fn from_rational(tower: &Arc<Tower>, r: Rational) -> Self {
        let mut coords = vec![Rational::zero(); tower.degree()];
        coords[0] = r;
        Self {
            tower: tower.clone(),
            coords,
        }
    }

    /// Embeds an integer.
    #[must_use]
    pub fn from_int(tower: &Arc<Tower>, n: i64) -> Self {
        Self::from_rational(tower, Rational::from_integer(n.into()))
    }

    /// The generator of level `k`.
    ///
    /// # Panics
    /// Panics when `k` is not a level of the tower.
    #[must_use]
    pub fn generator(tower: &Arc<Tower>, k: usize) -> Self {
        assert!(k < tower.height(), "no such level");
        let mut coords = vec![Rational::zero(); tower.degree()];
        coords[tower.size_at(k)] = Rational::one();
        Self {
            tower: tower.clone(),
            coords,
        }
    }

    /// The generator with the given name.
    #[must_use]
    pub fn named_generator(tower: &Arc<Tower>, name: &str) -> Option<Self> {
        tower.level_index(name).map(|k| Self::generator(tower, k))
    }

    /// Builds an element from flat coordinates; shorter vectors are padded.
    ///
    /// # Panics
    /// Panics when more coordinates than the absolute degree are supplied.
    #[must_use]
    pub fn from_coords(tower: &Arc<Tower>, mut coords: Vec<Rational>) -> Self {
        assert!(coords.len() <= tower.degree(), "too many coordinates");
        coords.resize(tower.degree(), Rational::zero());
        Self {
            tower: tower.clone(),
            coords,
        }
    }

    /// The tower this element lives in.
    #[must_use]
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    /// Flat coordinates in the product power basis.
    #[must_use]
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// True for zero.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        is_zero(&self.coords)
    }

    /// True for one.
    #[must_use]
    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && is_zero(&self.coords[1..])
    }

    /// The rational value, if the element lies in ℚ.
    #[must_use]
    pub fn as_rational(&self) -> Option<&Rational> {
        if is_zero(&self.coords[1..]) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Number of leading levels actually used by this element.
    #[must_use]
    pub fn support_height(&self) -> usize {
        (0..=self.tower.height())
            .find(|&k| is_zero(&self.coords[self.tower.size_at(k)..]))
            .unwrap_or(self.tower.height())
    }

    /// Re-expresses the element in a tower that has this one as a prefix,
    /// or in a prefix tower when the dropped coordinates vanish.
    pub fn embed(&self, tower: &Arc<Tower>) -> Result<Self, AlgebraError> {
        if Arc::ptr_eq(&self.tower, tower) {
            return Ok(self.clone());
        }
        if self.tower.is_prefix_of(tower) {
            let mut coords = self.coords.clone();
            coords.resize(tower.degree(), Rational::zero());
            return Ok(Self {
                tower: tower.clone(),
                coords,
            });
        }
        if tower.is_prefix_of(&self.tower) {
            let n = tower.degree();
            if !is_zero(&self.coords[n..]) {
                return Err(AlgebraError::NotInSubfield);
            }
            return Ok(Self {
                tower: tower.clone(),
                coords: self.coords[..n].to_vec(),
            });
        }
        Err(AlgebraError::IncompatibleTowers)
    }

    fn aligned(&self, other: &Self) -> Result<(Arc<Tower>, Self, Self), AlgebraError> {
        if Arc::ptr_eq(&self.tower, &other.tower) {
            return Ok((self.tower.clone(), self.clone(), other.clone()));
        }
        let t = common_tower(&self.tower, &other.tower)?;
        Ok((t.clone(), self.embed(&t)?, other.embed(&t)?))
    }

    /// Checked addition.
    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if Arc::ptr_eq(&self.tower, &other.tower) {
            return Ok(self.add_same(other));
        }
        let (_, a, b) = self.aligned(other)?;
        Ok(a.add_same(&b))
    }

    /// Checked subtraction.
    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        if Arc::ptr_eq(&self.tower, &other.tower) {
            return Ok(self.sub_same(other));
        }
        let (_, a, b) = self.aligned(other)?;
        Ok(a.sub_same(&b))
    }

    /// Checked multiplication.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if Arc::ptr_eq(&self.tower, &other.tower) {
            return Ok(self.mul_same(other));
        }
        let (_, a, b) = self.aligned(other)?;
        Ok(a.mul_same(&b))
    }

    /// Checked division.
    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let h = self.tower.height();
        let coords = self
            .tower
            .inv_at(h, &self.coords)
            .ok_or(AlgebraError::DivisionByZero)?;
        Ok(Self {
            tower: self.tower.clone(),
            coords,
        })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(&self.tower);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_same(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul_same(&sq);
            }
        }
        Ok(acc)
    }

    /// Multiplies by a rational scalar.
    #[must_use]
    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    fn add_same(&self, other: &Self) -> Self {
        Self {
            tower: self.tower.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub_same(&self, other: &Self) -> Self {
        Self {
            tower: self.tower.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let h = self.tower.height();
        Self {
            tower: self.tower.clone(),
            coords: self.tower.mul_at(h, &self.coords, &other.coords),
        }
    }

    /// Nested coefficient lists: a polynomial in the top generator whose
    /// coefficients are nested lists one level down, base case rationals.
    /// Trailing zero entries are stripped at every level.
    #[must_use]
    pub fn to_nested(&self) -> Nested {
        nest(&self.tower, self.tower.height(), &self.coords)
    }

    /// Inverse of [`FieldElement::to_nested`].
    pub fn from_nested(tower: &Arc<Tower>, nested: &Nested) -> Result<Self, AlgebraError> {
        let mut coords = vec![Rational::zero(); tower.degree()];
        unnest(tower, tower.height(), nested, &mut coords)?;
        Ok(Self {
            tower: tower.clone(),
            coords,
        })
    }
}

/// Nested coefficient representation used for serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nested {
    /// A rational leaf.
    Leaf(Rational),
    /// Coefficients of increasing powers of a generator.
    List(Vec<Nested>),
}

fn nest(tower: &Tower, k: usize, c: &[Rational]) -> Nested {
    if k == 0 {
        return Nested::Leaf(c[0].clone());
    }
    let m = tower.size_at(k - 1);
    let mut items: Vec<Nested> = c.chunks(m).map(|ch| nest(tower, k - 1, ch)).collect();
    let zero_chunks: Vec<bool> = c.chunks(m).map(is_zero).collect();
    while zero_chunks.get(items.len().wrapping_sub(1)).copied().unwrap_or(false) {
        items.pop();
    }
    Nested::List(items)
}

fn unnest(tower: &Tower, k: usize, n: &Nested, out: &mut [Rational]) -> Result<(), AlgebraError> {
    match (k, n) {
        (0, Nested::Leaf(r)) => {
            out[0] = r.clone();
            Ok(())
        }
        (0, Nested::List(_)) | (_, Nested::Leaf(_)) => Err(AlgebraError::MalformedCoefficient),
        (_, Nested::List(items)) => {
            let m = tower.size_at(k - 1);
            let deg = tower.levels()[k - 1].degree();
            if items.len() > deg {
                return Err(AlgebraError::MalformedCoefficient);
            }
            for (i, item) in items.iter().enumerate() {
                unnest(tower, k - 1, item, &mut out[i * m..(i + 1) * m])?;
            }
            Ok(())
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.tower, &other.tower) {
            return self.coords == other.coords;
        }
        match self.aligned(other) {
            Ok((_, a, b)) => a.coords == b.coords,
            Err(_) => false,
        }
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coords(&self.tower, &self.coords))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("incompatible towers")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("incompatible towers")
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$checked(rhs).expect("incompatible towers")
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$checked(&rhs).expect("incompatible towers")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero or incompatible towers")
    }
}

impl Div<FieldElement> for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            tower: self.tower.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi};

    fn eps() -> (Arc<Tower>, FieldElement) {
        let t = Tower::eisenstein();
        let e = FieldElement::generator(&t, 0);
        (t, e)
    }

    #[test]
    fn eps_squared_reduces() {
        let (t, e) = eps();
        assert_eq!(&e * &e, &e - &FieldElement::one(&t));
    }

    #[test]
    fn eps_inverse_is_one_minus_eps() {
        let (t, e) = eps();
        assert_eq!(e.inv().unwrap(), &FieldElement::one(&t) - &e);
    }

    #[test]
    fn eps_is_primitive_sixth_root() {
        let (t, e) = eps();
        assert_eq!(e.pow(3).unwrap(), FieldElement::from_int(&t, -1));
        assert_eq!(e.pow(6).unwrap(), FieldElement::one(&t));
        assert_eq!(e.pow(-1).unwrap() * &e, FieldElement::one(&t));
    }

    #[test]
    fn rational_sum() {
        let t = Tower::rationals();
        let a = FieldElement::from_rational(&t, q(1, 2));
        let b = FieldElement::from_rational(&t, q(1, 3));
        assert_eq!((a + b).as_rational(), Some(&q(5, 6)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let (t, e) = eps();
        assert_eq!(e.checked_div(&FieldElement::zero(&t)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn prefix_embedding_mixes_towers() {
        let (t, e) = eps();
        let r = FieldElement::from_rational(&Tower::rationals(), qi(3));
        let s = &e + &r;
        assert!(Arc::ptr_eq(s.tower(), &t));
        assert_eq!(s.to_string(), "eps + 3");
    }

    #[test]
    fn nested_round_trip() {
        let (t, e) = eps();
        let x = &e.scale(&qi(6)) - &FieldElement::from_int(&t, 6);
        let n = x.to_nested();
        assert_eq!(
            n,
            Nested::List(vec![Nested::Leaf(qi(-6)), Nested::Leaf(qi(6))])
        );
        assert_eq!(FieldElement::from_nested(&t, &n).unwrap(), x);
        assert_eq!(FieldElement::zero(&t).to_nested(), Nested::List(vec![]));
    }
}
