//! Towers of simple algebraic extensions over the rationals.
//!
//! A tower is an ordered list of levels.  Level `k` adjoins a generator whose
//! monic minimal polynomial has coefficients in the field built by levels
//! `0..k`.  Elements are stored as flat coordinate vectors in the product
//! power basis, with level 0 varying fastest, so the field of a prefix tower
//! occupies the leading coordinates of the larger one.

use std::fmt;
use std::sync::Arc;

use super::field::FieldElement;
use super::rational::{format_rational, Rational};
use super::univariate::UniPoly;
use super::AlgebraError;

/// One level of a tower: a named generator and its minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    name: String,
    /// Coefficients in ascending degree; each one is a flat element of the
    /// field below this level.  The last coefficient is one.
    minpoly: Vec<Vec<Rational>>,
}

impl Level {
    /// Generator name.
    #[must_use]
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Degree of the minimal polynomial.
    #[must_use]
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Minimal polynomial coefficients, ascending, as flat lower-field vectors.
    #[must_use]
    pub fn minpoly(&self) -> &[Vec<Rational>] {
        &self.minpoly
    }
}

/// An iterated extension ℚ ⊂ ℚ(α₀) ⊂ ℚ(α₀, α₁) ⊂ …
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    levels: Vec<Level>,
    /// `sizes[k]` is the absolute degree of the field built by the first `k`
    /// levels; `sizes[0] = 1`.
    sizes: Vec<usize>,
}

impl Tower {
    /// The field of rational numbers (no levels).
    #[must_use]
    pub fn rationals() -> Arc<Tower> {
        Arc::new(Tower {
            levels: Vec::new(),
            sizes: vec![1],
        })
    }

    /// ℚ(ε) with ε a root of w² − w + 1 (a primitive sixth root of unity).
    #[must_use]
    pub fn eisenstein() -> Arc<Tower> {
        let one = Rational::from_integer(1.into());
        Self::rationals()
            .push_unchecked(
                "eps",
                vec![vec![one.clone()], vec![-one.clone()], vec![one]],
            )
            .expect("fresh name")
    }

    /// Appends a level without any irreducibility check.
    ///
    /// Callers must guarantee irreducibility themselves; [`tower_extend`]
    /// is the checked entry point.
    pub fn push_unchecked(
        self: &Arc<Self>,
        name: &str,
        minpoly: Vec<Vec<Rational>>,
    ) -> Result<Arc<Tower>, AlgebraError> {
        if self.levels.iter().any(|l| l.name == name) {
            return Err(AlgebraError::NameCollision(name.to_string()));
        }
        let n = self.degree();
        if minpoly.len() < 3 {
            return Err(AlgebraError::DegreeUnsupported(minpoly.len().saturating_sub(1)));
        }
        if minpoly.iter().any(|c| c.len() != n) {
            return Err(AlgebraError::DimensionMismatch);
        }
        let lead = minpoly.last().expect("nonempty");
        let one = Rational::from_integer(1.into());
        if lead[0] != one || lead[1..].iter().any(|c| *c != Rational::default()) {
            return Err(AlgebraError::NotMonic);
        }
        let mut levels = self.levels.clone();
        let d = minpoly.len() - 1;
        levels.push(Level {
            name: name.to_string(),
            minpoly,
        });
        let mut sizes = self.sizes.clone();
        sizes.push(n * d);
        Ok(Arc::new(Tower { levels, sizes }))
    }

    /// Number of levels.
    #[must_use]
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Absolute degree over ℚ.
    #[must_use]
    pub fn degree(&self) -> usize {
        *self.sizes.last().expect("sizes nonempty")
    }

    /// Absolute degree of the subfield built by the first `k` levels.
    #[must_use]
    pub fn size_at(&self, k: usize) -> usize {
        self.sizes[k]
    }

    /// The levels, bottom first.
    #[must_use]
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Position of the level with the given generator name.
    #[must_use]
    pub fn level_index(&self, name: &str) -> Option<usize> {
        self.levels.iter().position(|l| l.name == name)
    }

    /// True when `self` is a prefix of `other` (same levels, possibly fewer).
    #[must_use]
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.levels.len() <= other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a == b)
    }

    /// The tower made of the first `k` levels.
    #[must_use]
    pub fn prefix(&self, k: usize) -> Arc<Tower> {
        Arc::new(Tower {
            levels: self.levels[..k].to_vec(),
            sizes: self.sizes[..=k].to_vec(),
        })
    }

    /// Exponent vector of flat basis index `b` (one exponent per level).
    #[must_use]
    pub fn basis_exponents(&self, mut b: usize) -> Vec<usize> {
        let mut e = vec![0; self.levels.len()];
        for k in (0..self.levels.len()).rev() {
            e[k] = b / self.sizes[k];
            b %= self.sizes[k];
        }
        e
    }

    /// Multiplication in the field built by the first `k` levels.
    pub(crate) fn mul_at(&self, k: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if k == 0 {
            return vec![&a[0] * &b[0]];
        }
        if is_base_scalar(a) {
            return scale(b, &a[0]);
        }
        if is_base_scalar(b) {
            return scale(a, &b[0]);
        }
        let m = self.sizes[k - 1];
        let n = self.levels[k - 1].degree();
        let ac: Vec<&[Rational]> = a.chunks(m).collect();
        let bc: Vec<&[Rational]> = b.chunks(m).collect();
        let mut prod: Vec<Option<Vec<Rational>>> = vec![None; 2 * n - 1];
        for (i, x) in ac.iter().enumerate() {
            if is_zero(x) {
                continue;
            }
            for (j, y) in bc.iter().enumerate() {
                if is_zero(y) {
                    continue;
                }
                let p = self.mul_at(k - 1, x, y);
                accumulate(&mut prod[i + j], &p, false);
            }
        }
        self.reduce_top(k, prod)
    }

    /// Reduces a polynomial in the level-`k` generator (chunks of the lower
    /// field) modulo the level's minimal polynomial.
    fn reduce_top(&self, k: usize, mut prod: Vec<Option<Vec<Rational>>>) -> Vec<Rational> {
        let m = self.sizes[k - 1];
        let level = &self.levels[k - 1];
        let n = level.degree();
        for j in (n..prod.len()).rev() {
            let Some(c) = prod[j].take() else { continue };
            if is_zero(&c) {
                continue;
            }
            for (l, pl) in level.minpoly[..n].iter().enumerate() {
                if is_zero(pl) {
                    continue;
                }
                let t = self.mul_at(k - 1, &c, pl);
                accumulate(&mut prod[j - n + l], &t, true);
            }
        }
        let mut out = Vec::with_capacity(m * n);
        for slot in prod.into_iter().take(n) {
            match slot {
                Some(v) => out.extend(v),
                None => out.extend(std::iter::repeat(Rational::default()).take(m)),
            }
        }
        out.resize(m * n, Rational::default());
        out
    }

    /// Inverse in the field built by the first `k` levels, or `None` for zero.
    pub(crate) fn inv_at(&self, k: usize, a: &[Rational]) -> Option<Vec<Rational>> {
        if is_zero(a) {
            return None;
        }
        if k == 0 {
            return Some(vec![a[0].recip()]);
        }
        if is_base_scalar(a) {
            let r = a[0].recip();
            let mut out = vec![Rational::default(); a.len()];
            out[0] = r;
            return Some(out);
        }
        let m = self.sizes[k - 1];
        let level = &self.levels[k - 1];
        let n = level.degree();
        let lower = LowerPolyOps { tower: self, k: k - 1 };
        // extended Euclid on (minpoly, a) over the lower field
        let mut r0: Vec<Vec<Rational>> = level.minpoly.clone();
        let mut r1: Vec<Vec<Rational>> = a.chunks(m).map(<[Rational]>::to_vec).collect();
        trim(&mut r1);
        let mut s0: Vec<Vec<Rational>> = Vec::new();
        let mut s1: Vec<Vec<Rational>> = vec![unit(m)];
        while r1.len() > 1 {
            let (qq, r) = lower.divrem(&r0, &r1)?;
            let s = lower.sub(&s0, &lower.mul(&qq, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            if r1.is_empty() {
                // common factor with the minimal polynomial: not a field
                return None;
            }
        }
        let c_inv = self.inv_at(k - 1, &r1[0])?;
        let mut out = Vec::with_capacity(m * n);
        for i in 0..n {
            match s1.get(i) {
                Some(c) => out.extend(self.mul_at(k - 1, c, &c_inv)),
                None => out.extend(std::iter::repeat(Rational::default()).take(m)),
            }
        }
        Some(out)
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.levels.is_empty() {
            return write!(f, "Q");
        }
        write!(f, "Q")?;
        for (k, level) in self.levels.iter().enumerate() {
            let lower = self.prefix(k);
            let coeffs: Vec<FieldElement> = level
                .minpoly
                .iter()
                .map(|c| FieldElement::from_coords(&lower, c.clone()))
                .collect();
            let poly = UniPoly::new(&lower, coeffs);
            write!(f, "[{}: {}]", level.name, poly.display_in(&level.name))?;
        }
        Ok(())
    }
}

/// Formats a flat coordinate vector as a sum of basis monomials.
pub(crate) fn format_coords(tower: &Tower, c: &[Rational]) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for b in (0..c.len()).rev() {
        let v = &c[b];
        if *v == Rational::default() {
            continue;
        }
        let e = tower.basis_exponents(b);
        let mut mono = Vec::new();
        for (k, &ek) in e.iter().enumerate().rev() {
            let name = tower.levels[k].name();
            match ek {
                0 => {}
                1 => mono.push(name.to_string()),
                _ => mono.push(format!("{name}^{ek}")),
            }
        }
        let neg = *v < Rational::default();
        let abs = if neg { -v.clone() } else { v.clone() };
        let one = Rational::from_integer(1.into());
        let s = if mono.is_empty() {
            format_rational(&abs)
        } else if abs == one {
            mono.join("*")
        } else {
            format!("{}*{}", format_rational(&abs), mono.join("*"))
        };
        parts.push((neg, s));
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, s)) in parts.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(s);
    }
    out
}

/// Polynomial arithmetic with coefficients in the field of the first `k`
/// levels, used by the inversion routine.
struct LowerPolyOps<'a> {
    tower: &'a Tower,
    k: usize,
}

impl LowerPolyOps<'_> {
    fn mul(&self, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let m = self.tower.sizes[self.k];
        let mut out: Vec<Option<Vec<Rational>>> = vec![None; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if is_zero(y) {
                    continue;
                }
                accumulate(&mut out[i + j], &self.tower.mul_at(self.k, x, y), false);
            }
        }
        let mut v: Vec<Vec<Rational>> = out
            .into_iter()
            .map(|c| c.unwrap_or_else(|| vec![Rational::default(); m]))
            .collect();
        trim(&mut v);
        v
    }

    fn sub(&self, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let m = self.tower.sizes[self.k];
        let len = a.len().max(b.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let mut c = a.get(i).cloned().unwrap_or_else(|| vec![Rational::default(); m]);
            if let Some(y) = b.get(i) {
                for (ci, yi) in c.iter_mut().zip(y) {
                    *ci -= yi;
                }
            }
            out.push(c);
        }
        trim(&mut out);
        out
    }

    fn divrem(
        &self,
        a: &[Vec<Rational>],
        b: &[Vec<Rational>],
    ) -> Option<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
        let m = self.tower.sizes[self.k];
        let lead_inv = self.tower.inv_at(self.k, b.last()?)?;
        let mut r: Vec<Vec<Rational>> = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return Some((Vec::new(), r));
        }
        let mut qq = vec![vec![Rational::default(); m]; r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = self.tower.mul_at(self.k, r.last().expect("nonempty"), &lead_inv);
            for (i, bi) in b.iter().enumerate() {
                if is_zero(bi) {
                    continue;
                }
                let t = self.tower.mul_at(self.k, &c, bi);
                for (x, y) in r[shift + i].iter_mut().zip(&t) {
                    *x -= y;
                }
            }
            qq[shift] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut qq);
        Some((qq, r))
    }
}

fn unit(m: usize) -> Vec<Rational> {
    let mut v = vec![Rational::default(); m];
    v[0] = Rational::from_integer(1.into());
    v
}

fn trim(p: &mut Vec<Vec<Rational>>) {
    while p.last().is_some_and(|c| is_zero(c)) {
        p.pop();
    }
}

pub(crate) fn is_zero(a: &[Rational]) -> bool {
    a.iter().all(|x| *x == Rational::default())
}

pub(crate) fn is_base_scalar(a: &[Rational]) -> bool {
    a[1..].iter().all(|x| *x == Rational::default())
}

fn scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

fn accumulate(slot: &mut Option<Vec<Rational>>, v: &[Rational], subtract: bool) {
    match slot {
        Some(acc) => {
            for (x, y) in acc.iter_mut().zip(v) {
                if subtract {
                    *x -= y;
                } else {
                    *x += y;
                }
            }
        }
        None => {
            *slot = Some(if subtract {
                v.iter().map(|x| -x).collect()
            } else {
                v.to_vec()
            });
        }
    }
}

/// Adjoins a root of `minpoly` (monic, ascending coefficients over `base`)
/// as a new level named `name`.
///
/// Quadratic and cubic polynomials are supported; they are irreducible
/// exactly when they have no root in the base field.  A root is searched
/// through the numeric embeddings of the base and verified exactly; when no
/// root exists this is certified by a prime of residue degree one at which
/// the reduced polynomial has no root.
///
/// # Errors
/// * [`AlgebraError::Reducible`] with an exact root when one exists.
/// * [`AlgebraError::NameCollision`] when `name` is already used.
/// * [`AlgebraError::DegreeUnsupported`] outside degrees 2 and 3.
/// * [`AlgebraError::IrreducibilityUndecided`] if neither a root nor a
///   certificate is found.
pub fn tower_extend(
    base: &Arc<Tower>,
    name: &str,
    minpoly: &UniPoly,
) -> Result<Arc<Tower>, AlgebraError> {
    if base.level_index(name).is_some() {
        return Err(AlgebraError::NameCollision(name.to_string()));
    }
    let poly = minpoly.embed(base)?;
    let deg = poly.degree().ok_or(AlgebraError::DegreeUnsupported(0))?;
    if !(2..=3).contains(&deg) {
        return Err(AlgebraError::DegreeUnsupported(deg));
    }
    if !poly.lead().is_one() {
        return Err(AlgebraError::NotMonic);
    }
    if let Some(root) = super::roots::find_root(&poly) {
        return Err(AlgebraError::Reducible(Box::new(root)));
    }
    if !super::modp::certify_rootless(&poly) {
        return Err(AlgebraError::IrreducibilityUndecided);
    }
    let coeffs = poly.coeffs().iter().map(|c| c.coords().to_vec()).collect();
    base.push_unchecked(name, coeffs)
}
