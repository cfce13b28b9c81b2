//! Local intersection multiplicity of plane curves at a point, by Fulton's
//! algorithm and, for a conic against a curve, by a rational
//! parametrization of the conic.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{bivariate_gcd, common_tower, AlgebraError, FieldElement, MPoly, Tower, UniPoly, Var};
use crate::cayley::{CayleyError, ConicCoeffs, PlaneCurve};
use crate::hesse::{all_osculating_conics, ConicAtlas, ConicMethod, HesseError, HessePencilCurve};

/// Errors raised by the multiplicity computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectError {
    /// The conic's symmetric matrix is singular.
    #[error("conic is degenerate")]
    DegenerateConic,
    /// The point does not lie on the conic.
    #[error("point is not on the conic")]
    PointNotOnConic,
    /// The curve contains the conic.
    #[error("curve and conic share a component")]
    CommonComponent,
    /// The zero vector was given as a point.
    #[error("the zero vector is not a point")]
    ZeroPoint,
    /// Label outside 1..=27.
    #[error("label {0} is outside 1..=27")]
    LabelOutOfRange(usize),
    /// The two algorithms disagree.
    #[error("parametrization gives {param} but Fulton's algorithm gives {fulton}")]
    MethodDisagreement {
        /// Value from the conic parametrization.
        param: Multiplicity,
        /// Value from Fulton's algorithm.
        fulton: Multiplicity,
    },
    /// The osculating conic meets the curve with multiplicity below six.
    #[error("P{label}: multiplicity {multiplicity} is below 6")]
    NotSextactic {
        /// Point label.
        label: usize,
        /// Measured multiplicity.
        multiplicity: u32,
    },
    /// Failure in the Hesse constructions.
    #[error(transparent)]
    Hesse(#[from] HesseError),
    /// Failure in the curve constructions.
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    /// Arithmetic failure.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An intersection multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    /// A finite value.
    Finite(u32),
    /// The curves share a component through the point.
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "infinite"),
        }
    }
}

/// Two affine polynomials in `x, y` with the point of interest at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedPair {
    /// First polynomial.
    pub f: MPoly,
    /// Second polynomial.
    pub g: MPoly,
    /// Index of the projective coordinate set to one.
    pub chart: usize,
}

fn embed_point(tower: &Arc<Tower>, p: &[FieldElement; 3]) -> Result<[FieldElement; 3], AlgebraError> {
    Ok([p[0].embed(tower)?, p[1].embed(tower)?, p[2].embed(tower)?])
}

/// Dehomogenizes two forms at the largest-index nonzero coordinate of `p`
/// and translates `p` to the origin.
///
/// # Errors
/// [`IntersectError::ZeroPoint`] or incompatible towers.
pub fn localize(f: &MPoly, g: &MPoly, p: &[FieldElement; 3]) -> Result<LocalizedPair, IntersectError> {
    let tower = common_tower(&common_tower(f.tower(), g.tower())?, &point_tower(p)?)?;
    let p = embed_point(&tower, p)?;
    let chart = (0..3).rev().find(|&i| !p[i].is_zero()).ok_or(IntersectError::ZeroPoint)?;
    let inv = p[chart].inv()?;
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let mut subs: [MPoly; 3] = std::array::from_fn(|_| MPoly::constant(&FieldElement::one(&tower)));
    for (slot, &i) in others.iter().enumerate() {
        let var = MPoly::var(&tower, if slot == 0 { Var::X } else { Var::Y });
        subs[i] = var.add(&MPoly::constant(&(&p[i] * &inv)));
    }
    Ok(LocalizedPair { f: f.embed(&tower)?.compose(&subs)?, g: g.embed(&tower)?.compose(&subs)?, chart })
}

fn point_tower(p: &[FieldElement; 3]) -> Result<Arc<Tower>, AlgebraError> {
    let t = common_tower(p[0].tower(), p[1].tower())?;
    common_tower(&t, p[2].tower())
}

/// `p(x, 0)` as `(degree, leading coefficient, order)`, or `None` when it
/// vanishes identically.
fn restriction_to_x_axis(p: &MPoly) -> Option<(u32, FieldElement, u32)> {
    let mut best: Option<(u32, FieldElement, u32)> = None;
    for (m, c) in p.terms() {
        if m.0[1] != 0 {
            continue;
        }
        let e = m.0[0];
        best = Some(match best {
            None => (e, c.clone(), e),
            Some((d, lc, o)) => {
                if e > d {
                    (e, c.clone(), o.min(e))
                } else {
                    (d, lc, o.min(e))
                }
            }
        });
    }
    best
}

fn divide_by_y(p: &MPoly) -> MPoly {
    let tower = p.tower().clone();
    MPoly::from_terms(&tower, p.terms().map(|(m, c)| ([m.0[0], m.0[1] - 1, m.0[2]], c.clone())))
        .expect("same tower")
}

/// Fulton's algorithm for the intersection multiplicity at the origin.
///
/// A common component through the origin, detected up front by an exact
/// bivariate gcd, yields [`Multiplicity::Infinite`].  Otherwise the
/// reduction terminates because every step lowers either the degree of
/// a restriction to the `x`-axis or the remaining multiplicity.
#[must_use]
pub fn fulton_multiplicity(pair: &LocalizedPair) -> Multiplicity {
    let mut f = pair.f.clone();
    let mut g = pair.g.clone();
    let mut acc: u32 = 0;
    if f.is_zero() || g.is_zero() {
        return Multiplicity::Infinite;
    }
    if !f.coeff([0, 0, 0]).is_zero() || !g.coeff([0, 0, 0]).is_zero() {
        return Multiplicity::Finite(0);
    }
    if common_component_at_origin(&f, &g) {
        return Multiplicity::Infinite;
    }
    loop {
        if f.is_zero() || g.is_zero() {
            return Multiplicity::Infinite;
        }
        if !f.coeff([0, 0, 0]).is_zero() || !g.coeff([0, 0, 0]).is_zero() {
            return Multiplicity::Finite(acc);
        }
        match (restriction_to_x_axis(&f), restriction_to_x_axis(&g)) {
            (None, None) => return Multiplicity::Infinite,
            (Some(_), None) => std::mem::swap(&mut f, &mut g),
            (None, Some((_, _, order))) => {
                acc += order;
                f = divide_by_y(&f);
            }
            (Some((r, lf, _)), Some((s, lg, _))) => {
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                } else {
                    g = g.scale(&lf).sub(&f.shift([s - r, 0, 0]).scale(&lg));
                }
            }
        }
    }
}

/// True when `f` and `g` share a factor vanishing at the origin.
fn common_component_at_origin(f: &MPoly, g: &MPoly) -> bool {
    bivariate_gcd(f, g).coeff([0, 0, 0]).is_zero()
}

/// Symmetric bilinear form of a conic.
fn bilinear(q: &ConicCoeffs, u: &[FieldElement; 3], v: &[FieldElement; 3]) -> FieldElement {
    let s = q.symmetric_matrix();
    let mut acc = FieldElement::zero(u[0].tower());
    for i in 0..3 {
        for j in 0..3 {
            acc = &acc + &(&(&u[i] * s.get(i, j)) * &v[j]);
        }
    }
    acc
}

/// Order of vanishing of `F` along the parametrization of `Q` by the lines
/// through `P`, which equals the intersection multiplicity `(F.Q)_P`.
///
/// # Errors
/// [`IntersectError::DegenerateConic`], [`IntersectError::PointNotOnConic`],
/// [`IntersectError::CommonComponent`] when `F` vanishes on `Q`.
pub fn conic_param_multiplicity(
    f: &PlaneCurve,
    q: &ConicCoeffs,
    p: &[FieldElement; 3],
) -> Result<Multiplicity, IntersectError> {
    let tower = common_tower(&common_tower(f.tower(), &q.tower())?, &point_tower(p)?)?;
    let q = q.embed(&tower)?;
    let p = embed_point(&tower, p)?;
    if p.iter().all(FieldElement::is_zero) {
        return Err(IntersectError::ZeroPoint);
    }
    if !q.is_nondegenerate() {
        return Err(IntersectError::DegenerateConic);
    }
    if !q.eval(&p)?.is_zero() {
        return Err(IntersectError::PointNotOnConic);
    }
    let chart = (0..3).rev().find(|&i| !p[i].is_zero()).expect("nonzero point");
    let unit = |i: usize| -> [FieldElement; 3] {
        std::array::from_fn(|k| if k == i { FieldElement::one(&tower) } else { FieldElement::zero(&tower) })
    };
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let (mut v0, mut v1) = (unit(others[0]), unit(others[1]));
    if bilinear(&q, &p, &v1).is_zero() {
        std::mem::swap(&mut v0, &mut v1);
    }
    // V(s) = V0 + (s + s0)·V1 with B(P, V(0)) = 0, so the point P sits at s = 0.
    let s0 = -bilinear(&q, &p, &v0).checked_div(&bilinear(&q, &p, &v1))?;
    let lin: [UniPoly; 3] =
        std::array::from_fn(|k| UniPoly::new(&tower, vec![&v0[k] + &(&s0 * &v1[k]), v1[k].clone()]));
    // Q(V), B(P, V) as polynomials in s.
    let s = q.symmetric_matrix();
    let mut qv = UniPoly::zero(&tower);
    let mut bpv = UniPoly::zero(&tower);
    for i in 0..3 {
        for j in 0..3 {
            qv = qv.add(&lin[i].mul(&lin[j]).scale(s.get(i, j)));
            bpv = bpv.add(&lin[j].scale(&(&p[i] * s.get(i, j))));
        }
    }
    let phi: [UniPoly; 3] = std::array::from_fn(|k| {
        qv.scale(&p[k]).sub(&bpv.mul(&lin[k]).scale(&FieldElement::from_int(&tower, 2)))
    });
    let composite = compose_univariate(&f.poly().embed(&tower)?, &phi);
    match composite.order_at_zero() {
        Some(n) => Ok(Multiplicity::Finite(u32::try_from(n).expect("small order"))),
        None => Err(IntersectError::CommonComponent),
    }
}

fn compose_univariate(f: &MPoly, phi: &[UniPoly; 3]) -> UniPoly {
    let tower = f.tower().clone();
    let max: Vec<u32> = (0..3).map(|i| f.terms().map(|(m, _)| m.0[i]).max().unwrap_or(0)).collect();
    let powers: Vec<Vec<UniPoly>> = (0..3)
        .map(|i| {
            let mut v = vec![UniPoly::constant(FieldElement::one(&tower))];
            for _ in 0..max[i] {
                let next = v.last().expect("nonempty").mul(&phi[i]);
                v.push(next);
            }
            v
        })
        .collect();
    f.terms().fold(UniPoly::zero(&tower), |acc, (m, c)| {
        let t = powers[0][m.0[0] as usize].mul(&powers[1][m.0[1] as usize]).mul(&powers[2][m.0[2] as usize]);
        acc.add(&t.scale(c))
    })
}

/// Fulton's algorithm on a curve and a conic at a projective point.
///
/// # Errors
/// Incompatible towers or a zero point.
pub fn fulton_at_point(
    f: &PlaneCurve,
    q: &ConicCoeffs,
    p: &[FieldElement; 3],
) -> Result<Multiplicity, IntersectError> {
    let pair = localize(f.poly(), &q.to_mpoly(), p)?;
    Ok(fulton_multiplicity(&pair))
}

/// Measured contact of the osculating conic at one sextactic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SextacticType {
    /// Point label.
    pub label: usize,
    /// `(C.O_P)_P`, agreed on by both algorithms.
    pub multiplicity: u32,
    /// Type `s = multiplicity − 5`.
    pub s: u32,
}

/// Multiplicity of the atlas conic at `label` with both algorithms.
///
/// # Errors
/// [`IntersectError::MethodDisagreement`] when the algorithms differ,
/// [`IntersectError::NotSextactic`] when the contact is below six.
pub fn sextactic_type_in(atlas: &ConicAtlas, label: usize) -> Result<SextacticType, IntersectError> {
    let entry = atlas.entry(label).ok_or(IntersectError::LabelOutOfRange(label))?;
    let curve = atlas.curve.curve();
    let param = conic_param_multiplicity(curve, &entry.conic, &entry.point.coords)?;
    let fulton = fulton_at_point(curve, &entry.conic, &entry.point.coords)?;
    if param != fulton {
        return Err(IntersectError::MethodDisagreement { param, fulton });
    }
    match param {
        Multiplicity::Finite(m) if m >= 6 => Ok(SextacticType { label, multiplicity: m, s: m - 5 }),
        Multiplicity::Finite(m) => Err(IntersectError::NotSextactic { label, multiplicity: m }),
        Multiplicity::Infinite => Err(IntersectError::CommonComponent),
    }
}

/// Type of the sextactic point `label` of a Hesse cubic, using the
/// closed-form atlas.
///
/// # Errors
/// As [`sextactic_type_in`].
pub fn sextactic_type(c: &HessePencilCurve, label: usize) -> Result<SextacticType, IntersectError> {
    if !(1..=27).contains(&label) {
        return Err(IntersectError::LabelOutOfRange(label));
    }
    let atlas = all_osculating_conics(c, ConicMethod::ClosedForm)?;
    sextactic_type_in(&atlas, label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<Tower> {
        Tower::rationals()
    }

    fn affine(terms: &[([u32; 2], i64)]) -> MPoly {
        let t: Vec<([u32; 3], i64)> = terms.iter().map(|(e, c)| ([e[0], e[1], 0], *c)).collect();
        MPoly::from_int_terms(&q(), &t)
    }

    fn pair(f: MPoly, g: MPoly) -> LocalizedPair {
        LocalizedPair { f, g, chart: 2 }
    }

    #[test]
    fn transversal_axes() {
        assert_eq!(fulton_multiplicity(&pair(affine(&[([1, 0], 1)]), affine(&[([0, 1], 1)]))), Multiplicity::Finite(1));
    }

    #[test]
    fn line_tangent_to_parabola() {
        let f = affine(&[([0, 1], 1)]);
        let g = affine(&[([0, 1], 1), ([2, 0], -1)]);
        assert_eq!(fulton_multiplicity(&pair(f, g)), Multiplicity::Finite(2));
    }

    #[test]
    fn cusp_against_double_line() {
        let f = affine(&[([0, 2], 1)]);
        let g = affine(&[([0, 2], 1), ([3, 0], 1)]);
        assert_eq!(fulton_multiplicity(&pair(f, g)), Multiplicity::Finite(6));
    }

    #[test]
    fn nonvanishing_gives_zero() {
        let f = affine(&[([0, 0], 1), ([1, 0], 1)]);
        assert_eq!(fulton_multiplicity(&pair(f, affine(&[([0, 1], 1)]))), Multiplicity::Finite(0));
    }

    #[test]
    fn shared_component_is_infinite() {
        let l = affine(&[([1, 0], 1), ([0, 1], 1)]);
        let f = l.mul(&affine(&[([0, 0], 1), ([1, 0], 1)]));
        let g = l.mul(&affine(&[([0, 1], 2), ([0, 0], 3)]));
        assert_eq!(fulton_multiplicity(&pair(f, g)), Multiplicity::Infinite);
        // y(x + y) and y(x² + 1) share the line y = 0
        let a = affine(&[([1, 1], 1), ([0, 2], 1)]);
        let b = affine(&[([2, 1], 1), ([0, 1], 1)]);
        assert!(common_component_at_origin(&a, &b));
    }

    #[test]
    fn gcd_ignores_components_away_from_origin() {
        // (x + 1)·y and (x + 1)·(y − x): common factor x + 1 misses the origin
        let a = affine(&[([1, 1], 1), ([0, 1], 1)]);
        let b = affine(&[([1, 1], 1), ([0, 1], 1), ([2, 0], -1), ([1, 0], -1)]);
        assert!(!common_component_at_origin(&a, &b));
        assert_eq!(fulton_multiplicity(&pair(a, b)), Multiplicity::Finite(1));
    }

    #[test]
    fn conic_and_tangent_cubic() {
        // Q = xz − y² and F = xz² + y³ are both tangent to x = 0 at (0, 0, 1)
        let tw = q();
        let conic = ConicCoeffs::from_ints(&tw, [0, -1, 0, 0, 1, 0]);
        let f = PlaneCurve::new(MPoly::from_int_terms(&tw, &[([1, 0, 2], 1), ([0, 3, 0], 1)])).unwrap();
        let p = [FieldElement::zero(&tw), FieldElement::zero(&tw), FieldElement::one(&tw)];
        let a = conic_param_multiplicity(&f, &conic, &p).unwrap();
        let b = fulton_at_point(&f, &conic, &p).unwrap();
        assert_eq!(a, b);
        // along x = y², z = 1 the cubic becomes y² + y³
        assert_eq!(a, Multiplicity::Finite(2));
    }

    #[test]
    fn conic_errors() {
        let tw = q();
        let f = PlaneCurve::new(MPoly::from_int_terms(&tw, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], -1)])).unwrap();
        let p = [FieldElement::zero(&tw), FieldElement::one(&tw), FieldElement::one(&tw)];
        let degenerate = ConicCoeffs::from_ints(&tw, [1, 0, 0, 0, 0, 0]);
        assert_eq!(conic_param_multiplicity(&f, &degenerate, &p), Err(IntersectError::DegenerateConic));
        let off = ConicCoeffs::from_ints(&tw, [1, 1, 1, 0, 0, 0]);
        assert_eq!(conic_param_multiplicity(&f, &off, &p), Err(IntersectError::PointNotOnConic));
        let circle = ConicCoeffs::from_ints(&tw, [1, 1, -1, 0, 0, 0]);
        let h = PlaneCurve::new(circle.to_mpoly().mul(&MPoly::var(&tw, Var::X))).unwrap();
        let r = [FieldElement::one(&tw), FieldElement::zero(&tw), FieldElement::one(&tw)];
        assert_eq!(conic_param_multiplicity(&h, &circle, &r), Err(IntersectError::CommonComponent));
    }
}
