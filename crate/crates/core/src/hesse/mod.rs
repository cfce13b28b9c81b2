//! The Hesse pencil `x³ + y³ + z³ + t·xyz`: curve construction, special
//! parameter values, splitting fields of the sextactic cubic, the 27
//! sextactic points, the symmetry group and three constructions of the
//! osculating conics.

mod conics;
mod group;
mod identities;
mod pipeline;
mod points;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{tower_extend, AlgebraError, FieldElement, MPoly, Tower, UniPoly};
use crate::cayley::{CayleyError, PlaneCurve};

pub use conics::{
    all_osculating_conics, osculating_conic_closed_form, reduced_conic_form, AtlasEntry, ConicAtlas,
    ConicMethod, ReductionStage,
};
pub use group::{group_generators, orbit, GroupElement, OrbitEntry};
pub use identities::{cube_difference_product, verify_paper_identities, IdentityCheck, IdentityReport};
pub use pipeline::{transformation_pipeline, PipelineRecord};
pub use points::{
    normalize_point, points_from_splitting, projectively_equal, sextactic_points, splitting_tower,
    SextacticPoint, SplittingField,
};

/// Errors raised by the Hesse-pencil constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HesseError {
    /// `t³ + 27 = 0`: the member is a triangle of lines.
    #[error("t^3 + 27 = 0: the pencil member is singular")]
    SingularMember,
    /// The parameter lives in a tower whose first level is not `eps`.
    #[error("the parameter tower must start with the level eps (eps^2 - eps + 1)")]
    MissingEps,
    /// The supplied value does not solve `z³ + t·z + 2 = 0`.
    #[error("value is not a root of z^3 + t*z + 2")]
    NotARoot,
    /// A denominator of the coordinate changes vanishes at the point.
    #[error("a coordinate change is undefined at this point")]
    DegeneratePoint,
    /// The pulled-back conic still involves the adjoined square root.
    #[error("pulled-back conic does not descend to the base field")]
    RadicalResidue,
    /// The transformed cubic is not in the expected normal form.
    #[error("transformed cubic is not in the expected normal form")]
    NormalFormMismatch,
    /// A conic of the atlas is degenerate.
    #[error("the conic at P{0} is degenerate")]
    DegenerateConic(usize),
    /// Orbit generation did not reproduce the tabulated points.
    #[error("orbit of the base points does not match the point tables")]
    OrbitMismatch,
    /// Failure in the curve-level constructions.
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    /// Arithmetic failure.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A smooth member of the Hesse pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessePencilCurve {
    t: FieldElement,
    curve: PlaneCurve,
}

impl HessePencilCurve {
    /// The parameter `t`.
    #[must_use]
    pub fn t(&self) -> &FieldElement {
        &self.t
    }

    /// The underlying plane curve.
    #[must_use]
    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    /// Defining polynomial.
    #[must_use]
    pub fn poly(&self) -> &MPoly {
        self.curve.poly()
    }

    /// Coefficient tower (always starts with `eps`).
    #[must_use]
    pub fn tower(&self) -> &Arc<Tower> {
        self.t.tower()
    }

    /// `t³ + 27`.
    #[must_use]
    pub fn discriminant_factor(&self) -> FieldElement {
        let t3 = self.t.pow(3).expect("nonnegative power");
        &t3 + &FieldElement::from_int(self.tower(), 27)
    }
}

fn has_eps_base(tower: &Tower) -> bool {
    let e = Tower::eisenstein();
    tower.height() >= 1 && e.is_prefix_of(tower)
}

/// Builds `x³ + y³ + z³ + t·xyz`.  A rational parameter is embedded into
/// `ℚ(ε)`; otherwise the parameter's tower must start with `eps`.
///
/// # Errors
/// [`HesseError::SingularMember`] when `t³ + 27 = 0`,
/// [`HesseError::MissingEps`] for a tower without `eps` at the bottom.
pub fn build_curve(t: &FieldElement) -> Result<HessePencilCurve, HesseError> {
    let t = if t.tower().height() == 0 {
        t.embed(&Tower::eisenstein())?
    } else if has_eps_base(t.tower()) {
        t.clone()
    } else {
        return Err(HesseError::MissingEps);
    };
    let tower = t.tower().clone();
    let disc = &t.pow(3)? + &FieldElement::from_int(&tower, 27);
    if disc.is_zero() {
        return Err(HesseError::SingularMember);
    }
    let one = FieldElement::one(&tower);
    let f = MPoly::from_terms(
        &tower,
        [([3, 0, 0], one.clone()), ([0, 3, 0], one.clone()), ([0, 0, 3], one), ([1, 1, 1], t.clone())],
    )?;
    Ok(HessePencilCurve { t, curve: PlaneCurve::new(f)? })
}

/// `ε^n` in a tower starting with `eps`.
pub(crate) fn eps_pow(tower: &Arc<Tower>, n: i64) -> FieldElement {
    FieldElement::named_generator(tower, "eps")
        .expect("tower contains eps")
        .pow(n.rem_euclid(6))
        .expect("nonnegative power")
}

/// The tower `ℚ(ε)(√3)` with levels `eps` and `sqrt3`.
#[must_use]
pub fn eisenstein_sqrt3() -> Arc<Tower> {
    let base = Tower::eisenstein();
    let minpoly = UniPoly::new(
        &base,
        vec![FieldElement::from_int(&base, -3), FieldElement::zero(&base), FieldElement::one(&base)],
    );
    tower_extend(&base, "sqrt3", &minpoly).expect("x^2 - 3 is irreducible over Q(eps)")
}

/// Which binary form a special parameter annihilates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParameterFamily {
    /// Zeros of `μ(λ³ − μ³)`.
    Equianharmonic,
    /// Zeros of `λ⁶ − 20λ³μ³ − 8μ⁶`.
    Harmonic,
}

/// A named special value of the pencil parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialParameter {
    /// Short identifier.
    pub name: &'static str,
    /// Binary form annihilated by `(λ, μ) = (1, t/6)`.
    pub family: ParameterFamily,
    /// The value of `t`.
    pub t: FieldElement,
}

impl SpecialParameter {
    /// The defining binary form evaluated at `λ = 1, μ = t/6`.
    #[must_use]
    pub fn binary_form_value(&self) -> FieldElement {
        binary_form_value(self.family, &self.t)
    }
}

/// Evaluates the family's binary form at `λ = 1, μ = t/6`.
#[must_use]
pub fn binary_form_value(family: ParameterFamily, t: &FieldElement) -> FieldElement {
    let tower = t.tower();
    let one = FieldElement::one(tower);
    let mu = t.scale(&crate::algebra::q(1, 6));
    let mu3 = mu.pow(3).expect("nonnegative power");
    match family {
        ParameterFamily::Equianharmonic => &mu * &(&one - &mu3),
        ParameterFamily::Harmonic => {
            let mu6 = &mu3 * &mu3;
            &(&one - &mu3.scale(&crate::algebra::qi(20))) - &mu6.scale(&crate::algebra::qi(8))
        }
    }
}

/// The Fermat value `t = 0`, the equianharmonic values `6, 6ε², 6ε⁴` over
/// `ℚ(ε)` and the harmonic values `−3(1 ∓ √3)` over `ℚ(ε)(√3)`.
#[must_use]
pub fn special_parameter_values() -> Vec<SpecialParameter> {
    let e = Tower::eisenstein();
    let s = eisenstein_sqrt3();
    let sqrt3 = FieldElement::named_generator(&s, "sqrt3").expect("sqrt3 level");
    let one = FieldElement::one(&s);
    let six = |x: FieldElement| x.scale(&crate::algebra::qi(6));
    let minus3 = |x: FieldElement| x.scale(&crate::algebra::qi(-3));
    vec![
        SpecialParameter { name: "fermat", family: ParameterFamily::Equianharmonic, t: FieldElement::zero(&e) },
        SpecialParameter { name: "equianharmonic-1", family: ParameterFamily::Equianharmonic, t: FieldElement::from_int(&e, 6) },
        SpecialParameter { name: "equianharmonic-eps2", family: ParameterFamily::Equianharmonic, t: six(eps_pow(&e, 2)) },
        SpecialParameter { name: "equianharmonic-eps4", family: ParameterFamily::Equianharmonic, t: six(eps_pow(&e, 4)) },
        SpecialParameter { name: "harmonic-minus", family: ParameterFamily::Harmonic, t: minus3(&one - &sqrt3) },
        SpecialParameter { name: "harmonic-plus", family: ParameterFamily::Harmonic, t: minus3(&one + &sqrt3) },
    ]
}
