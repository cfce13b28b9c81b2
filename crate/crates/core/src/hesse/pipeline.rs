//! The osculating conic at `(1, 1, z_i)` through coordinate changes that
//! bring the cubic to the local normal form `x + y² + fx³ + gx²y + hxy² + iy³`
//! at the origin, where the conic is `−(i² + h)x² − ixy + y² + x`.

use std::sync::Arc;

use crate::algebra::{q, qi, tower_extend, AlgebraError, DenseMatrix, FieldElement, MPoly, Tower, UniPoly};
use crate::cayley::ConicCoeffs;

use super::conics::root_context;
use super::{HesseError, HessePencilCurve};

/// Intermediate data of the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineRecord {
    /// Moves `(1, 1, z_i)` to `(0, 0, 1)`.
    pub a: DenseMatrix,
    /// Makes the tangent line at the origin `x = 0`.
    pub b: DenseMatrix,
    /// Removes the remaining quadratic terms in `z`.
    pub c: DenseMatrix,
    /// Normalizes the coefficient of `y²z`; involves `√(6 − t·z_i)`.
    pub d: DenseMatrix,
    /// Cubic coefficients `(f, g, h, i)` of the normal form.
    pub normal_form: [FieldElement; 4],
    /// `−(i² + h)x² − ixy + y² + xz` in the transformed coordinates.
    pub lemma_conic: ConicCoeffs,
    /// The conic in the original coordinates, free of the square root and
    /// normalized so the first nonzero coefficient is one.
    pub pulled_back: ConicCoeffs,
    /// Whether a level for the square root had to be adjoined.
    pub adjoined_sqrt: bool,
}

fn matrix(rows: [[FieldElement; 3]; 3]) -> DenseMatrix {
    DenseMatrix::from_rows(rows.into_iter().map(|r| r.to_vec()).collect()).expect("3x3")
}

fn sqrt_of(base: &Arc<Tower>, v: &FieldElement) -> Result<(Arc<Tower>, FieldElement, bool), HesseError> {
    let poly = UniPoly::new(base, vec![-v.clone(), FieldElement::zero(base), FieldElement::one(base)]);
    match tower_extend(base, "s", &poly) {
        Ok(t) => {
            let s = FieldElement::named_generator(&t, "s").expect("new level");
            Ok((t, s, true))
        }
        Err(AlgebraError::Reducible(r)) => Ok((base.clone(), *r, false)),
        Err(e) => Err(e.into()),
    }
}

/// Runs the coordinate changes at `(1, 1, z_i)` and pulls the local conic
/// back to the original coordinates.
///
/// # Errors
/// [`HesseError::NotARoot`], [`HesseError::DegeneratePoint`] when
/// `3 + t·z_i` or `6 − t·z_i` vanishes, [`HesseError::NormalFormMismatch`]
/// if the transformed cubic has an unexpected shape and
/// [`HesseError::RadicalResidue`] if the result involves the square root.
pub fn transformation_pipeline(c: &HessePencilCurve, z: &FieldElement) -> Result<PipelineRecord, HesseError> {
    let (t, z) = root_context(c, z)?;
    let base = z.tower().clone();
    let tz = &t * &z;
    let three_tz = &FieldElement::from_int(&base, 3) + &tz;
    let six_tz = &FieldElement::from_int(&base, 6) - &tz;
    if z.is_zero() || three_tz.is_zero() || six_tz.is_zero() {
        return Err(HesseError::DegeneratePoint);
    }
    let (ext, s, adjoined_sqrt) = sqrt_of(&base, &six_tz)?;
    let e = |x: &FieldElement| x.embed(&ext).expect("base is a prefix");
    let (z, three_tz, tz) = (e(&z), e(&three_tz), e(&tz));
    let int = |n: i64| FieldElement::from_int(&ext, n);
    let (o, n) = (int(1), int(0));
    let zi = z.inv()?;

    let a = matrix([[zi.clone(), n.clone(), o.clone()], [n.clone(), zi, o.clone()], [n.clone(), n.clone(), z.clone()]]);
    let b = matrix([
        [z.checked_div(&three_tz)?, int(-1), n.clone()],
        [n.clone(), o.clone(), n.clone()],
        [n.clone(), n.clone(), o.clone()],
    ]);
    let c31 = three_tz.pow(-2)?.scale(&q(-3, 2));
    let c32 = -(&tz - &int(6)).checked_div(&(&z * &three_tz).scale(&qi(2)))?;
    let cm = matrix([[o.clone(), n.clone(), n.clone()], [n.clone(), o.clone(), n.clone()], [c31, c32, o.clone()]]);
    let d = matrix([[o.clone(), n.clone(), n.clone()], [n.clone(), z.checked_div(&s)?, n.clone()], [n.clone(), n, o]]);

    let m = a.mul(&b)?.mul(&cm)?.mul(&d)?;
    let f1 = c.poly().embed(&ext)?.linear_substitute(&m)?;
    let lead = f1.coeff([1, 0, 2]);
    if lead.is_zero() || f1.coeff([0, 2, 1]) != lead {
        return Err(HesseError::NormalFormMismatch);
    }
    for dead in [[0, 0, 3], [0, 1, 2], [2, 0, 1], [1, 1, 1]] {
        if !f1.coeff(dead).is_zero() {
            return Err(HesseError::NormalFormMismatch);
        }
    }
    let inv_lead = lead.inv()?;
    let [f, g, h, i] = [[3, 0, 0], [2, 1, 0], [1, 2, 0], [0, 3, 0]].map(|ex| &f1.coeff(ex) * &inv_lead);

    let x2 = -(&(&i * &i) + &h);
    let lemma = MPoly::from_terms(
        &ext,
        [([2, 0, 0], x2), ([1, 1, 0], -i.clone()), ([0, 2, 0], int(1)), ([1, 0, 1], int(1))],
    )?;
    let lemma_conic = ConicCoeffs::from_mpoly(&lemma)?;
    let back = ConicCoeffs::from_mpoly(&lemma.linear_substitute(&m.inverse()?)?)?.normalized()?;
    let pulled_back = back.embed(&base).map_err(|_| HesseError::RadicalResidue)?;
    Ok(PipelineRecord { a, b, c: cm, d, normal_form: [f, g, h, i], lemma_conic, pulled_back, adjoined_sqrt })
}
