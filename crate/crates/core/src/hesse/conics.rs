//! Osculating conics at the sextactic points: closed forms at the base
//! points `(1, 1, z_i)` and the atlas of all 27 conics.

use rayon::prelude::*;

use crate::algebra::{common_tower, FieldElement};
use crate::cayley::{osculating_conic_theorem, ConicCoeffs};

use super::group::{group_generators, orbit, GroupElement};
use super::pipeline::transformation_pipeline;
use super::points::{points_from_splitting, splitting_tower, SextacticPoint, SplittingField};
use super::{HesseError, HessePencilCurve};

/// How the conics at the base points are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConicMethod {
    /// Cayley's formula through the Hessian and bordered Hessian.
    Theorem,
    /// The closed form with coefficients polynomial in `t` and `z_i`.
    ClosedForm,
    /// Coordinate changes to a normal form and the local conic there.
    Pipeline,
}

impl ConicMethod {
    /// All methods.
    pub const ALL: [ConicMethod; 3] = [ConicMethod::Theorem, ConicMethod::ClosedForm, ConicMethod::Pipeline];

    /// Lower-case name.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            ConicMethod::Theorem => "theorem",
            ConicMethod::ClosedForm => "closed-form",
            ConicMethod::Pipeline => "pipeline",
        }
    }
}

/// Which intermediate display of the radical-formula conic is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStage {
    /// Cleared denominators, no use of the root relation.
    Raw,
    /// Coefficients rewritten with `z³ = −tz − 2`.
    Reduced,
}

/// `(t, z)` embedded in a common tower after checking `z³ + tz + 2 = 0`.
pub(super) fn root_context(c: &HessePencilCurve, z: &FieldElement) -> Result<(FieldElement, FieldElement), HesseError> {
    let tower = common_tower(c.tower(), z.tower())?;
    let t = c.t().embed(&tower)?;
    let z = z.embed(&tower)?;
    let val = &(&z.pow(3)? + &(&t * &z)) + &FieldElement::from_int(&tower, 2);
    if !val.is_zero() {
        return Err(HesseError::NotARoot);
    }
    Ok((t, z))
}

/// `Σ c·z^a·t^b` over the listed integer terms.
fn zt_poly(t: &FieldElement, z: &FieldElement, terms: &[(i64, i64, i64)]) -> FieldElement {
    let tower = t.tower();
    terms.iter().fold(FieldElement::zero(tower), |acc, &(c, a, b)| {
        let m = &z.pow(a).expect("nonnegative") * &t.pow(b).expect("nonnegative");
        &acc + &m.scale(&crate::algebra::qi(c))
    })
}

fn symmetric_conic(sq: FieldElement, xy: FieldElement, xz: FieldElement, zz: FieldElement) -> ConicCoeffs {
    ConicCoeffs([sq.clone(), sq, zz, xy, xz.clone(), xz])
}

/// The conic at `(1, 1, z_i)`:
/// `z²(9−6tz)(x²+y²) + z(15tz+18)(xz+yz) − z²(t²z²+18)xy + (z²t²−18tz−36)z²`.
///
/// # Errors
/// [`HesseError::NotARoot`] unless `z³ + tz + 2 = 0`.
pub fn osculating_conic_closed_form(c: &HessePencilCurve, z: &FieldElement) -> Result<ConicCoeffs, HesseError> {
    let (t, z) = root_context(c, z)?;
    let sq = zt_poly(&t, &z, &[(9, 2, 0), (-6, 3, 1)]);
    let xz = zt_poly(&t, &z, &[(15, 2, 1), (18, 1, 0)]);
    let xy = zt_poly(&t, &z, &[(-1, 4, 2), (-18, 2, 0)]);
    let zz = zt_poly(&t, &z, &[(1, 2, 2), (-18, 1, 1), (-36, 0, 0)]);
    Ok(symmetric_conic(sq, xy, xz, zz))
}

/// The radical-formula conic at `(1, 1, z_i)` with cleared denominators, either as
/// produced (`Raw`) or with coefficients simplified by the root relation
/// (`Reduced`).  The reduced display is the negative of the raw one modulo
/// `z³ + tz + 2`.
///
/// # Errors
/// [`HesseError::NotARoot`] unless `z³ + tz + 2 = 0`.
pub fn reduced_conic_form(
    c: &HessePencilCurve,
    z: &FieldElement,
    stage: ReductionStage,
) -> Result<ConicCoeffs, HesseError> {
    let (t, z) = root_context(c, z)?;
    let p = |terms: &[(i64, i64, i64)]| zt_poly(&t, &z, terms);
    Ok(match stage {
        ReductionStage::Raw => {
            let sq = &p(&[(-3, 0, 0), (2, 1, 1)])
                * &p(&[(-3, 0, 0), (12, 3, 0), (-4, 1, 1), (1, 4, 1), (-2, 2, 2)]);
            let xy = -p(&[(-4, 5, 2), (1, 4, 4), (-15, 4, 1), (2, 3, 3), (-90, 3, 0), (4, 2, 2), (-12, 1, 1), (-18, 0, 0)]);
            let xz = -p(&[
                (-12, 6, 1),
                (1, 5, 3),
                (-63, 5, 0),
                (2, 4, 2),
                (1, 3, 4),
                (-9, 3, 1),
                (1, 2, 3),
                (-45, 2, 0),
                (-2, 1, 2),
                (-6, 0, 1),
            ]);
            let zz = -p(&[(-18, 7, 0), (3, 6, 2), (-12, 5, 1), (4, 4, 3), (45, 4, 0), (-2, 3, 2), (-15, 2, 1), (-1, 0, 2)]);
            symmetric_conic(sq, xy, xz, zz)
        }
        ReductionStage::Reduced => {
            let cube_minus_one_sq = p(&[(1, 3, 0), (-1, 0, 0)]).pow(2)?;
            let sq = &p(&[(-6, 3, 0), (-21, 0, 0)]) * &cube_minus_one_sq;
            let xy = &p(&[(1, 6, 0), (4, 3, 0), (22, 0, 0)]) * &cube_minus_one_sq;
            let xz = p(&[(-6, 0, 1), (15, 8, 0), (-18, 5, 0), (-15, 2, 0)]);
            let zz = p(&[(-1, 0, 2), (-1, 10, 0), (-20, 7, 0), (40, 4, 0), (-10, 1, 0)]);
            symmetric_conic(sq, xy, xz, zz)
        }
    })
}

/// One entry of the conic atlas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasEntry {
    /// The sextactic point.
    pub point: SextacticPoint,
    /// Its osculating conic, normalized so the first nonzero coefficient is one.
    pub conic: ConicCoeffs,
    /// Label of the base point (1, 4 or 7) the conic was transported from.
    pub seed_label: usize,
    /// Group element mapping the base point to this point.
    pub element: GroupElement,
}

/// The 27 osculating conics of a Hesse cubic.
#[derive(Clone, Debug)]
pub struct ConicAtlas {
    /// The curve.
    pub curve: HessePencilCurve,
    /// Construction used at the base points.
    pub method: ConicMethod,
    /// Splitting field holding all coordinates and coefficients.
    pub splitting: SplittingField,
    /// Entries in label order.
    pub entries: Vec<AtlasEntry>,
}

impl ConicAtlas {
    /// The entry with the given label.
    #[must_use]
    pub fn entry(&self, label: usize) -> Option<&AtlasEntry> {
        self.entries.iter().find(|e| e.point.label == label)
    }
}

fn base_conic(
    c: &HessePencilCurve,
    point: &SextacticPoint,
    method: ConicMethod,
) -> Result<ConicCoeffs, HesseError> {
    let z = &point.coords[2];
    let conic = match method {
        ConicMethod::Theorem => osculating_conic_theorem(c.curve(), &point.coords)?,
        ConicMethod::ClosedForm => osculating_conic_closed_form(c, z)?,
        ConicMethod::Pipeline => transformation_pipeline(c, z)?.pulled_back,
    };
    Ok(conic.embed(point.coords[0].tower())?)
}

/// Computes the conics at `P₁, P₄, P₇` with `method` and transports them to
/// all 27 points through the group.  Every conic is checked to be
/// nondegenerate.
///
/// # Errors
/// Propagated from the chosen construction; [`HesseError::OrbitMismatch`]
/// if the orbit of the base points is not the tabulated set;
/// [`HesseError::DegenerateConic`] for a singular conic.
pub fn all_osculating_conics(c: &HessePencilCurve, method: ConicMethod) -> Result<ConicAtlas, HesseError> {
    let sf = splitting_tower(c, 0)?;
    let points = points_from_splitting(&sf);
    let seeds: Vec<&SextacticPoint> = [1, 4, 7].iter().map(|&l| &points[l - 1]).collect();
    let seed_conics: Vec<ConicCoeffs> = seeds
        .par_iter()
        .map(|p| base_conic(c, p, method))
        .collect::<Result<_, _>>()?;
    let gens = group_generators(&sf.tower);
    let seed_coords: Vec<[FieldElement; 3]> = seeds.iter().map(|p| p.coords.clone()).collect();
    let orb = orbit(&gens, &seed_coords)?;
    if orb.len() != points.len() {
        return Err(HesseError::OrbitMismatch);
    }
    let entries: Vec<AtlasEntry> = points
        .par_iter()
        .map(|p| {
            let target = p.normalized();
            let hit = orb.iter().find(|e| e.point == target).ok_or(HesseError::OrbitMismatch)?;
            let conic = hit.element.act_on_conic(&seed_conics[hit.seed])?.normalized()?;
            if !conic.is_nondegenerate() {
                return Err(HesseError::DegenerateConic(p.label));
            }
            Ok(AtlasEntry {
                point: p.clone(),
                conic,
                seed_label: seeds[hit.seed].label,
                element: hit.element.clone(),
            })
        })
        .collect::<Result<_, HesseError>>()?;
    Ok(ConicAtlas { curve: c.clone(), method, splitting: sf, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{qi, Tower};
    use crate::hesse::build_curve;

    fn curve(t: i64) -> HessePencilCurve {
        build_curve(&FieldElement::from_rational(&Tower::rationals(), qi(t))).unwrap()
    }

    #[test]
    fn closed_form_at_minus_one() {
        let c = curve(1);
        let z = FieldElement::from_int(c.tower(), -1);
        let o = osculating_conic_closed_form(&c, &z).unwrap();
        assert_eq!(o, ConicCoeffs::from_ints(c.tower(), [15, 15, -17, -19, -3, -3]));
    }

    #[test]
    fn reduced_display_values_at_minus_one() {
        let c = curve(1);
        let z = FieldElement::from_int(c.tower(), -1);
        let red = reduced_conic_form(&c, &z, ReductionStage::Reduced).unwrap();
        assert_eq!(red, ConicCoeffs::from_ints(c.tower(), [-60, -60, 68, 76, 12, 12]));
        let raw = reduced_conic_form(&c, &z, ReductionStage::Raw).unwrap();
        assert!(raw.proportional(&red));
    }

    #[test]
    fn non_root_is_rejected() {
        let c = curve(1);
        let z = FieldElement::from_int(c.tower(), 1);
        assert_eq!(osculating_conic_closed_form(&c, &z), Err(HesseError::NotARoot));
    }
}
