//! Splitting fields of `z³ + ε^{2k}·t·z + 2` and the 27 sextactic points.

use std::sync::Arc;

use crate::algebra::{tower_extend, AlgebraError, FieldElement, Tower, UniPoly};

use super::{eps_pow, HesseError, HessePencilCurve};

/// A tower over the curve's coefficient field in which every cubic
/// `z³ + ε^{2k}·t·z + 2` splits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingField {
    /// The splitting tower.
    pub tower: Arc<Tower>,
    /// The value of `k` the roots below belong to.
    pub k: usize,
    /// Roots of `z³ + ε^{2k}·t·z + 2`, in label order.
    pub roots: [FieldElement; 3],
    base_roots: [FieldElement; 3],
}

impl SplittingField {
    /// Roots of `z³ + ε^{2k}·t·z + 2` for any `k`, in label order.
    ///
    /// With `r₁, r₂, r₃` the roots for `k = 0`, the `i`-th root for `k` is
    /// `ε^{4k}·r_{i+k}` (indices mod 3).  This matches the branch labels of
    /// the radical formulas, where substituting `ε^{2k}t` for `t` rotates
    /// the branches.
    #[must_use]
    pub fn roots_for(&self, k: usize) -> [FieldElement; 3] {
        let e = eps_pow(&self.tower, 4 * (k as i64 % 3));
        std::array::from_fn(|i| &e * &self.base_roots[(i + k) % 3])
    }

    /// Number of levels added on top of the curve's tower.
    #[must_use]
    pub fn added_levels(&self, base: &Tower) -> usize {
        self.tower.height() - base.height()
    }
}

fn adjoin_or_find(base: &Arc<Tower>, name: &str, poly: &UniPoly) -> Result<(Arc<Tower>, FieldElement), HesseError> {
    match tower_extend(base, name, poly) {
        Ok(t) => {
            let g = FieldElement::named_generator(&t, name).expect("new level");
            Ok((t, g))
        }
        Err(AlgebraError::Reducible(root)) => Ok((base.clone(), *root)),
        Err(e) => Err(e.into()),
    }
}

/// Splits `z³ + a·z + 2` over `base`: adjoins a root of the cubic when it
/// has none, then a root of the residual quadratic `z² + z₁z + (z₁² + a)`
/// when that has none.  Returns the tower and the roots `z₁, z₂, z₃`.
fn split_depressed_cubic(
    base: &Arc<Tower>,
    a: &FieldElement,
) -> Result<(Arc<Tower>, [FieldElement; 3]), HesseError> {
    let c = |n: i64| FieldElement::from_int(base, n);
    let cubic = UniPoly::new(base, vec![c(2), a.clone(), c(0), c(1)]);
    let (t1, z1) = adjoin_or_find(base, "z", &cubic)?;
    let a1 = a.embed(&t1)?;
    let quad = UniPoly::new(&t1, vec![&(&z1 * &z1) + &a1, z1.clone(), FieldElement::one(&t1)]);
    let (t2, z2) = adjoin_or_find(&t1, "w", &quad)?;
    let z1 = z1.embed(&t2)?;
    let z2 = z2.embed(&t2)?;
    let z3 = -(&z1 + &z2);
    Ok((t2, [z1, z2, z3]))
}

/// A tower in which `z³ + ε^{2k}·t·z + 2` splits, with its roots in a
/// deterministic order.  The tower is the same for every `k`.
///
/// # Errors
/// Propagates failures of the irreducibility decision.
pub fn splitting_tower(c: &HessePencilCurve, k: usize) -> Result<SplittingField, HesseError> {
    let (tower, base_roots) = split_depressed_cubic(c.tower(), c.t())?;
    let mut sf = SplittingField { tower, k: k % 3, roots: base_roots.clone(), base_roots };
    sf.roots = sf.roots_for(sf.k);
    Ok(sf)
}

/// A sextactic point of a Hesse cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SextacticPoint {
    /// Label 1..=27.
    pub label: usize,
    /// Coordinates as tabulated (not normalized).
    pub coords: [FieldElement; 3],
    /// Coordinate table 0, 1 or 2.
    pub table: usize,
    /// Which cubic `z³ + ε^{2k}·t·z + 2` supplies the coordinate.
    pub k: usize,
    /// Root index 1..=3.
    pub root: usize,
}

impl SextacticPoint {
    /// Coordinates scaled so the first nonzero entry is one.
    #[must_use]
    pub fn normalized(&self) -> [FieldElement; 3] {
        normalize_point(&self.coords).expect("sextactic points are nonzero")
    }
}

/// Scales a projective point so its first nonzero coordinate is one.
///
/// # Errors
/// [`AlgebraError::DivisionByZero`] for the zero vector.
pub fn normalize_point(p: &[FieldElement; 3]) -> Result<[FieldElement; 3], AlgebraError> {
    let lead = p.iter().find(|x| !x.is_zero()).ok_or(AlgebraError::DivisionByZero)?.inv()?;
    Ok(std::array::from_fn(|i| &p[i] * &lead))
}

/// Equality of projective points by vanishing of all 2×2 cross products.
#[must_use]
pub fn projectively_equal(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> bool {
    if a.iter().all(FieldElement::is_zero) || b.iter().all(FieldElement::is_zero) {
        return false;
    }
    (0..3).all(|i| (i + 1..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// The 27 points from a splitting field: label `9·table + 1 + k + 3(i−1)`
/// with table 0 `(1, ε^{2k}, z_i)`, table 1 `(1, z_i, ε^{2k})` and table 2
/// `(z_i, ε^{2k}, 1)`, where `z_i` is the `i`-th root for `k`.
#[must_use]
pub fn points_from_splitting(sf: &SplittingField) -> Vec<SextacticPoint> {
    let tower = &sf.tower;
    let one = FieldElement::one(tower);
    let mut out = Vec::with_capacity(27);
    for table in 0..3 {
        for i in 0..3 {
            for k in 0..3 {
                let z = sf.roots_for(k)[i].clone();
                let e = eps_pow(tower, 2 * k as i64);
                let coords = match table {
                    0 => [one.clone(), e, z],
                    1 => [one.clone(), z, e],
                    _ => [z, e, one.clone()],
                };
                out.push(SextacticPoint { label: 9 * table + 1 + k + 3 * i, coords, table, k, root: i + 1 });
            }
        }
    }
    out.sort_by_key(|p| p.label);
    out
}

/// The 27 sextactic points of a Hesse cubic, in label order.
///
/// # Errors
/// Propagates failures of the splitting-field construction.
pub fn sextactic_points(c: &HessePencilCurve) -> Result<Vec<SextacticPoint>, HesseError> {
    Ok(points_from_splitting(&splitting_tower(c, 0)?))
}
