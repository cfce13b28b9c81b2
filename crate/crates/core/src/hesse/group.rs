//! The group generated by `g₀(x,y,z) = (x,z,y)`, `g₁(x,y,z) = (y,z,x)` and
//! `g₂(x,y,z) = (x, ε²y, −εz)`, acting on points and on conics.

use std::sync::Arc;

use crate::algebra::{AlgebraError, DenseMatrix, FieldElement, Tower};
use crate::cayley::{CayleyError, ConicCoeffs};

use super::eps_pow;
use super::points::normalize_point;

/// A group element as a monomial matrix together with a generator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    matrix: DenseMatrix,
    word: Vec<u8>,
}

impl GroupElement {
    /// The identity over `tower`.
    #[must_use]
    pub fn identity(tower: &Arc<Tower>) -> Self {
        Self { matrix: DenseMatrix::identity(tower, 3), word: Vec::new() }
    }

    /// The matrix acting on column vectors.
    #[must_use]
    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// Generator indices in the order they are applied.
    #[must_use]
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Composite word written as function composition, e.g. `g2∘g1∘g0`.
    #[must_use]
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "id".to_string();
        }
        self.word.iter().rev().map(|g| format!("g{g}")).collect::<Vec<_>>().join("∘")
    }

    /// `next ∘ self`: apply `self` first, then `next`.
    #[must_use]
    pub fn then(&self, next: &GroupElement) -> GroupElement {
        let matrix = next.matrix.mul(&self.matrix).expect("3x3 matrices over compatible towers");
        let mut word = self.word.clone();
        word.extend_from_slice(&next.word);
        GroupElement { matrix, word }
    }

    /// The element spelled by a word of generator indices, applied left to
    /// right.
    #[must_use]
    pub fn from_word(tower: &Arc<Tower>, word: &[u8]) -> GroupElement {
        let gens = group_generators(tower);
        word.iter().fold(GroupElement::identity(tower), |acc, &g| acc.then(&gens[g as usize]))
    }

    /// True when every row and column has exactly one nonzero entry.
    #[must_use]
    pub fn is_monomial(&self) -> bool {
        let rows = self.matrix.to_rows();
        let row_ok = rows.iter().all(|r| r.iter().filter(|x| !x.is_zero()).count() == 1);
        let col_ok = (0..3).all(|j| rows.iter().filter(|r| !r[j].is_zero()).count() == 1);
        row_ok && col_ok
    }

    /// True when the matrix is a nonzero scalar multiple of the identity.
    #[must_use]
    pub fn is_projective_identity(&self) -> bool {
        let m = &self.matrix;
        let d = m.get(0, 0);
        !d.is_zero()
            && (0..3).all(|i| (0..3).all(|j| if i == j { m.get(i, j) == d } else { m.get(i, j).is_zero() }))
    }

    /// Image of a point, normalized so the first nonzero coordinate is one.
    ///
    /// # Errors
    /// Incompatible towers or the zero vector.
    pub fn act_on_point(&self, p: &[FieldElement; 3]) -> Result<[FieldElement; 3], AlgebraError> {
        let v = self.matrix.apply(p)?;
        normalize_point(&[v[0].clone(), v[1].clone(), v[2].clone()])
    }

    /// Image of a conic: the quadratic form composed with the inverse
    /// matrix, so that the image vanishes at the images of its points.
    ///
    /// # Errors
    /// Incompatible towers.
    pub fn act_on_conic(&self, conic: &ConicCoeffs) -> Result<ConicCoeffs, CayleyError> {
        let inv = self.matrix.inverse()?;
        ConicCoeffs::from_mpoly(&conic.to_mpoly().linear_substitute(&inv)?)
    }
}

/// The three generators over a tower containing `eps`.
#[must_use]
pub fn group_generators(tower: &Arc<Tower>) -> [GroupElement; 3] {
    let z = FieldElement::zero(tower);
    let o = FieldElement::one(tower);
    let m = |rows: [[FieldElement; 3]; 3]| {
        DenseMatrix::from_rows(rows.into_iter().map(|r| r.to_vec()).collect()).expect("3x3")
    };
    let g0 = m([
        [o.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), o.clone()],
        [z.clone(), o.clone(), z.clone()],
    ]);
    let g1 = m([
        [z.clone(), o.clone(), z.clone()],
        [z.clone(), z.clone(), o.clone()],
        [o.clone(), z.clone(), z.clone()],
    ]);
    let g2 = m([
        [o, z.clone(), z.clone()],
        [z.clone(), eps_pow(tower, 2), z.clone()],
        [z.clone(), z, eps_pow(tower, 4)],
    ]);
    [
        GroupElement { matrix: g0, word: vec![0] },
        GroupElement { matrix: g1, word: vec![1] },
        GroupElement { matrix: g2, word: vec![2] },
    ]
}

/// One point of an orbit together with how it was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEntry {
    /// Normalized coordinates.
    pub point: [FieldElement; 3],
    /// Index of the seed the point was reached from.
    pub seed: usize,
    /// Element mapping the seed to the point.
    pub element: GroupElement,
}

/// Breadth-first orbit of the seeds under the generators; each point is
/// reached by a shortest word, ties broken by seed and generator order.
///
/// # Errors
/// Incompatible towers or a zero seed.
pub fn orbit(gens: &[GroupElement], seeds: &[[FieldElement; 3]]) -> Result<Vec<OrbitEntry>, AlgebraError> {
    let tower = gens.first().map_or_else(Tower::eisenstein, |g| g.matrix.tower());
    let mut out: Vec<OrbitEntry> = Vec::new();
    for (i, s) in seeds.iter().enumerate() {
        let p = normalize_point(s)?;
        if !out.iter().any(|e| e.point == p) {
            out.push(OrbitEntry { point: p, seed: i, element: GroupElement::identity(&tower) });
        }
    }
    let mut head = 0;
    while head < out.len() {
        let current = out[head].clone();
        head += 1;
        for g in gens {
            let p = g.act_on_point(&current.point)?;
            if !out.iter().any(|e| e.point == p) {
                out.push(OrbitEntry { point: p, seed: current.seed, element: current.element.then(g) });
            }
        }
    }
    Ok(out)
}
