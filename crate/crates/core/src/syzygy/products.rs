//! Products of a Hesse cubic with some of its 27 osculating conics.

use rayon::prelude::*;

use crate::algebra::modp::TowerHom;
use crate::algebra::{FieldElement, MPoly};
use crate::hesse::{
    all_osculating_conics, binary_form_value, build_curve, ConicAtlas, ConicMethod, HessePencilCurve,
    ParameterFamily,
};

use super::{exponents_unchecked, Classification, ComputeMode, ExponentReport, SyzygyError, PRIME_FLOOR};

/// A cubic of the pencil times the conics at the given labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCurveSpec {
    /// Pencil parameter.
    pub t: FieldElement,
    /// Distinct labels in 1..=27.
    pub labels: Vec<usize>,
}

impl ProductCurveSpec {
    /// `3 + 2·|labels|`.
    #[must_use]
    pub fn degree(&self) -> u32 {
        3 + 2 * self.labels.len() as u32
    }
}

/// The 27 osculating conics of one curve, ready for products.
#[derive(Clone, Debug)]
pub struct ConicProducts {
    atlas: ConicAtlas,
    cubic: MPoly,
    conics: Vec<MPoly>,
}

/// Checks labels for range and repetition.
fn validate_labels(labels: &[usize]) -> Result<(), SyzygyError> {
    for (i, &l) in labels.iter().enumerate() {
        if !(1..=27).contains(&l) {
            return Err(SyzygyError::LabelOutOfRange(l));
        }
        if labels[..i].contains(&l) {
            return Err(SyzygyError::RepeatedLabel(l));
        }
    }
    Ok(())
}

impl ConicProducts {
    /// Builds the closed-form atlas of `c`.
    ///
    /// # Errors
    /// Propagated from the atlas construction.
    pub fn new(c: &HessePencilCurve) -> Result<Self, SyzygyError> {
        let atlas = all_osculating_conics(c, ConicMethod::ClosedForm)?;
        let tower = atlas.splitting.tower.clone();
        let cubic = c.poly().embed(&tower)?;
        let mut conics = Vec::with_capacity(27);
        for label in 1..=27 {
            let e = atlas.entry(label).expect("atlas has every label");
            conics.push(e.conic.to_mpoly());
        }
        Ok(ConicProducts { atlas, cubic, conics })
    }

    /// The underlying atlas.
    #[must_use]
    pub fn atlas(&self) -> &ConicAtlas {
        &self.atlas
    }

    /// The curve.
    #[must_use]
    pub fn curve(&self) -> &HessePencilCurve {
        &self.atlas.curve
    }

    fn conic(&self, label: usize) -> &MPoly {
        &self.conics[label - 1]
    }

    /// `F·∏ C_i`, after checking that the product is squarefree: labels
    /// distinct, no two conics proportional, no conic dividing `F`.
    ///
    /// # Errors
    /// [`SyzygyError::LabelOutOfRange`], [`SyzygyError::RepeatedLabel`],
    /// [`SyzygyError::ProportionalConics`], [`SyzygyError::ConicDividesCurve`].
    pub fn product(&self, labels: &[usize]) -> Result<MPoly, SyzygyError> {
        validate_labels(labels)?;
        for (i, &a) in labels.iter().enumerate() {
            if self.cubic.exact_div(self.conic(a)).is_some() {
                return Err(SyzygyError::ConicDividesCurve(a));
            }
            for &b in &labels[i + 1..] {
                if self.conic(a).is_proportional(self.conic(b)) {
                    return Err(SyzygyError::ProportionalConics(a.min(b), a.max(b)));
                }
            }
        }
        Ok(labels.iter().fold(self.cubic.clone(), |acc, &l| acc.mul(self.conic(l))))
    }

    /// Whether the reduction keeps the factors nondegenerate and distinct.
    fn reduction_is_faithful(&self, labels: &[usize], h: &TowerHom) -> bool {
        let p = h.p;
        let Some(disc) = h.map(&self.atlas.curve.discriminant_factor()) else { return false };
        if disc == 0 {
            return false;
        }
        let mut reduced = Vec::new();
        for &l in labels {
            let e = self.atlas.entry(l).expect("validated label");
            let Some(det) = h.map(&e.conic.symmetric_matrix().det().expect("square")) else { return false };
            if det == 0 {
                return false;
            }
            let Some(c) = e.conic.0.iter().map(|x| h.map(x)).collect::<Option<Vec<u64>>>() else { return false };
            reduced.push(c);
        }
        for (i, a) in reduced.iter().enumerate() {
            for b in &reduced[i + 1..] {
                let distinct = (0..6).any(|r| {
                    (0..6).any(|s| {
                        let lhs = crate::algebra::modp::mul_mod(a[r], b[s], p);
                        let rhs = crate::algebra::modp::mul_mod(a[s], b[r], p);
                        lhs != rhs
                    })
                });
                if !distinct {
                    return false;
                }
            }
        }
        true
    }

    /// Exponents of `F·∏ C_i`.
    ///
    /// # Errors
    /// Validation errors from [`ConicProducts::product`] and the errors of
    /// [`super::minimal_generator_degrees`].
    pub fn exponents(
        &self,
        labels: &[usize],
        mode: ComputeMode,
        k_max: Option<u32>,
    ) -> Result<ExponentReport, SyzygyError> {
        let f = self.product(labels)?;
        exponents_unchecked(&f, k_max, mode, PRIME_FLOOR, &|h| self.reduction_is_faithful(labels, h))
    }

    /// Screens all 351 pairs modulo a prime, extracts the nine triangles of
    /// the graph of pairs that are free with exponents `(3, 3)`, and
    /// certifies one pair per triangle and one pair across triangles
    /// exactly.
    ///
    /// # Errors
    /// [`SyzygyError::NotEquianharmonic`] for other parameters,
    /// [`SyzygyError::PartitionFailure`] when the graph has the wrong shape.
    pub fn partition(&self) -> Result<PartitionReport, SyzygyError> {
        if !binary_form_value(ParameterFamily::Equianharmonic, self.curve().t()).is_zero() {
            return Err(SyzygyError::NotEquianharmonic);
        }
        let pairs: Vec<(usize, usize)> =
            (1..=27).flat_map(|i| (i + 1..=27).map(move |j| (i, j))).collect();
        let screened: Vec<ExponentReport> = pairs
            .par_iter()
            .map(|&(i, j)| self.exponents(&[i, j], ComputeMode::Modular(super::Modulus::Auto), None))
            .collect::<Result<_, _>>()?;
        let free_pairs: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&screened)
            .filter(|(_, r)| r.classification == Classification::Free && r.exponents == [3, 3])
            .map(|(p, _)| *p)
            .collect();
        let triangles = triangles(&free_pairs).ok_or_else(|| SyzygyError::PartitionFailure {
            free_pairs: free_pairs.clone(),
        })?;
        let mut jobs: Vec<[usize; 2]> = triangles.iter().map(|t| [t[0], t[1]]).collect();
        jobs.push([triangles[0][0], triangles[1][0]]);
        let exact: Vec<ExponentReport> = jobs
            .par_iter()
            .map(|pair| self.exponents(pair, ComputeMode::Exact, None))
            .collect::<Result<_, _>>()?;
        let mut triples = Vec::new();
        for ((t, pair), report) in triangles.iter().zip(&jobs).zip(&exact) {
            let certified =
                report.certified && report.classification == Classification::Free && report.exponents == [3, 3];
            triples.push(TripleCertificate { triple: *t, pair: *pair, report: report.clone(), certified });
        }
        let cross_report = exact.last().expect("cross job").clone();
        let as_expected = cross_report.certified
            && cross_report.classification == Classification::NearlyFree
            && cross_report.exponents == [3, 4, 4];
        Ok(PartitionReport {
            free_pairs,
            triples,
            cross_pair: CrossPairCertificate { pair: *jobs.last().expect("cross job"), report: cross_report, as_expected },
            screening_prime: screened.first().and_then(|r| r.prime),
        })
    }
}

/// Splits a graph on 1..=27 into disjoint triangles, or `None` if it is
/// not such a union.
fn triangles(edges: &[(usize, usize)]) -> Option<Vec<[usize; 3]>> {
    let mut adj = vec![Vec::new(); 28];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut out: Vec<[usize; 3]> = Vec::new();
    for v in 1..=27 {
        if adj[v].len() != 2 {
            return None;
        }
        let (a, b) = (adj[v][0], adj[v][1]);
        if !adj[a].contains(&b) {
            return None;
        }
        let mut t = [v, a, b];
        t.sort_unstable();
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.sort_unstable();
    (out.len() == 9).then_some(out)
}

/// Exact confirmation for one discovered triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCertificate {
    /// Sorted labels.
    pub triple: [usize; 3],
    /// The pair recomputed exactly.
    pub pair: [usize; 2],
    /// Its exact report.
    pub report: ExponentReport,
    /// Exact result is free with exponents `(3, 3)`.
    pub certified: bool,
}

/// Exact confirmation for a pair taken from two different triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossPairCertificate {
    /// The pair.
    pub pair: [usize; 2],
    /// Its exact report.
    pub report: ExponentReport,
    /// Exact result is nearly free with exponents `(3, 4, 4)`.
    pub as_expected: bool,
}

/// The nine triples of conics whose pairwise products with the cubic are free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    /// Pairs classified free with exponents `(3, 3)` by the screen.
    pub free_pairs: Vec<(usize, usize)>,
    /// Triples in increasing order with their certificates.
    pub triples: Vec<TripleCertificate>,
    /// The cross-triple check.
    pub cross_pair: CrossPairCertificate,
    /// Prime used for the screen.
    pub screening_prime: Option<u64>,
}

impl PartitionReport {
    /// Every triple certified and the cross pair as expected.
    #[must_use]
    pub fn all_certified(&self) -> bool {
        self.triples.iter().all(|t| t.certified) && self.cross_pair.as_expected
    }
}

/// Exponents of the product described by `spec`.
///
/// # Errors
/// As [`ConicProducts::exponents`], plus curve construction errors.
pub fn product_exponents(
    spec: &ProductCurveSpec,
    mode: ComputeMode,
    k_max: Option<u32>,
) -> Result<ExponentReport, SyzygyError> {
    validate_labels(&spec.labels)?;
    let c = build_curve(&spec.t)?;
    ConicProducts::new(&c)?.exponents(&spec.labels, mode, k_max)
}

/// The nine triples of pairwise free conic products of an equianharmonic member.
///
/// # Errors
/// As [`ConicProducts::partition`].
pub fn find_triple_partition(c: &HessePencilCurve) -> Result<PartitionReport, SyzygyError> {
    if !binary_form_value(ParameterFamily::Equianharmonic, c.t()).is_zero() {
        return Err(SyzygyError::NotEquianharmonic);
    }
    ConicProducts::new(c)?.partition()
}
