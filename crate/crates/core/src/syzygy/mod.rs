//! Jacobian syzygies `a·f_x + b·f_y + c·f_z = 0` of plane curves: graded
//! dimensions, minimal generator degrees, the free / nearly free
//! classification and the conic-product families of the Hesse pencil.

mod engine;
mod lift;
mod products;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::matrix::rank;
use crate::algebra::modp::{is_squarefree_mod, mul_mod, pow_mod, splitting_prime, tower_homs, TowerHom};
use crate::algebra::{bivariate_gcd, AlgebraError, DenseMatrix, ExactField, FieldElement, MPoly, PrimeField, Tower, Var};
use crate::cayley::CayleyError;
use crate::hesse::HesseError;

use engine::{count_generators, equation_rows, Basis, Gradient};

pub use products::{
    find_triple_partition, product_exponents, ConicProducts, CrossPairCertificate, PartitionReport,
    ProductCurveSpec, TripleCertificate,
};

/// Smallest candidate for automatically chosen primes.
pub const PRIME_FLOOR: u64 = 1_000_000;

/// Errors raised by the syzygy computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyzygyError {
    /// The input is not a nonzero homogeneous polynomial of positive degree.
    #[error("input must be a nonzero homogeneous polynomial of positive degree")]
    NotHomogeneous,
    /// The curve has a repeated component.
    #[error("the polynomial is not squarefree")]
    NotSquarefree,
    /// The generator count could not be confirmed within the degree window.
    #[error("generator degrees are not stable up to k_max = {k_max}")]
    InconclusiveBound {
        /// Largest degree examined.
        k_max: u32,
    },
    /// The prime does not give a usable reduction.
    #[error("prime {0} is not admissible for this tower or polynomial")]
    BadPrime(u64),
    /// No admissible prime was found in the search range.
    #[error("no admissible prime found")]
    NoPrime,
    /// A conic label outside 1..=27.
    #[error("label {0} is outside 1..=27")]
    LabelOutOfRange(usize),
    /// A conic label was given twice.
    #[error("label {0} appears twice")]
    RepeatedLabel(usize),
    /// Two of the requested conics coincide.
    #[error("the conics at P{0} and P{1} are proportional")]
    ProportionalConics(usize, usize),
    /// A requested conic divides the cubic.
    #[error("the conic at P{0} divides the cubic")]
    ConicDividesCurve(usize),
    /// The parameter is not one of the equianharmonic values.
    #[error("the triple partition needs an equianharmonic parameter (t = 0, 6, 6eps^2 or 6eps^4)")]
    NotEquianharmonic,
    /// The free-pair graph is not nine disjoint triangles.
    #[error("the free-pair graph is not a union of nine disjoint triangles (free pairs: {free_pairs:?})")]
    PartitionFailure {
        /// Every pair classified as free with exponents (3, 3).
        free_pairs: Vec<(usize, usize)>,
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

/// Free, nearly free, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    /// Two generators with `d₁ + d₂ = d − 1`.
    Free,
    /// Three generators with `d₂ = d₃` and `d₁ + d₂ = d`.
    NearlyFree,
    /// Anything else.
    Other,
}

impl Classification {
    /// Lower-case name used in reports.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Classification::Free => "free",
            Classification::NearlyFree => "nearly free",
            Classification::Other => "other",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies a nondecreasing exponent list for a curve of degree `d`.
#[must_use]
pub fn classify(exponents: &[u32], d: u32) -> Classification {
    let mut e = exponents.to_vec();
    e.sort_unstable();
    match e.as_slice() {
        [a, b] if a + b + 1 == d => Classification::Free,
        [a, b, c] if b == c && a + b == d => Classification::NearlyFree,
        _ => Classification::Other,
    }
}

/// `dim S_j = (j+2 choose 2)`, zero for negative `j`.
#[must_use]
pub fn dim_s(j: i64) -> usize {
    if j < 0 {
        0
    } else {
        let j = j as usize;
        (j + 1) * (j + 2) / 2
    }
}

/// Dimensions predicted by the minimal resolution of a free or nearly
/// free curve, `None` for other classes.
#[must_use]
pub fn resolution_dims(exponents: &[u32], class: Classification, k_max: u32) -> Option<Vec<usize>> {
    let e: Vec<i64> = exponents.iter().map(|&x| i64::from(x)).collect();
    let ks = 0..=i64::from(k_max);
    match class {
        Classification::Free => Some(ks.map(|k| dim_s(k - e[0]) + dim_s(k - e[1])).collect()),
        Classification::NearlyFree => {
            Some(ks.map(|k| dim_s(k - e[0]) + 2 * dim_s(k - e[1]) - dim_s(k - e[1] - 1)).collect())
        }
        Classification::Other => None,
    }
}

/// `dim AR(f)_k` for `k = 0..=k_max`, with the rank of each evaluation map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    /// Degree of the curve.
    pub degree: u32,
    /// `dims[k] = dim AR(f)_k`.
    pub dims: Vec<usize>,
    /// `ranks[k]` is the rank of `S_k³ → S_{k+d−1}`.
    pub ranks: Vec<usize>,
}

impl GradedDims {
    /// Largest degree covered.
    #[must_use]
    pub fn k_max(&self) -> u32 {
        self.dims.len().saturating_sub(1) as u32
    }

    /// `3·dim S_k = dim AR_k + rank` at every degree.
    #[must_use]
    pub fn rank_nullity_holds(&self) -> bool {
        self.dims.iter().zip(&self.ranks).enumerate().all(|(k, (d, r))| 3 * dim_s(k as i64) == d + r)
    }
}

/// Which prime a modular computation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modulus {
    /// The smallest admissible prime above [`PRIME_FLOOR`].
    Auto,
    /// A fixed prime.
    Prime(u64),
    /// The smallest admissible prime above the bound.
    Above(u64),
}

/// Exact (certified) or modular computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComputeMode {
    /// Exact generators; dimensions certified through a reduction prime.
    Exact,
    /// Everything over a prime field; not certified.
    Modular(Modulus),
}

/// Minimal generator degrees of `AR(f)` and their classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentReport {
    /// Degree of the curve.
    pub degree: u32,
    /// Nondecreasing generator degrees.
    pub exponents: Vec<u32>,
    /// Classification of `exponents`.
    pub classification: Classification,
    /// Largest degree examined.
    pub k_max: u32,
    /// True for exact computations.
    pub certified: bool,
    /// Graded dimensions up to `k_max`.
    pub dims: GradedDims,
    /// Number of minimal generators in each degree.
    pub generator_counts: Vec<usize>,
    /// The prime used (for reduction or for the whole computation).
    pub prime: Option<u64>,
}

impl ExponentReport {
    /// Whether the dimensions match the minimal resolution implied by the
    /// classification at every degree (vacuously true for other classes).
    #[must_use]
    pub fn resolution_dims_match(&self) -> bool {
        resolution_dims(&self.exponents, self.classification, self.k_max).map_or(true, |r| r == self.dims.dims)
    }
}

/// The default window `2d − 3` (at least 1).
#[must_use]
pub fn default_k_max(d: u32) -> u32 {
    (2 * d).saturating_sub(3).max(1)
}

fn curve_degree(f: &MPoly) -> Result<u32, SyzygyError> {
    match f.total_degree() {
        Some(d) if d > 0 && f.is_homogeneous() => Ok(d),
        _ => Err(SyzygyError::NotHomogeneous),
    }
}

/// Rejects polynomials with a repeated factor: after a coordinate change
/// making the coefficients of `x^d` and `z^d` nonzero, the chart `z = 1`
/// polynomial must be coprime to its `x`-derivative.
///
/// # Errors
/// [`SyzygyError::NotSquarefree`], [`SyzygyError::NotHomogeneous`].
pub fn check_squarefree(f: &MPoly) -> Result<(), SyzygyError> {
    let d = curve_degree(f)?;
    let tower = f.tower().clone();
    let int = |n: i64| FieldElement::from_int(&tower, n);
    for a in 0..4i64 {
        for b in 0..4i64 {
            for c in 0..4i64 {
                let m = DenseMatrix::from_rows(vec![
                    vec![int(1), int(0), int(0)],
                    vec![int(a), int(1), int(0)],
                    vec![int(b), int(c), int(1)],
                ])?;
                let g = f.linear_substitute(&m)?;
                if g.coeff([d, 0, 0]).is_zero() || g.coeff([0, 0, d]).is_zero() {
                    continue;
                }
                if squarefree_specialization(&g, d) {
                    return Ok(());
                }
                let affine = MPoly::from_terms(&tower, g.terms().map(|(m, c)| ([m.0[0], m.0[1], 0], c.clone())))?;
                let gcd = bivariate_gcd(&affine, &affine.partial(Var::X));
                return if gcd.total_degree().unwrap_or(0) == 0 { Ok(()) } else { Err(SyzygyError::NotSquarefree) };
            }
        }
    }
    Err(SyzygyError::NotSquarefree)
}

/// Looks for a prime and a value `y₀` at which `g(x, y₀, 1)` keeps degree
/// `d` and is squarefree over `F_p`; that forces `g` itself to be squarefree.
fn squarefree_specialization(g: &MPoly, d: u32) -> bool {
    let mut start = PRIME_FLOOR;
    for _ in 0..3 {
        let Some(h) = splitting_prime(g.tower(), start, |h| g.terms().all(|(_, c)| h.map(c).is_some())) else {
            return false;
        };
        let p = h.p;
        for y0 in 1..=5u64 {
            let mut coeffs = vec![0u64; d as usize + 1];
            for (m, c) in g.terms() {
                let [ex, ey, _] = m.0;
                let c = h.map(c).expect("checked above");
                let v = mul_mod(c, pow_mod(y0, u64::from(ey), p), p);
                coeffs[ex as usize] = (coeffs[ex as usize] + v) % p;
            }
            if coeffs[d as usize] != 0 && is_squarefree_mod(&coeffs, p) {
                return true;
            }
        }
        start = p;
    }
    false
}

/// Exact `dim AR(f)_k` for `k = 0..=k_max` by rank-nullity on the
/// monomial-basis matrices.
///
/// # Errors
/// [`SyzygyError::NotSquarefree`], [`SyzygyError::NotHomogeneous`].
pub fn jacobian_syzygy_dims(f: &MPoly, k_max: u32) -> Result<GradedDims, SyzygyError> {
    check_squarefree(f)?;
    let d = curve_degree(f)?;
    let field = ExactField { tower: f.tower().clone() };
    let grad = Gradient::from_poly(f, |c| Some(c.clone())).expect("identity map");
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    for k in 0..=k_max {
        let src = Basis::of_degree(k);
        let dst = Basis::of_degree(k + d - 1);
        let cols = 3 * src.len();
        let r = rank(&field, equation_rows(&field, &grad, &src, &dst), cols);
        dims.push(cols - r);
        ranks.push(r);
    }
    Ok(GradedDims { degree: d, dims, ranks })
}

/// A reduction of `f`'s tower onto `F_p` under which every coefficient of
/// `f` has an image.
fn admissible_hom(
    tower: &Tower,
    f: &MPoly,
    modulus: Modulus,
    start: u64,
    accept: &(dyn Fn(&TowerHom) -> bool + Sync),
) -> Result<TowerHom, SyzygyError> {
    let maps = |h: &TowerHom| f.terms().all(|(_, c)| h.map(c).is_some()) && accept(h);
    match modulus {
        Modulus::Auto => splitting_prime(tower, start, maps).ok_or(SyzygyError::NoPrime),
        Modulus::Above(bound) => splitting_prime(tower, bound.max(3), maps).ok_or(SyzygyError::NoPrime),
        Modulus::Prime(p) => {
            if !crate::algebra::modp::is_prime(p) || p < 5 {
                return Err(SyzygyError::BadPrime(p));
            }
            tower_homs(tower, p, true, 1).into_iter().find(maps).ok_or(SyzygyError::BadPrime(p))
        }
    }
}

/// Builds the report from a generator count, applying the consistency
/// checks of the degree window.
fn finish_report(
    d: u32,
    k_max: u32,
    certified: bool,
    prime: Option<u64>,
    dims: Vec<usize>,
    ranks: Vec<usize>,
    mu: Vec<usize>,
) -> Result<ExponentReport, SyzygyError> {
    let exponents: Vec<u32> =
        mu.iter().enumerate().flat_map(|(k, &n)| std::iter::repeat(k as u32).take(n)).collect();
    let classification = classify(&exponents, d);
    let report = ExponentReport {
        degree: d,
        exponents,
        classification,
        k_max,
        certified,
        dims: GradedDims { degree: d, dims, ranks },
        generator_counts: mu,
        prime,
    };
    let last = report.exponents.last().copied();
    if last.map_or(true, |e| e >= k_max) || !report.dims.rank_nullity_holds() || !report.resolution_dims_match() {
        return Err(SyzygyError::InconclusiveBound { k_max });
    }
    Ok(report)
}

/// Generator counting without the squarefree check.
pub(crate) fn exponents_unchecked(
    f: &MPoly,
    k_max: Option<u32>,
    mode: ComputeMode,
    modulus_start: u64,
    accept: &(dyn Fn(&TowerHom) -> bool + Sync),
) -> Result<ExponentReport, SyzygyError> {
    let d = curve_degree(f)?;
    let k_max = k_max.unwrap_or_else(|| default_k_max(d));
    let tower: Arc<Tower> = f.tower().clone();
    match mode {
        ComputeMode::Modular(modulus) => {
            let h = admissible_hom(&tower, f, modulus, modulus_start, accept)?;
            let field = PrimeField { p: h.p };
            let grad = Gradient::from_poly(f, |c| h.map(c)).ok_or(SyzygyError::BadPrime(h.p))?;
            let c = count_generators(&field, &field, &grad, &grad, &|x| Some(*x), &|_, _, _| None, k_max)
                .map_err(|_| SyzygyError::BadPrime(h.p))?;
            finish_report(d, k_max, false, Some(h.p), c.dims, c.ranks, c.mu)
        }
        ComputeMode::Exact => {
            let exact = ExactField { tower: tower.clone() };
            let grad_exact = Gradient::from_poly(f, |c| Some(c.clone())).expect("identity map");
            let mut start = modulus_start;
            for _ in 0..32 {
                let h = admissible_hom(&tower, f, Modulus::Auto, start, accept)?;
                let field = PrimeField { p: h.p };
                let grad = Gradient::from_poly(f, |c| h.map(c)).ok_or(SyzygyError::BadPrime(h.p))?;
                let lift = |k: u32, pivots: &[usize], free: &[usize]| lift::lift_kernel_vectors(f, k, pivots, free, h.p);
                match count_generators(&field, &exact, &grad, &grad_exact, &|x| h.map(x), &lift, k_max) {
                    Ok(c) => return finish_report(d, k_max, true, Some(h.p), c.dims, c.ranks, c.mu),
                    Err(_) => start = h.p,
                }
            }
            Err(SyzygyError::NoPrime)
        }
    }
}

/// Minimal generator degrees of `AR(f)` by the graded Nakayama count
/// `μ_k = dim AR_k − dim S₁·AR_{k−1}`, classified as free, nearly free or
/// other.  `k_max` defaults to `2d − 3`.
///
/// # Errors
/// [`SyzygyError::NotSquarefree`]; [`SyzygyError::InconclusiveBound`] when
/// a generator appears at `k_max` or the dimensions contradict the
/// classification; [`SyzygyError::BadPrime`] for an unusable fixed prime.
pub fn minimal_generator_degrees(
    f: &MPoly,
    k_max: Option<u32>,
    mode: ComputeMode,
) -> Result<ExponentReport, SyzygyError> {
    check_squarefree(f)?;
    exponents_unchecked(f, k_max, mode, PRIME_FLOOR, &|_| true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat() -> MPoly {
        MPoly::from_int_terms(&Tower::rationals(), &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)])
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&[3, 3], 7), Classification::Free);
        assert_eq!(classify(&[3, 4, 4], 7), Classification::NearlyFree);
        assert_eq!(classify(&[5, 5, 5], 9), Classification::Other);
        assert_eq!(classify(&[2, 3, 3], 5), Classification::NearlyFree);
        assert_eq!(classify(&[3, 5], 9), Classification::Free);
    }

    #[test]
    fn fermat_dims() {
        let g = jacobian_syzygy_dims(&fermat(), 4).unwrap();
        assert_eq!(g.dims, vec![0, 0, 3, 9, 17]);
        assert!(g.rank_nullity_holds());
    }

    #[test]
    fn fermat_exponents_in_both_modes() {
        for mode in [ComputeMode::Exact, ComputeMode::Modular(Modulus::Auto)] {
            let r = minimal_generator_degrees(&fermat(), Some(4), mode).unwrap();
            assert_eq!(r.exponents, vec![2, 2, 2]);
            assert_eq!(r.classification, Classification::Other);
            assert_eq!(r.certified, mode == ComputeMode::Exact);
        }
    }

    #[test]
    fn repeated_factor_is_rejected() {
        let tw = Tower::rationals();
        let l = MPoly::from_int_terms(&tw, &[([1, 0, 0], 1), ([0, 1, 0], 2)]);
        let f = l.mul(&l).mul(&MPoly::var(&tw, Var::Z));
        assert_eq!(check_squarefree(&f), Err(SyzygyError::NotSquarefree));
        assert_eq!(check_squarefree(&fermat()), Ok(()));
        let z = MPoly::var(&tw, Var::Z);
        assert_eq!(check_squarefree(&z.mul(&z).mul(&MPoly::var(&tw, Var::X))), Err(SyzygyError::NotSquarefree));
    }

    #[test]
    fn window_too_small_is_inconclusive() {
        let r = minimal_generator_degrees(&fermat(), Some(2), ComputeMode::Exact);
        assert_eq!(r, Err(SyzygyError::InconclusiveBound { k_max: 2 }));
    }

    #[test]
    fn unusable_fixed_prime() {
        // 4 is not prime
        assert_eq!(minimal_generator_degrees(&fermat(), None, ComputeMode::Modular(Modulus::Prime(4))).unwrap_err(), SyzygyError::BadPrime(4));
    }
}
