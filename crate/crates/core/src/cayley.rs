//! Hessian machinery for an arbitrary plane curve: the Hessian, the vector of
//! 2×2 minors, second derivatives of the Hessian, the bordered Hessian, polar
//! forms, the osculating conic at a point and the second Hessian.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    det_poly, jacobian_det, AlgebraError, DenseMatrix, FieldElement, MPoly, Tower, Var,
};

/// Errors raised by the curve-level constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    /// The defining polynomial is zero.
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,
    /// The defining polynomial is not homogeneous.
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    /// The point does not lie on the curve.
    #[error("point is not on the curve")]
    NotOnCurve,
    /// The Hessian vanishes at the point (inflection or singular point).
    #[error("the Hessian vanishes at the point")]
    OnHessian,
    /// The construction needs a curve of higher degree.
    #[error("curve degree {0} is too small")]
    DegreeTooSmall(u32),
    /// The polynomial is not a quadratic form.
    #[error("polynomial is not a quadratic form")]
    NotAConic,
    /// The zero vector is not a projective point.
    #[error("the zero vector is not a point")]
    ZeroPoint,
    /// Arithmetic failure.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A plane projective curve given by a homogeneous polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    f: MPoly,
    degree: u32,
}

impl PlaneCurve {
    /// Wraps a nonzero homogeneous polynomial.
    pub fn new(f: MPoly) -> Result<Self, CayleyError> {
        let degree = f.total_degree().ok_or(CayleyError::ZeroPolynomial)?;
        if !f.is_homogeneous() {
            return Err(CayleyError::NotHomogeneous);
        }
        Ok(Self { f, degree })
    }

    /// Defining polynomial.
    #[must_use]
    pub fn poly(&self) -> &MPoly {
        &self.f
    }

    /// Degree.
    #[must_use]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient tower.
    #[must_use]
    pub fn tower(&self) -> &Arc<Tower> {
        self.f.tower()
    }
}

/// Six polynomials in the slot order (11, 22, 33, 32, 31, 21), which pairs
/// with second-derivative slots (xx, yy, zz, 2yz, 2xz, 2xy).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixVector(pub [MPoly; 6]);

impl SixVector {
    /// Scalar product `Σ aᵢ·bᵢ`.
    #[must_use]
    pub fn dot(&self, other: &SixVector) -> MPoly {
        let mut acc = self.0[0].mul(&other.0[0]);
        for i in 1..6 {
            acc = acc.add(&self.0[i].mul(&other.0[i]));
        }
        acc
    }

    /// Applies a map to every slot.
    #[must_use]
    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> SixVector {
        SixVector(std::array::from_fn(|i| f(&self.0[i])))
    }
}

/// Matrix of second partial derivatives.
#[must_use]
pub fn second_derivative_matrix(f: &MPoly) -> Vec<Vec<MPoly>> {
    let first: Vec<MPoly> = Var::ALL.iter().map(|&v| f.partial(v)).collect();
    first
        .iter()
        .map(|g| Var::ALL.iter().map(|&v| g.partial(v)).collect())
        .collect()
}

fn gradient(f: &MPoly) -> [MPoly; 3] {
    [f.partial(Var::X), f.partial(Var::Y), f.partial(Var::Z)]
}

/// Hessian determinant, of degree 3(d − 2).
pub fn hessian(c: &PlaneCurve) -> Result<MPoly, CayleyError> {
    Ok(det_poly(&second_derivative_matrix(c.poly()))?)
}

/// The on-curve reduced Hessian: the normal form of the Hessian modulo the
/// curve equation.
pub fn reduced_hessian(c: &PlaneCurve) -> Result<MPoly, CayleyError> {
    Ok(hessian(c)?.reduce_mod(c.poly())?)
}

fn cofactor(m: &[Vec<MPoly>], i: usize, j: usize) -> MPoly {
    let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
    let s: Vec<usize> = (0..3).filter(|&k| k != j).collect();
    let minor = m[r[0]][s[0]].mul(&m[r[1]][s[1]]).sub(&m[r[0]][s[1]].mul(&m[r[1]][s[0]]));
    if (i + j) % 2 == 0 {
        minor
    } else {
        minor.neg()
    }
}

/// Signed 2×2 minors (cofactors) of the second-derivative matrix in slot
/// order (11, 22, 33, 32, 31, 21).
#[must_use]
pub fn minors_vector(c: &PlaneCurve) -> SixVector {
    let m = second_derivative_matrix(c.poly());
    SixVector([
        cofactor(&m, 0, 0),
        cofactor(&m, 1, 1),
        cofactor(&m, 2, 2),
        cofactor(&m, 2, 1),
        cofactor(&m, 2, 0),
        cofactor(&m, 1, 0),
    ])
}

/// Second derivatives of `h` in slot order (xx, yy, zz, 2yz, 2xz, 2xy).
#[must_use]
pub fn second_derivatives(h: &MPoly) -> SixVector {
    let m = second_derivative_matrix(h);
    SixVector([
        m[0][0].clone(),
        m[1][1].clone(),
        m[2][2].clone(),
        m[1][2].scale_int(2),
        m[0][2].scale_int(2),
        m[0][1].scale_int(2),
    ])
}

/// Second derivatives of the Hessian.
pub fn hessian_second_derivatives(c: &PlaneCurve) -> Result<SixVector, CayleyError> {
    Ok(second_derivatives(&hessian(c)?))
}

/// Which of the two scalar products between the minors vector and the
/// second derivatives of the Hessian is differentiated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Omega {
    /// Derivative falls on the minors: `∂M ∘ V_H`.
    First,
    /// Derivative falls on the Hessian derivatives: `M ∘ ∂V_H`.
    Second,
}

/// The three partial derivatives of the chosen product.  With `reduced`,
/// the Hessian derivatives are taken from the on-curve reduced Hessian.
pub fn omega_gradient(c: &PlaneCurve, which: Omega, reduced: bool) -> Result<[MPoly; 3], CayleyError> {
    let h = if reduced { reduced_hessian(c)? } else { hessian(c)? };
    let vh = second_derivatives(&h);
    let m = minors_vector(c);
    Ok(std::array::from_fn(|i| {
        let v = Var::ALL[i];
        match which {
            Omega::First => m.map(|p| p.partial(v)).dot(&vh),
            Omega::Second => m.dot(&vh.map(|p| p.partial(v))),
        }
    }))
}

/// The bordered Hessian: minus the determinant of the second-derivative
/// matrix bordered by the gradient of the Hessian.
pub fn psi(c: &PlaneCurve) -> Result<MPoly, CayleyError> {
    let h = hessian(c)?;
    let g = gradient(&h);
    let m = second_derivative_matrix(c.poly());
    let zero = MPoly::zero(c.tower());
    let mut rows: Vec<Vec<MPoly>> = m
        .into_iter()
        .zip(g.iter())
        .map(|(mut row, gi)| {
            row.push(gi.clone());
            row
        })
        .collect();
    rows.push(vec![g[0].clone(), g[1].clone(), g[2].clone(), zero]);
    Ok(det_poly(&rows)?.neg())
}

/// The bordered Hessian by Laplace expansion: the minors vector paired with
/// the products of first derivatives of the Hessian.
pub fn psi_laplace(c: &PlaneCurve) -> Result<MPoly, CayleyError> {
    let h = hessian(c)?;
    let [hx, hy, hz] = gradient(&h);
    let v = SixVector([
        hx.mul(&hx),
        hy.mul(&hy),
        hz.mul(&hz),
        hy.mul(&hz).scale_int(2),
        hx.mul(&hz).scale_int(2),
        hx.mul(&hy).scale_int(2),
    ]);
    Ok(minors_vector(c).dot(&v))
}

/// Polar forms of a curve at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarForms {
    /// Linear polar `Σ ∂ᵢF(P)·xᵢ`.
    pub df: MPoly,
    /// Quadratic polar `Σ ∂ᵢ∂ⱼF(P)·xᵢxⱼ`.
    pub d2f: MPoly,
    /// Linear polar of the Hessian `Σ ∂ᵢH(P)·xᵢ`.
    pub dh: MPoly,
}

fn linear_form(coeffs: &[FieldElement; 3]) -> MPoly {
    let tower = coeffs[0].tower().clone();
    MPoly::from_terms(
        &tower,
        [([1, 0, 0], coeffs[0].clone()), ([0, 1, 0], coeffs[1].clone()), ([0, 0, 1], coeffs[2].clone())],
    )
    .expect("same tower")
}

fn point_tower(c: &PlaneCurve, p: &[FieldElement; 3]) -> Result<[FieldElement; 3], CayleyError> {
    let mut t = c.tower().clone();
    for x in p {
        t = crate::algebra::common_tower(&t, x.tower())?;
    }
    if p.iter().all(FieldElement::is_zero) {
        return Err(CayleyError::ZeroPoint);
    }
    Ok([p[0].embed(&t)?, p[1].embed(&t)?, p[2].embed(&t)?])
}

/// Linear and quadratic polars of F and the linear polar of H at `p`.
pub fn polar_forms(c: &PlaneCurve, p: &[FieldElement; 3]) -> Result<PolarForms, CayleyError> {
    let p = point_tower(c, p)?;
    let grad_at = |f: &MPoly| -> Result<[FieldElement; 3], CayleyError> {
        let g = gradient(f);
        Ok([g[0].eval(&p)?, g[1].eval(&p)?, g[2].eval(&p)?])
    };
    let df = linear_form(&grad_at(c.poly())?);
    let dh = linear_form(&grad_at(&hessian(c)?)?);
    let m = second_derivative_matrix(c.poly());
    let tower = p[0].tower().clone();
    let mut terms = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            terms.push((e, m[i][j].eval(&p)?));
        }
    }
    let d2f = MPoly::from_terms(&tower, terms)?;
    Ok(PolarForms { df, d2f, dh })
}

fn check_point(c: &PlaneCurve, p: &[FieldElement; 3]) -> Result<(FieldElement, [FieldElement; 3]), CayleyError> {
    let p = point_tower(c, p)?;
    if !c.poly().eval(&p)?.is_zero() {
        return Err(CayleyError::NotOnCurve);
    }
    let h = hessian(c)?.eval(&p)?;
    if h.is_zero() {
        return Err(CayleyError::OnHessian);
    }
    Ok((h, p))
}

/// `Λ(P) = (−3·(M∘V_H)(P)·H(P) + 4Ψ(P)) / (9H(P)³)`.
pub fn lambda_at(c: &PlaneCurve, p: &[FieldElement; 3]) -> Result<FieldElement, CayleyError> {
    let (h, p) = check_point(c, p)?;
    let mvh = minors_vector(c).dot(&hessian_second_derivatives(c)?).eval(&p)?;
    let psi_p = psi(c)?.eval(&p)?;
    let num = &psi_p.scale(&crate::algebra::qi(4)) - &(&mvh * &h).scale(&crate::algebra::qi(3));
    let den = h.pow(3)?.scale(&crate::algebra::qi(9));
    Ok(num.checked_div(&den)?)
}

/// The osculating conic at a smooth non-inflection point:
/// `D²F_P − ((2/(3H(P)))·DH_P + Λ(P)·DF_P)·DF_P`.
pub fn osculating_conic_theorem(c: &PlaneCurve, p: &[FieldElement; 3]) -> Result<ConicCoeffs, CayleyError> {
    let (h, p) = check_point(c, p)?;
    let lambda = lambda_at(c, &p)?;
    let polars = polar_forms(c, &p)?;
    let two_over_3h = FieldElement::from_int(h.tower(), 2).checked_div(&h.scale(&crate::algebra::qi(3)))?;
    let bracket = polars.dh.scale(&two_over_3h).add(&polars.df.scale(&lambda));
    let conic = polars.d2f.sub(&bracket.mul(&polars.df));
    ConicCoeffs::from_mpoly(&conic)
}

/// The second Hessian
/// `(12d²−54d+57)·H·Jac(F,H,Ω₁) + (d−2)(12d−27)·H·Jac(F,H,Ω₂) − 20(d−2)²·Jac(F,H,Ψ)`,
/// homogeneous of degree 12d − 27.
pub fn second_hessian(c: &PlaneCurve) -> Result<MPoly, CayleyError> {
    let d = i64::from(c.degree());
    if d < 3 {
        return Err(CayleyError::DegreeTooSmall(c.degree()));
    }
    let f = c.poly();
    let h = hessian(c)?;
    let jac_row = |g: &[MPoly; 3]| -> Result<MPoly, CayleyError> {
        let rows = vec![
            gradient(f).to_vec(),
            gradient(&h).to_vec(),
            g.to_vec(),
        ];
        Ok(crate::algebra::det3(&rows)?)
    };
    let j1 = jac_row(&omega_gradient(c, Omega::First, false)?)?;
    let j2 = jac_row(&omega_gradient(c, Omega::Second, false)?)?;
    let j3 = jacobian_det(f, &h, &psi(c)?)?;
    let a = 12 * d * d - 54 * d + 57;
    let b = (d - 2) * (12 * d - 27);
    let e = 20 * (d - 2) * (d - 2);
    Ok(h
        .mul(&j1)
        .scale_int(a)
        .add(&h.mul(&j2).scale_int(b))
        .sub(&j3.scale_int(e)))
}

/// Number of sextactic points of a smooth curve of degree `d`: d(12d − 27).
pub fn sextactic_count(d: u32) -> Result<u32, CayleyError> {
    if d < 3 {
        return Err(CayleyError::DegreeTooSmall(d));
    }
    Ok(d * (12 * d - 27))
}

/// Coefficients of a conic in slot order (x², y², z², xy, xz, yz).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicCoeffs(pub [FieldElement; 6]);

/// Exponents of the six conic slots.
pub const CONIC_SLOTS: [[u32; 3]; 6] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
];

impl ConicCoeffs {
    /// Reads the coefficients of a quadratic form.
    pub fn from_mpoly(p: &MPoly) -> Result<Self, CayleyError> {
        if p.is_zero() {
            return Err(CayleyError::ZeroPolynomial);
        }
        if p.total_degree() != Some(2) || !p.is_homogeneous() {
            return Err(CayleyError::NotAConic);
        }
        Ok(Self(std::array::from_fn(|i| p.coeff(CONIC_SLOTS[i]))))
    }

    /// Builds a conic from integer coefficients over a tower.
    #[must_use]
    pub fn from_ints(tower: &Arc<Tower>, c: [i64; 6]) -> Self {
        Self(std::array::from_fn(|i| FieldElement::from_int(tower, c[i])))
    }

    /// The quadratic form.
    #[must_use]
    pub fn to_mpoly(&self) -> MPoly {
        let tower = self.tower();
        MPoly::from_terms(&tower, (0..6).map(|i| (CONIC_SLOTS[i], self.0[i].clone())))
            .expect("coefficients share a tower")
    }

    /// Common tower of the coefficients.
    #[must_use]
    pub fn tower(&self) -> Arc<Tower> {
        let mut t = self.0[0].tower().clone();
        for c in &self.0[1..] {
            t = crate::algebra::common_tower(&t, c.tower()).expect("compatible coefficients");
        }
        t
    }

    /// Symmetric matrix `S` with `Q(v) = vᵀ S v`.
    #[must_use]
    pub fn symmetric_matrix(&self) -> DenseMatrix {
        let t = self.tower();
        let c: Vec<FieldElement> = self.0.iter().map(|x| x.embed(&t).expect("embeds")).collect();
        let half = crate::algebra::q(1, 2);
        let (xy, xz, yz) = (c[3].scale(&half), c[4].scale(&half), c[5].scale(&half));
        DenseMatrix::from_rows(vec![
            vec![c[0].clone(), xy.clone(), xz.clone()],
            vec![xy, c[1].clone(), yz.clone()],
            vec![xz, yz, c[2].clone()],
        ])
        .expect("square")
    }

    /// True when the symmetric matrix is invertible (a smooth conic).
    #[must_use]
    pub fn is_nondegenerate(&self) -> bool {
        !self.symmetric_matrix().det().expect("square").is_zero()
    }

    /// Value at a point.
    pub fn eval(&self, p: &[FieldElement; 3]) -> Result<FieldElement, CayleyError> {
        Ok(self.to_mpoly().eval(p)?)
    }

    /// Equality up to a nonzero scalar, by cross-multiplication.
    #[must_use]
    pub fn proportional(&self, other: &ConicCoeffs) -> bool {
        let nonzero = |c: &ConicCoeffs| c.0.iter().any(|x| !x.is_zero());
        if !nonzero(self) || !nonzero(other) {
            return false;
        }
        for i in 0..6 {
            for j in i + 1..6 {
                if &self.0[i] * &other.0[j] != &self.0[j] * &other.0[i] {
                    return false;
                }
            }
        }
        true
    }

    /// Scales so that the first nonzero coefficient is one.
    pub fn normalized(&self) -> Result<ConicCoeffs, CayleyError> {
        let lead = self
            .0
            .iter()
            .find(|x| !x.is_zero())
            .ok_or(CayleyError::ZeroPolynomial)?
            .inv()?;
        Ok(ConicCoeffs(std::array::from_fn(|i| &self.0[i] * &lead)))
    }

    /// Re-expresses the coefficients over a compatible tower.
    pub fn embed(&self, tower: &Arc<Tower>) -> Result<ConicCoeffs, CayleyError> {
        let v: Vec<FieldElement> = self.0.iter().map(|x| x.embed(tower)).collect::<Result<_, _>>()?;
        Ok(ConicCoeffs(std::array::from_fn(|i| v[i].clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn hesse_q(t: i64) -> PlaneCurve {
        let tw = Tower::rationals();
        PlaneCurve::new(MPoly::from_int_terms(
            &tw,
            &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1), ([1, 1, 1], t)],
        ))
        .unwrap()
    }

    fn pt(a: i64, b: i64, c: i64) -> [FieldElement; 3] {
        let tw = Tower::rationals();
        [
            FieldElement::from_int(&tw, a),
            FieldElement::from_int(&tw, b),
            FieldElement::from_int(&tw, c),
        ]
    }

    #[test]
    fn fermat_hessian() {
        let h = hessian(&hesse_q(0)).unwrap();
        assert_eq!(h, MPoly::from_int_terms(&Tower::rationals(), &[([1, 1, 1], 216)]));
    }

    #[test]
    fn pure_cube_has_zero_hessian() {
        let c = PlaneCurve::new(MPoly::from_int_terms(&Tower::rationals(), &[([3, 0, 0], 1)])).unwrap();
        assert!(hessian(&c).unwrap().is_zero());
    }

    #[test]
    fn hessian_value_at_a_point() {
        // (216 + 2) * (1*1*(-1)) - 6 * (1 + 1 - 1) = -224
        let h = hessian(&hesse_q(1)).unwrap();
        assert_eq!(h.eval(&pt(1, 1, -1)).unwrap(), FieldElement::from_int(&Tower::rationals(), -224));
    }

    #[test]
    fn quadric_minors_are_constant() {
        let tw = Tower::rationals();
        let c = PlaneCurve::new(MPoly::from_int_terms(&tw, &[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], 1)])).unwrap();
        let m = minors_vector(&c);
        let expect = [4, 4, 4, 0, 0, 0];
        for (p, e) in m.0.iter().zip(expect) {
            assert_eq!(*p, MPoly::constant(&FieldElement::from_int(&tw, e)));
        }
    }

    #[test]
    fn polar_forms_at_the_base_point() {
        let pf = polar_forms(&hesse_q(1), &pt(1, 1, -1)).unwrap();
        let tw = Tower::rationals();
        assert_eq!(pf.df, MPoly::from_int_terms(&tw, &[([1, 0, 0], 2), ([0, 1, 0], 2), ([0, 0, 1], 4)]));
        assert!(pf.df.eval(&pt(1, 1, -1)).unwrap().is_zero());
    }

    #[test]
    fn lambda_at_the_base_point() {
        let l = lambda_at(&hesse_q(1), &pt(1, 1, -1)).unwrap();
        assert_eq!(l.as_rational(), Some(&q(13, 168)));
    }

    #[test]
    fn theorem_conic_at_the_base_point() {
        let tw = Tower::rationals();
        let c = osculating_conic_theorem(&hesse_q(1), &pt(1, 1, -1)).unwrap();
        let expect = ConicCoeffs::from_ints(&tw, [15, 15, -17, -19, -3, -3]);
        assert!(c.proportional(&expect));
        assert!(c.eval(&pt(1, 1, -1)).unwrap().is_zero());
    }

    #[test]
    fn errors_off_curve_and_on_hessian() {
        assert_eq!(lambda_at(&hesse_q(1), &pt(1, 1, 1)), Err(CayleyError::NotOnCurve));
        // (1, -1, 0) is an inflection point of every Hesse member
        assert_eq!(lambda_at(&hesse_q(1), &pt(1, -1, 0)), Err(CayleyError::OnHessian));
    }

    #[test]
    fn sextactic_counts() {
        assert_eq!(sextactic_count(3).unwrap(), 27);
        assert_eq!(sextactic_count(4).unwrap(), 84);
        assert_eq!(sextactic_count(5).unwrap(), 165);
        assert_eq!(sextactic_count(2), Err(CayleyError::DegreeTooSmall(2)));
    }

    #[test]
    fn second_hessian_degree() {
        let h2 = second_hessian(&hesse_q(1)).unwrap();
        assert_eq!(h2.total_degree(), Some(9));
        assert!(h2.is_homogeneous());
    }
}
