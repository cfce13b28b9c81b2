//! Closed-form identities satisfied by the Hessian covariants of a Hesse
//! cubic, each checked by exact polynomial arithmetic.

use crate::algebra::{det3, jacobian_det, FieldElement, MPoly, Var};
use crate::cayley::{
    hessian, hessian_second_derivatives, minors_vector, omega_gradient, psi, psi_laplace, second_hessian, Omega,
};

use super::{HesseError, HessePencilCurve};

/// Outcome of one identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Identifier.
    pub name: &'static str,
    /// Human-readable statement.
    pub statement: &'static str,
    /// Whether it holds exactly.
    pub passed: bool,
}

/// All identity outcomes for one curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    /// Checks in a fixed order.
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    /// True when every check passed.
    #[must_use]
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Looks up a check by name.
    #[must_use]
    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Ctx {
    t: FieldElement,
    f: MPoly,
}

impl Ctx {
    /// `Σ (c(t)) · monomial` where each coefficient is an integer
    /// polynomial in `t` given by `(coefficient, power)` pairs.
    fn poly(&self, terms: &[([u32; 3], &[(i64, i64)])]) -> MPoly {
        let tower = self.f.tower();
        let mut out = MPoly::zero(tower);
        for (e, coeff) in terms {
            let c = coeff.iter().fold(FieldElement::zero(tower), |acc, &(a, p)| {
                &acc + &self.t.pow(p).expect("nonnegative").scale(&crate::algebra::qi(a))
            });
            out = out.add(&MPoly::monomial(&c, *e));
        }
        out
    }

    fn tpoly(&self, coeff: &[(i64, i64)]) -> FieldElement {
        coeff.iter().fold(FieldElement::zero(self.f.tower()), |acc, &(a, p)| {
            &acc + &self.t.pow(p).expect("nonnegative").scale(&crate::algebra::qi(a))
        })
    }

    fn nf(&self, p: &MPoly) -> Result<MPoly, HesseError> {
        Ok(p.reduce_mod(&self.f)?)
    }
}

fn grad(p: &MPoly) -> [MPoly; 3] {
    [p.partial(Var::X), p.partial(Var::Y), p.partial(Var::Z)]
}

/// `(x³ − y³)(x³ − z³)(y³ − z³)` over the curve's tower.
#[must_use]
pub fn cube_difference_product(c: &HessePencilCurve) -> MPoly {
    let tw = c.tower();
    let d = |a: [u32; 3], b: [u32; 3]| MPoly::from_int_terms(tw, &[(a, 1), (b, -1)]);
    d([3, 0, 0], [0, 3, 0]).mul(&d([3, 0, 0], [0, 0, 3])).mul(&d([0, 3, 0], [0, 0, 3]))
}

/// Checks the closed forms of the Hessian, the minors product, the two
/// derivative relations, the bordered Hessian, the Jacobian determinant
/// and the second Hessian for the given member.
///
/// # Errors
/// Arithmetic failures only; a failing identity is reported, not raised.
pub fn verify_paper_identities(c: &HessePencilCurve) -> Result<IdentityReport, HesseError> {
    let ctx = Ctx { t: c.t().clone(), f: c.poly().clone() };
    let curve = c.curve();
    let tower = c.tower();
    let disc = c.discriminant_factor();
    let xyz = MPoly::monomial(&FieldElement::one(tower), [1, 1, 1]);
    let mut checks = Vec::new();
    let mut push = |name, statement, passed| checks.push(IdentityCheck { name, statement, passed });

    let h = hessian(curve)?;
    let h_red = ctx.nf(&h)?;
    push(
        "reduced-hessian",
        "H mod F = 8(27+t^3)xyz",
        h_red == xyz.scale(&disc.scale(&crate::algebra::qi(8))),
    );

    let mvh = minors_vector(curve).dot(&hessian_second_derivatives(curve)?);
    let k = ctx.tpoly(&[(12, 4), (-2592, 1)]);
    push("minors-product", "M.V_H = 12t(t^3-216)F", mvh == ctx.f.scale(&k));

    let gf = grad(&ctx.f);
    let gh = grad(&h_red);
    let w1 = omega_gradient(curve, Omega::First, true)?;
    let w2 = omega_gradient(curve, Omega::Second, true)?;
    let t2 = ctx.t.pow(2)?;
    let td = &ctx.t * &disc;
    let rel = |cf: i64, ch: i64, w: &[MPoly; 3]| {
        (0..3).all(|i| {
            gf[i]
                .scale(&td.scale(&crate::algebra::qi(cf)))
                .sub(&gh[i].scale(&t2.scale(&crate::algebra::qi(ch))))
                .add(&w[i])
                .is_zero()
        })
    };
    push(
        "omega-relations",
        "64t(27+t^3)dF - 12t^2 dH + dOmega1 = 0 and 32t(27+t^3)dF - 6t^2 dH + dOmega2 = 0 on the reduced Hessian",
        rel(64, 12, &w1) && rel(32, 6, &w2),
    );

    let mut jac_zero = true;
    for reduced in [false, true] {
        let hh = if reduced { &h_red } else { &h };
        for which in [Omega::First, Omega::Second] {
            let w = omega_gradient(curve, which, reduced)?;
            let j = det3(&[grad(&ctx.f).to_vec(), grad(hh).to_vec(), w.to_vec()])?;
            jac_zero &= j.is_zero();
        }
    }
    push("omega-jacobians", "Jac(F,H,Omega1) = Jac(F,H,Omega2) = 0", jac_zero);

    let ps = psi(curve)?;
    push("psi-forms", "bordered determinant equals the minors expansion", ps == psi_laplace(curve)?);

    let expanded = ctx.poly(&[
        ([6, 0, 0], &[(27, 6)]),
        ([0, 6, 0], &[(27, 6)]),
        ([0, 0, 6], &[(27, 6)]),
        ([3, 3, 0], &[(-138, 6), (-10368, 3), (-139968, 0)]),
        ([3, 0, 3], &[(-138, 6), (-10368, 3), (-139968, 0)]),
        ([0, 3, 3], &[(-138, 6), (-10368, 3), (-139968, 0)]),
        ([4, 1, 1], &[(10, 7), (540, 4), (46656, 1)]),
        ([1, 4, 1], &[(10, 7), (540, 4), (46656, 1)]),
        ([1, 1, 4], &[(10, 7), (540, 4), (46656, 1)]),
        ([2, 2, 2], &[(-1, 8), (1404, 5), (58320, 2)]),
    ]);
    push(
        "psi-expanded",
        "Psi = -12(27t^6(x^6+y^6+z^6) - 6(23t^6+1728t^3+23328)(x^3y^3+x^3z^3+y^3z^3) + ...)",
        ps == expanded.scale_int(-12),
    );

    let disc2 = disc.pow(2)?.scale(&crate::algebra::qi(192));
    let psi_short = ctx
        .poly(&[([3, 3, 0], &[(12, 0)]), ([3, 0, 3], &[(12, 0)]), ([0, 3, 3], &[(12, 0)]), ([2, 2, 2], &[(-1, 2)])])
        .scale(&disc2);
    push(
        "psi-mod-f",
        "Psi = 192(27+t^3)^2(12(x^3y^3+x^3z^3+y^3z^3) - t^2x^2y^2z^2) mod F",
        ctx.nf(&ps)? == ctx.nf(&psi_short)?,
    );

    let row3 = ctx.poly(&[([2, 3, 0], &[(36, 0)]), ([2, 0, 3], &[(36, 0)]), ([1, 2, 2], &[(10, 2)])]);
    let row3y = ctx.poly(&[([3, 2, 0], &[(36, 0)]), ([0, 2, 3], &[(36, 0)]), ([2, 1, 2], &[(10, 2)])]);
    let row3z = ctx.poly(&[([3, 0, 2], &[(36, 0)]), ([0, 3, 2], &[(36, 0)]), ([2, 2, 1], &[(10, 2)])]);
    let row2 = vec![
        MPoly::monomial(&FieldElement::one(tower), [0, 1, 1]),
        MPoly::monomial(&FieldElement::one(tower), [1, 0, 1]),
        MPoly::monomial(&FieldElement::one(tower), [1, 1, 0]),
    ];
    let small = det3(&[grad(&ctx.f).to_vec(), row2, vec![row3, row3y, row3z]])?;
    let jac = jacobian_det(&ctx.f, &h, &ps)?;
    let scale = disc.pow(3)?.scale(&crate::algebra::qi(1536));
    push(
        "jacobian-psi",
        "Jac(F,H,Psi) = 1536(27+t^3)^3 det(displayed matrix) mod F",
        ctx.nf(&jac.sub(&small.scale(&scale)))?.is_zero(),
    );

    let h2 = second_hessian(curve)?;
    let prod = ctx.nf(&cube_difference_product(c))?;
    let h2_red = ctx.nf(&h2)?;
    push(
        "second-hessian",
        "H2 mod F is a nonzero multiple of (x^3-y^3)(x^3-z^3)(y^3-z^3) mod F",
        !h2_red.is_zero() && h2_red.is_proportional(&prod),
    );
    let exact = prod.scale(&disc.pow(3)?.scale(&crate::algebra::qi(3_317_760)));
    push("second-hessian-constant", "H2 = 3317760(27+t^3)^3 (x^3-y^3)(x^3-z^3)(y^3-z^3) mod F", h2_red == exact);

    Ok(IdentityReport { checks })
}
