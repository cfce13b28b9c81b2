use osculant::algebra::{FieldElement, MPoly, Monomial, Tower, Var};
use osculant::cayley::*;
use osculant::intersect::{fulton_at_point, Multiplicity};
use proptest::prelude::*;

fn curve(coeffs: &[i64], degree: u32) -> Option<PlaneCurve> {
    let terms = Monomial::of_degree(degree).into_iter().zip(coeffs).map(|(m, &c)| (m.0, c)).collect::<Vec<_>>();
    PlaneCurve::new(MPoly::from_int_terms(&Tower::rationals(), &terms)).ok()
}

fn point(p: [i64; 3]) -> [FieldElement; 3] {
    let tw = Tower::rationals();
    p.map(|x| FieldElement::from_int(&tw, x))
}

/// Adjusts the `z^d` coefficient so that the curve passes through `(a, b, 1)`.
fn curve_through(coeffs: &[i64], degree: u32, a: i64, b: i64) -> Option<(PlaneCurve, [FieldElement; 3])> {
    let p = point([a, b, 1]);
    let f = curve(coeffs, degree)?.poly().clone();
    let v = f.eval(&p).ok()?;
    let g = f.sub(&MPoly::monomial(&v, [0, 0, degree]));
    Some((PlaneCurve::new(g).ok()?, p))
}

fn gradient_at(f: &MPoly, p: &[FieldElement; 3]) -> Vec<FieldElement> {
    Var::ALL.iter().map(|v| f.partial(*v).eval(p).unwrap()).collect()
}

fn proportional(a: &[FieldElement], b: &[FieldElement]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bordered_hessian_forms_agree_for_cubics(c in proptest::collection::vec(-4i64..=4, 10)) {
        if let Some(f) = curve(&c, 3) {
            prop_assert_eq!(psi(&f).unwrap(), psi_laplace(&f).unwrap());
        }
    }

    #[test]
    fn euler_relation(c in proptest::collection::vec(-4i64..=4, 15), p in proptest::array::uniform3(-3i64..=3)) {
        prop_assume!(p != [0, 0, 0]);
        if let Some(f) = curve(&c, 4) {
            let p = point(p);
            let polars = polar_forms(&f, &p).unwrap();
            let value = f.poly().eval(&p).unwrap();
            prop_assert_eq!(polars.df.eval(&p).unwrap(), value.scale(&osculant::algebra::qi(4)));
        }
    }

    #[test]
    fn osculating_conic_of_a_cubic(c in proptest::collection::vec(-4i64..=4, 10), a in -2i64..=2, b in -2i64..=2) {
        let Some((f, p)) = curve_through(&c, 3, a, b) else { return Ok(()) };
        let conic = match osculating_conic_theorem(&f, &p) {
            Ok(conic) => conic,
            Err(CayleyError::OnHessian) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(conic.eval(&p).unwrap().is_zero());
        let grad_f = gradient_at(f.poly(), &p);
        prop_assume!(grad_f.iter().any(|x| !x.is_zero()));
        prop_assert!(proportional(&gradient_at(&conic.to_mpoly(), &p), &grad_f));
        match fulton_at_point(&f, &conic, &p).unwrap() {
            Multiplicity::Finite(m) => prop_assert!(m >= 5),
            Multiplicity::Infinite => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn bordered_hessian_forms_agree_for_quartics(c in proptest::collection::vec(-3i64..=3, 15)) {
        if let Some(f) = curve(&c, 4) {
            prop_assert_eq!(psi(&f).unwrap(), psi_laplace(&f).unwrap());
        }
    }
}

#[test]
fn osculating_conic_of_a_quartic() {
    let coeffs = [1, 0, 2, -1, 0, 3, 0, 1, -2, 0, 1, 0, 0, 2, 1];
    let (f, p) = curve_through(&coeffs, 4, 1, 2).unwrap();
    let conic = osculating_conic_theorem(&f, &p).unwrap();
    assert!(conic.is_nondegenerate());
    match fulton_at_point(&f, &conic, &p).unwrap() {
        Multiplicity::Finite(m) => assert!(m >= 5),
        Multiplicity::Infinite => panic!("a smooth quartic has no conic component"),
    }
}

#[test]
fn second_hessian_has_expected_degree() {
    let f = curve(&[1, 0, 0, 0, 0, 1, 0, 0, 3, 1], 3).unwrap();
    let h2 = second_hessian(&f).unwrap();
    assert_eq!(h2.total_degree(), Some(9));
    assert_eq!(sextactic_count(3).unwrap(), 27);
}
