use osculant::algebra::{qi, FieldElement, MPoly, Tower};
use osculant::cayley::{hessian, osculating_conic_theorem, second_hessian, ConicCoeffs};
use osculant::hesse::*;

fn rational_curve(t: i64) -> HessePencilCurve {
    build_curve(&FieldElement::from_rational(&Tower::rationals(), qi(t))).unwrap()
}

fn special(name: &str) -> HessePencilCurve {
    let v = special_parameter_values().into_iter().find(|v| v.name == name).unwrap();
    build_curve(&v.t).unwrap()
}

fn eps_power(tower: &std::sync::Arc<Tower>, n: i64) -> FieldElement {
    FieldElement::named_generator(tower, "eps").unwrap().pow(n).unwrap()
}

#[test]
fn identities_for_special_members() {
    for c in [rational_curve(6), rational_curve(-5), special("equianharmonic-eps2"), special("harmonic-minus")] {
        let r = verify_paper_identities(&c).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|x| !x.passed).map(|x| x.name).collect();
        assert!(failed.is_empty(), "t = {}: {failed:?}", c.t());
    }
}

#[test]
fn points_satisfy_the_defining_conditions() {
    for c in [rational_curve(1), rational_curve(6), special("equianharmonic-eps2")] {
        let pts = sextactic_points(&c).unwrap();
        let tower = pts[0].coords[0].tower().clone();
        let f = c.poly().embed(&tower).unwrap();
        let h = hessian(c.curve()).unwrap().embed(&tower).unwrap();
        let h2 = second_hessian(c.curve()).unwrap().embed(&tower).unwrap();
        let prod = cube_difference_product(&c).embed(&tower).unwrap();
        assert_eq!(pts.len(), 27);
        for p in &pts {
            assert!(f.eval(&p.coords).unwrap().is_zero());
            assert!(p.coords.iter().all(|x| !x.is_zero()));
            assert!(!h.eval(&p.coords).unwrap().is_zero());
            assert!(h2.eval(&p.coords).unwrap().is_zero());
            assert!(prod.eval(&p.coords).unwrap().is_zero());
        }
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                assert!(!projectively_equal(&p.coords, &q.coords));
            }
        }
        // closed under every generator
        let gens = group_generators(&tower);
        for g in &gens {
            for p in &pts {
                let img = g.act_on_point(&p.coords).unwrap();
                assert!(pts.iter().any(|q| projectively_equal(&q.coords, &img)));
            }
        }
        // the orbit of the three base points is the whole table
        let seeds: Vec<_> = [0, 3, 6].iter().map(|&i| pts[i].coords.clone()).collect();
        let orb = orbit(&gens, &seeds).unwrap();
        assert_eq!(orb.len(), 27);
        for e in &orb {
            assert!(pts.iter().any(|q| q.normalized() == e.point));
        }
    }
}

#[test]
fn worked_example_p27() {
    for c in [rational_curve(1), rational_curve(6)] {
        let pts = sextactic_points(&c).unwrap();
        let tower = pts[0].coords[0].tower().clone();
        let g = GroupElement::from_word(&tower, &[0, 1, 2]);
        let img = g.act_on_point(&pts[3].coords).unwrap();
        assert_eq!(img, pts[26].normalized());
        assert_eq!(pts[26].coords[1], eps_power(&tower, 4));

        // transported conic against the explicit display at P27
        let z2 = pts[3].coords[2].clone();
        let o4 = osculating_conic_closed_form(&c, &z2).unwrap();
        let o27 = g.act_on_conic(&o4).unwrap();
        let t = c.t().embed(&tower).unwrap();
        let e = eps_power(&tower, 1);
        let e2 = eps_power(&tower, 2);
        let int = |n: i64| FieldElement::from_int(&tower, n);
        let zz = &z2 * &z2;
        let a = &zz * &(&int(9) - &(&t * &z2).scale(&qi(6)));
        let b = &z2 * &(&(&t * &z2).scale(&qi(15)) + &int(18));
        let cc = &zz * &(&(&(&t * &t) * &zz) + &int(18));
        let d = &(&(&zz * &(&t * &t)) - &(&t * &z2).scale(&qi(18))) - &int(36);
        // slots x², y², z², xy, xz, yz
        let expect = ConicCoeffs([&d * &e2, -(&a * &e), a.clone(), b.clone(), -(&b * &e), -(&cc * &e2)]);
        assert!(o27.proportional(&expect));
    }
}

#[test]
fn closed_form_matches_theorem_and_reduced_displays() {
    for t in [1, 6, -5] {
        let c = rational_curve(t);
        let sf = splitting_tower(&c, 0).unwrap();
        for z in &sf.roots {
            let closed = osculating_conic_closed_form(&c, z).unwrap();
            let one = FieldElement::one(&sf.tower);
            let p = [one.clone(), one, z.clone()];
            let th = osculating_conic_theorem(c.curve(), &p).unwrap();
            assert!(closed.proportional(&th));
            let raw = reduced_conic_form(&c, z, ReductionStage::Raw).unwrap();
            let red = reduced_conic_form(&c, z, ReductionStage::Reduced).unwrap();
            assert!(raw.proportional(&closed));
            assert!(red.proportional(&closed));
            let neg: Vec<FieldElement> = raw.0.iter().map(|x| -x.clone()).collect();
            assert_eq!(red.0.to_vec(), neg);
            assert!(closed.eval(&p).unwrap().is_zero());
        }
    }
}

#[test]
fn three_atlases_agree_at_t1() {
    let c = rational_curve(1);
    let atlases: Vec<ConicAtlas> =
        ConicMethod::ALL.iter().map(|&m| all_osculating_conics(&c, m).unwrap()).collect();
    for a in &atlases {
        assert_eq!(a.entries.len(), 27);
    }
    for i in 0..27 {
        let c0 = &atlases[0].entries[i].conic;
        assert_eq!(c0, &atlases[1].entries[i].conic);
        assert_eq!(c0, &atlases[2].entries[i].conic);
    }
    let tw = atlases[0].splitting.tower.clone();
    let anchor = ConicCoeffs::from_ints(&tw, [15, 15, -17, -19, -3, -3]);
    assert!(atlases[0].entries[0].conic.proportional(&anchor));
    // distinct conics, each through its point and agreeing with the direct construction
    for (i, e) in atlases[0].entries.iter().enumerate() {
        assert!(e.conic.eval(&e.point.coords).unwrap().is_zero());
        let direct = osculating_conic_theorem(c.curve(), &e.point.coords).unwrap();
        assert!(direct.proportional(&e.conic), "P{}", e.point.label);
        for f in &atlases[0].entries[i + 1..] {
            assert!(!e.conic.proportional(&f.conic));
        }
    }
}

#[test]
fn atlases_are_nondegenerate_for_sample_members() {
    for t in [6, -5] {
        let c = rational_curve(t);
        let a = all_osculating_conics(&c, ConicMethod::ClosedForm).unwrap();
        assert!(a.entries.iter().all(|e| e.conic.is_nondegenerate()));
        let p = all_osculating_conics(&c, ConicMethod::Pipeline).unwrap();
        for (x, y) in a.entries.iter().zip(&p.entries) {
            assert_eq!(x.conic, y.conic);
        }
    }
}

#[test]
fn splitting_degrees() {
    let deg = |c: &HessePencilCurve| splitting_tower(c, 0).unwrap().tower.degree();
    assert_eq!(deg(&rational_curve(1)), 4);
    assert_eq!(deg(&rational_curve(6)), 6);
    assert_eq!(deg(&rational_curve(-5)), 4);
    assert_eq!(deg(&rational_curve(0)), 6);
    assert_eq!(deg(&special("equianharmonic-eps2")), 6);
}

#[test]
fn hessian_reduces_for_rational_parameters() {
    for t in [-7i64, -2, 1, 2, 5, 11] {
        let c = rational_curve(t);
        let h = hessian(c.curve()).unwrap().reduce_mod(c.poly()).unwrap();
        let k = FieldElement::from_int(c.tower(), 8 * (27 + t * t * t));
        assert_eq!(h, MPoly::monomial(&k, [1, 1, 1]));
    }
}
