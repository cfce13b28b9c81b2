use osculant::algebra::{qi, DenseMatrix, FieldElement, MPoly, Tower};
use osculant::hesse::{build_curve, special_parameter_values};
use osculant::syzygy::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn products(t: i64) -> ConicProducts {
    let c = build_curve(&FieldElement::from_rational(&Tower::rationals(), qi(t))).unwrap();
    ConicProducts::new(&c).unwrap()
}

const MODULAR: ComputeMode = ComputeMode::Modular(Modulus::Auto);

#[test]
fn fermat_cubic_dims_and_exponents() {
    let f = MPoly::from_int_terms(&Tower::rationals(), &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
    let g = jacobian_syzygy_dims(&f, 4).unwrap();
    assert_eq!(&g.dims[..3], &[0, 0, 3]);
    let r = minimal_generator_degrees(&f, Some(4), ComputeMode::Exact).unwrap();
    assert_eq!(r.exponents, vec![2, 2, 2]);
    assert_eq!(r.generator_counts, vec![0, 0, 3, 0, 0]);
    assert_eq!(r.classification, Classification::Other);
}

#[test]
fn fermat_member_single_conic() {
    let r = products(0).exponents(&[1], ComputeMode::Exact, None).unwrap();
    assert_eq!(r.exponents, vec![2, 3, 3]);
    assert_eq!(r.classification, Classification::NearlyFree);
    assert!(r.certified);
    assert!(r.resolution_dims_match());
}

#[test]
fn equianharmonic_products() {
    let cp = products(6);
    let single = cp.exponents(&[5], ComputeMode::Exact, None).unwrap();
    assert_eq!((single.exponents.as_slice(), single.classification), (&[2, 3, 3][..], Classification::NearlyFree));
    // 1, 4, 7 lie in one triple; 1 and 2 do not
    let within = cp.exponents(&[1, 4], ComputeMode::Exact, None).unwrap();
    assert_eq!((within.exponents.as_slice(), within.classification), (&[3, 3][..], Classification::Free));
    let full = cp.exponents(&[1, 4, 7], ComputeMode::Exact, None).unwrap();
    assert_eq!((full.exponents.as_slice(), full.classification), (&[3, 5][..], Classification::Free));
    let cross = cp.exponents(&[1, 2], ComputeMode::Exact, None).unwrap();
    assert_eq!((cross.exponents.as_slice(), cross.classification), (&[3, 4, 4][..], Classification::NearlyFree));
    for r in [&within, &full] {
        let d = r.exponents.iter().map(|&e| i64::from(e)).collect::<Vec<_>>();
        for (k, &dim) in r.dims.dims.iter().enumerate() {
            assert_eq!(dim, dim_s(k as i64 - d[0]) + dim_s(k as i64 - d[1]));
        }
    }
}

#[test]
fn general_member_triple() {
    let spec = ProductCurveSpec { t: FieldElement::from_rational(&Tower::rationals(), qi(-5)), labels: vec![1, 2, 3] };
    assert_eq!(spec.degree(), 9);
    let r = product_exponents(&spec, ComputeMode::Exact, None).unwrap();
    assert_eq!(r.exponents, vec![5, 5, 5]);
    assert_eq!(r.classification, Classification::Other);
}

#[test]
fn modular_agrees_with_exact() {
    for (t, labels) in [(-5, vec![3]), (-5, vec![2, 11]), (6, vec![1, 4]), (0, vec![2, 13, 27]), (1, vec![4, 9])] {
        let cp = products(t);
        let a = cp.exponents(&labels, ComputeMode::Exact, None).unwrap();
        let b = cp.exponents(&labels, MODULAR, None).unwrap();
        assert_eq!(a.exponents, b.exponents, "t = {t}, {labels:?}");
        assert_eq!(a.dims.dims, b.dims.dims);
        assert!(a.certified && !b.certified);
    }
}

#[test]
fn harmonic_member_modular() {
    let v = special_parameter_values().into_iter().find(|v| v.name == "harmonic-minus").unwrap();
    let cp = ConicProducts::new(&build_curve(&v.t).unwrap()).unwrap();
    assert_eq!(cp.exponents(&[1], MODULAR, None).unwrap().exponents, vec![2, 3, 3]);
    assert_eq!(cp.exponents(&[1, 2], MODULAR, None).unwrap().exponents, vec![3, 4, 4]);
}

#[test]
fn invariant_under_coordinate_change() {
    let cp = products(-5);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for labels in [vec![7], vec![2, 20]] {
        let f = cp.product(&labels).unwrap();
        let tw = f.tower().clone();
        let m = loop {
            let rows: Vec<Vec<FieldElement>> =
                (0..3).map(|_| (0..3).map(|_| FieldElement::from_int(&tw, rng.gen_range(-2..=2))).collect()).collect();
            let m = DenseMatrix::from_rows(rows).unwrap();
            if !m.det().unwrap().is_zero() {
                break m;
            }
        };
        let g = f.linear_substitute(&m).unwrap();
        let a = cp.exponents(&labels, MODULAR, None).unwrap();
        let b = minimal_generator_degrees(&g, None, MODULAR).unwrap();
        assert_eq!(a.exponents, b.exponents);
        assert_eq!(a.dims.dims, b.dims.dims);
    }
}

#[test]
fn product_validation() {
    let cp = products(-5);
    assert_eq!(cp.product(&[3, 3]).unwrap_err(), SyzygyError::RepeatedLabel(3));
    assert_eq!(cp.product(&[0]).unwrap_err(), SyzygyError::LabelOutOfRange(0));
    assert_eq!(cp.product(&[1, 2]).unwrap().total_degree(), Some(7));
}

#[test]
fn fixed_prime_and_bad_prime() {
    let cp = products(-5);
    let auto = cp.exponents(&[1, 2], MODULAR, None).unwrap();
    let p = auto.prime.unwrap();
    let fixed = cp.exponents(&[1, 2], ComputeMode::Modular(Modulus::Prime(p)), None).unwrap();
    assert_eq!(fixed, auto);
    assert_eq!(cp.exponents(&[1], ComputeMode::Modular(Modulus::Prime(1_000_001)), None).unwrap_err(), SyzygyError::BadPrime(1_000_001));
    assert_eq!(cp.exponents(&[1], ComputeMode::Modular(Modulus::Prime(1_000_037)), None).unwrap_err(), SyzygyError::BadPrime(1_000_037));
}

#[test]
fn partition_at_fermat_member() {
    let c = build_curve(&FieldElement::from_rational(&Tower::rationals(), qi(0))).unwrap();
    let r = find_triple_partition(&c).unwrap();
    assert_eq!(r.triples.len(), 9);
    let mut all: Vec<usize> = r.triples.iter().flat_map(|t| t.triple).collect();
    all.sort_unstable();
    assert_eq!(all, (1..=27).collect::<Vec<_>>());
    assert_eq!(r.free_pairs.len(), 27);
    assert!(r.all_certified());
    let other = build_curve(&FieldElement::from_rational(&Tower::rationals(), qi(1))).unwrap();
    assert_eq!(find_triple_partition(&other).unwrap_err(), SyzygyError::NotEquianharmonic);
}

proptest! {
    #[test]
    fn classification_matches_definitions(mut e in proptest::collection::vec(0u32..12, 1..5), d in 1u32..20) {
        e.sort_unstable();
        match classify(&e, d) {
            Classification::Free => prop_assert!(e.len() == 2 && e[0] + e[1] + 1 == d),
            Classification::NearlyFree => prop_assert!(e.len() == 3 && e[1] == e[2] && e[0] + e[1] == d),
            Classification::Other => prop_assert!(!(e.len() == 2 && e[0] + e[1] + 1 == d) && !(e.len() == 3 && e[1] == e[2] && e[0] + e[1] == d)),
        }
    }

    #[test]
    fn dim_s_counts_monomials(j in -3i64..30) {
        let expected = if j < 0 { 0 } else { osculant::algebra::Monomial::of_degree(j as u32).len() };
        prop_assert_eq!(dim_s(j), expected);
    }
}
