use amalgam_core::census::generate_corpus;
use amalgam_core::module::FModule;
use amalgam_core::ring::Axiom;
use amalgam_core::{
    all_ideals, amalgamate, annihilator, duplication, enumerate_module_homs, enumerate_ring_homs, fixtures,
    hom_object, is_regular_element, maximal_ideals, quotient_ring, validate_ring, Caps, Error, FiniteRing, Ideal,
    ModuleHom, RingHom,
};
use proptest::prelude::*;

fn z(n: usize) -> FiniteRing {
    FiniteRing::zmod(n).unwrap()
}

/// Z_n, fixtures, or a product of two of those, kept at order ≤ 36.
fn arb_ring() -> impl Strategy<Value = FiniteRing> {
    let base = prop_oneof![
        (2usize..=12).prop_map(z),
        Just(fixtures::by_name("z2t").unwrap()),
        Just(fixtures::by_name("z4t").unwrap()),
    ];
    prop_oneof![
        2 => base.clone(),
        1 => (base.clone(), base).prop_filter_map("order cap", |(a, b)| {
            (a.order() * b.order() <= 36).then(|| FiniteRing::product(&a, &b).ring)
        }),
    ]
}

fn arb_ring_and_ideal() -> impl Strategy<Value = (FiniteRing, Ideal)> {
    arb_ring().prop_flat_map(|r| {
        let ideals = all_ideals(&r).unwrap();
        (0..ideals.len()).prop_map(move |k| (r.clone(), ideals[k].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_rings_satisfy_the_axioms(r in arb_ring()) {
        prop_assert!(validate_ring(&r).is_empty());
        let ids = r.idempotents();
        prop_assert!(ids.contains(&r.zero()) && ids.contains(&r.one()));
    }

    #[test]
    fn locality_matches_idempotents(r in arb_ring()) {
        prop_assert_eq!(r.is_local().unwrap(), r.idempotents().len() == 2);
        prop_assert_eq!(maximal_ideals(&r).unwrap().len() == 1, r.is_local().unwrap());
    }

    #[test]
    fn product_projections_are_surjective(a in arb_ring(), b in (2usize..=6).prop_map(z)) {
        let p = FiniteRing::product(&a, &b);
        prop_assert_eq!(p.ring.order(), a.order() * b.order());
        prop_assert!(p.left.is_surjective() && p.right.is_surjective());
    }

    #[test]
    fn quotient_has_the_right_size_and_kernel((r, i) in arb_ring_and_ideal()) {
        let (q, p) = quotient_ring(&r, &i).unwrap();
        prop_assert_eq!(q.order() * i.len(), r.order());
        prop_assert!(p.is_surjective());
        prop_assert_eq!(p.kernel(), i);
    }

    #[test]
    fn ideal_lattice_is_closed((r, i) in arb_ring_and_ideal()) {
        let ideals = all_ideals(&r).unwrap();
        let k = &ideals[ideals.len() / 2];
        prop_assert!(ideals.contains(&i.sum(k).unwrap()));
        prop_assert!(ideals.contains(&i.intersection(k).unwrap()));
        prop_assert!(ideals.contains(&i.product(k).unwrap()));
        prop_assert!(ideals.contains(&annihilator(&r, i.elements()).unwrap()));
        prop_assert_eq!(Ideal::generated(&r, &i.generators()).unwrap(), i);
    }

    #[test]
    fn regular_elements_are_units(r in arb_ring()) {
        for x in r.elements() {
            prop_assert_eq!(is_regular_element(&r, x), r.is_unit(x));
        }
    }

    #[test]
    fn hom_kernels_are_ideals(a in arb_ring(), b in arb_ring()) {
        let caps = Caps::default();
        for f in enumerate_ring_homs(&a, &b, &caps).unwrap() {
            prop_assert!(all_ideals(&a).unwrap().contains(&f.kernel()));
            prop_assert_eq!(f.is_injective(), f.kernel().is_zero());
        }
    }

    #[test]
    fn duplication_order_and_quotient((r, i) in arb_ring_and_ideal()) {
        prop_assume!(r.order() * i.len() <= 64);
        let caps = Caps::default();
        let w = duplication(&r, &i, &caps).unwrap();
        prop_assert_eq!(w.ring().order(), r.order() * i.len());
        prop_assert!(w.modulation_map().is_surjective());
        prop_assert_eq!(w.modulation_map().kernel(), w.zero_cross_j());
        let d = w.diagonal();
        prop_assert!(d.then(&w.modulation_map()).unwrap().is_identity());
    }

    #[test]
    fn hom_object_sums_are_homs((r, i) in arb_ring_and_ideal()) {
        let caps = Caps::default();
        let m = FModule::from_ideal(&r, &i).unwrap();
        let n = FModule::regular(&r);
        prop_assume!(m.order() <= 12);
        let h = hom_object(&m, &n, &caps).unwrap();
        for k in 0..h.len() {
            prop_assert!(ModuleHom::new(&m, &n, h.map(k).to_vec()).is_ok());
        }
        prop_assert_eq!(h.len(), enumerate_module_homs(&m, &n, &caps).unwrap().len());
    }
}

#[test]
fn corrupted_tables_are_rejected() {
    let r = z(4);
    let mut mul = r.mul_table().to_vec();
    mul[2 * 4 + 2] = 1;
    let err = FiniteRing::from_flat(4, r.add_table().to_vec(), mul.clone(), 0, 1, "bad").unwrap_err();
    let Error::InvalidRing(report) = err else { panic!("expected a validation report") };
    assert!(report.violates(Axiom::MulAssociative) || report.violates(Axiom::Distributive));
}

#[test]
fn amalgam_with_whole_codomain() {
    let caps = Caps::default();
    let (a, b) = (z(4), z(2));
    let f = RingHom::reduction(&a, &b).unwrap();
    let w = amalgamate(&a, &b, &f, &Ideal::unit(&b), &caps).unwrap();
    assert_eq!(w.ring().order(), 8);
    assert!(!w.f_injective() && w.f_surjective());
}

#[test]
fn amalgam_cap_is_a_resource_limit() {
    let caps = Caps { max_amalgam_order: 10, ..Caps::default() };
    let err = duplication(&z(6), &Ideal::generated(&z(6), &[2]).unwrap(), &caps).unwrap_err();
    assert!(err.is_resource_limit());
}

#[test]
fn unital_homs_between_cyclic_rings() {
    let caps = Caps::default();
    for m in 2..=12 {
        for n in 2..=12 {
            let count = enumerate_ring_homs(&z(m), &z(n), &caps).unwrap().len();
            assert_eq!(count, usize::from(m % n == 0), "Z{m} -> Z{n}");
        }
    }
}

#[test]
fn census_locality_crosscheck() {
    for item in generate_corpus(12, 36).unwrap().iter().filter(|c| c.has_tag("ring")) {
        let amalgam_core::theorems::Instance::Ring(r) = item.recipe.instance(&Caps::default()).unwrap() else {
            unreachable!()
        };
        assert_eq!(r.is_local().unwrap(), r.idempotents().len() == 2, "{}", item.id);
    }
}
