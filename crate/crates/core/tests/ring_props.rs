use cohspec::algebra::{Congruence, FiniteAlgebra, MonomialAlgebra, RModule, WAlgebra, WElem};
use cohspec::scheme::{counit_check, spec_scheme};
use cohspec::sheaves::shf_is_zero;
use cohspec::site::{descent_check, is_cover};
use cohspec::spectrum::spec0;
use cohspec::{doc, Limits, TopologyTag};
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn elem(r: &FiniteAlgebra, v: usize) -> WElem {
    WElem::Fin(r.index_of(&v.to_string()).unwrap())
}

fn ring_and_family() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2usize..=24).prop_flat_map(|n| (Just(n), proptest::collection::vec(0..n, 0..4)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn zar_cover_iff_coprime((n, fam) in ring_and_family()) {
        let r = FiniteAlgebra::zmod(n);
        let w = WAlgebra::from(r.clone());
        let f: Vec<WElem> = fam.iter().map(|&x| elem(&r, x)).collect();
        let coprime = fam.iter().fold(n, |g, &x| gcd(g, x)) == 1;
        prop_assert_eq!(is_cover(&w, &f, TopologyTag::Zar, &Limits::default()).unwrap(), coprime);
        if coprime {
            prop_assert!(descent_check(&w, &f, &Limits::default()).unwrap().exact());
        }
    }

    #[test]
    fn min_covers_refine_zar_covers((n, fam) in ring_and_family()) {
        let r = FiniteAlgebra::zmod(n);
        let w = WAlgebra::from(r.clone());
        let f: Vec<WElem> = fam.iter().map(|&x| elem(&r, x)).collect();
        let l = Limits::default();
        let (min, zar, tot) = (
            is_cover(&w, &f, TopologyTag::Min, &l).unwrap(),
            is_cover(&w, &f, TopologyTag::Zar, &l).unwrap(),
            is_cover(&w, &f, TopologyTag::Tot, &l).unwrap(),
        );
        prop_assert!(!min || zar);
        prop_assert!(!zar || tot);
    }

    #[test]
    fn sheaf_of_quotient_vanishes_iff_quotient_does(n in 2usize..=18, g in 0usize..18) {
        let r = FiniteAlgebra::zmod(n);
        let g = g % n;
        let reg = RModule::regular(&r);
        let j = Congruence::generated(&reg, &[(r.zero(), r.index_of(&g.to_string()).unwrap())]).unwrap();
        let m = reg.quotient(&j);
        let z = shf_is_zero(&r, &m, TopologyTag::Zar, &Limits::default()).unwrap();
        prop_assert_eq!(z.zero, m.is_zero());
        prop_assert_eq!(m.len(), gcd(n, g));
    }

    #[test]
    fn spec_scheme_document_round_trip(n in 1usize..=20) {
        let s = spec_scheme(&FiniteAlgebra::zmod(n).into(), TopologyTag::Zar, &Limits::default()).unwrap();
        let text = doc::emit_scheme(&s.scheme);
        let back = doc::load_scheme(&text).unwrap();
        back.check().unwrap();
        prop_assert_eq!(doc::emit_scheme(&back), text);
    }
}

#[test]
fn counit_on_products_of_rings() {
    let l = Limits::default();
    for (a, b) in [(2, 3), (4, 3), (2, 2), (4, 5)] {
        let r = FiniteAlgebra::zmod(a).product(&FiniteAlgebra::zmod(b)).unwrap();
        let w = counit_check(&r.into(), TopologyTag::Zar, &l).unwrap();
        assert!(w.iso, "Z/{a} x Z/{b}");
    }
}

#[test]
fn monomial_spectra_are_cubes() {
    let l = Limits::default();
    for k in 1..=3 {
        let s = spec0(&MonomialAlgebra::polynomial(k).into(), TopologyTag::Zar, &l).unwrap();
        assert_eq!(s.space.point_count(), 1 << k);
        // the specialization order is the boolean lattice of coordinate subsets
        assert_eq!(s.space.specialization_covers().len(), k << (k - 1));
    }
}

#[test]
fn monomial_tot_accepts_disjointly_supported_families() {
    let r = WAlgebra::from(MonomialAlgebra::with_vars(&["x", "y", "z"], &[]).unwrap());
    let l = Limits::default();
    let fam = |s: &[&str]| s.iter().map(|x| r.parse(x).unwrap()).collect::<Vec<_>>();
    assert!(is_cover(&r, &fam(&["x*y", "z"]), TopologyTag::Tot, &l).unwrap());
    assert!(!is_cover(&r, &fam(&["x*y", "y*z"]), TopologyTag::Tot, &l).unwrap());
    assert!(is_cover(&r, &fam(&["x*y", "y*z", "x*z"]), TopologyTag::Tot, &l).unwrap());
}
