//! Invariants over generated quantales and diagrams.

mod common;

use std::sync::OnceLock;

use catend::cocompletion::{
    cocone_category, colimit_via_ends, end_via_lemma2, gamma, mediate_weakly, ColimitOptions,
};
use catend::ends::{end_of, Endofunctor, ExpOfEndofunctor};
use catend::instances::Quantale;
use catend::limits::{colimit_brute, is_limiting_cone, limit};
use catend::smcc::{law_suite, LawSuiteOptions};
use catend::transport::{skeletonize, transport_limit};
use catend::Category;
use common::*;
use proptest::prelude::*;

fn zoo() -> &'static [(String, Quantale)] {
    static ZOO: OnceLock<Vec<(String, Quantale)>> = OnceLock::new();
    ZOO.get_or_init(quantale_zoo)
}

fn instance() -> impl Strategy<Value = (usize, u64)> {
    (0..zoo().len(), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn colimit_via_ends_matches_brute((k, seed) in instance()) {
        let (_, q) = &zoo()[k];
        let mut r = rng(seed);
        let d = random_diagram(q, random_shape(&mut r, 5), &mut r);
        let res = colimit_via_ends(q, &d, &ColimitOptions::default()).unwrap();
        prop_assert!(res.transcript.all_pass());
        prop_assert_eq!(res.colimit, colimit_brute(q, &d).unwrap());
    }

    #[test]
    fn every_cocone_is_reached_from_gamma((k, seed) in instance()) {
        let (_, q) = &zoo()[k];
        let mut r = rng(seed);
        let d = random_diagram(q, random_shape(&mut r, 3), &mut r);
        let g = gamma(q, &d).unwrap();
        for delta in cocone_category(q, &d).unwrap().cocones {
            let (psi, t) = mediate_weakly(q, &g, &delta).unwrap();
            prop_assert!(t.all_pass());
            prop_assert_eq!(psi.hi(), delta.vertex);
        }
    }

    #[test]
    fn transported_limits_are_limiting((k, seed) in instance()) {
        let (_, q) = &zoo()[k];
        let mut r = rng(seed);
        let d = random_diagram(q, random_shape(&mut r, 5), &mut r);
        let (skel, e) = skeletonize(q, &d).unwrap();
        let l1 = limit(q, &skel).unwrap();
        let (l2, t) = transport_limit(q, &e, &l1).unwrap();
        prop_assert!(t.all_pass());
        prop_assert!(is_limiting_cone(q, &d, &l2.cone).all_pass());
        prop_assert_eq!(l2.cone.vertex, l1.cone.vertex);
        prop_assert_eq!(l2.cone.vertex, limit(q, &d).unwrap().cone.vertex);
    }

    #[test]
    fn skeletonize_is_idempotent((k, seed) in instance()) {
        let (_, q) = &zoo()[k];
        let mut r = rng(seed);
        let d = random_diagram(q, random_shape(&mut r, 5), &mut r);
        let (skel, _) = skeletonize(q, &d).unwrap();
        let (again, e) = skeletonize(q, &skel).unwrap();
        prop_assert_eq!(again.objects(), skel.objects());
        prop_assert_eq!(again.shape().object_ids(), skel.shape().object_ids());
        let shape = e.d2.shape();
        prop_assert!(e.alpha.iter().all(|a| shape.is_identity(a)));
    }

    #[test]
    fn end_routes_agree_on_monotone_functors(k in 0..zoo().len(), pick in any::<prop::sample::Index>()) {
        let (_, q) = &zoo()[k];
        prop_assume!(q.len() <= 6);
        let maps = monotone_maps(q);
        let m = &maps[pick.index(maps.len())];
        let f = Endofunctor::thin(q, "monotone", |x| m[x.0]).unwrap();
        let l2 = end_via_lemma2(q, &f, &q.elements()).unwrap();
        prop_assert!(l2.transcript.all_pass());
        let (direct, _) = end_of(q, &ExpOfEndofunctor(f)).unwrap();
        prop_assert_eq!(direct.vertex(), l2.vertex());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn law_suite_holds_with_extended_coherence(k in 0..zoo().len()) {
        let (_, q) = &zoo()[k];
        let t = law_suite(q, &LawSuiteOptions { extended: true, ..LawSuiteOptions::default() });
        prop_assert!(t.all_pass(), "{:?}", t.first_failure());
    }
}
