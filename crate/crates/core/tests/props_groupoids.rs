use std::sync::Arc;

use etale_core::corpus::{random_cover, random_instances};
use etale_core::fixture::{groupoid_doc, FixtureFile};
use etale_core::groupoid::{cech_groupoid, is_morita_equivalence, weak_pullback, FinGroupoid, GroupoidHom};
use etale_core::suite::natural_automorphisms;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> Arc<FinGroupoid> {
    random_instances(seed, 1).pop().unwrap().groupoid
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cech_projections_are_morita(seed in any::<u64>()) {
        let h = instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cech = cech_groupoid(&h, &random_cover(&mut rng, h.obj())).unwrap();
        prop_assert!(cech.groupoid.is_etale());
        prop_assert!(is_morita_equivalence(&cech.projection).is_equivalence());
    }

    #[test]
    fn morita_maps_compose(seed in any::<u64>()) {
        let h = instance(seed);
        prop_assume!(h.n_arr() <= 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = cech_groupoid(&h, &random_cover(&mut rng, h.obj())).unwrap();
        let second = cech_groupoid(&first.groupoid, &random_cover(&mut rng, first.groupoid.obj())).unwrap();
        let composite = second.projection.then(&first.projection).unwrap();
        prop_assert!(is_morita_equivalence(&composite).is_equivalence());
    }

    #[test]
    fn pullback_along_an_identity_is_equivalent_to_the_domain(seed in any::<u64>()) {
        let h = instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cech = cech_groupoid(&h, &random_cover(&mut rng, h.obj())).unwrap();
        for phi in [GroupoidHom::identity(&h), cech.projection.clone()] {
            let w = weak_pullback(&phi, &GroupoidHom::identity(&h)).unwrap();
            prop_assert!(is_morita_equivalence(&w.pr1).is_equivalence());
        }
    }

    #[test]
    fn trivial_isotropy_allows_at_most_one_transformation(seed in any::<u64>()) {
        let h = instance(seed);
        let free = (0..h.n_obj()).all(|x| h.isotropy(x).len() == 1);
        let count = natural_automorphisms(&h, 4096).len();
        prop_assert!(count >= 1);
        if free {
            prop_assert_eq!(count, 1);
        }
    }

    #[test]
    fn groupoid_documents_round_trip(seed in any::<u64>()) {
        let h = instance(seed);
        let mut file = FixtureFile::new();
        file.groupoids.insert("G".into(), groupoid_doc(&h));
        let text = file.to_json();
        let back = FixtureFile::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert!(**back.load().unwrap().groupoid("G").unwrap() == *h);
    }
}
