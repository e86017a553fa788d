//! Sector matrices act on classifications the way the Veech group should.

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use veech_core::expansion::{certify, classify, expand, word_matrix, DirectionK, OrbitResult};
use veech_core::make_field;
use veech_core::model::StaircaseModel;
use veech_core::survey::enumerate_directions;

const MAX_STEPS: usize = 3000;

struct Setup {
    model: StaircaseModel,
    directions: Vec<DirectionK>,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let k = make_field(7).unwrap();
        Setup {
            model: StaircaseModel::new(&k),
            directions: enumerate_directions(&k, 2),
        }
    })
}

fn first_quadrant(d: &DirectionK) -> bool {
    d.x().signum() >= 0 && d.y().signum() >= 0
}

fn config() -> Config {
    Config {
        cases: 100,
        rng_seed: RngSeed::Fixed(0x7eec),
        failure_persistence: None,
        ..Config::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn words_preserve_class(pick in any::<prop::sample::Index>(), word in prop::collection::vec(0usize..6, 0..=5)) {
        let s = setup();
        let v = pick.get(&s.directions);
        let r = classify(v, &s.model, MAX_STEPS);
        prop_assert!(certify(v, &r, &s.model).unwrap());

        let image = DirectionK::from_vec(&word_matrix(&word, &s.model).unwrap().apply(&v.to_vec())).unwrap();
        prop_assert!(!image.was_rotated(), "M_w left the first quadrant");
        let e = expand(&image, &s.model, MAX_STEPS);
        prop_assert!(e.directions.iter().all(first_quadrant));
        prop_assert!(certify(&image, &e.result, &s.model).unwrap());

        let unresolved = |r: &OrbitResult| matches!(r, OrbitResult::Unresolved { .. });
        if !unresolved(&r) && !unresolved(&e.result) {
            prop_assert_eq!(r.class_name(), e.result.class_name(), "{} under {:?}", v, word);
        }
        if let (Some(t), Some(u)) = (r.stabilizer_trace(), e.result.stabilizer_trace()) {
            // the image runs into the same cycle, entered at another point,
            // and cyclic rotations of a period word share a trace
            prop_assert_eq!(t, u);
        }
    }
}
