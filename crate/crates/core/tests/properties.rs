mod common;

use common::*;
use galcoh::globalcoh::{sha_kernel, split_degree_global, PlaceModel};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x6a1c_0b),
        failure_persistence: None,
        ..Config::default()
    }
}

fn run(check: Check) -> Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn smith_form_identities(seed in any::<u64>()) {
        run(snf_identities(seed))?;
    }

    #[test]
    fn transfer_ignores_the_section(seed in any::<u64>()) {
        run(transfer_section_independent(seed))?;
    }

    #[test]
    fn transfer_multiplies_by_the_index(seed in any::<u64>()) {
        run(multiplication_law(seed))?;
    }

    #[test]
    fn local_powers_compose(seed in any::<u64>()) {
        run(local_power_laws(seed))?;
    }

    #[test]
    fn global_powers_compose_and_localize(seed in any::<u64>()) {
        run(global_power_laws(seed))?;
    }

    #[test]
    fn glued_classes_localize_back(seed in any::<u64>()) {
        run(glue_round_trip(seed))?;
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn period_divides_every_splitting_degree(seed in any::<u64>()) {
        run(period_divides_splitting(seed))?;
    }

    #[test]
    fn restriction_then_projection(seed in any::<u64>()) {
        run(restriction_corestriction(seed))?;
    }

    #[test]
    fn induced_maps_commute(seed in any::<u64>()) {
        run(functoriality(seed))?;
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn sylow_cyclic_image_kills_sha(seed in any::<u64>()) {
        let (_, m) = random_setup(seed);
        prop_assume!(split_degree_global(&m, 1).sylow_cyclic);
        for depth in 0..2 {
            let s = sha_kernel(&m, &PlaceModel::new(vec![], depth)).unwrap();
            prop_assert!(s.group.is_trivial(), "depth {depth}: {}", s.group.describe());
        }
    }
}
