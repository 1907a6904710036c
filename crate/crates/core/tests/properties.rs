mod common;

use common::*;
use monofan::fanspace::spec;
use monofan::projblow::projective_space;
use proptest::prelude::*;

fn lift(c: Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn faces_are_closed_and_inherit_saturation(p in arb_monoid(), seed in any::<u64>()) {
        lift(check_faces(&p, seed))?;
    }

    #[test]
    fn sharpened_localization_is_the_quotient_by_the_face(p in arb_monoid()) {
        lift(check_sharpening(&p))?;
    }

    #[test]
    fn saturation(p in arb_monoid()) {
        lift(check_saturated(&p))?;
    }

    #[test]
    fn fs_localizations_split(p in arb_fs_monoid()) {
        lift(check_fs_splitting(&p))?;
    }

    #[test]
    fn membership_matches_coefficient_search(p in arb_monoid(), seed in any::<u64>()) {
        lift(check_membership(&p, seed))?;
    }

    #[test]
    fn freeness_matches_permutation_oracle(p in arb_monoid()) {
        lift(check_is_free(&p))?;
        lift(check_is_free(&p.saturate().0))?;
    }

    #[test]
    fn refinement_flags(seed in any::<u64>()) {
        lift(check_refinements(&random_hom(seed)))?;
    }

    #[test]
    fn blowup_charts_are_good(p in arb_fs_monoid()) {
        lift(check_blowup_charts_good(&p))?;
    }

    #[test]
    fn ideal_powers(seed in any::<u64>(), n in 1usize..=3) {
        lift(check_ideal_power(&random_ideal(seed), n))?;
    }

    #[test]
    fn spec_of_a_sum_is_the_product(p in arb_monoid(), q in arb_monoid()) {
        lift(check_spec_of_sum(&p, &q))?;
    }

    #[test]
    fn boundary_of_affine_fans(p in arb_fs_monoid()) {
        lift(check_boundary(&spec(&p)))?;
        lift(check_boundary_restriction(&p))?;
    }
}

#[test]
fn named_examples_satisfy_every_property() {
    for (name, p) in named() {
        let sat = p.saturate().0;
        for (what, c) in [
            ("faces", check_faces(&p, 1)),
            ("sharpening", check_sharpening(&p)),
            ("saturation", check_saturated(&p)),
            ("splitting", check_fs_splitting(&sat)),
            ("membership", check_membership(&p, 2)),
            ("freeness", check_is_free(&p)),
            ("boundary", check_boundary(&spec(&sat))),
            ("blowup charts", check_blowup_charts_good(&sat)),
        ] {
            assert!(c.is_ok(), "{name}, {what}: {}", c.unwrap_err());
        }
    }
}

#[test]
fn boundary_of_projective_spaces() {
    for n in 1..=3 {
        assert_eq!(check_boundary(&projective_space(n)), Ok(()));
    }
}

#[test]
fn oracles_recognize_known_answers() {
    let two_three = &named()[0].1;
    let g = two_three.group();
    assert_eq!(member_by_search(g, two_three.gens(), &[1.into()]), Some(two_three.contains(&two_three.from_ambient(&[1.into()]).unwrap())));
    assert_eq!(free_by_permutation(&monofan::monoid::EmbeddedMonoid::free(3)), Some(true));
    assert_eq!(free_by_permutation(&named()[2].1), Some(false));
}
