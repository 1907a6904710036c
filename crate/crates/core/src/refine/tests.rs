use super::*;
use crate::lattice::{vector, AbelianGroup};
use crate::monoid::MonoidIdeal;
use crate::projblow::blowup_charts;

fn n() -> EmbeddedMonoid {
    EmbeddedMonoid::free(1)
}

fn addition() -> MonoidHom {
    MonoidHom::from_ambient_images(EmbeddedMonoid::free(2), n(), &[vector(&[1]), vector(&[1])]).unwrap()
}

fn doubling() -> MonoidHom {
    MonoidHom::from_ambient_images(n(), n(), &[vector(&[2])]).unwrap()
}

fn saturation() -> MonoidHom {
    let q = EmbeddedMonoid::from_i64(AbelianGroup::free(1), &[&[2], &[3]]).unwrap();
    MonoidHom::from_ambient_images(q, n(), &[vector(&[2]), vector(&[3])]).unwrap()
}

#[test]
fn factorization_of_addition() {
    let f = refinement_factorization(&addition());
    let expected = EmbeddedMonoid::from_i64(AbelianGroup::free(2), &[&[1, -1], &[-1, 1], &[1, 0]]).unwrap();
    assert!(f.r.same_in_ambient(&expected));
    assert_eq!(f.r.units().group().rank(), 1);
    assert!(f.r.units().contains(&f.r.from_ambient(&vector(&[1, -1])).unwrap()));
    let (sharp, _) = f.r.sharpen();
    assert!(sharp.is_free() && sharp.rank() == 1);
}

#[test]
fn factorization_of_doubling_and_identity() {
    let f = refinement_factorization(&doubling());
    assert!(f.r.same_monoid(&n()));
    assert!(f.i.is_iso());
    let id = MonoidHom::identity(&n());
    let g = refinement_factorization(&id);
    assert!(g.i.is_iso() && g.p.is_iso());
}

#[test]
fn classification_examples() {
    let add = classify(&addition());
    assert!(!add.exact && add.refinement && add.strong && !add.good);
    let dbl = classify(&doubling());
    assert!(dbl.exact && !dbl.refinement && !dbl.sharp_group_surjective);
    let sat = classify(&saturation());
    assert!(sat.good && sat.strong && sat.refinement);
}

#[test]
fn section_splits_the_sharpened_factorization() {
    let rep = classify(&addition());
    let s = rep.section.unwrap();
    assert!(s.domain().is_sharp() && s.codomain().is_sharp());
    assert!(s.is_iso());
}

#[test]
fn blowup_charts_are_good_refinements() {
    let p = EmbeddedMonoid::from_i64(AbelianGroup::free(2), &[&[2, 0], &[1, 1], &[0, 2]]).unwrap();
    let (charts, _) = blowup_charts(&p, &MonoidIdeal::maximal(&p)).unwrap();
    for c in charts {
        let h = MonoidHom::new(p.clone(), c, GroupHom::identity(p.group())).unwrap();
        assert!(classify(&h).good);
    }
}

#[test]
fn realized_chart_of_the_saturation() {
    let h = saturation();
    let out = realize_refinement_chart(&h, &h).unwrap();
    assert!(out.same_monoid(&n()));
    let id = MonoidHom::identity(h.domain());
    let r = realize_refinement_chart(&id, &h).unwrap();
    assert!(r.same_monoid(&classify(&h).factorization.r));
    assert!(matches!(realize_refinement_chart(&MonoidHom::identity(&n()), &doubling()), Err(Error::NotRefinement)));
    let plane = EmbeddedMonoid::free(2);
    let add = realize_refinement_chart(&MonoidHom::identity(&plane), &addition()).unwrap();
    assert!(add.same_monoid(&classify(&addition()).factorization.r));
}
