use super::*;
use crate::lattice::{vector, AbelianGroup, IntMatrix};
use crate::monoid::Face;

fn nat() -> EmbeddedMonoid {
    EmbeddedMonoid::free(1)
}

fn is_zero_monoid(m: &EmbeddedMonoid) -> bool {
    m.group().dim() == 0
}

fn line_pair(second: i64) -> FanSpace {
    let charts = vec![
        EmbeddedMonoid::from_i64(AbelianGroup::free(1), &[&[1]]).unwrap(),
        EmbeddedMonoid::from_i64(AbelianGroup::free(1), &[&[second]]).unwrap(),
    ];
    let top = Face::new(vec![0]);
    let gl = Gluing::along_ambient(&charts, 0, 1, top.clone(), top).unwrap();
    glue(&charts, &[gl]).unwrap()
}

#[test]
fn spectrum_of_n() {
    let x = spec(&nat());
    assert_eq!(x.point_count(), 2);
    assert!(x.stalk(0).same_monoid(&nat()));
    assert_eq!(x.stalk(1).units().group().rank(), 1);
    assert_eq!(x.closed_points(), vec![0]);
    assert_eq!(x.generic_points(), vec![1]);
    assert_eq!(x.sharpened_stalk(0).irreducibles().unwrap().len(), 1);
    assert!(is_zero_monoid(&x.sharpened_stalk(1)));
    assert_eq!(x.hasse_edges(), vec![(0, 1)]);
}

#[test]
fn spectrum_of_n2_and_sections() {
    let p = EmbeddedMonoid::free(2);
    let x = spec(&p);
    assert_eq!(x.point_count(), 4);
    assert!(x.global_sections().same_monoid(&p));
}

#[test]
fn projective_line() {
    let x = line_pair(-1);
    assert_eq!(x.point_count(), 3);
    assert_eq!(x.closed_points().len(), 2);
    let gamma = x.global_sections();
    assert!(gamma.gens().iter().all(|g| gamma.group().is_zero(g)));
    let p1 = proj_space(1);
    assert_eq!(p1.point_count(), 3);
    assert_eq!(proj_space(2).point_count(), 7);
}

#[test]
fn doubled_origin() {
    let x = line_pair(1);
    assert_eq!(x.point_count(), 3);
    let gamma = x.global_sections();
    assert_eq!(gamma.group().rank(), 1);
    assert!(gamma.is_free());
    assert!(gamma.is_sharp());
}

#[test]
fn self_gluing_is_rejected() {
    let charts = vec![nat()];
    let top = Face::new(vec![0]);
    let gl = Gluing { i: 0, j: 0, face_i: top.clone(), face_j: top, iso: GroupHom::identity(charts[0].group()) };
    assert!(glue(&charts, &[gl]).is_err());
}

#[test]
fn spec_of_diagonal() {
    let h = MonoidHom::from_ambient_images(nat(), EmbeddedMonoid::free(2), &[vector(&[1, 1])]).unwrap();
    let f = spec_map(&h);
    let mut image: Vec<usize> = f.point_map().to_vec();
    image.sort_unstable();
    image.dedup();
    assert_eq!(image, vec![0, 1]);
    assert_eq!(f.fiber(0), vec![0, 1, 2]);
    assert!(!f.is_group_isomorphism());
}

#[test]
fn product_of_lines_is_the_plane() {
    let a = spec(&nat());
    let prod = product_with_projections(&a, &a).unwrap();
    assert_eq!(prod.space.point_count(), 4);
    let plane = EmbeddedMonoid::free(2);
    let l = MonoidHom::from_ambient_images(nat(), plane.clone(), &[vector(&[1, 0])]).unwrap();
    let r = MonoidHom::from_ambient_images(nat(), plane.clone(), &[vector(&[0, 1])]).unwrap();
    let map = pairing(&spec_map(&l), &spec_map(&r), &prod).unwrap();
    assert!(map.is_isomorphism());
    let back = map.then(&prod.left).unwrap();
    assert_eq!(back.point_map(), spec_map(&l).point_map());
}

#[test]
fn fibered_product_of_doubling() {
    let h = MonoidHom::from_ambient_images(nat(), nat(), &[vector(&[2])]).unwrap();
    let f = spec_map(&h);
    let fp = fibered_product(&f, &f, true).unwrap();
    assert_eq!(fp.pairs, vec![(0, 0), (1, 1)]);
    let space = fp.space.unwrap();
    let closed = space.stalk(0);
    assert_eq!(closed.group().rank(), 1);
    assert_eq!(closed.group().torsion().len(), 1);
    assert!(closed.is_sharp());
    assert!(!closed.is_saturated());
    assert!(fp.pushouts[0].1.is_some());
}

#[test]
fn classical_cone_import() {
    let cones = vec![vec![vector(&[1, 0]), vector(&[1, 2])]];
    let fan = from_classical(2, &cones).unwrap();
    let m = &fan.space.charts()[0].monoid;
    let expected = EmbeddedMonoid::from_i64(AbelianGroup::free(2), &[&[0, 1], &[1, 0], &[2, -1]]).unwrap();
    assert!(m.same_monoid(&expected));
    assert_eq!(fan.space.point_count(), 4);
}

#[test]
fn classical_fan_of_two_cones() {
    let cones = vec![vec![vector(&[1, 0]), vector(&[1, 1])], vec![vector(&[1, 1]), vector(&[0, 1])]];
    let fan = from_classical(2, &cones).unwrap();
    assert_eq!(fan.space.point_count(), 6);
    assert!(from_classical(2, &[vec![vector(&[1, 0]), vector(&[0, 1])], vec![vector(&[1, 1]), vector(&[-1, 2])]]).is_err());
}

#[test]
fn sharpened_space_keeps_the_order() {
    let x = proj_space(1);
    let s = sharpen_fan(&x);
    assert_eq!(s.kind(), StalkKind::Sharp);
    assert_eq!(s.point_count(), 3);
    for p in s.points() {
        assert!(s.stalk(p).is_sharp());
        assert_eq!(s.up(p), x.up(p));
    }
}

#[test]
fn identity_maps_and_isomorphic_over() {
    let x = proj_space(1);
    let id = FanMap::identity(&x);
    assert!(id.is_isomorphism());
    assert_eq!(isomorphic_over(&id, &id), Some(vec![0, 1, 2]));
}

#[test]
fn disjoint_union_and_dot() {
    let a = spec(&nat());
    let u = a.disjoint_union(&a).unwrap();
    assert_eq!(u.point_count(), 4);
    let dot = u.to_dot("u");
    assert!(dot.contains("p0 -> p1"));
    assert!(dot.starts_with("digraph u {"));
}

#[test]
fn bad_transition_is_rejected() {
    let p = nat();
    let double = GroupHom::new(p.group().clone(), p.group().clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
    let chart = Chart { monoid: p.clone(), points: vec![0, 1], transitions: vec![double.clone(), double] };
    let stalks = vec![p.clone(), p.localize(&p.top_face()).unwrap().0];
    assert!(FanSpace::assemble(StalkKind::Full, stalks, vec![chart]).is_err());
}
