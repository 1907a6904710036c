use super::*;
use crate::fanspace::{from_classical, proj_space, spec};
use crate::lattice::{vector, AbelianGroup};

fn a1() -> EmbeddedMonoid {
    EmbeddedMonoid::from_i64(AbelianGroup::free(2), &[&[2, 0], &[1, 1], &[0, 2]]).unwrap()
}

#[test]
fn maximal_proper_faces() {
    for n in 1..4 {
        let faces = boundary_monoid(&EmbeddedMonoid::free(n));
        assert_eq!(faces.len(), n);
        assert!(faces.iter().all(|f| f.len() == n - 1));
    }
    let g = EmbeddedMonoid::group_monoid(&AbelianGroup::new(1, vec![3.into()]));
    assert!(boundary_monoid(&g).is_empty());
    let p = a1();
    let faces = boundary_monoid(&p);
    let gens: Vec<Vec<Vector>> =
        faces.iter().map(|f| f.indices().iter().map(|&i| p.to_ambient(&p.gens()[i])).collect()).collect();
    assert_eq!(gens.len(), 2);
    assert!(gens.contains(&vec![vector(&[2, 0])]));
    assert!(gens.contains(&vec![vector(&[0, 2])]));
}

#[test]
fn boundary_of_affine_space() {
    for n in 1..=4 {
        let b = boundary_fan(&spec(&EmbeddedMonoid::free(n)));
        let comps = b.components();
        assert_eq!(comps.len(), n);
        for comp in &comps {
            assert_eq!(comp.len(), 1 << (n - 1));
            let closed: Vec<usize> =
                comp.iter().copied().filter(|&x| comp.iter().all(|&z| z == x || !b.boundary.generizes(z, x))).collect();
            assert_eq!(closed.len(), 1);
            let s = b.boundary.stalk(closed[0]);
            assert!(s.is_free() && s.is_sharp() && s.rank() == n - 1);
        }
        assert!(b.is_tame());
        assert_eq!(boundary_depth(&spec(&EmbeddedMonoid::free(n))), n + 1);
    }
}

#[test]
fn boundary_of_a_group_is_empty() {
    let g = EmbeddedMonoid::group_monoid(&AbelianGroup::free(2));
    let x = spec(&g);
    assert_eq!(boundary_fan(&x).boundary.point_count(), 0);
    assert_eq!(boundary_depth(&x), 1);
    assert_eq!(boundary_depth(&spec(&EmbeddedMonoid::free(1))), 2);
}

#[test]
fn boundary_of_the_projective_line() {
    let b = boundary_fan(&proj_space(1));
    assert_eq!(b.boundary.point_count(), 2);
    let mut images = b.map.clone();
    images.sort_unstable();
    assert_eq!(images, proj_space(1).closed_points());
    assert!(b.boundary.points().all(|p| b.boundary.sharpened_stalk(p).group().dim() == 0));
    assert!(b.is_tame());
}

#[test]
fn boundary_stalks_are_proper_faces() {
    let fan = from_classical(2, &[vec![vector(&[1, 0]), vector(&[1, 1])], vec![vector(&[1, 1]), vector(&[0, 1])]]).unwrap();
    let x = fan.space;
    let b = boundary_fan(&x);
    for p in b.boundary.points() {
        let src = x.stalk(b.map[p]);
        let label = &b.face_labels[p];
        assert!(src.is_face(label) && *label != src.top_face());
        assert!(boundary_monoid(src).contains(label));
    }
    assert!(boundary_depth(&x) <= depth_bound(&x));
    assert!(is_tame(&x));
}

#[test]
fn a_component_folded_over_a_point_is_not_tame() {
    let x = spec(&EmbeddedMonoid::free(2));
    let genuine = boundary_fan(&x);
    let closed = genuine.map.iter().position(|&p| p == 0).unwrap();
    let mut folded = genuine.clone();
    // Two copies of a boundary line meeting at their generic point, both over the same closed point.
    let line = EmbeddedMonoid::free(1);
    let charts = vec![line.clone(), line];
    let top = Face::new(vec![0]);
    let gl = crate::fanspace::Gluing::along_ambient(&charts, 0, 1, top.clone(), top).unwrap();
    folded.boundary = crate::fanspace::glue(&charts, &[gl]).unwrap();
    let over_ray = genuine.boundary.up(closed).iter().copied().find(|&q| q != closed).unwrap();
    let ray = genuine.map[over_ray];
    folded.map = folded.boundary.points().map(|q| if folded.boundary.up(q).len() > 1 { 0 } else { ray }).collect();
    folded.face_labels = vec![genuine.face_labels[closed].clone(); folded.map.len()];
    assert_eq!(folded.components().len(), 1);
    assert!(!folded.is_tame());
}

#[test]
fn boundary_commutes_with_chart_inclusions() {
    let x = proj_space(2);
    let b = boundary_fan(&x);
    for chart in x.charts() {
        let local = boundary_fan(&spec(&chart.monoid));
        let over: usize = chart.points.iter().map(|&p| b.map.iter().filter(|&&q| q == p).count()).sum();
        assert_eq!(over, local.boundary.point_count());
        assert_eq!(local.components().len(), boundary_monoid(&chart.monoid).len());
    }
}
