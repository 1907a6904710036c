use super::*;
use crate::lattice::{vector, AbelianGroup};
use crate::monoid::{MonoidHom, MonoidIdeal};
use crate::projblow::rees;

fn nat() -> EmbeddedMonoid {
    EmbeddedMonoid::free(1)
}

fn brute_sign_count(g: &AbelianGroup) -> usize {
    let n = g.dim();
    let mut orders: Vec<i64> = vec![0; g.rank()];
    orders.extend(g.torsion().iter().map(|d| i64::try_from(d).unwrap()));
    (0..1usize << n).filter(|mask| (0..n).all(|i| mask >> i & 1 == 0 || orders[i] % 2 == 0)).count()
}

#[test]
fn presentations() {
    let q = PresentedMonoid::new(2, vec![(vector(&[2, 0]), vector(&[0, 2]))]).unwrap();
    let r = ring_presentation(&q, BaseRing::Complexes);
    assert_eq!(r.polynomial_form(), "C[x1,x2]/(x1^2 - x2^2)");
    assert_eq!(r.to_string(), "ring C[x1,x2]\nx^[2,0] = x^[0,2]\n");
    let free = ring_presentation(&PresentedMonoid::free(1), BaseRing::Integers);
    assert_eq!(free.polynomial_form(), "Z[x1]");
    assert!(free.binomial_relations.is_empty());
}

#[test]
fn rees_algebra_presentation() {
    let p = EmbeddedMonoid::free(2);
    let r = rees(&p, &MonoidIdeal::maximal(&p));
    let gens = r.monoid().gens_ambient();
    let idx = |v: &[i64]| gens.iter().position(|g| *g == vector(v)).unwrap();
    let (x, y, s, t) = (idx(&[1, 0, 0]), idx(&[0, 1, 0]), idx(&[1, 0, 1]), idx(&[0, 1, 1]));
    let mut lhs = vec![0i64; 4];
    let mut rhs = vec![0i64; 4];
    lhs[x] += 1;
    lhs[t] += 1;
    rhs[y] += 1;
    rhs[s] += 1;
    let sum = |e: &[i64]| -> Vector {
        (0..3).map(|k| gens.iter().zip(e).map(|(g, &c)| &g[k] * c).sum()).collect()
    };
    assert_eq!(sum(&lhs), sum(&rhs));
    let presented = PresentedMonoid::new(4, vec![(vector(&lhs), vector(&rhs))]).unwrap();
    let ring = ring_presentation(&presented, BaseRing::Integers);
    assert_eq!(ring.variable_count, 4);
    assert_eq!(ring.binomial_relations.len(), 1);
}

#[test]
fn smoothness_examples() {
    let torsion = EmbeddedMonoid::from_i64(AbelianGroup::new(1, vec![2.into()]), &[&[1, 0], &[0, 1]]).unwrap();
    let h = MonoidHom::from_ambient_images(nat(), torsion, &[vector(&[1, 0])]).unwrap();
    assert_eq!(smoothness_class(&h), Smoothness::Etale);
    let with_line = EmbeddedMonoid::from_i64(AbelianGroup::free(2), &[&[1, 0], &[0, 1], &[0, -1]]).unwrap();
    let h = MonoidHom::from_ambient_images(nat(), with_line, &[vector(&[1, 0])]).unwrap();
    assert_eq!(smoothness_class(&h), Smoothness::Smooth);
    assert_eq!(smoothness_class(&MonoidHom::identity(&EmbeddedMonoid::free(2))), Smoothness::Etale);
    let double = MonoidHom::from_ambient_images(nat(), nat(), &[vector(&[2])]).unwrap();
    assert_eq!(smoothness_class(&double), Smoothness::Unclassified);
}

#[test]
fn profiles() {
    let p = realization_profile(&nat());
    assert_eq!((p.positive_dim, p.circle_dim), (1, 1));
    assert_eq!((p.component_count, p.sign_components), (1.into(), 2.into()));
    let g = AbelianGroup::new(1, vec![4.into()]);
    let p = realization_profile(&EmbeddedMonoid::group_monoid(&g));
    assert_eq!((p.component_count, p.sign_components), (4.into(), 4.into()));
    let p = realization_profile(&EmbeddedMonoid::free(0));
    assert_eq!(p, RealizationProfile { positive_dim: 0, circle_dim: 0, component_count: 1.into(), sign_components: 1.into() });
    for (r, t) in [(0, vec![2, 6]), (2, vec![2, 4, 8]), (1, vec![3, 15]), (0, vec![])] {
        let g = AbelianGroup::new(r, t.into_iter().map(BigInt::from).collect());
        assert_eq!(sign_count(&g), BigInt::from(brute_sign_count(&g)));
    }
}

#[test]
fn transfer_clauses() {
    let p = EmbeddedMonoid::free(2);
    let (chart, _) = crate::projblow::blowup_charts(&p, &MonoidIdeal::maximal(&p)).unwrap();
    let inc = MonoidHom::new(p.clone(), chart[0].clone(), crate::lattice::GroupHom::identity(p.group())).unwrap();
    let t = surjectivity_transfer(&inc);
    assert!(t.r_plus_surjective_if_complex_surjective && t.r_surjective_criteria);
    let double = MonoidHom::from_ambient_images(nat(), nat(), &[vector(&[2])]).unwrap();
    assert!(!surjectivity_transfer(&double).r_surjective_criteria);
    let g = AbelianGroup::new(1, vec![4.into()]);
    let q = EmbeddedMonoid::from_i64(g, &[&[1, 0], &[0, 2], &[1, 3]]).unwrap();
    let (_, sat) = q.saturate();
    let t = surjectivity_transfer(&sat);
    assert!(t.group_iso && !t.domain_fs && !t.r_surjective_criteria);
}
