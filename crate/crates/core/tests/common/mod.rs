//! Seeded corpus of small monoids, independent oracles, and the property checks shared by the
//! property suites and the acceptance harness.
#![allow(dead_code)]

use monofan::boundary::{boundary_depth, boundary_fan, depth_bound};
use monofan::fanspace::{pairing, product_with_projections, spec, spec_map, FanSpace};
use monofan::lattice::{vector, AbelianGroup, GroupHom, IntMatrix, Vector};
use monofan::monoid::{EmbeddedMonoid, MonoidHom, MonoidIdeal};
use monofan::refine::classify;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x006d_6f6e_6f66_616e;
pub const CASES: u32 = 256;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const TORSION: &[&[u32]] = &[&[], &[], &[], &[], &[2], &[3], &[2, 2], &[4]];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Ambient of dimension at most 3, one to four generators with entries in [-3, 3].
pub fn random_monoid(rng: &mut ChaCha8Rng) -> EmbeddedMonoid {
    let torsion = TORSION[rng.gen_range(0..TORSION.len())];
    let rank = rng.gen_range(usize::from(torsion.is_empty())..=3 - torsion.len());
    let lo = if rng.gen_bool(0.6) { 0 } else { -3 };
    let count = rng.gen_range(1..=4);
    let gens: Vec<Vector> = (0..count)
        .map(|_| {
            let mut v: Vec<i64> = (0..rank).map(|_| rng.gen_range(lo..=3)).collect();
            v.extend(torsion.iter().map(|&d| rng.gen_range(0..i64::from(d))));
            vector(&v)
        })
        .collect();
    let group = AbelianGroup::new(rank, torsion.iter().map(|&d| BigInt::from(d)).collect());
    EmbeddedMonoid::new(group, &gens).expect("generators match the ambient")
}

pub fn named() -> Vec<(&'static str, EmbeddedMonoid)> {
    let z = |r| AbelianGroup::free(r);
    let zt = |r, d: u32| AbelianGroup::new(r, vec![BigInt::from(d)]);
    let m = |g, gens: &[&[i64]]| EmbeddedMonoid::from_i64(g, gens).unwrap();
    vec![
        ("two-three", m(z(1), &[&[2], &[3]])),
        ("plane", EmbeddedMonoid::free(2)),
        ("a1", m(z(2), &[&[2, 0], &[1, 1], &[0, 2]])),
        ("no-characteristic-chart", m(zt(1, 4), &[&[1, 1], &[1, 0], &[0, 2]])),
        ("no-surjectivity", m(zt(1, 4), &[&[1, 0], &[0, 2], &[1, 3]])),
        ("index-two-cone", m(z(2), &[&[1, 0], &[1, 2]])),
        ("group", m(zt(1, 2), &[&[1, 0], &[-1, 0], &[0, 1]])),
        ("square-cone", m(z(3), &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]])),
        ("half-line", m(z(2), &[&[1, 0], &[0, 1], &[0, -1]])),
    ]
}

/// Named examples followed by `count` random monoids.
pub fn corpus(seed: u64, count: usize) -> Vec<EmbeddedMonoid> {
    let mut r = rng(seed);
    let mut v: Vec<EmbeddedMonoid> = named().into_iter().map(|(_, m)| m).collect();
    v.extend((0..count).map(|_| random_monoid(&mut r)));
    v
}

pub fn fs_corpus(seed: u64, count: usize) -> Vec<EmbeddedMonoid> {
    corpus(seed, count).into_iter().map(|m| m.saturate().0).collect()
}

pub fn arb_monoid() -> impl Strategy<Value = EmbeddedMonoid> {
    any::<u64>().prop_map(|s| random_monoid(&mut rng(s)))
}

pub fn arb_fs_monoid() -> impl Strategy<Value = EmbeddedMonoid> {
    arb_monoid().prop_map(|m| m.saturate().0)
}

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        rng_seed: proptest::test_runner::RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// A random nonnegative combination of the generators, in group coordinates.
pub fn element(p: &EmbeddedMonoid, rng: &mut ChaCha8Rng, max: i64) -> Vector {
    let g = p.group();
    let mut acc = g.zero();
    for gen in p.gens() {
        let c = BigInt::from(rng.gen_range(0..=max));
        acc = g.add(&acc, &g.scale(&c, gen));
    }
    acc
}

fn reduce(g: &AbelianGroup, v: &[BigInt]) -> Vec<BigInt> {
    let r = g.rank();
    v.iter()
        .enumerate()
        .map(|(k, x)| if k < r { x.clone() } else { x.mod_floor(&g.torsion()[k - r]) })
        .collect()
}

fn dot_free(l: &[i64], v: &[BigInt]) -> BigInt {
    l.iter().zip(v).map(|(a, b)| BigInt::from(*a) * b).sum()
}

/// A functional on the free part that is at least 1 on every generator, searched in [-4, 4]^r.
pub fn positive_grading(g: &AbelianGroup, gens: &[Vector]) -> Option<Vec<i64>> {
    let r = g.rank();
    let total = 9usize.pow(r as u32);
    (0..total)
        .map(|mut k| {
            (0..r)
                .map(|_| {
                    let d = (k % 9) as i64 - 4;
                    k /= 9;
                    d
                })
                .collect::<Vec<i64>>()
        })
        .find(|l| gens.iter().all(|v| dot_free(l, v) >= BigInt::from(1)))
}

/// Exhaustive coefficient search for `x` in the monoid generated by `gens` inside `g`.
/// Exact whenever a positive grading exists; `None` otherwise.
pub fn member_by_search(g: &AbelianGroup, gens: &[Vector], x: &[BigInt]) -> Option<bool> {
    let gens: Vec<Vector> = gens.iter().filter(|v| !reduce(g, v).iter().all(Zero::is_zero)).cloned().collect();
    let target = reduce(g, x);
    if gens.is_empty() {
        return Some(target.iter().all(Zero::is_zero));
    }
    let l = positive_grading(g, &gens)?;
    let level = dot_free(&l, x).to_i64()?;
    if level < 0 {
        return Some(false);
    }
    let weights: Vec<i64> = gens.iter().map(|v| dot_free(&l, v).to_i64().unwrap()).collect();
    fn go(g: &AbelianGroup, gens: &[Vector], w: &[i64], i: usize, left: i64, acc: Vec<BigInt>, t: &[BigInt]) -> bool {
        if i == gens.len() {
            return left == 0 && reduce(g, &acc) == t;
        }
        (0..=left / w[i]).any(|c| {
            let next: Vec<BigInt> = acc.iter().zip(&gens[i]).map(|(a, b)| a + BigInt::from(c) * b).collect();
            go(g, gens, w, i + 1, left - c * w[i], next, t)
        })
    }
    Some(go(g, &gens, &weights, 0, level, vec![BigInt::zero(); g.dim()], &target))
}

/// Freeness via irreducibles found by the search oracle and a unimodular matching of the
/// standard basis onto them, tried in every order.
pub fn free_by_permutation(p: &EmbeddedMonoid) -> Option<bool> {
    let (s, _) = p.sharpen();
    let g = s.group();
    if !g.is_torsion_free() {
        return Some(false);
    }
    let mut gens: Vec<Vector> = s.gens().iter().filter(|v| !v.iter().all(Zero::is_zero)).cloned().collect();
    gens.sort();
    gens.dedup();
    let mut irr = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        let mut reducible = false;
        for (j, b) in gens.iter().enumerate() {
            if i != j {
                let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                reducible |= member_by_search(g, &gens, &d)?;
            }
        }
        if !reducible {
            irr.push(a.clone());
        }
    }
    let r = g.rank();
    if irr.len() != r {
        return Some(false);
    }
    if r == 0 {
        return Some(true);
    }
    Some(permutations(r).into_iter().any(|perm| {
        let cols: Vec<Vector> = perm.iter().map(|&k| irr[k].clone()).collect();
        IntMatrix::from_cols(r, &cols).determinant().abs() == BigInt::from(1)
    }))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for k in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(k, n - 1);
            out.push(v);
        }
    }
    out
}

// Monoid-level properties.

pub fn check_faces(p: &EmbeddedMonoid, seed: u64) -> Check {
    let mut r = rng(seed);
    let faces = p.faces();
    ensure!(faces.first() == Some(&p.unit_face()), "first face is not the unit face");
    ensure!(faces.last() == Some(&p.top_face()), "last face is not the whole monoid");
    let saturated = p.is_saturated();
    for f in faces {
        let fm = p.face_monoid(f);
        ensure!(!saturated || fm.is_saturated(), "face {f:?} of a saturated monoid is not saturated");
        for (i, g) in p.gens().iter().enumerate() {
            ensure!(p.face_contains(f, g) == f.contains_index(i), "face {f:?} disagrees on generator {i}");
        }
        for _ in 0..8 {
            let (a, b) = (element(p, &mut r, 2), element(p, &mut r, 2));
            let s = p.group().add(&a, &b);
            if p.face_contains(f, &s) {
                ensure!(p.face_contains(f, &a) && p.face_contains(f, &b), "face {f:?} is not closed under summands");
            }
        }
    }
    Ok(())
}

/// `sharpen(localize(P, F)) ≅ P/F` through the map induced on groups.
pub fn check_sharpening(p: &EmbeddedMonoid) -> Check {
    for f in p.faces() {
        let (l, loc) = p.localize(f).map_err(|e| e.to_string())?;
        let (lbar, sh) = l.sharpen();
        let (q, qmap) = p.quotient_by_face(f).map_err(|e| e.to_string())?;
        let cols: Vec<Vector> = (0..lbar.group().dim())
            .map(|j| {
                let x = sh.group_map().preimage(&lbar.group().generator(j)).expect("sharpening is onto");
                let y = loc.group_map().preimage(&x).expect("localization keeps the group");
                qmap.group_map().apply(&y)
            })
            .collect();
        let map = GroupHom::new(lbar.group().clone(), q.group().clone(), IntMatrix::from_cols(q.group().dim(), &cols))
            .ok_or("induced map is not well defined")?;
        let h = MonoidHom::new(lbar.clone(), q.clone(), map).map_err(|e| format!("{f:?}: {e}"))?;
        ensure!(h.is_iso(), "face {f:?}: sharpened localization {lbar:?} is not {q:?}");
    }
    Ok(())
}

/// Quotients of a saturated monoid by faces are saturated; sharp saturated monoids have
/// torsion-free groups; saturation is idempotent.
pub fn check_saturated(p: &EmbeddedMonoid) -> Check {
    let (sat, _) = p.saturate();
    ensure!(sat.is_saturated(), "saturation of {p:?} is not saturated");
    ensure!(sat.saturate().0.same_monoid(&sat), "saturation of {p:?} is not idempotent");
    ensure!(p.gens().iter().all(|g| sat.contains(g)), "saturation does not contain {p:?}");
    ensure!(sat.sharpen().0.group().is_torsion_free(), "sharpened saturation has torsion");
    for f in sat.faces() {
        let (q, _) = sat.quotient_by_face(f).map_err(|e| e.to_string())?;
        ensure!(q.is_saturated(), "quotient of {sat:?} by {f:?} is not saturated");
    }
    Ok(())
}

/// For fs `P`: `localize(P, F) ≅ F^gp ⊕ P/F` via an explicit lift of a basis of the sharpening.
pub fn check_fs_splitting(p: &EmbeddedMonoid) -> Check {
    for f in p.faces() {
        let (l, _) = p.localize(f).map_err(|e| e.to_string())?;
        let units = l.units();
        let (lbar, sh) = l.sharpen();
        ensure!(lbar.group().is_torsion_free(), "sharpened stalk at {f:?} has torsion");
        let lifts: Vec<Vector> = (0..lbar.group().dim())
            .map(|j| sh.group_map().preimage(&lbar.group().generator(j)).expect("sharpening is onto"))
            .collect();
        let section = GroupHom::new(lbar.group().clone(), l.group().clone(), IntMatrix::from_cols(l.group().dim(), &lifts))
            .ok_or("lift is not a homomorphism")?;
        let u = EmbeddedMonoid::group_monoid(units.group());
        let (sum, ds) = u.direct_sum(&lbar);
        let map = ds.copair(units.inclusion(), &section);
        let h = MonoidHom::new(sum, l.clone(), map).map_err(|e| format!("{f:?}: {e}"))?;
        ensure!(h.is_iso(), "splitting at {f:?} of {p:?} is not an isomorphism");
    }
    Ok(())
}

pub fn check_membership(p: &EmbeddedMonoid, seed: u64) -> Check {
    let (s, _) = p.sharpen();
    let mut r = rng(seed);
    let g = s.group();
    for k in 0..12 {
        let x: Vector = if k % 2 == 0 {
            element(&s, &mut r, 3)
        } else {
            let mut v: Vec<i64> = (0..g.rank()).map(|_| r.gen_range(-2..=6)).collect();
            v.extend(g.torsion().iter().map(|d| r.gen_range(0..d.to_i64().unwrap())));
            vector(&v)
        };
        if let Some(want) = member_by_search(g, s.gens(), &x) {
            ensure!(s.contains(&x) == want, "membership of {x:?} in {s:?}: oracle says {want}");
        }
    }
    Ok(())
}

pub fn check_is_free(p: &EmbeddedMonoid) -> Check {
    if let Some(want) = free_by_permutation(p) {
        ensure!(p.is_free() == want, "is_free({p:?}) disagrees with the permutation oracle ({want})");
    }
    Ok(())
}

// Homomorphisms and refinements.

/// A homomorphism `Q → P` from the free monoid, a submonoid, the saturation or a localization.
pub fn random_hom(seed: u64) -> MonoidHom {
    let mut r = rng(seed);
    let p = random_monoid(&mut r);
    match r.gen_range(0..4) {
        0 => {
            let k = r.gen_range(1..=3);
            let imgs: Vec<Vector> = (0..k).map(|_| p.to_ambient(&element(&p, &mut r, 2))).collect();
            MonoidHom::from_ambient_images(EmbeddedMonoid::free(k), p, &imgs).expect("images lie in P")
        }
        1 => {
            let k = r.gen_range(1..=3);
            let elems: Vec<Vector> = (0..k).map(|_| element(&p, &mut r, 2)).collect();
            let q = p.submonoid(&elems);
            let imgs = q.gens_ambient();
            MonoidHom::from_ambient_images(q, p, &imgs).expect("inclusion")
        }
        2 => p.saturate().1,
        _ => {
            let faces = p.faces();
            let f = faces[r.gen_range(0..faces.len())].clone();
            p.localize(&f).unwrap().1
        }
    }
}

/// Group homomorphisms `P̄^gp → R̄^gp` with entries in [-2, 2] that are sections of `p̄` and
/// satisfy `s̄ h̄ = ī`; `None` when the search space is too large.
pub fn sections_by_search(h: &MonoidHom) -> Option<usize> {
    let fac = monofan::refine::refinement_factorization(h);
    let (hbar, ibar, pbar) = (h.sharpening(), fac.i.sharpening(), fac.p.sharpening());
    let (pb, rb) = (pbar.codomain().clone(), ibar.codomain().clone());
    let (m, n) = (rb.group().dim(), pb.group().dim());
    if m * n > 4 || !pb.group().is_torsion_free() || !rb.group().is_torsion_free() {
        return None;
    }
    let qdim = hbar.domain().group().dim();
    let mut count = 0;
    for code in 0..5usize.pow((m * n) as u32) {
        let mut c = code;
        let entries: Vec<i64> = (0..m * n)
            .map(|_| {
                let d = (c % 5) as i64 - 2;
                c /= 5;
                d
            })
            .collect();
        let mat = IntMatrix::from_i64(m, n, &entries);
        let compatible = (0..qdim).all(|j| {
            let e = hbar.domain().group().generator(j);
            mat.mul_vec(&hbar.group_map().apply(&e)) == ibar.group_map().apply(&e)
        });
        let splits = (0..n).all(|j| {
            let e = pb.group().generator(j);
            pbar.group_map().apply(&mat.mul_vec(&e)) == e
        });
        if !compatible || !splits {
            continue;
        }
        let Some(map) = GroupHom::new(pb.group().clone(), rb.group().clone(), mat) else { continue };
        if MonoidHom::new(pb.clone(), rb.clone(), map).is_ok() {
            count += 1;
        }
    }
    Some(count)
}

pub fn check_refinements(h: &MonoidHom) -> Check {
    let rep = classify(h);
    let bar = classify(&h.sharpening());
    ensure!(rep.refinement == bar.refinement, "refinement flag changes under sharpening for {h:?}");
    ensure!(rep.strong == bar.strong, "strong flag changes under sharpening for {h:?}");
    if h.codomain().is_saturated() {
        ensure!(rep.factorization.r.is_saturated(), "R is not saturated although P is, for {h:?}");
    }
    if h.group_map().is_iso() {
        ensure!(rep.good, "group isomorphism that is not good: {h:?}");
    }
    if let Some(n) = sections_by_search(h) {
        ensure!(n <= 1, "{n} distinct sections for {h:?}");
        ensure!(n == 0 || rep.refinement, "a section exists but {h:?} is not reported as a refinement");
        ensure!(rep.refinement == rep.section.is_some(), "section presence disagrees with the refinement flag");
    }
    Ok(())
}

/// Chart inclusions of the blowup at the maximal ideal are group isomorphisms, hence good.
pub fn check_blowup_charts_good(p: &EmbeddedMonoid) -> Check {
    let m = MonoidIdeal::maximal(p);
    if m.gens().is_empty() {
        return Ok(());
    }
    let (charts, _) = monofan::projblow::blowup_charts(p, &m).map_err(|e| e.to_string())?;
    for c in charts {
        let inc = MonoidHom::new(p.clone(), c.clone(), GroupHom::identity(p.group())).map_err(|e| e.to_string())?;
        ensure!(classify(&inc).good, "chart {c:?} of {p:?} is not good");
    }
    Ok(())
}

// Ideals.

pub fn random_ideal(seed: u64) -> MonoidIdeal {
    let mut r = rng(seed);
    let p = random_monoid(&mut r);
    let k = r.gen_range(1..=3);
    let gens: Vec<Vector> = (0..k).map(|_| element(&p, &mut r, 2)).collect();
    MonoidIdeal::new(&p, &gens).expect("elements of P")
}

/// `I^n` as iterated products against the ideal of all n-fold sums of generators.
pub fn check_ideal_power(i: &MonoidIdeal, n: usize) -> Check {
    let p = i.parent();
    let g = p.group();
    let mut sums: Vec<Vector> = vec![g.zero()];
    for _ in 0..n {
        sums = sums.iter().flat_map(|s| i.gens().iter().map(|a| g.add(s, a))).collect();
        sums.sort();
        sums.dedup();
    }
    let naive = MonoidIdeal::new(p, &sums).map_err(|e| e.to_string())?;
    let power = i.power(n).map_err(|e| e.to_string())?;
    ensure!(power.same_ideal(&naive), "I^{n} differs from the n-fold sums for {:?} in {p:?}", i.gens());
    ensure!(sums.iter().all(|s| power.contains(s)), "an n-fold sum is missing from I^{n}");
    Ok(())
}

// Spaces.

/// `Spec(P ⊕ Q) → Spec P × Spec Q` induced by the two summand inclusions is an isomorphism.
pub fn check_spec_of_sum(p: &EmbeddedMonoid, q: &EmbeddedMonoid) -> Check {
    let (s, ds) = p.direct_sum(q);
    let l = MonoidHom::new(p.clone(), s.clone(), ds.inj_left.clone()).map_err(|e| e.to_string())?;
    let r = MonoidHom::new(q.clone(), s.clone(), ds.inj_right.clone()).map_err(|e| e.to_string())?;
    let prod = product_with_projections(&spec(p), &spec(q)).map_err(|e| e.to_string())?;
    let map = pairing(&spec_map(&l), &spec_map(&r), &prod).map_err(|e| e.to_string())?;
    ensure!(
        map.is_isomorphism(),
        "Spec of {p:?} + {q:?}: {} points against {}",
        map.source().point_count(),
        prod.space.point_count()
    );
    Ok(())
}

pub fn check_boundary(x: &FanSpace) -> Check {
    let bd = boundary_fan(x);
    for (i, &y) in bd.map.iter().enumerate() {
        let stalk = x.stalk(y);
        let label = &bd.face_labels[i];
        ensure!(stalk.is_face(label) && *label != stalk.top_face(), "boundary point {i}: {label:?} is not a proper face");
        if stalk.is_saturated() {
            ensure!(bd.boundary.stalk(i).is_saturated(), "boundary stalk {i} of an fs stalk is not saturated");
        }
    }
    ensure!(boundary_depth(x) <= depth_bound(x), "boundary depth {} exceeds {}", boundary_depth(x), depth_bound(x));
    Ok(())
}

/// Restricting the boundary of `Spec P` to the open set `Spec P_F` gives the boundary of `Spec P_F`.
pub fn check_boundary_restriction(p: &EmbeddedMonoid) -> Check {
    let x = spec(p);
    let bd = boundary_fan(&x);
    for (k, f) in p.faces().iter().enumerate() {
        let (l, _) = p.localize(f).map_err(|e| e.to_string())?;
        let local = boundary_fan(&spec(&l));
        let open = x.up(k);
        let mut restricted: Vec<usize> = (0..bd.map.len())
            .filter(|&i| open.contains(&bd.map[i]))
            .map(|i| bd.boundary.stalk(i).group().rank())
            .collect();
        let mut direct: Vec<usize> = (0..local.map.len()).map(|i| local.boundary.stalk(i).group().rank()).collect();
        restricted.sort_unstable();
        direct.sort_unstable();
        ensure!(restricted == direct, "boundary over face {f:?} of {p:?}: {restricted:?} against {direct:?}");
    }
    Ok(())
}
