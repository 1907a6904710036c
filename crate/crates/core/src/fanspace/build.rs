//! Constructions of fans: spectra, gluing, products, fibered products, classical fans.

use std::collections::VecDeque;

use super::{Chart, FanMap, FanSpace, StalkKind};
use crate::lattice::matrix::{dot, Vector};
use crate::lattice::{
    cone_generators, cone_inequalities, hilbert_basis, quotient_group, AbelianGroup, DirectSum, GroupHom,
    PolyhedralCone,
};
use crate::monoid::{
    express_in_free_presentation, free_presentation, induced_on_quotients, pushout, EmbeddedMonoid, Face, MonoidHom,
    PresentedHom, Pushout,
};
use crate::{Error, Result};

/// `Spec P`: one point per face, ordered as [`EmbeddedMonoid::faces`], with stalks `F⁻¹P`.
pub fn spec(p: &EmbeddedMonoid) -> FanSpace {
    let faces = p.faces();
    let stalks = faces.iter().map(|f| p.localize(f).expect("listed face").0).collect();
    let id = GroupHom::identity(p.group());
    let chart = Chart { monoid: p.clone(), points: (0..faces.len()).collect(), transitions: vec![id; faces.len()] };
    FanSpace::assemble(StalkKind::Full, stalks, vec![chart]).expect("spectra are well formed")
}

/// `Spec h: Spec P → Spec Q` for `h: Q → P`, sending a face `G` of `P` to `h⁻¹(G)`.
pub fn spec_map(h: &MonoidHom) -> FanMap {
    let (q, p) = (h.domain(), h.codomain());
    let source = spec(p);
    let target = spec(q);
    let mut point_map = Vec::new();
    let mut stalk_maps = Vec::new();
    for (gi, g) in p.faces().iter().enumerate() {
        let pre: Vec<usize> =
            (0..q.gens().len()).filter(|&i| p.face_contains(g, &h.apply(&q.gens()[i]))).collect();
        let face = Face::new(pre);
        let fi = q.face_position(&face).expect("preimages of faces are faces");
        point_map.push(fi);
        stalk_maps.push(
            MonoidHom::new(target.stalk(fi).clone(), source.stalk(gi).clone(), h.group_map().clone())
                .expect("localized maps stay in the stalks"),
        );
    }
    FanMap::new(source, target, point_map, stalk_maps).expect("spectra of maps are fan maps")
}

/// Identification of the open sets `Spec F_i⁻¹P_i ≅ Spec F_j⁻¹P_j` by a group isomorphism
/// `P_i^gp → P_j^gp` carrying one localization onto the other.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub i: usize,
    pub j: usize,
    pub face_i: Face,
    pub face_j: Face,
    pub iso: GroupHom,
}

impl Gluing {
    /// Glues two charts described in the same ambient group by the identity of the ambient.
    pub fn along_ambient(charts: &[EmbeddedMonoid], i: usize, j: usize, face_i: Face, face_j: Face) -> Result<Gluing> {
        let (a, b) = (&charts[i], &charts[j]);
        if a.ambient() != b.ambient() {
            return Err(Error::InvalidGluing("charts live in different ambient groups".into()));
        }
        let cols = (0..a.group().dim())
            .map(|k| b.from_ambient(&a.to_ambient(&a.group().generator(k))))
            .collect::<Option<Vec<Vector>>>()
            .ok_or_else(|| Error::InvalidGluing("chart groups differ inside the ambient group".into()))?;
        let iso = GroupHom::new(a.group().clone(), b.group().clone(), crate::lattice::IntMatrix::from_cols(b.group().dim(), &cols))
            .ok_or_else(|| Error::InvalidGluing("ambient identity is not a group map".into()))?;
        Ok(Gluing { i, j, face_i, face_j, iso })
    }
}

/// Glues spectra of the given monoids along localizations, checking the cocycle condition.
pub fn glue(charts: &[EmbeddedMonoid], gluings: &[Gluing]) -> Result<FanSpace> {
    let offsets: Vec<usize> = charts
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.faces().len();
            Some(o)
        })
        .collect();
    let total: usize = charts.iter().map(|c| c.faces().len()).sum();
    let node_chart: Vec<usize> =
        charts.iter().enumerate().flat_map(|(c, m)| std::iter::repeat_n(c, m.faces().len())).collect();
    // Directed edges node -> node with the map chart(node) -> chart(other).
    let mut edges: Vec<Vec<(usize, GroupHom)>> = vec![Vec::new(); total];
    for gl in gluings {
        if gl.i >= charts.len() || gl.j >= charts.len() {
            return Err(Error::InvalidGluing("gluing refers to a missing chart".into()));
        }
        if gl.i == gl.j {
            return Err(Error::InvalidGluing("a chart cannot be glued to itself".into()));
        }
        let (pi, pj) = (&charts[gl.i], &charts[gl.j]);
        if gl.iso.domain() != pi.group() || gl.iso.codomain() != pj.group() {
            return Err(Error::InvalidGluing("gluing map has the wrong groups".into()));
        }
        let inverse = gl.iso.inverse().ok_or_else(|| Error::InvalidGluing("gluing map is not invertible".into()))?;
        let (li, _) = pi.localize(&gl.face_i).map_err(|_| Error::InvalidGluing("gluing face is not a face".into()))?;
        let (lj, _) = pj.localize(&gl.face_j).map_err(|_| Error::InvalidGluing("gluing face is not a face".into()))?;
        let whole = MonoidHom::new(li, lj, gl.iso.clone())
            .map_err(|_| Error::InvalidGluing("gluing map does not carry one localization into the other".into()))?;
        if !whole.is_iso() {
            return Err(Error::InvalidGluing("gluing map is not an isomorphism of localizations".into()));
        }
        for (a, fa) in pi.faces().iter().enumerate() {
            if !gl.face_i.is_subface_of(fa) {
                continue;
            }
            let la = pi.localize(fa)?.0;
            let imgs: Vec<Vector> = la.gens().iter().map(|g| gl.iso.apply(g)).collect();
            let b = pj
                .faces()
                .iter()
                .enumerate()
                .filter(|(_, fb)| gl.face_j.is_subface_of(fb))
                .find(|(_, fb)| {
                    let lb = pj.localize(fb).expect("listed face").0;
                    imgs.iter().all(|g| lb.contains(g)) && lb.gens().iter().all(|g| la.contains(&inverse.apply(g)))
                })
                .map(|(b, _)| b)
                .ok_or_else(|| Error::InvalidGluing("gluing does not match faces".into()))?;
            let (na, nb) = (offsets[gl.i] + a, offsets[gl.j] + b);
            edges[na].push((nb, gl.iso.clone()));
            edges[nb].push((na, inverse.clone()));
        }
    }

    let mut component = vec![usize::MAX; total];
    let mut transition: Vec<Option<GroupHom>> = vec![None; total];
    let mut stalks: Vec<EmbeddedMonoid> = Vec::new();
    for root in 0..total {
        if component[root] != usize::MAX {
            continue;
        }
        let id = stalks.len();
        let c = node_chart[root];
        let face = &charts[c].faces()[root - offsets[c]];
        stalks.push(charts[c].localize(face)?.0);
        component[root] = id;
        transition[root] = Some(GroupHom::identity(charts[c].group()));
        let mut queue = VecDeque::from([root]);
        let mut members = vec![root];
        while let Some(cur) = queue.pop_front() {
            let t_cur = transition[cur].clone().expect("visited");
            for (nb, m) in &edges[cur] {
                // m: chart(cur) → chart(nb); the neighbour's transition is t_cur ∘ m⁻¹.
                let t_nb = m.inverse().expect("gluing maps are isomorphisms").then(&t_cur);
                if component[*nb] == usize::MAX {
                    component[*nb] = id;
                    transition[*nb] = Some(t_nb);
                    queue.push_back(*nb);
                    members.push(*nb);
                } else if !transition[*nb].as_ref().expect("visited").same_as(&t_nb) {
                    return Err(Error::Cocycle("gluing maps are inconsistent on an overlap".into()));
                }
            }
        }
        let mut seen_charts: Vec<usize> = members.iter().map(|&n| node_chart[n]).collect();
        seen_charts.sort_unstable();
        if seen_charts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGluing("two points of one chart are identified".into()));
        }
    }
    let built: Vec<Chart> = charts
        .iter()
        .enumerate()
        .map(|(c, m)| {
            let nodes = offsets[c]..offsets[c] + m.faces().len();
            Chart {
                monoid: m.clone(),
                points: nodes.clone().map(|n| component[n]).collect(),
                transitions: nodes.map(|n| transition[n].clone().expect("visited")).collect(),
            }
        })
        .collect();
    FanSpace::assemble(StalkKind::Full, stalks, built)
}

/// `X × Y` with its projections; points are pairs `(x, y)` numbered `x·|Y| + y`.
#[derive(Clone, Debug)]
pub struct Product {
    pub space: FanSpace,
    pub left: FanMap,
    pub right: FanMap,
    sums: Vec<DirectSum>,
    right_count: usize,
}

impl Product {
    pub fn point(&self, x: usize, y: usize) -> usize {
        x * self.right_count + y
    }

    pub fn sum_at(&self, p: usize) -> &DirectSum {
        &self.sums[p]
    }
}

pub fn product(x: &FanSpace, y: &FanSpace) -> Result<FanSpace> {
    Ok(product_with_projections(x, y)?.space)
}

/// Product of fans: stalks are direct sums and the order is the product order.
pub fn product_with_projections(x: &FanSpace, y: &FanSpace) -> Result<Product> {
    if x.kind() != y.kind() {
        return Err(Error::Invalid("cannot combine full and sharpened spaces".into()));
    }
    let (nx, ny) = (x.point_count(), y.point_count());
    let mut stalks = Vec::new();
    let mut sums = Vec::new();
    let mut up = Vec::new();
    for a in 0..nx {
        for b in 0..ny {
            let (m, ds) = x.stalk(a).direct_sum(y.stalk(b));
            stalks.push(m);
            sums.push(ds);
            up.push(x.up(a).iter().flat_map(|&a2| y.up(b).iter().map(move |&b2| a2 * ny + b2)).collect::<Vec<_>>());
        }
    }
    let space = FanSpace::from_point_data(x.kind(), stalks, up, |p, q| {
        let (a, b, a2, b2) = (p / ny, p % ny, q / ny, q % ny);
        sums[p].map_sum(&sums[q], x.gen_group_map(a, a2), y.gen_group_map(b, b2))
    })?;
    let left = projection(&space, x, &sums, |p| p / ny, true)?;
    let right = projection(&space, y, &sums, |p| p % ny, false)?;
    Ok(Product { space, left, right, sums, right_count: ny })
}

fn projection(
    space: &FanSpace,
    factor: &FanSpace,
    sums: &[DirectSum],
    to_factor: impl Fn(usize) -> usize,
    left: bool,
) -> Result<FanMap> {
    let mut point_map = Vec::new();
    let mut stalk_maps = Vec::new();
    for p in space.points() {
        let a = to_factor(p);
        point_map.push(a);
        let inj = if left { &sums[p].inj_left } else { &sums[p].inj_right };
        stalk_maps.push(MonoidHom::new(factor.stalk(a).clone(), space.stalk(p).clone(), inj.clone())?);
    }
    FanMap::new(space.clone(), factor.clone(), point_map, stalk_maps)
}

/// The map `Z → X × Y` induced by `f: Z → X` and `g: Z → Y`.
pub fn pairing(f: &FanMap, g: &FanMap, prod: &Product) -> Result<FanMap> {
    let z = f.source();
    let mut point_map = Vec::new();
    let mut stalk_maps = Vec::new();
    for p in z.points() {
        let q = prod.point(f.image(p), g.image(p));
        point_map.push(q);
        let m = prod.sum_at(q).copair(f.stalk_map(p).group_map(), g.stalk_map(p).group_map());
        stalk_maps.push(MonoidHom::new(prod.space.stalk(q).clone(), z.stalk(p).clone(), m)?);
    }
    FanMap::new(z.clone(), prod.space.clone(), point_map, stalk_maps)
}

/// `X ×_Z Y`: points are pairs with a common image, stalks are integral pushouts.
#[derive(Clone, Debug)]
pub struct FiberedProduct {
    /// Pairs `(x, y)` in lexicographic order; point `k` of `space` is `pairs[k]`.
    pub pairs: Vec<(usize, usize)>,
    /// The integral fibered product, when requested.
    pub space: Option<FanSpace>,
    pub left: Option<FanMap>,
    pub right: Option<FanMap>,
    /// For each closed pair, the presented pushout of its stalks when all three stalks are
    /// of the form `ℤˢ ⊕ ℕʳ`.
    pub pushouts: Vec<((usize, usize), Option<Pushout>)>,
}

pub fn fibered_product(f: &FanMap, g: &FanMap, integralize: bool) -> Result<FiberedProduct> {
    let (x, y, z) = (f.source(), g.source(), f.target());
    if g.target().point_count() != z.point_count() || x.kind() != y.kind() {
        return Err(Error::Invalid("fibered product needs a common target".into()));
    }
    let pairs: Vec<(usize, usize)> =
        x.points().flat_map(|a| y.points().map(move |b| (a, b))).filter(|&(a, b)| f.image(a) == g.image(b)).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b));
    let mut stalks = Vec::new();
    let mut sums = Vec::new();
    let mut projs = Vec::new();
    let mut up = Vec::new();
    for &(a, b) in &pairs {
        let ds = x.stalk(a).group().direct_sum(y.stalk(b).group());
        let w = z.stalk(f.image(a)).group();
        let rels: Vec<Vector> = (0..w.dim())
            .map(|j| {
                let e = w.generator(j);
                let fa = f.stalk_map(a).apply(&e);
                let gb = g.stalk_map(b).apply(&e);
                ds.pair(&fa, &y.stalk(b).group().neg(&gb))
            })
            .collect();
        let (grp, pi) = quotient_group(&ds.group, &rels);
        let mut gens: Vec<Vector> = x.stalk(a).gens().iter().map(|v| pi.apply(&ds.inj_left.apply(v))).collect();
        gens.extend(y.stalk(b).gens().iter().map(|v| pi.apply(&ds.inj_right.apply(v))));
        stalks.push(EmbeddedMonoid::new(grp, &gens)?);
        sums.push(ds);
        projs.push(pi);
        up.push(
            x.up(a)
                .iter()
                .flat_map(|&a2| y.up(b).iter().map(move |&b2| (a2, b2)))
                .filter_map(|(a2, b2)| index(a2, b2))
                .collect::<Vec<_>>(),
        );
    }
    let mut pushouts = Vec::new();
    let closed: Vec<usize> =
        (0..pairs.len()).filter(|&p| (0..pairs.len()).all(|q| q == p || !up[q].contains(&p))).collect();
    for &p in &closed {
        let (a, b) = pairs[p];
        pushouts.push((pairs[p], presented_pushout(f.stalk_map(a), g.stalk_map(b))));
    }
    if !integralize {
        return Ok(FiberedProduct { pairs, space: None, left: None, right: None, pushouts });
    }
    let space = FanSpace::from_point_data(x.kind(), stalks, up, |p, q| {
        let (a, b) = pairs[p];
        let (a2, b2) = pairs[q];
        let m = sums[p].map_sum(&sums[q], x.gen_group_map(a, a2), y.gen_group_map(b, b2));
        induced_on_quotients(&m, &projs[p], &projs[q])
    })?;
    let mut lmaps = Vec::new();
    let mut rmaps = Vec::new();
    for (p, &(a, b)) in pairs.iter().enumerate() {
        let l = sums[p].inj_left.then(&projs[p]);
        let r = sums[p].inj_right.then(&projs[p]);
        lmaps.push(MonoidHom::new(x.stalk(a).clone(), space.stalk(p).clone(), l)?);
        rmaps.push(MonoidHom::new(y.stalk(b).clone(), space.stalk(p).clone(), r)?);
    }
    let left = FanMap::new(space.clone(), x.clone(), pairs.iter().map(|p| p.0).collect(), lmaps)?;
    let right = FanMap::new(space.clone(), y.clone(), pairs.iter().map(|p| p.1).collect(), rmaps)?;
    Ok(FiberedProduct { pairs, space: Some(space), left: Some(left), right: Some(right), pushouts })
}

fn presented_pushout(fa: &MonoidHom, gb: &MonoidHom) -> Option<Pushout> {
    const BUDGET: usize = 10_000;
    let w = fa.domain();
    let (pw, iw) = free_presentation(w)?;
    let (pa, ia) = free_presentation(fa.codomain())?;
    let (pb, ib) = free_presentation(gb.codomain())?;
    let words = |h: &MonoidHom, target: &EmbeddedMonoid, imgs: &[Vector]| -> Option<Vec<Vector>> {
        iw.iter().map(|v| express_in_free_presentation(target, imgs, &h.apply(v))).collect()
    };
    let fh = PresentedHom::new(pw.clone(), pa, words(fa, fa.codomain(), &ia)?, BUDGET).ok()?;
    let gh = PresentedHom::new(pw, pb, words(gb, gb.codomain(), &ib)?, BUDGET).ok()?;
    pushout(&fh, &gh).ok()
}

/// A classical fan imported through dualization, with the cone of every point.
#[derive(Clone, Debug)]
pub struct ClassicalFan {
    pub space: FanSpace,
    pub dim: usize,
    /// Rays of the maximal cones as given.
    pub cones: Vec<Vec<Vector>>,
    /// Rays of the cone corresponding to each point.
    pub point_cones: Vec<Vec<Vector>>,
}

fn cone_contains(dim: usize, rays: &[Vector], v: &[num_bigint::BigInt]) -> bool {
    PolyhedralCone::spanned_by(dim, rays).contains(v)
}

fn same_cone(dim: usize, a: &[Vector], b: &[Vector]) -> bool {
    a.iter().all(|r| cone_contains(dim, b, r)) && b.iter().all(|r| cone_contains(dim, a, r))
}

/// Rays of `σ ∩ τ`.
fn intersect_cones(dim: usize, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let (fa, ea) = cone_inequalities(dim, a);
    let (fb, eb) = cone_inequalities(dim, b);
    let ineqs: Vec<Vector> = fa.into_iter().chain(fb).collect();
    let eqs: Vec<Vector> = ea.into_iter().chain(eb).collect();
    cone_generators(dim, &ineqs, &eqs).rays
}

/// The rays of `σ` spanning the smallest face of `σ` containing `sub`, if `sub` is that face.
fn face_rays(dim: usize, sub: &[Vector], sigma: &[Vector]) -> Option<Vec<Vector>> {
    let (facets, _) = cone_inequalities(dim, sigma);
    let tight: Vec<&Vector> = facets.iter().filter(|f| sub.iter().all(|r| dot(f, r) == 0.into())).collect();
    let rays: Vec<Vector> = sigma.iter().filter(|r| tight.iter().all(|f| dot(f, r) == 0.into())).cloned().collect();
    same_cone(dim, sub, &rays).then_some(rays)
}

/// Imports a classical fan given by its maximal cones in `ℤ^dim`: each cone `σ` becomes
/// `Spec (σ^∨ ∩ ℤ^dim)`, glued along the duals of common faces.
pub fn from_classical(dim: usize, cones: &[Vec<Vector>]) -> Result<ClassicalFan> {
    let mut charts = Vec::new();
    for sigma in cones {
        if sigma.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(format!("cone rays must have {dim} entries")));
        }
        let (facets, eqs) = cone_inequalities(dim, sigma);
        if !cone_generators(dim, &facets, &eqs).lineality.is_empty() {
            return Err(Error::Invalid("cones must be pointed".into()));
        }
        let hb = hilbert_basis(dim, sigma, &[]);
        let mut gens = hb.elements.clone();
        for l in &hb.lineality {
            gens.push(l.clone());
            gens.push(crate::lattice::matrix::neg(l));
        }
        charts.push(EmbeddedMonoid::new(AbelianGroup::free(dim), &gens)?);
    }
    let dual_face = |c: usize, rho: &[Vector]| -> Face {
        Face::new(
            (0..charts[c].gens().len())
                .filter(|&i| rho.iter().all(|r| dot(&charts[c].gens()[i], r) == 0.into()))
                .collect(),
        )
    };
    let mut gluings = Vec::new();
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let rho = intersect_cones(dim, &cones[i], &cones[j]);
            if face_rays(dim, &rho, &cones[i]).is_none() || face_rays(dim, &rho, &cones[j]).is_none() {
                return Err(Error::Invalid(format!("cones {i} and {j} do not meet in a common face")));
            }
            gluings.push(Gluing {
                i,
                j,
                face_i: dual_face(i, &rho),
                face_j: dual_face(j, &rho),
                iso: GroupHom::identity(&AbelianGroup::free(dim)),
            });
        }
    }
    let space = glue(&charts, &gluings)?;
    let mut point_cones = vec![Vec::new(); space.point_count()];
    for (c, chart) in space.charts().iter().enumerate().rev() {
        for (f, &p) in chart.points.iter().enumerate() {
            let face = &chart.monoid.faces()[f];
            let gens: Vec<&Vector> = face.indices().iter().map(|&i| &chart.monoid.gens()[i]).collect();
            point_cones[p] = cones[c].iter().filter(|r| gens.iter().all(|m| dot(m, r) == 0.into())).cloned().collect();
        }
    }
    Ok(ClassicalFan { space, dim, cones: cones.to_vec(), point_cones })
}

/// The projective space `ℙⁿ = Proj ℕ^{n+1}`.
pub fn proj_space(n: usize) -> FanSpace {
    crate::projblow::projective_space(n)
}

/// `X̄`: same points, stalks `M̄_x`.
pub fn sharpen_fan(x: &FanSpace) -> FanSpace {
    if x.kind() == StalkKind::Sharp {
        return x.clone();
    }
    let sharpenings: Vec<(EmbeddedMonoid, MonoidHom)> = x.points().map(|p| x.stalk(p).sharpen()).collect();
    let stalks = sharpenings.iter().map(|(s, _)| s.clone()).collect();
    let charts = x
        .charts()
        .iter()
        .map(|c| Chart {
            monoid: c.monoid.clone(),
            points: c.points.clone(),
            transitions: c
                .transitions
                .iter()
                .zip(&c.points)
                .map(|(t, &p)| t.then(sharpenings[p].1.group_map()))
                .collect(),
        })
        .collect();
    FanSpace::assemble(StalkKind::Sharp, stalks, charts).expect("sharpening preserves the chart structure")
}
