//! Resolution of fs fans by star subdivisions of the dual cone complex.
//!
//! The sharpened stalk `M̄_x` of an fs fan is `σ_x^∨ ∩ N_x^∨` for a pointed cone `σ_x` in
//! `N_x = Hom(M̄_x^gp, ℤ)`, and generization maps make these cones a complex. Subdivisions are
//! applied to every chart containing the subdivided cell, so the charts stay compatible.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::fanspace::{Chart, FanMap, FanSpace, StalkKind};
use crate::lattice::cone::parallelepiped_points;
use crate::lattice::matrix::{add, dot, is_zero};
use crate::lattice::{cone_generators, hilbert_basis, solve, GroupHom, IntMatrix, PolyhedralCone, Vector};
use crate::monoid::{induced_on_quotients, preimage_monoid, EmbeddedMonoid, MonoidHom};
use crate::{Error, Result};

/// Hard cap on subdivision steps.
pub const STEP_CAP: usize = 10_000;

/// Points whose sharpened stalk is free.
pub fn free_locus(x: &FanSpace) -> Vec<usize> {
    x.points().filter(|&p| x.sharpened_stalk(p).is_free()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Pulling an existing ray of a non-simplicial cone.
    Simplicial,
    /// Inserting the lowest point of the fundamental parallelepiped of a singular cone.
    Multiplicity,
}

/// One star subdivision: the ray lies in the relative interior of the cone of `point`,
/// written in the coordinates of `N_point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionStep {
    pub kind: StepKind,
    pub point: usize,
    pub ray: Vector,
}

#[derive(Clone, Debug)]
pub struct ResolutionCertificate {
    pub input: FanSpace,
    pub output: FanSpace,
    pub map: FanMap,
    pub steps: Vec<SubdivisionStep>,
    /// Each free input point with its unique preimage.
    pub free_locus_check: Vec<(usize, usize)>,
}

struct ChartCones {
    x: usize,
    rank: usize,
    /// `N_y → N_x` for every generization `y` of `x`.
    embed: BTreeMap<usize, IntMatrix>,
    /// For each generization `y`, the generators of `M_x` that become units in `M_y`.
    unit_sets: Vec<(usize, Vec<usize>)>,
    /// Maximal cones of the current subdivision, as sorted ray ids.
    cones: Vec<Vec<usize>>,
}

struct Complex<'a> {
    x: &'a FanSpace,
    sharp: Vec<GroupHom>,
    rays: Vec<(usize, Vector)>,
    charts: Vec<ChartCones>,
    steps: Vec<SubdivisionStep>,
}

fn check_fs(x: &FanSpace) -> Result<()> {
    if x.kind() != StalkKind::Full {
        return Err(Error::Unsupported("resolution needs full stalks".into()));
    }
    for p in x.points() {
        let s = x.stalk(p);
        if !s.is_saturated() || !x.sharpened_stalk(p).group().is_torsion_free() {
            return Err(Error::NotFs(format!("stalk at p{p}")));
        }
    }
    Ok(())
}

fn gen_map(x: &FanSpace, a: usize, b: usize) -> GroupHom {
    if a == b {
        GroupHom::identity(x.stalk(a).group())
    } else {
        x.gen_group_map(a, b).clone()
    }
}

impl<'a> Complex<'a> {
    fn new(x: &'a FanSpace) -> Complex<'a> {
        let sharp: Vec<GroupHom> = x.points().map(|p| x.stalk(p).sharpen().1.group_map().clone()).collect();
        let mut rays = Vec::new();
        for p in x.points() {
            let s = x.sharpened_stalk(p);
            if s.rank() == 1 {
                let g = cone_generators(1, s.gens(), &[]);
                rays.push((p, g.rays[0].clone()));
            }
        }
        let mut cx = Complex { x, sharp, rays, charts: Vec::new(), steps: Vec::new() };
        for chart in x.charts() {
            let xc = chart.points[0];
            let rank = x.sharpened_stalk(xc).rank();
            let mut embed = BTreeMap::new();
            let mut unit_sets = Vec::new();
            let gens = x.stalk(xc).gens();
            for &y in x.up(xc) {
                let bar = induced_on_quotients(&gen_map(x, xc, y), &cx.sharp[xc], &cx.sharp[y]);
                embed.insert(y, bar.matrix().transpose());
                let m = gen_map(x, xc, y);
                let units = x.stalk(y).units();
                let set = (0..gens.len()).filter(|&i| units.contains(&m.apply(&gens[i]))).collect();
                unit_sets.push((y, set));
            }
            cx.charts.push(ChartCones { x: xc, rank, embed, unit_sets, cones: Vec::new() });
        }
        for c in 0..cx.charts.len() {
            let ids: Vec<usize> = (0..cx.rays.len()).filter(|&id| cx.ray_in(c, id).is_some()).collect();
            cx.charts[c].cones = vec![ids];
        }
        cx
    }

    fn ray_in(&self, c: usize, id: usize) -> Option<Vector> {
        let (p, v) = &self.rays[id];
        self.charts[c].embed.get(p).map(|m| m.mul_vec(v))
    }

    fn vectors(&self, c: usize, cone: &[usize]) -> Vec<Vector> {
        cone.iter().map(|&id| self.ray_in(c, id).expect("ray lies in its chart")).collect()
    }

    /// The generization of the chart's closed point whose cone has `u` in its relative interior.
    fn base_point(&self, c: usize, u: &[BigInt]) -> usize {
        let cc = &self.charts[c];
        let stalk = self.x.stalk(cc.x);
        let s = &self.sharp[cc.x];
        let vanishing: Vec<usize> =
            (0..stalk.gens().len()).filter(|&i| dot(&s.apply(&stalk.gens()[i]), u).is_zero()).collect();
        cc.unit_sets.iter().find(|(_, set)| *set == vanishing).map(|(y, _)| *y).expect("every cell is a point")
    }

    fn star(&mut self, id: usize) {
        for c in 0..self.charts.len() {
            let Some(v) = self.ray_in(c, id) else { continue };
            let rank = self.charts[c].rank;
            let mut out: Vec<Vec<usize>> = Vec::new();
            for cone in &self.charts[c].cones {
                let vecs = self.vectors(c, cone);
                let poly = PolyhedralCone::spanned_by(rank, &vecs);
                if !poly.contains(&v) {
                    out.push(cone.clone());
                    continue;
                }
                for f in &poly.facets {
                    if !dot(f, &v).is_positive() {
                        continue;
                    }
                    let mut next: Vec<usize> =
                        cone.iter().zip(&vecs).filter(|(_, w)| dot(f, w).is_zero()).map(|(&i, _)| i).collect();
                    next.push(id);
                    next.sort_unstable();
                    next.dedup();
                    out.push(next);
                }
            }
            out.sort();
            out.dedup();
            self.charts[c].cones = out;
        }
    }

    fn simplicialize(&mut self) -> Result<()> {
        let mut pulled = vec![false; self.rays.len()];
        loop {
            let target = self.charts.iter().find_map(|cc| {
                cc.cones.iter().find(|k| k.len() > cc.rank).map(|k| k.iter().copied().find(|&i| !pulled[i]))
            });
            let Some(found) = target else { return Ok(()) };
            let id = found.ok_or_else(|| Error::Inconclusive("pulling every ray left a non-simplicial cone".into()))?;
            self.bump()?;
            pulled[id] = true;
            let (point, ray) = self.rays[id].clone();
            self.steps.push(SubdivisionStep { kind: StepKind::Simplicial, point, ray });
            self.star(id);
        }
    }

    fn reduce_multiplicity(&mut self) -> Result<()> {
        loop {
            let mut found = None;
            'search: for c in 0..self.charts.len() {
                for cone in &self.charts[c].cones {
                    let vecs = self.vectors(c, cone);
                    let w = IntMatrix::from_cols(self.charts[c].rank, &vecs);
                    if w.rows() > 0 && w.determinant().abs() > BigInt::from(1) {
                        found = Some((c, w));
                        break 'search;
                    }
                }
            }
            let Some((c, w)) = found else { return Ok(()) };
            self.bump()?;
            let u = lowest_interior_point(&w);
            let y = self.base_point(c, &u);
            let lift = solve(&self.charts[c].embed[&y], &u).expect("cells are saturated sublattices");
            self.steps.push(SubdivisionStep { kind: StepKind::Multiplicity, point: y, ray: lift.clone() });
            self.rays.push((y, lift));
            self.star(self.rays.len() - 1);
        }
    }

    fn bump(&self) -> Result<()> {
        if self.steps.len() >= STEP_CAP {
            return Err(Error::Inconclusive(format!("no smooth subdivision within {STEP_CAP} steps")));
        }
        Ok(())
    }

    /// `{m ∈ M_x^gp : ⟨m̄, w⟩ ≥ 0 for the rays w}` inside the stalk group at the chart point.
    fn dual_monoid(&self, c: usize, cone: &[usize]) -> EmbeddedMonoid {
        let cc = &self.charts[c];
        let bar = self.x.sharpened_stalk(cc.x).group().clone();
        let hb = hilbert_basis(cc.rank, &self.vectors(c, cone), &[]);
        let mut gens = hb.elements.clone();
        for l in &hb.lineality {
            gens.push(l.clone());
            gens.push(crate::lattice::matrix::neg(l));
        }
        let d = EmbeddedMonoid::new(bar, &gens).expect("dual lattice points");
        let pulled = preimage_monoid(&self.sharp[cc.x], &d);
        EmbeddedMonoid::with_embedding(self.x.stalk(cc.x).embedding().clone(), pulled.gens().to_vec())
    }
}

/// The nonzero point of the fundamental parallelepiped with least barycentric sum, ties broken
/// lexicographically in the barycentric coordinates.
fn lowest_interior_point(w: &IntMatrix) -> Vector {
    let det = w.determinant();
    let n = w.cols();
    let bary = |u: &Vector| -> Vec<BigInt> {
        (0..n)
            .map(|i| {
                let mut m = w.clone();
                for (r, x) in u.iter().enumerate().take(w.rows()) {
                    m.set(r, i, x.clone());
                }
                let v = m.determinant();
                if det.is_negative() {
                    -v
                } else {
                    v
                }
            })
            .collect()
    };
    parallelepiped_points(w)
        .into_iter()
        .filter(|u| !is_zero(u))
        .map(|u| {
            let b = bary(&u);
            let s: BigInt = b.iter().sum();
            (s, b, u)
        })
        .min()
        .map(|(_, _, u)| u)
        .expect("singular cones have interior parallelepiped points")
}

/// Subdivides the cone complex of an fs fan into smooth cones and returns the certified map
/// from the resulting free fan.
pub fn resolve_fan(x: &FanSpace) -> Result<ResolutionCertificate> {
    check_fs(x)?;
    let mut cx = Complex::new(x);
    cx.simplicialize()?;
    cx.reduce_multiplicity()?;

    let mut keys: Vec<Vec<usize>> = Vec::new();
    let mut bases: Vec<usize> = Vec::new();
    let mut stalks: Vec<EmbeddedMonoid> = Vec::new();
    let mut charts = Vec::new();
    for c in 0..cx.charts.len() {
        let xc = cx.charts[c].x;
        for cone in cx.charts[c].cones.clone() {
            let monoid = cx.dual_monoid(c, &cone);
            let vecs = cx.vectors(c, &cone);
            let s = &cx.sharp[xc];
            let mut points = Vec::new();
            let mut transitions = Vec::new();
            for face in monoid.faces() {
                let face_gens: Vec<Vector> =
                    face.indices().iter().map(|&i| s.apply(&monoid.gens()[i])).collect();
                let sub: Vec<usize> = cone
                    .iter()
                    .zip(&vecs)
                    .filter(|(_, w)| face_gens.iter().all(|g| dot(g, w).is_zero()))
                    .map(|(&i, _)| i)
                    .collect();
                let id = match keys.iter().position(|k| *k == sub) {
                    Some(id) => id,
                    None => {
                        let centre = sub.iter().fold(vec![BigInt::zero(); cx.charts[c].rank], |acc, &i| {
                            add(&acc, &cx.ray_in(c, i).expect("ray lies in its chart"))
                        });
                        let y = cx.base_point(c, &centre);
                        let local = cx.dual_monoid(c, &sub);
                        let m = gen_map(x, xc, y);
                        let imgs: Vec<Vector> = local.gens().iter().map(|g| m.apply(g)).collect();
                        stalks.push(EmbeddedMonoid::with_embedding(x.stalk(y).embedding().clone(), imgs));
                        keys.push(sub);
                        bases.push(y);
                        keys.len() - 1
                    }
                };
                points.push(id);
                transitions.push(gen_map(x, xc, bases[id]));
            }
            charts.push(Chart { monoid, points, transitions });
        }
    }
    let output = FanSpace::assemble_numbered(StalkKind::Full, stalks, charts)?;
    let stalk_maps = output
        .points()
        .map(|q| {
            let y = bases[q];
            MonoidHom::new(x.stalk(y).clone(), output.stalk(q).clone(), GroupHom::identity(x.stalk(y).group()))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = FanMap::new(output.clone(), x.clone(), bases, stalk_maps)?;
    let free_locus_check =
        free_locus(x).into_iter().filter_map(|y| single(&map.fiber(y)).map(|q| (y, q))).collect();
    Ok(ResolutionCertificate { input: x.clone(), output, map, steps: cx.steps, free_locus_check })
}

fn single(v: &[usize]) -> Option<usize> {
    (v.len() == 1).then(|| v[0])
}

/// Re-checks freeness of the output, the isomorphism over the free locus, and that every
/// stalk map induces an isomorphism of groups.
pub fn verify_certificate(c: &ResolutionCertificate) -> bool {
    let map = &c.map;
    if map.source().point_count() != c.output.point_count() || map.target().point_count() != c.input.point_count() {
        return false;
    }
    let output_free = c.output.points().all(|q| c.output.sharpened_stalk(q).is_free())
        && map.source().points().all(|q| map.source().sharpened_stalk(q).is_free());
    let free = free_locus(&c.input);
    let over_free = free.iter().all(|&y| {
        let fiber = map.fiber(y);
        fiber.len() == 1
            && map.stalk_map(fiber[0]).is_iso()
            && c.free_locus_check.contains(&(y, fiber[0]))
            && c.input.up(y).iter().all(|&z| map.fiber(z).len() == 1)
    });
    output_free && over_free && c.free_locus_check.len() == free.len() && map.is_group_isomorphism()
}
