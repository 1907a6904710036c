//! Finite monoidal spaces: spectra of fine monoids, fans glued from them, and their maps.

mod build;
mod map;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::lattice::{direct_sum_all, GroupHom, Subgroup, Vector};
use crate::monoid::{preimage_monoid, EmbeddedMonoid, MonoidHom};
use crate::{Error, Result};

pub use build::{
    fibered_product, from_classical, glue, pairing, product, product_with_projections, proj_space, sharpen_fan,
    spec, spec_map, ClassicalFan, FiberedProduct, Gluing, Product,
};
pub use map::{isomorphic_over, FanMap};

/// Whether stalks are the full monoids `F⁻¹P` or their sharpenings `P/F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StalkKind {
    Full,
    Sharp,
}

/// An open affine piece: `Spec` of `monoid` embedded in the space.
///
/// `points[f]` is the point for the `f`-th face of `monoid`, and `transitions[f]` maps the
/// chart group onto the group of that point's stalk.
#[derive(Clone, Debug)]
pub struct Chart {
    pub monoid: EmbeddedMonoid,
    pub points: Vec<usize>,
    pub transitions: Vec<GroupHom>,
}

/// A finite monoidal space locally isomorphic to spectra of fine monoids.
///
/// Points are numbered canonically by their first occurrence (chart, face). The smallest open
/// neighbourhood `U_x` of a point is the set of its generizations.
#[derive(Clone, Debug)]
pub struct FanSpace {
    kind: StalkKind,
    stalks: Vec<EmbeddedMonoid>,
    up: Vec<Vec<usize>>,
    gen_maps: Vec<BTreeMap<usize, GroupHom>>,
    charts: Vec<Chart>,
}

impl FanSpace {
    /// Builds a space from stalks and charts, checking that the charts are compatible open
    /// embeddings and deriving the order and generization maps from them.
    pub fn assemble(kind: StalkKind, stalks: Vec<EmbeddedMonoid>, charts: Vec<Chart>) -> Result<FanSpace> {
        Self::build(kind, stalks, charts, true)
    }

    /// Like [`FanSpace::assemble`] but keeps the given point numbering.
    pub(crate) fn assemble_numbered(kind: StalkKind, stalks: Vec<EmbeddedMonoid>, charts: Vec<Chart>) -> Result<FanSpace> {
        Self::build(kind, stalks, charts, false)
    }

    fn build(kind: StalkKind, stalks: Vec<EmbeddedMonoid>, charts: Vec<Chart>, renumber: bool) -> Result<FanSpace> {
        let n = stalks.len();
        let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (c, chart) in charts.iter().enumerate() {
            let faces = chart.monoid.faces();
            if chart.points.len() != faces.len() || chart.transitions.len() != faces.len() {
                return Err(Error::InvalidGluing(format!("chart {c} does not list one point per face")));
            }
            let distinct: BTreeSet<usize> = chart.points.iter().copied().collect();
            if distinct.len() != faces.len() {
                return Err(Error::InvalidGluing(format!("chart {c} is not embedded")));
            }
            for (f, &x) in chart.points.iter().enumerate() {
                if x >= n {
                    return Err(Error::Invalid(format!("chart {c} refers to a missing point")));
                }
                occurrences[x].push((c, f));
                check_transition(kind, chart, f, &stalks[x])?;
            }
        }
        if let Some(x) = occurrences.iter().position(Vec::is_empty) {
            return Err(Error::Invalid(format!("point {x} is not covered by a chart")));
        }

        let mut up: Vec<Vec<usize>> = Vec::with_capacity(n);
        for occ in &occurrences {
            let mut found: Option<Vec<usize>> = None;
            for &(c, f) in occ {
                let set = chart_up(&charts[c], f);
                match &found {
                    None => found = Some(set),
                    Some(s) if *s != set => {
                        return Err(Error::Cocycle("generization order depends on the chart".into()))
                    }
                    _ => {}
                }
            }
            up.push(found.expect("covered"));
        }

        let mut gen_maps: Vec<BTreeMap<usize, GroupHom>> = vec![BTreeMap::new(); n];
        for x in 0..n {
            for &(c, f) in &occurrences[x] {
                let chart = &charts[c];
                for (g, &y) in chart.points.iter().enumerate() {
                    if !up[x].contains(&y) {
                        continue;
                    }
                    let m = chart.transitions[f]
                        .factor(&chart.transitions[g])
                        .ok_or_else(|| Error::InvalidGluing("transition maps do not factor".into()))?;
                    match gen_maps[x].get(&y) {
                        None => {
                            gen_maps[x].insert(y, m);
                        }
                        Some(old) if !old.same_as(&m) => {
                            return Err(Error::Cocycle(format!("charts disagree on the generization map p{x} -> p{y}")))
                        }
                        _ => {}
                    }
                }
            }
        }

        // Canonical numbering by first occurrence.
        let mut order: Vec<usize> = (0..n).collect();
        if renumber {
            order.sort_by_key(|&x| occurrences[x][0]);
        }
        let mut rank = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let stalks = order.iter().map(|&x| stalks[x].clone()).collect();
        let up = order
            .iter()
            .map(|&x| {
                let mut v: Vec<usize> = up[x].iter().map(|&y| rank[y]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let gen_maps = order
            .iter()
            .map(|&x| gen_maps[x].iter().map(|(&y, m)| (rank[y], m.clone())).collect())
            .collect();
        let charts = charts
            .into_iter()
            .map(|c| Chart { points: c.points.iter().map(|&x| rank[x]).collect(), ..c })
            .collect();
        Ok(FanSpace { kind, stalks, up, gen_maps, charts })
    }

    /// Builds a space from per-point data, using the closed points as charts and keeping the
    /// given numbering.
    ///
    /// `gen_map(x, y)` must give the generization map for every `y` in `up[x]`.
    pub fn from_point_data(
        kind: StalkKind,
        stalks: Vec<EmbeddedMonoid>,
        up: Vec<Vec<usize>>,
        mut gen_map: impl FnMut(usize, usize) -> GroupHom,
    ) -> Result<FanSpace> {
        let n = stalks.len();
        let closed: Vec<usize> = (0..n).filter(|&x| (0..n).all(|z| z == x || !up[z].contains(&x))).collect();
        let mut charts = Vec::new();
        for &x in &closed {
            let monoid = stalks[x].clone();
            let faces = monoid.faces();
            let mut points = vec![usize::MAX; faces.len()];
            let mut transitions = vec![None; faces.len()];
            for &y in &up[x] {
                let m = gen_map(x, y);
                let target = &stalks[y];
                let units: Vec<usize> = (0..monoid.gens().len())
                    .filter(|&i| {
                        let img = m.apply(&monoid.gens()[i]);
                        target.contains(&img) && target.contains(&target.group().neg(&img))
                    })
                    .collect();
                let face = crate::monoid::Face::new(units);
                let pos = monoid
                    .face_position(&face)
                    .ok_or_else(|| Error::InvalidGluing(format!("p{x} -> p{y} does not localize at a face")))?;
                if points[pos] != usize::MAX {
                    return Err(Error::InvalidGluing(format!("two generizations of p{x} share a face")));
                }
                points[pos] = y;
                transitions[pos] = Some(m);
            }
            if points.contains(&usize::MAX) {
                return Err(Error::InvalidGluing(format!("some face of the stalk at p{x} has no point")));
            }
            charts.push(Chart { monoid, points, transitions: transitions.into_iter().map(Option::unwrap).collect() });
        }
        FanSpace::build(kind, stalks, charts, false)
    }

    pub fn kind(&self) -> StalkKind {
        self.kind
    }

    pub fn point_count(&self) -> usize {
        self.stalks.len()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.stalks.len()
    }

    pub fn stalk(&self, x: usize) -> &EmbeddedMonoid {
        &self.stalks[x]
    }

    pub fn stalks(&self) -> &[EmbeddedMonoid] {
        &self.stalks
    }

    /// `M̄_x`.
    pub fn sharpened_stalk(&self, x: usize) -> EmbeddedMonoid {
        self.stalks[x].sharpen().0
    }

    /// The generizations of `x`, i.e. its smallest open neighbourhood `U_x`, sorted.
    pub fn up(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Points specializing to `x` (the closure of `{x}`).
    pub fn closure(&self, x: usize) -> Vec<usize> {
        self.points().filter(|&z| self.up[z].contains(&x)).collect()
    }

    /// Whether `y` is a generization of `x`.
    pub fn generizes(&self, x: usize, y: usize) -> bool {
        self.up[x].binary_search(&y).is_ok()
    }

    /// The map of stalks `M_x → M_y` for a generization `y` of `x`.
    pub fn generization_map(&self, x: usize, y: usize) -> Option<MonoidHom> {
        let m = self.gen_maps[x].get(&y)?;
        Some(MonoidHom::new(self.stalks[x].clone(), self.stalks[y].clone(), m.clone()).expect("stalk maps are valid"))
    }

    pub(crate) fn gen_group_map(&self, x: usize, y: usize) -> &GroupHom {
        &self.gen_maps[x][&y]
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    /// Points that are not generizations of any other point.
    pub fn closed_points(&self) -> Vec<usize> {
        self.points().filter(|&x| self.closure(x).len() == 1).collect()
    }

    /// Points with no proper generization.
    pub fn generic_points(&self) -> Vec<usize> {
        self.points().filter(|&x| self.up[x].len() == 1).collect()
    }

    /// Covering pairs `(x, y)` of the generization order, `y` a generization of `x`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.points() {
            for &y in &self.up[x] {
                if y == x {
                    continue;
                }
                let between = self.up[x].iter().any(|&z| z != x && z != y && self.generizes(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Irreducible count of the sharpened stalk.
    pub fn stalk_rank(&self, x: usize) -> usize {
        self.sharpened_stalk(x).irreducibles().map(|v| v.len()).unwrap_or(0)
    }

    /// Global sections `Γ(X, M_X)`: compatible families of chart sections.
    pub fn global_sections(&self) -> EmbeddedMonoid {
        // Sections over a chart are the stalk at its closed point, the chart's unit face.
        let chart_points: Vec<usize> = self.charts.iter().map(|c| c.points[0]).collect();
        let groups: Vec<_> = chart_points.iter().map(|&x| self.stalks[x].group().clone()).collect();
        let (sum, inj, proj) = direct_sum_all(&groups);
        let mut gens: Vec<Vector> = Vec::new();
        for (c, &x) in chart_points.iter().enumerate() {
            gens.extend(self.stalks[x].gens().iter().map(|g| inj[c].apply(g)));
        }
        let product = EmbeddedMonoid::new(sum.clone(), &gens).expect("generators live in the sum");
        let mut constraints: Vec<GroupHom> = Vec::new();
        for (c, &xc) in chart_points.iter().enumerate() {
            for (d, &xd) in chart_points.iter().enumerate().skip(c + 1) {
                for &y in &self.up[xc] {
                    if !self.generizes(xd, y) {
                        continue;
                    }
                    let a = proj[c].then(self.gen_group_map(xc, y));
                    let b = proj[d].then(self.gen_group_map(xd, y));
                    constraints.push(a.add(&b.negate()));
                }
            }
        }
        let targets: Vec<_> = constraints.iter().map(|m| m.codomain().clone()).collect();
        let (tsum, tinj, _) = direct_sum_all(&targets);
        let mut total = GroupHom::zero(&sum, &tsum);
        for (m, i) in constraints.iter().zip(&tinj) {
            total = total.add(&m.then(i));
        }
        debug_assert_eq!(product.group(), &sum);
        preimage_monoid(total.kernel().inclusion(), &product)
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &FanSpace) -> Result<FanSpace> {
        if self.kind != other.kind {
            return Err(Error::Invalid("cannot combine full and sharpened spaces".into()));
        }
        let shift = self.point_count();
        let mut stalks = self.stalks.clone();
        stalks.extend(other.stalks.iter().cloned());
        let mut charts = self.charts.clone();
        charts.extend(
            other.charts.iter().map(|c| Chart { points: c.points.iter().map(|&x| x + shift).collect(), ..c.clone() }),
        );
        FanSpace::assemble(self.kind, stalks, charts)
    }

    /// The generization poset in DOT syntax; nodes carry the irreducible count of `M̄_x`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        for x in self.points() {
            let _ = writeln!(out, "  p{x} [label=\"p{x} ({})\"];", self.stalk_rank(x));
        }
        for (x, y) in self.hasse_edges() {
            let _ = writeln!(out, "  p{x} -> p{y};");
        }
        out.push_str("}\n");
        out
    }
}

/// `U_x` of the point at face `f`, read off inside one chart.
fn chart_up(chart: &Chart, f: usize) -> Vec<usize> {
    let faces = chart.monoid.faces();
    let mut v: Vec<usize> = faces
        .iter()
        .enumerate()
        .filter(|(_, g)| faces[f].is_subface_of(g))
        .map(|(g, _)| chart.points[g])
        .collect();
    v.sort_unstable();
    v
}

/// The stalk at face `f` must be the transported localization (or quotient) of the chart.
fn check_transition(kind: StalkKind, chart: &Chart, f: usize, stalk: &EmbeddedMonoid) -> Result<()> {
    let t = &chart.transitions[f];
    let face = &chart.monoid.faces()[f];
    if t.domain() != chart.monoid.group() || t.codomain() != stalk.group() {
        return Err(Error::InvalidGluing("transition has the wrong groups".into()));
    }
    let local = match kind {
        StalkKind::Full => chart.monoid.localize(face)?.0,
        StalkKind::Sharp => chart.monoid.clone(),
    };
    let profile = t.profile();
    let fits = match kind {
        StalkKind::Full => profile.is_iso(),
        StalkKind::Sharp => {
            let killed: Vec<Vector> = face.indices().iter().map(|&i| chart.monoid.gens()[i].clone()).collect();
            let span = Subgroup::generated(chart.monoid.group(), &killed);
            let ker = t.kernel();
            profile.surjective
                && killed.iter().all(|g| stalk.group().is_zero(&t.apply(g)))
                && (0..ker.group().dim()).all(|j| span.contains(&ker.inclusion().apply(&ker.group().generator(j))))
        }
    };
    if !fits {
        return Err(Error::InvalidGluing("transition is not an isomorphism onto the stalk".into()));
    }
    let imgs: Vec<Vector> = local.gens().iter().map(|g| t.apply(g)).collect();
    let image = EmbeddedMonoid::new(stalk.group().clone(), &imgs)?;
    let same = imgs.iter().all(|g| stalk.contains(g)) && stalk.gens().iter().all(|g| image.contains_ambient(g));
    if !same {
        return Err(Error::InvalidGluing("chart does not match the stalk".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
