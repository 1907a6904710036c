//! Graded monoids, `Proj`, Rees monoids and blowups of monoids and fans along ideals.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::fanspace::{glue, spec, Chart, FanMap, FanSpace, Gluing, StalkKind};
use crate::lattice::{AbelianGroup, GroupHom, IntMatrix, Subgroup, Vector};
use crate::monoid::{EmbeddedMonoid, Face, MonoidHom, MonoidIdeal};
use crate::{Error, Result};

/// An ℕ-graded fine monoid generated over its degree-zero part by degree-one elements.
#[derive(Clone, Debug)]
pub struct GradedMonoid {
    monoid: EmbeddedMonoid,
    degree: GroupHom,
}

impl GradedMonoid {
    /// `degree` maps `P^gp → ℤ`; every generator must have degree 0 or 1.
    pub fn new(monoid: EmbeddedMonoid, degree: GroupHom) -> Result<Self> {
        if degree.domain() != monoid.group() || degree.codomain() != &AbelianGroup::free(1) {
            return Err(Error::Dimension("degree must map the groupification to ℤ".into()));
        }
        for g in monoid.gens() {
            let d = &degree.apply(g)[0];
            if !(d.is_zero() || d.is_one()) {
                return Err(Error::Unsupported("graded monoid must be generated in degrees 0 and 1".into()));
            }
        }
        Ok(GradedMonoid { monoid, degree })
    }

    /// `ℕⁿ` graded by the coordinate sum.
    pub fn standard(n: usize) -> Self {
        let monoid = EmbeddedMonoid::free(n);
        let degree = GroupHom::new(monoid.group().clone(), AbelianGroup::free(1), IntMatrix::from_i64(1, n, &vec![1; n]))
            .expect("sum map");
        Self::new(monoid, degree).expect("standard generators have degree one")
    }

    pub fn monoid(&self) -> &EmbeddedMonoid {
        &self.monoid
    }

    pub fn degree(&self) -> &GroupHom {
        &self.degree
    }

    pub fn degree_of(&self, x: &[BigInt]) -> BigInt {
        self.degree.apply(x)[0].clone()
    }

    /// Generators of degree one, in generator order.
    pub fn degree_one(&self) -> Vec<Vector> {
        self.monoid.gens().iter().filter(|g| self.degree_of(g).is_one()).cloned().collect()
    }

    pub fn degree_zero(&self) -> Vec<Vector> {
        self.monoid.gens().iter().filter(|g| self.degree_of(g).is_zero()).cloned().collect()
    }
}

/// The Rees monoid `P ∐ I ∐ I² ∐ ⋯` inside `P^gp ⊕ ℤ`.
pub fn rees(p: &EmbeddedMonoid, i: &MonoidIdeal) -> GradedMonoid {
    assert!(i.parent().same_monoid(p), "ideal must belong to the monoid");
    let ds = p.group().direct_sum(&AbelianGroup::free(1));
    let (d0, d1) = (vec![BigInt::zero()], vec![BigInt::one()]);
    let mut gens: Vec<Vector> = p.gens().iter().map(|g| ds.pair(g, &d0)).collect();
    gens.extend(i.gens().iter().map(|a| ds.pair(a, &d1)));
    let monoid = EmbeddedMonoid::new(ds.group.clone(), &gens).expect("pairs live in the sum");
    let degree = monoid.ambient_inclusion().then(&ds.proj_right);
    GradedMonoid::new(monoid, degree).expect("Rees generators have degree 0 or 1")
}

/// Charts `R_(a)` generated by `zero ∪ {b − a}` inside a common group, glued along the
/// localizations at `b − a`.
fn centered_charts(
    embedding: &Arc<Subgroup>,
    zero: &[Vector],
    ones: usize,
    diff: impl Fn(usize, usize) -> Vector,
) -> Result<(Vec<EmbeddedMonoid>, FanSpace)> {
    let charts: Vec<EmbeddedMonoid> = (0..ones)
        .map(|a| {
            let mut gens = zero.to_vec();
            gens.extend((0..ones).filter(|&b| b != a).map(|b| diff(b, a)));
            EmbeddedMonoid::with_embedding(embedding.clone(), gens).reduced()
        })
        .collect();
    let id = GroupHom::identity(embedding.group());
    let mut gluings = Vec::new();
    for a in 0..ones {
        for b in a + 1..ones {
            let d = diff(b, a);
            gluings.push(Gluing {
                i: a,
                j: b,
                face_i: charts[a].smallest_face_containing(std::slice::from_ref(&d)),
                face_j: charts[b].smallest_face_containing(&[embedding.group().neg(&d)]),
                iso: id.clone(),
            });
        }
    }
    let space = glue(&charts, &gluings)?;
    Ok((charts, space))
}

/// `Proj R`, covered by the charts `Spec R_(i)` for degree-one generators `i`.
///
/// Chart groups are the degree-zero part of `R^gp`, described inside the ambient group of `R`.
pub fn proj(r: &GradedMonoid) -> Result<FanSpace> {
    let m = r.monoid();
    let g = m.group();
    let ones = r.degree_one();
    let zero = r.degree_zero();
    let mut diffs: Vec<Vector> = zero.iter().map(|z| m.to_ambient(z)).collect();
    for a in &ones {
        for b in &ones {
            diffs.push(m.to_ambient(&g.sub(b, a)));
        }
    }
    if ones.is_empty() {
        return FanSpace::assemble(StalkKind::Full, Vec::new(), Vec::new());
    }
    let k = Arc::new(Subgroup::generated(m.ambient(), &diffs));
    let to_k = |x: &Vector| k.pull_back(&m.to_ambient(x)).expect("degree-zero element");
    let zero_k: Vec<Vector> = zero.iter().map(to_k).collect();
    let (_, space) = centered_charts(&k, &zero_k, ones.len(), |b, a| to_k(&g.sub(&ones[b], &ones[a])))?;
    Ok(space)
}

/// `ℙⁿ = Proj ℕⁿ⁺¹`.
pub fn projective_space(n: usize) -> FanSpace {
    proj(&GradedMonoid::standard(n + 1)).expect("standard grading")
}

/// Blowup of `Spec P` along `I`, as the map `Bl_I P → Spec P`.
pub fn blowup(p: &EmbeddedMonoid, i: &MonoidIdeal) -> Result<FanMap> {
    blowup_fan(&spec(p), std::slice::from_ref(i))
}

/// The blowup charts `R_(a) ⊆ P^gp` for the generators `a` of `I`, with their gluing.
pub fn blowup_charts(p: &EmbeddedMonoid, i: &MonoidIdeal) -> Result<(Vec<EmbeddedMonoid>, FanSpace)> {
    let g = p.group();
    let centers = i.gens().to_vec();
    centered_charts(p.embedding(), p.gens(), centers.len(), |b, a| g.sub(&centers[b], &centers[a]))
}

/// One ideal per chart of `x`, checked to agree after localization at every shared point.
pub fn check_ideal_sheaf(x: &FanSpace, ideals: &[MonoidIdeal]) -> Result<()> {
    if x.kind() != StalkKind::Full {
        return Err(Error::Unsupported("ideal sheaves need full stalks".into()));
    }
    if ideals.len() != x.charts().len() {
        return Err(Error::IncompatibleIdeals("need one ideal per chart".into()));
    }
    let mut seen: Vec<Option<MonoidIdeal>> = vec![None; x.point_count()];
    for (chart, ideal) in x.charts().iter().zip(ideals) {
        if !ideal.parent().same_monoid(&chart.monoid) {
            return Err(Error::IncompatibleIdeals("ideal does not live on its chart".into()));
        }
        for (f, &pt) in chart.points.iter().enumerate() {
            let t = &chart.transitions[f];
            let imgs: Vec<Vector> = ideal.gens().iter().map(|v| t.apply(v)).collect();
            let local = MonoidIdeal::new(x.stalk(pt), &imgs)?;
            match &seen[pt] {
                None => seen[pt] = Some(local),
                Some(old) if !old.same_ideal(&local) => {
                    return Err(Error::IncompatibleIdeals(format!("charts disagree at p{pt}")))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// The ideal sheaf cutting out the closed points: the maximal ideal on charts whose closed
/// point is closed in `x`, the unit ideal elsewhere.
pub fn closed_point_ideals(x: &FanSpace) -> Vec<MonoidIdeal> {
    let closed = x.closed_points();
    x.charts()
        .iter()
        .map(|c| {
            if closed.contains(&c.points[0]) {
                MonoidIdeal::maximal(&c.monoid)
            } else {
                MonoidIdeal::unit(&c.monoid)
            }
        })
        .collect()
}

/// Glues the chart-wise blowups of `x` and returns the map down to `x`.
pub fn blowup_fan(x: &FanSpace, ideals: &[MonoidIdeal]) -> Result<FanMap> {
    check_ideal_sheaf(x, ideals)?;
    // Global points: (base point, stalk transported into the base stalk group).
    let mut keys: Vec<(usize, EmbeddedMonoid)> = Vec::new();
    // Designated stalk of each global point, with the chart of `x` it lives over.
    let mut stalks: Vec<EmbeddedMonoid> = Vec::new();
    let mut homes: Vec<usize> = Vec::new();
    let mut charts: Vec<Chart> = Vec::new();
    let mut pending: Vec<(usize, Vec<usize>, EmbeddedMonoid)> = Vec::new();

    for (c, (chart, ideal)) in x.charts().iter().zip(ideals).enumerate() {
        let p = &chart.monoid;
        let (local_charts, local) = blowup_charts(p, ideal)?;
        let mut global_of_local = vec![usize::MAX; local.point_count()];
        for q in local.points() {
            let (lc, lf) = first_occurrence(&local, q);
            let lchart = &local.charts()[lc];
            let (stalk_p, _) = lchart.monoid.localize(&lchart.monoid.faces()[lf])?;
            let base_face = pulled_back_face(p, &stalk_p);
            let fpos = p.face_position(&base_face).ok_or(Error::NotAFace)?;
            let bx = chart.points[fpos];
            let t = &chart.transitions[fpos];
            let imgs: Vec<Vector> = stalk_p.gens().iter().map(|v| t.apply(v)).collect();
            let transported = EmbeddedMonoid::new(x.stalk(bx).group().clone(), &imgs)?;
            let id = match keys.iter().position(|(b, s)| *b == bx && s.same_monoid(&transported)) {
                Some(id) => id,
                None => {
                    keys.push((bx, transported));
                    stalks.push(stalk_p.clone());
                    homes.push(c);
                    keys.len() - 1
                }
            };
            global_of_local[q] = id;
        }
        for (lc, m) in local_charts.iter().enumerate() {
            let pts = local.charts()[lc].points.iter().map(|&q| global_of_local[q]).collect();
            pending.push((c, pts, m.clone()));
        }
    }

    let base_transition = |c: usize, bx: usize| -> GroupHom {
        let chart = &x.charts()[c];
        let f = chart.points.iter().position(|&y| y == bx).expect("point lies in its chart");
        chart.transitions[f].clone()
    };
    for (c, points, monoid) in pending {
        let transitions = points
            .iter()
            .map(|&id| {
                let bx = keys[id].0;
                let home = homes[id];
                let back = base_transition(home, bx).inverse().expect("full stalks have iso transitions");
                base_transition(c, bx).then(&back)
            })
            .collect();
        charts.push(Chart { monoid, points, transitions });
    }
    let source = FanSpace::assemble_numbered(StalkKind::Full, stalks, charts)?;
    let mut point_map = Vec::with_capacity(source.point_count());
    let mut stalk_maps = Vec::with_capacity(source.point_count());
    for q in source.points() {
        let bx = keys[q].0;
        let down = base_transition(homes[q], bx).inverse().expect("full stalks have iso transitions");
        point_map.push(bx);
        stalk_maps.push(MonoidHom::new(x.stalk(bx).clone(), source.stalk(q).clone(), down)?);
    }
    FanMap::new(source, x.clone(), point_map, stalk_maps)
}

fn first_occurrence(x: &FanSpace, q: usize) -> (usize, usize) {
    for (c, chart) in x.charts().iter().enumerate() {
        if let Some(f) = chart.points.iter().position(|&y| y == q) {
            return (c, f);
        }
    }
    unreachable!("every point lies in a chart")
}

/// The face of `p` consisting of generators that become units in `stalk`, a monoid in `P^gp`.
fn pulled_back_face(p: &EmbeddedMonoid, stalk: &EmbeddedMonoid) -> Face {
    let g = p.group();
    let units = (0..p.gens().len())
        .filter(|&i| {
            let v = &p.gens()[i];
            stalk.contains(v) && stalk.contains(&g.neg(v))
        })
        .collect();
    Face::new(units)
}

/// One step of an ideal sequence, interpreted on the current stage.
#[derive(Clone, Debug)]
pub enum IdealStep {
    Unit,
    /// The reduced closed points.
    ClosedPoints,
    /// Explicit chart ideals on the current stage.
    Charts(Vec<MonoidIdeal>),
}

/// Successive blowups, each along an ideal sheaf on the previous stage.
#[derive(Clone, Debug, Default)]
pub struct IdealSequence {
    pub steps: Vec<IdealStep>,
}

/// Every stage map together with the composite down to the base.
#[derive(Clone, Debug)]
pub struct BlowupSequence {
    pub stages: Vec<FanMap>,
    pub composite: FanMap,
}

pub fn blowup_sequence(x: &FanSpace, seq: &IdealSequence) -> Result<BlowupSequence> {
    let mut composite = FanMap::identity(x);
    let mut stages = Vec::new();
    for step in &seq.steps {
        let current = composite.source().clone();
        let ideals = match step {
            IdealStep::Unit => current.charts().iter().map(|c| MonoidIdeal::unit(&c.monoid)).collect(),
            IdealStep::ClosedPoints => closed_point_ideals(&current),
            IdealStep::Charts(v) => v.clone(),
        };
        let stage = blowup_fan(&current, &ideals)?;
        composite = stage.then(&composite)?;
        stages.push(stage);
    }
    Ok(BlowupSequence { stages, composite })
}
