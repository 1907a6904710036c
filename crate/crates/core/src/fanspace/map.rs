//! Morphisms of finite monoidal spaces.

use super::FanSpace;
use crate::lattice::GroupHom;
use crate::monoid::MonoidHom;
use crate::{Error, Result};

/// A continuous map of points with local stalk maps `M_{Y,f(x)} → M_{X,x}`.
#[derive(Clone, Debug)]
pub struct FanMap {
    source: FanSpace,
    target: FanSpace,
    point_map: Vec<usize>,
    stalk_maps: Vec<MonoidHom>,
}

impl FanMap {
    /// Checks continuity, locality, and compatibility with generization maps.
    pub fn new(source: FanSpace, target: FanSpace, point_map: Vec<usize>, stalk_maps: Vec<MonoidHom>) -> Result<Self> {
        let n = source.point_count();
        if point_map.len() != n || stalk_maps.len() != n {
            return Err(Error::Dimension("fan map needs one image and one stalk map per point".into()));
        }
        if point_map.iter().any(|&y| y >= target.point_count()) {
            return Err(Error::Invalid("point image out of range".into()));
        }
        for x in source.points() {
            let fx = point_map[x];
            let h = &stalk_maps[x];
            if !h.domain().same_monoid(target.stalk(fx)) || !h.codomain().same_monoid(source.stalk(x)) {
                return Err(Error::Invalid(format!("stalk map at p{x} has the wrong ends")));
            }
            if !h.is_local() {
                return Err(Error::Invalid(format!("stalk map at p{x} is not local")));
            }
            for &y in source.up(x) {
                let fy = point_map[y];
                if !target.generizes(fx, fy) {
                    return Err(Error::Invalid(format!("point map is not continuous at p{x}")));
                }
                let a = target.gen_group_map(fx, fy).then(stalk_maps[y].group_map());
                let b = h.group_map().then(source.gen_group_map(x, y));
                if !a.same_as(&b) {
                    return Err(Error::Invalid(format!("stalk maps at p{x}, p{y} do not commute")));
                }
            }
        }
        Ok(FanMap { source, target, point_map, stalk_maps })
    }

    pub fn identity(x: &FanSpace) -> FanMap {
        let stalk_maps = x.points().map(|p| MonoidHom::identity(x.stalk(p))).collect();
        FanMap { source: x.clone(), target: x.clone(), point_map: x.points().collect(), stalk_maps }
    }

    pub fn source(&self) -> &FanSpace {
        &self.source
    }

    pub fn target(&self) -> &FanSpace {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn image(&self, x: usize) -> usize {
        self.point_map[x]
    }

    pub fn stalk_map(&self, x: usize) -> &MonoidHom {
        &self.stalk_maps[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FanMap) -> Result<FanMap> {
        if self.target.point_count() != other.source.point_count() {
            return Err(Error::Invalid("composition of incompatible fan maps".into()));
        }
        let point_map: Vec<usize> = self.point_map.iter().map(|&y| other.point_map[y]).collect();
        let stalk_maps =
            self.source.points().map(|x| other.stalk_maps[self.point_map[x]].then(&self.stalk_maps[x])).collect();
        Ok(FanMap { source: self.source.clone(), target: other.target.clone(), point_map, stalk_maps })
    }

    /// Every stalk map `M_{Y,f(x)} → M_{X,x}` is an isomorphism.
    pub fn is_strict(&self) -> bool {
        self.stalk_maps.iter().all(MonoidHom::is_iso)
    }

    /// Every sharpened stalk map is an isomorphism.
    pub fn is_sharp_strict(&self) -> bool {
        self.stalk_maps.iter().all(MonoidHom::is_sharp_iso)
    }

    /// Each `U_x` maps isomorphically onto `U_{f(x)}`.
    pub fn is_local_iso(&self) -> bool {
        self.source.points().all(|x| {
            let fx = self.point_map[x];
            let ux = self.source.up(x);
            let mut image: Vec<usize> = ux.iter().map(|&y| self.point_map[y]).collect();
            image.sort_unstable();
            let before = image.len();
            image.dedup();
            before == image.len()
                && image.as_slice() == self.target.up(fx)
                && ux.iter().all(|&y| {
                    ux.iter().all(|&z| self.source.generizes(y, z) == self.target.generizes(self.point_map[y], self.point_map[z]))
                })
                && ux.iter().all(|&y| self.stalk_maps[y].is_iso())
        })
    }

    pub fn is_injective_on_points(&self) -> bool {
        let mut v = self.point_map.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == self.point_map.len()
    }

    /// Bijective, order-reflecting, with isomorphic stalk maps.
    pub fn is_isomorphism(&self) -> bool {
        self.point_map.len() == self.target.point_count() && self.is_open_embedding()
    }

    /// Injective with open image, order-reflecting, and strict.
    pub fn is_open_embedding(&self) -> bool {
        if !self.is_injective_on_points() || !self.is_strict() {
            return false;
        }
        let image: Vec<usize> = self.point_map.clone();
        let open = image.iter().all(|&y| self.target.up(y).iter().all(|z| image.contains(z)));
        let reflects = self.source.points().all(|x| {
            self.source.points().all(|y| self.source.generizes(x, y) == self.target.generizes(self.point_map[x], self.point_map[y]))
        });
        open && reflects
    }

    /// Bijective on points and order-reflecting: a homeomorphism of the underlying spaces.
    pub fn is_homeomorphism(&self) -> bool {
        self.point_map.len() == self.target.point_count()
            && self.is_injective_on_points()
            && self.source.points().all(|x| {
                self.source.points().all(|y| self.source.generizes(x, y) == self.target.generizes(self.point_map[x], self.point_map[y]))
            })
    }

    /// Every stalk map induces an isomorphism of groups.
    pub fn is_group_isomorphism(&self) -> bool {
        self.stalk_maps.iter().all(|h| h.group_map().is_iso())
    }

    /// Points of the source lying over `y`.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        self.source.points().filter(|&x| self.point_map[x] == y).collect()
    }
}

/// An isomorphism `σ` between the sources of two group-isomorphic maps to the same target,
/// compatible with both maps; the stalk isomorphisms are forced by the group maps.
pub fn isomorphic_over(a: &FanMap, b: &FanMap) -> Option<Vec<usize>> {
    let (sa, sb) = (a.source(), b.source());
    if sa.point_count() != sb.point_count() || !a.is_group_isomorphism() || !b.is_group_isomorphism() {
        return None;
    }
    let forced = |x: usize, y: usize| -> bool {
        if a.image(x) != b.image(y) {
            return false;
        }
        let ga: &GroupHom = a.stalk_map(x).group_map();
        let gb: &GroupHom = b.stalk_map(y).group_map();
        let Some(inv) = ga.inverse() else { return false };
        let psi = inv.then(gb);
        MonoidHom::new(sa.stalk(x).clone(), sb.stalk(y).clone(), psi).map(|h| h.is_iso()).unwrap_or(false)
    };
    let candidates: Vec<Vec<usize>> = sa.points().map(|x| sb.points().filter(|&y| forced(x, y)).collect()).collect();
    let mut sigma = vec![usize::MAX; sa.point_count()];
    let mut used = vec![false; sb.point_count()];
    fn search(
        x: usize,
        candidates: &[Vec<usize>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sa: &FanSpace,
        sb: &FanSpace,
    ) -> bool {
        if x == candidates.len() {
            return true;
        }
        for &y in &candidates[x] {
            if used[y] {
                continue;
            }
            let consistent = (0..x).all(|z| {
                sa.generizes(x, z) == sb.generizes(y, sigma[z]) && sa.generizes(z, x) == sb.generizes(sigma[z], y)
            });
            if !consistent {
                continue;
            }
            sigma[x] = y;
            used[y] = true;
            if search(x + 1, candidates, sigma, used, sa, sb) {
                return true;
            }
            used[y] = false;
        }
        false
    }
    search(0, &candidates, &mut sigma, &mut used, sa, sb).then_some(sigma)
}
