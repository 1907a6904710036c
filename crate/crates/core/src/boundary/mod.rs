//! Boundaries of monoids and fans.
//!
//! A point of `ΔX` is a pair `(x, F)` with `F` a maximal proper face of `M_x`; its stalk is `F`.
//! The map `ΔX → X` is kept at the level of points and faces only.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::fanspace::FanSpace;
use crate::lattice::{GroupHom, IntMatrix, Subgroup, Vector};
use crate::monoid::{EmbeddedMonoid, Face};

/// Maximal proper faces in canonical face order.
pub fn boundary_monoid(p: &EmbeddedMonoid) -> Vec<Face> {
    let faces = p.faces();
    let top = faces.len() - 1;
    faces[..top]
        .iter()
        .filter(|f| faces[..top].iter().all(|g| g == *f || !f.is_subface_of(g)))
        .cloned()
        .collect()
}

#[derive(Clone, Debug)]
pub struct BoundaryData {
    pub source: FanSpace,
    pub boundary: FanSpace,
    /// Image of each boundary point.
    pub map: Vec<usize>,
    /// For each boundary point `(x, F)`, the face `F` as a face of the full stalk `M_x`.
    pub face_labels: Vec<Face>,
}

impl BoundaryData {
    /// Connected components of the boundary, each sorted, ordered by least point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.boundary.point_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for x in 0..n {
            for &y in self.boundary.up(x) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    /// Each component maps injectively onto a closed subset of the source.
    pub fn is_tame(&self) -> bool {
        self.components().iter().all(|comp| {
            let mut image: Vec<usize> = comp.iter().map(|&b| self.map[b]).collect();
            image.sort_unstable();
            let before = image.len();
            image.dedup();
            let closed = image.iter().all(|&x| self.source.closure(x).iter().all(|z| image.binary_search(z).is_ok()));
            image.len() == before && closed
        })
    }
}

struct BoundaryPoint {
    x: usize,
    face: Face,
    sub: Arc<Subgroup>,
}

/// `ΔX`, glued from `Δ Spec M_x = ⊔_F Spec F` over the points of `X`.
pub fn boundary_fan(f: &FanSpace) -> BoundaryData {
    let mut pts: Vec<BoundaryPoint> = Vec::new();
    let mut index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    for x in f.points() {
        let m = f.stalk(x);
        for face in boundary_monoid(m) {
            let gens: Vec<Vector> = face.indices().iter().map(|&i| m.gens()[i].clone()).collect();
            let sub = Arc::new(Subgroup::generated(m.group(), &gens));
            index.insert((x, face.indices().to_vec()), pts.len());
            pts.push(BoundaryPoint { x, face, sub });
        }
    }
    let mut up = vec![Vec::new(); pts.len()];
    for (b, p) in pts.iter().enumerate() {
        let m = f.stalk(p.x);
        for &y in f.up(p.x) {
            let my = f.stalk(y);
            let imgs: Vec<Vector> =
                p.face.indices().iter().map(|&i| carry(f, p.x, y, &m.gens()[i])).collect();
            let face = my.smallest_face_containing(&imgs);
            if let Some(&c) = index.get(&(y, face.indices().to_vec())) {
                up[b].push(c);
            }
        }
        up[b].sort_unstable();
    }
    let stalks: Vec<EmbeddedMonoid> = pts
        .iter()
        .map(|p| {
            let m = f.stalk(p.x);
            let gens = p.face.indices().iter().map(|&i| p.sub.pull_back(&m.gens()[i]).expect("face generator")).collect();
            EmbeddedMonoid::with_embedding(p.sub.clone(), gens)
        })
        .collect();
    let boundary = FanSpace::from_point_data(f.kind(), stalks, up, |a, b| {
        let (pa, pb) = (&pts[a], &pts[b]);
        let cols: Vec<Vector> = (0..pa.sub.group().dim())
            .map(|k| {
                let v = carry(f, pa.x, pb.x, &pa.sub.inclusion().apply(&pa.sub.group().generator(k)));
                pb.sub.pull_back(&v).expect("faces map into faces")
            })
            .collect();
        GroupHom::new(pa.sub.group().clone(), pb.sub.group().clone(), IntMatrix::from_cols(pb.sub.group().dim(), &cols))
            .expect("generization maps are homomorphisms")
    })
    .expect("boundaries of fans are fans");
    BoundaryData {
        source: f.clone(),
        boundary,
        map: pts.iter().map(|p| p.x).collect(),
        face_labels: pts.into_iter().map(|p| p.face).collect(),
    }
}

fn carry(f: &FanSpace, x: usize, y: usize, v: &[BigInt]) -> Vector {
    if x == y {
        v.to_vec()
    } else {
        f.gen_group_map(x, y).apply(v)
    }
}

/// Least `n` with `Δⁿ X` empty.
pub fn boundary_depth(f: &FanSpace) -> usize {
    let mut current = f.clone();
    let mut n = 0;
    while current.point_count() > 0 {
        current = boundary_fan(&current).boundary;
        n += 1;
    }
    n
}

/// One more than the largest number of irreducibles of a sharpened stalk.
pub fn depth_bound(f: &FanSpace) -> usize {
    1 + f.points().map(|x| f.sharpened_stalk(x).irreducibles().map_or(0, |v| v.len())).max().unwrap_or(0)
}

/// Whether the boundary is globally a disjoint union of closed embeddings.
pub fn is_tame(f: &FanSpace) -> bool {
    boundary_fan(f).is_tame()
}

#[cfg(test)]
mod tests;
