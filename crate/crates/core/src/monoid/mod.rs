//! Fine monoids embedded in their groupification, finitely presented monoids, ideals and maps.

mod hom;
mod ideal;
mod preimage;
mod presented;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::cone::hilbert_basis;
use crate::lattice::matrix::{dot, fmt_vector, is_zero, neg, zero_vector, IntMatrix, Vector};
use crate::lattice::{quotient_group, AbelianGroup, DirectSum, GroupHom, LinearSolver, PolyhedralCone, Subgroup};
use crate::{Error, Result};

pub(crate) use hom::induced_on_quotients;
pub use hom::{HomPredicates, MonoidHom};
pub use ideal::MonoidIdeal;
pub use preimage::preimage_monoid;
pub use presented::{express_in_free_presentation, free_presentation, integralize, pushout, Integralization, PresentedHom, PresentedMonoid, Pushout, WordAnswer};

/// A face, recorded by the indices of the generators it contains.
///
/// A face of a fine monoid is generated by the generators lying in it, so the index set
/// determines the face; the parent monoid is passed alongside where needed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    indices: Vec<usize>,
}

impl Face {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Face { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.indices.iter().all(|i| other.contains_index(*i))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

struct Derived {
    cone: PolyhedralCone,
    tight: Vec<BTreeSet<usize>>,
    unit_gens: Vec<usize>,
    basis_in_gens: IntMatrix,
}

struct Inner {
    embedding: Arc<Subgroup>,
    gens: Vec<Vector>,
    derived: OnceLock<Derived>,
    sharpening: OnceLock<(EmbeddedMonoid, GroupHom)>,
    faces: OnceLock<Vec<Face>>,
}

/// A fine monoid: the submonoid of an abelian group generated by finitely many elements.
///
/// Internally elements use canonical coordinates of `P^gp`; the ambient group the monoid was
/// described in is kept for display and conversion.
#[derive(Clone)]
pub struct EmbeddedMonoid {
    inner: Arc<Inner>,
}

impl EmbeddedMonoid {
    /// The submonoid of `ambient` generated by `gens` (ambient coordinates).
    pub fn new(ambient: AbelianGroup, gens: &[Vector]) -> Result<Self> {
        for g in gens {
            if g.len() != ambient.dim() {
                return Err(Error::Dimension(format!(
                    "generator {} does not live in {}",
                    fmt_vector(g),
                    ambient
                )));
            }
        }
        let cleaned = clean_generators(&ambient, gens);
        let sub = Subgroup::generated(&ambient, &cleaned);
        let coords = sub.gen_coords().to_vec();
        Ok(Self::with_embedding(Arc::new(sub), coords))
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(ambient: AbelianGroup, gens: &[&[i64]]) -> Result<Self> {
        let gens: Vec<Vector> = gens.iter().map(|g| crate::lattice::vector(g)).collect();
        Self::new(ambient, &gens)
    }

    /// ℕʳ with its standard basis.
    pub fn free(rank: usize) -> Self {
        let g = AbelianGroup::free(rank);
        let gens: Vec<Vector> = (0..rank).map(|i| g.generator(i)).collect();
        Self::new(g, &gens).expect("standard basis")
    }

    /// The group `g` regarded as a monoid.
    pub fn group_monoid(g: &AbelianGroup) -> Self {
        let mut gens: Vec<Vector> = Vec::new();
        for i in 0..g.dim() {
            gens.push(g.generator(i));
            if i < g.rank() {
                gens.push(neg(&g.generator(i)));
            }
        }
        Self::new(g.clone(), &gens).expect("group generators")
    }

    /// Generators given in canonical coordinates of an existing groupification.
    pub(crate) fn with_embedding(embedding: Arc<Subgroup>, gens: Vec<Vector>) -> Self {
        let group = embedding.group().clone();
        let cleaned = clean_generators(&group, &gens);
        EmbeddedMonoid {
            inner: Arc::new(Inner {
                embedding,
                gens: cleaned,
                derived: OnceLock::new(),
                sharpening: OnceLock::new(),
                faces: OnceLock::new(),
            }),
        }
    }

    /// Monoid generated by elements of `group`, which must generate it as a group.
    pub(crate) fn spanning(group: &AbelianGroup, gens: Vec<Vector>) -> Self {
        let sub = Subgroup::generated(group, &gens);
        debug_assert_eq!(sub.group(), group);
        Self::with_embedding(Arc::new(sub), gens)
    }

    /// Sub-monoid of `self`'s groupification generated by `gens` (canonical coordinates),
    /// described in the same ambient group as `self`.
    pub fn submonoid(&self, gens: &[Vector]) -> EmbeddedMonoid {
        let amb: Vec<Vector> = gens.iter().map(|g| self.to_ambient(g)).collect();
        EmbeddedMonoid::new(self.ambient().clone(), &amb).expect("ambient dimensions agree")
    }

    /// `P^gp` in canonical form.
    pub fn group(&self) -> &AbelianGroup {
        self.inner.embedding.group()
    }

    /// The group the monoid was described in.
    pub fn ambient(&self) -> &AbelianGroup {
        self.inner.embedding.inclusion().codomain()
    }

    /// Generators in canonical coordinates of `P^gp`.
    pub fn gens(&self) -> &[Vector] {
        &self.inner.gens
    }

    pub fn gens_ambient(&self) -> Vec<Vector> {
        self.gens().iter().map(|g| self.to_ambient(g)).collect()
    }

    pub fn to_ambient(&self, x: &[BigInt]) -> Vector {
        self.inner.embedding.inclusion().apply(x)
    }

    /// Canonical coordinates of an ambient element lying in `P^gp`.
    pub fn from_ambient(&self, a: &[BigInt]) -> Option<Vector> {
        if a.len() != self.ambient().dim() {
            return None;
        }
        self.inner.embedding.pull_back(a)
    }

    /// Inclusion `P^gp → ambient`.
    pub fn ambient_inclusion(&self) -> &GroupHom {
        self.inner.embedding.inclusion()
    }

    pub(crate) fn embedding(&self) -> &Arc<Subgroup> {
        &self.inner.embedding
    }

    /// Index of the generator equal to `x`, if any.
    pub fn gen_index(&self, x: &[BigInt]) -> Option<usize> {
        let x = self.group().reduce(x);
        self.gens().iter().position(|g| *g == x)
    }

    /// Rank of `P^gp`.
    pub fn rank(&self) -> usize {
        self.group().rank()
    }

    fn derived(&self) -> &Derived {
        self.inner.derived.get_or_init(|| {
            let r = self.rank();
            let projected: Vec<Vector> = self.gens().iter().map(|g| g[..r].to_vec()).collect();
            let cone = PolyhedralCone::spanned_by(r, &projected);
            let tight: Vec<BTreeSet<usize>> = projected.iter().map(|p| cone.tight_facets(p)).collect();
            let all = cone.facets.len();
            let unit_gens = (0..self.gens().len()).filter(|&i| tight[i].len() == all).collect();
            let g = self.group();
            let m = IntMatrix::from_cols(g.dim(), self.gens()).hstack(&g.relation_matrix());
            let solver = LinearSolver::new(&m);
            let k = self.gens().len();
            let cols: Vec<Vector> = (0..g.dim())
                .map(|j| solver.solve(&g.generator(j)).expect("generators span the group")[..k].to_vec())
                .collect();
            Derived { cone, tight, unit_gens, basis_in_gens: IntMatrix::from_cols(k, &cols) }
        })
    }

    /// The rational cone spanned by the free parts of the generators.
    pub fn cone(&self) -> &PolyhedralCone {
        &self.derived().cone
    }

    /// Facets containing the free part of an element.
    pub fn tight_facets(&self, x: &[BigInt]) -> BTreeSet<usize> {
        self.cone().tight_facets(&x[..self.rank()])
    }

    /// Expresses each canonical basis vector as an integer combination of the generators.
    pub(crate) fn basis_in_gens(&self) -> &IntMatrix {
        &self.derived().basis_in_gens
    }

    /// Indices of generators that are units.
    pub fn unit_gen_indices(&self) -> &[usize] {
        &self.derived().unit_gens
    }

    pub fn is_sharp(&self) -> bool {
        self.unit_gen_indices().is_empty()
    }

    /// Whether the monoid equals its groupification.
    pub fn is_group(&self) -> bool {
        self.unit_gen_indices().len() == self.gens().len()
    }

    /// Membership of an element given in canonical coordinates of `P^gp`.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let x = self.group().reduce(x);
        if !self.cone().contains(&x[..self.rank()]) {
            return false;
        }
        if self.is_sharp() {
            return self.contains_sharp(&x);
        }
        let (sharp, map) = self.sharpening_parts();
        sharp.contains_sharp(&map.apply(&x))
    }

    /// Membership of an element given in ambient coordinates.
    pub fn contains_ambient(&self, a: &[BigInt]) -> bool {
        self.from_ambient(a).is_some_and(|x| self.contains(&x))
    }

    /// Memoized descent along a strictly positive grading.
    fn contains_sharp(&self, x: &Vector) -> bool {
        let r = self.rank();
        let grading = self.cone().grading();
        let degree = |v: &Vector| dot(&grading, &v[..r]);
        let gens: Vec<(BigInt, &Vector)> = self.gens().iter().map(|g| (degree(g), g)).collect();
        let mut memo: HashMap<Vector, bool> = HashMap::new();
        fn go(
            x: Vector,
            monoid: &EmbeddedMonoid,
            gens: &[(BigInt, &Vector)],
            degree: &dyn Fn(&Vector) -> BigInt,
            memo: &mut HashMap<Vector, bool>,
        ) -> bool {
            if is_zero(&x) {
                return true;
            }
            if let Some(&v) = memo.get(&x) {
                return v;
            }
            let d = degree(&x);
            let mut found = false;
            if d.is_positive() && monoid.cone().contains(&x[..monoid.rank()]) {
                for (gd, g) in gens {
                    if *gd > d {
                        continue;
                    }
                    let y = monoid.group().sub(&x, g);
                    if go(y, monoid, gens, degree, memo) {
                        found = true;
                        break;
                    }
                }
            }
            memo.insert(x, found);
            found
        }
        go(x.clone(), self, &gens, &degree, &mut memo)
    }

    /// The unit group `P*` as a subgroup of `P^gp`.
    pub fn units(&self) -> Subgroup {
        let gens: Vec<Vector> = self.unit_gen_indices().iter().map(|&i| self.gens()[i].clone()).collect();
        Subgroup::generated(self.group(), &gens)
    }

    fn sharpening_parts(&self) -> &(EmbeddedMonoid, GroupHom) {
        self.inner.sharpening.get_or_init(|| {
            let units: Vec<Vector> = self.unit_gen_indices().iter().map(|&i| self.gens()[i].clone()).collect();
            let (q, map) = quotient_group(self.group(), &units);
            let gens: Vec<Vector> = self.gens().iter().map(|g| map.apply(g)).collect();
            (EmbeddedMonoid::spanning(&q, gens), map)
        })
    }

    /// `P̄ = P/P*` with the projection.
    pub fn sharpen(&self) -> (EmbeddedMonoid, MonoidHom) {
        let (sharp, map) = self.sharpening_parts().clone();
        let hom = MonoidHom::new_unchecked(self.clone(), sharp.clone(), map);
        (sharp, hom)
    }

    /// All faces in canonical order: by size, then lexicographically by indices.
    pub fn faces(&self) -> &[Face] {
        self.inner.faces.get_or_init(|| {
            let d = self.derived();
            let nfacets = d.cone.facets.len();
            let all_facets: BTreeSet<usize> = (0..nfacets).collect();
            let closure = |facets: &BTreeSet<usize>| -> Vec<usize> {
                (0..self.gens().len()).filter(|&i| facets.is_subset(&d.tight[i])).collect()
            };
            let facets_of = |gens: &[usize]| -> BTreeSet<usize> {
                gens.iter().fold(all_facets.clone(), |acc, &i| acc.intersection(&d.tight[i]).copied().collect())
            };
            let top: Vec<usize> = (0..self.gens().len()).collect();
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut stack = vec![top];
            while let Some(face) = stack.pop() {
                if !seen.insert(face.clone()) {
                    continue;
                }
                let s = facets_of(&face);
                for f in 0..nfacets {
                    if s.contains(&f) {
                        continue;
                    }
                    let mut t = s.clone();
                    t.insert(f);
                    let sub = closure(&t);
                    let closed = closure(&facets_of(&sub));
                    stack.push(closed);
                }
            }
            let mut faces: Vec<Face> = seen.into_iter().map(Face::new).collect();
            faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.indices.cmp(&b.indices)));
            faces
        })
    }

    /// Position of a face in [`faces`](Self::faces).
    pub fn face_position(&self, f: &Face) -> Option<usize> {
        self.faces().iter().position(|g| g == f)
    }

    /// Whether the index set is closed under the face condition.
    pub fn is_face(&self, f: &Face) -> bool {
        self.face_position(f).is_some()
    }

    /// The smallest face containing every listed element (canonical coordinates, all in P).
    pub fn smallest_face_containing(&self, elems: &[Vector]) -> Face {
        let d = self.derived();
        let mut s: BTreeSet<usize> = (0..d.cone.facets.len()).collect();
        for e in elems {
            let t = self.tight_facets(e);
            s = s.intersection(&t).copied().collect();
        }
        Face::new((0..self.gens().len()).filter(|&i| s.is_subset(&d.tight[i])).collect())
    }

    /// Whether an element of P lies in the face.
    pub fn face_contains(&self, f: &Face, x: &[BigInt]) -> bool {
        let smallest = self.smallest_face_containing(&[x.to_vec()]);
        smallest.is_subface_of(f)
    }

    /// The face `P*` of units.
    pub fn unit_face(&self) -> Face {
        Face::new(self.unit_gen_indices().to_vec())
    }

    /// The whole monoid as a face.
    pub fn top_face(&self) -> Face {
        Face::new((0..self.gens().len()).collect())
    }

    /// The face as a monoid in the ambient group of `self`.
    pub fn face_monoid(&self, f: &Face) -> EmbeddedMonoid {
        let gens: Vec<Vector> = f.indices().iter().map(|&i| self.gens()[i].clone()).collect();
        self.submonoid(&gens)
    }

    fn check_face(&self, f: &Face) -> Result<()> {
        if self.is_face(f) {
            Ok(())
        } else {
            Err(Error::NotAFace)
        }
    }

    /// `F⁻¹P` in the same groupification, with the localization map.
    pub fn localize(&self, f: &Face) -> Result<(EmbeddedMonoid, MonoidHom)> {
        self.check_face(f)?;
        let mut gens = self.gens().to_vec();
        for &i in f.indices() {
            gens.push(self.group().neg(&self.gens()[i]));
        }
        let loc = EmbeddedMonoid::with_embedding(self.embedding().clone(), gens);
        let map = GroupHom::identity(self.group());
        Ok((loc.clone(), MonoidHom::new_unchecked(self.clone(), loc, map)))
    }

    /// `P/F` inside `P^gp/F^gp`, with the projection.
    pub fn quotient_by_face(&self, f: &Face) -> Result<(EmbeddedMonoid, MonoidHom)> {
        self.check_face(f)?;
        let fg: Vec<Vector> = f.indices().iter().map(|&i| self.gens()[i].clone()).collect();
        let (q, map) = quotient_group(self.group(), &fg);
        let gens: Vec<Vector> = self.gens().iter().map(|g| map.apply(g)).collect();
        let quot = EmbeddedMonoid::spanning(&q, gens);
        Ok((quot.clone(), MonoidHom::new_unchecked(self.clone(), quot, map)))
    }

    /// `P^sat = {x ∈ P^gp : nx ∈ P for some n > 0}`, sharing coordinates with `P^gp`.
    pub fn saturate(&self) -> (EmbeddedMonoid, MonoidHom) {
        let g = self.group();
        let r = g.rank();
        let hb = hilbert_basis(r, &self.cone().facets, &self.cone().equations);
        let lift = |v: &Vector| -> Vector {
            let mut out = v.clone();
            out.extend(std::iter::repeat_n(BigInt::zero(), g.torsion().len()));
            out
        };
        let mut gens: Vec<Vector> = hb.elements.iter().map(lift).collect();
        for l in &hb.lineality {
            gens.push(lift(l));
            gens.push(lift(&neg(l)));
        }
        for k in 0..g.torsion().len() {
            gens.push(g.generator(r + k));
        }
        gens.sort_by(canonical_order);
        let sat = EmbeddedMonoid::with_embedding(self.embedding().clone(), gens);
        let map = GroupHom::identity(g);
        (sat.clone(), MonoidHom::new_unchecked(self.clone(), sat, map))
    }

    pub fn is_saturated(&self) -> bool {
        let (sat, _) = self.saturate();
        sat.gens().iter().all(|g| self.contains(g))
    }

    /// Fine and saturated.
    pub fn is_fs(&self) -> bool {
        self.is_saturated()
    }

    /// The minimal generating set of a sharp monoid, in generator order.
    pub fn irreducibles(&self) -> Result<Vec<Vector>> {
        if !self.is_sharp() {
            return Err(Error::NotSharp);
        }
        let gens = self.gens();
        let out = gens
            .iter()
            .enumerate()
            .filter(|(i, g)| {
                !gens.iter().enumerate().any(|(j, h)| j != *i && self.contains(&self.group().sub(g, h)))
            })
            .map(|(_, g)| g.clone())
            .collect();
        Ok(out)
    }

    /// Drops generators that are sums of the others, scanning from the last one.
    pub fn reduced(&self) -> EmbeddedMonoid {
        let mut gens = self.gens().to_vec();
        let mut i = gens.len();
        while i > 0 {
            i -= 1;
            let rest: Vec<Vector> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            if !Subgroup::generated(self.group(), &rest).contains(&gens[i]) {
                continue;
            }
            if EmbeddedMonoid::with_embedding(self.embedding().clone(), rest.clone()).contains(&gens[i]) {
                gens = rest;
            }
        }
        EmbeddedMonoid::with_embedding(self.embedding().clone(), gens)
    }

    /// Whether the sharpening is isomorphic to ℕʳ.
    pub fn is_free(&self) -> bool {
        let (sharp, _) = self.sharpen();
        let g = sharp.group();
        g.is_torsion_free() && sharp.irreducibles().map(|irr| irr.len() == g.rank()).unwrap_or(false)
    }

    /// Same groupification coordinates and the same set of elements.
    /// Equality as submonoids of the same ambient group, whatever the embeddings.
    pub fn same_in_ambient(&self, other: &EmbeddedMonoid) -> bool {
        self.ambient() == other.ambient()
            && self.gens_ambient().iter().all(|g| other.contains_ambient(g))
            && other.gens_ambient().iter().all(|g| self.contains_ambient(g))
    }

    /// Equality of generated monoids, comparing canonical coordinates of the groupifications.
    pub fn same_monoid(&self, other: &EmbeddedMonoid) -> bool {
        self.group() == other.group()
            && self.gens().iter().all(|g| other.contains(g))
            && other.gens().iter().all(|g| self.contains(g))
    }

    /// `P ⊕ Q` with generators `(p,0)` followed by `(0,q)`.
    pub fn direct_sum(&self, other: &EmbeddedMonoid) -> (EmbeddedMonoid, DirectSum) {
        let ds = self.group().direct_sum(other.group());
        let mut gens: Vec<Vector> = self.gens().iter().map(|g| ds.inj_left.apply(g)).collect();
        gens.extend(other.gens().iter().map(|g| ds.inj_right.apply(g)));
        (EmbeddedMonoid::spanning(&ds.group, gens), ds)
    }

    /// Human-readable name of the isomorphism type when it is evident.
    pub fn describe(&self) -> String {
        let (sharp, _) = self.sharpen();
        let units = self.units();
        let u = units.group();
        let free_sharp = sharp.group().is_torsion_free()
            && sharp.irreducibles().map(|i| i.len() == sharp.rank()).unwrap_or(false);
        let splits = u.rank() + sharp.rank() == self.rank() && *u.torsion() == *self.group().torsion();
        if free_sharp && splits {
            let mut parts = Vec::new();
            if sharp.rank() > 0 {
                parts.push(if sharp.rank() == 1 { "N".to_string() } else { format!("N^{}", sharp.rank()) });
            }
            if !u.is_trivial() {
                parts.push(u.to_string());
            }
            if parts.is_empty() {
                return "0".to_string();
            }
            return parts.join("+");
        }
        format!("monoid in {}", self.ambient())
    }
}

impl fmt::Debug for EmbeddedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens_ambient().iter().map(|g| fmt_vector(g)).collect();
        write!(f, "<{}> in {}", gens.join(" "), self.ambient())
    }
}

impl fmt::Display for EmbeddedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Ordering used for generator lists produced by the library: free part by total degree,
/// then lexicographic.
pub(crate) fn canonical_order(a: &Vector, b: &Vector) -> std::cmp::Ordering {
    let deg = |v: &Vector| -> BigInt { v.iter().map(|x| x.abs()).sum() };
    deg(a).cmp(&deg(b)).then_with(|| a.cmp(b))
}

fn clean_generators(group: &AbelianGroup, gens: &[Vector]) -> Vec<Vector> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in gens {
        let r = group.reduce(g);
        if is_zero(&r) {
            continue;
        }
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out
}

/// Brute-force coefficient search: is `x` an ℕ-combination of `gens` with coefficients ≤ `bound`?
pub fn brute_force_member(group: &AbelianGroup, gens: &[Vector], x: &[BigInt], bound: u32) -> bool {
    let target = group.reduce(x);
    let mut coeffs = vec![0u32; gens.len()];
    loop {
        let mut s = zero_vector(group.dim());
        for (c, g) in coeffs.iter().zip(gens) {
            if *c > 0 {
                s = crate::lattice::matrix::add(&s, &crate::lattice::matrix::scale(&BigInt::from(*c), g));
            }
        }
        if group.reduce(&s) == target {
            return true;
        }
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return false;
            }
            coeffs[i] += 1;
            if coeffs[i] <= bound {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}
