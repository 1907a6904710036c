//! Monoid homomorphisms between embedded monoids and their predicates.

use num_bigint::BigInt;
use num_traits::Zero;

use super::EmbeddedMonoid;
use crate::lattice::cone::hilbert_basis;
use crate::lattice::matrix::{fmt_vector, scale, zero_vector, IntMatrix, Vector};
use crate::lattice::{GroupHom, HomProfile, PolyhedralCone};
use crate::{Error, Result};

/// A homomorphism `h: Q → P` of fine monoids, recorded by `h^gp`.
#[derive(Clone, Debug)]
pub struct MonoidHom {
    domain: EmbeddedMonoid,
    codomain: EmbeddedMonoid,
    map: GroupHom,
}

/// Flags of a monoid homomorphism, with the data certifying density and finiteness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPredicates {
    pub local: bool,
    pub strict: bool,
    pub dense: bool,
    pub finite: bool,
    pub saturated: bool,
    pub injective: bool,
    pub surjective: bool,
    /// For each codomain generator, the least n with n·p in the image (when dense).
    pub density_witnesses: Vec<BigInt>,
    /// Module generators of the codomain over the image (when finite), canonical coordinates.
    pub module_generators: Vec<Vector>,
}

const DENSITY_SEARCH_CAP: u64 = 4096;

impl MonoidHom {
    /// Checks that every domain generator lands in the codomain.
    pub fn new(domain: EmbeddedMonoid, codomain: EmbeddedMonoid, map: GroupHom) -> Result<Self> {
        if map.domain() != domain.group() || map.codomain() != codomain.group() {
            return Err(Error::NotAHom("group map does not match the groupifications".into()));
        }
        for g in domain.gens() {
            let img = map.apply(g);
            if !codomain.contains(&img) {
                return Err(Error::NotInMonoid(format!(
                    "image {} of {} is not in the target",
                    fmt_vector(&codomain.to_ambient(&img)),
                    fmt_vector(&domain.to_ambient(g))
                )));
            }
        }
        Ok(MonoidHom { domain, codomain, map })
    }

    pub(crate) fn new_unchecked(domain: EmbeddedMonoid, codomain: EmbeddedMonoid, map: GroupHom) -> Self {
        MonoidHom { domain, codomain, map }
    }

    /// Determined by the images of the domain generators (canonical codomain coordinates).
    pub fn from_gen_images(domain: EmbeddedMonoid, codomain: EmbeddedMonoid, images: &[Vector]) -> Result<Self> {
        if images.len() != domain.gens().len() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                domain.gens().len()
            )));
        }
        let cg = codomain.group();
        for img in images {
            if img.len() != cg.dim() {
                return Err(Error::Dimension(format!("image {} has the wrong length", fmt_vector(img))));
            }
        }
        let imgs = IntMatrix::from_cols(cg.dim(), images);
        let m = imgs.mul(domain.basis_in_gens());
        let map = GroupHom::new(domain.group().clone(), cg.clone(), m)
            .ok_or_else(|| Error::NotAHom("torsion relations are not respected".into()))?;
        for (g, img) in domain.gens().iter().zip(images) {
            if map.apply(g) != cg.reduce(img) {
                return Err(Error::NotAHom("generator relations are not respected".into()));
            }
        }
        Self::new(domain, codomain, map)
    }

    /// Images of the domain generators given in the codomain's ambient coordinates.
    pub fn from_ambient_images(domain: EmbeddedMonoid, codomain: EmbeddedMonoid, images: &[Vector]) -> Result<Self> {
        let mut canon = Vec::with_capacity(images.len());
        for img in images {
            let c = codomain.from_ambient(img).ok_or_else(|| {
                Error::NotInMonoid(format!("{} is not in the target group", fmt_vector(img)))
            })?;
            canon.push(c);
        }
        Self::from_gen_images(domain, codomain, &canon)
    }

    pub fn identity(p: &EmbeddedMonoid) -> Self {
        MonoidHom { domain: p.clone(), codomain: p.clone(), map: GroupHom::identity(p.group()) }
    }

    pub fn domain(&self) -> &EmbeddedMonoid {
        &self.domain
    }

    pub fn codomain(&self) -> &EmbeddedMonoid {
        &self.codomain
    }

    pub fn group_map(&self) -> &GroupHom {
        &self.map
    }

    pub fn apply(&self, x: &[BigInt]) -> Vector {
        self.map.apply(x)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonoidHom) -> MonoidHom {
        MonoidHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            map: self.map.then(&other.map),
        }
    }

    pub fn profile(&self) -> HomProfile {
        self.map.profile()
    }

    /// The image `h(Q)` as a monoid in the codomain's groupification coordinates.
    pub fn image(&self) -> EmbeddedMonoid {
        let gens: Vec<Vector> = self.domain.gens().iter().map(|g| self.map.apply(g)).collect();
        EmbeddedMonoid::new(self.codomain.group().clone(), &gens).expect("same group")
    }

    /// `h^gp` is an isomorphism and `h` maps onto the codomain.
    pub fn is_iso(&self) -> bool {
        let Some(inv) = self.map.inverse() else { return false };
        self.codomain.gens().iter().all(|g| self.domain.contains(&inv.apply(g)))
    }

    pub fn is_injective(&self) -> bool {
        self.profile().injective
    }

    pub fn is_surjective(&self) -> bool {
        let img = self.image();
        self.codomain.gens().iter().all(|g| img.contains_ambient(g))
    }

    /// No non-unit of the domain maps to a unit.
    pub fn is_local(&self) -> bool {
        let units = self.codomain.units();
        let dom_units = self.domain.unit_gen_indices();
        self.domain
            .gens()
            .iter()
            .enumerate()
            .filter(|(i, _)| !dom_units.contains(i))
            .all(|(_, g)| !units.contains(&self.map.apply(g)))
    }

    /// The induced map of sharpenings `h̄`.
    pub fn sharpening(&self) -> MonoidHom {
        let (qs, qmap) = self.domain.sharpen();
        let (ps, pmap) = self.codomain.sharpen();
        let map = induced_on_quotients(&self.map, qmap.group_map(), pmap.group_map());
        MonoidHom::new_unchecked(qs, ps, map)
    }

    /// The sharpening `h̄` is an isomorphism.
    pub fn is_sharp_iso(&self) -> bool {
        self.sharpening().is_iso()
    }

    /// All predicates at once.
    pub fn predicates(&self) -> Result<HomPredicates> {
        let profile = self.profile();
        let image = self.image();
        let surjective = self.codomain.gens().iter().all(|g| image.contains_ambient(g));
        let dense = self.is_dense_exact(&image);
        let mut witnesses = Vec::new();
        let mut module_generators = Vec::new();
        if dense {
            for g in self.codomain.gens() {
                witnesses.push(density_witness(&image, g)?);
            }
            module_generators = self.module_generators(&image, &witnesses);
        }
        Ok(HomPredicates {
            local: self.is_local(),
            strict: self.is_sharp_iso(),
            dense,
            finite: dense,
            saturated: self.is_saturated_with(&image),
            injective: profile.injective,
            surjective,
            density_witnesses: witnesses,
            module_generators,
        })
    }

    /// Every codomain element has a multiple in the image: `Cok h^gp` torsion and
    /// the codomain cone inside the image cone.
    fn is_dense_exact(&self, image: &EmbeddedMonoid) -> bool {
        if !self.profile().coker_torsion {
            return false;
        }
        let r = self.codomain.rank();
        let gens: Vec<Vector> = image.gens_ambient().iter().map(|g| g[..r].to_vec()).collect();
        let cone = PolyhedralCone::spanned_by(r, &gens);
        self.codomain.gens().iter().all(|g| cone.contains(&g[..r]))
    }

    fn module_generators(&self, image: &EmbeddedMonoid, witnesses: &[BigInt]) -> Vec<Vector> {
        let group = self.codomain.group();
        let gens = self.codomain.gens();
        let mut combos: Vec<Vector> = vec![zero_vector(group.dim())];
        for (g, n) in gens.iter().zip(witnesses) {
            let mut next = Vec::new();
            for base in &combos {
                let mut c = BigInt::zero();
                while &c < n {
                    next.push(group.add(base, &scale(&c, g)));
                    c += 1;
                }
            }
            next.sort();
            next.dedup();
            combos = next;
        }
        combos.sort_by(super::canonical_order);
        let mut kept: Vec<Vector> = Vec::new();
        for c in combos {
            if kept.iter().any(|k| image.contains_ambient(&group.sub(&c, k))) {
                continue;
            }
            kept.push(c);
        }
        kept
    }

    /// `np ∈ h(Q)` for some n > 0 implies `p ∈ h(Q)`, for every p in the codomain.
    fn is_saturated_with(&self, image: &EmbeddedMonoid) -> bool {
        let p = &self.codomain;
        let g = p.group();
        let r = g.rank();
        let k = p.gens().len();
        if k == 0 {
            return true;
        }
        // Coefficient cone c ≥ 0 with Σcᵢpᵢ in the image cone and torsion modulo the image group.
        let img_free: Vec<Vector> = image.gens_ambient().iter().map(|v| v[..r].to_vec()).collect();
        let cone = PolyhedralCone::spanned_by(r, &img_free);
        let pmat = IntMatrix::from_cols(g.dim(), p.gens());
        let free_rows = pmat.select_rows(&(0..r).collect::<Vec<_>>());
        let mut ineqs: Vec<Vector> = (0..k).map(|i| crate::lattice::matrix::unit_vector(k, i)).collect();
        for f in &cone.facets {
            ineqs.push(free_rows.transpose().mul_vec(f));
        }
        let mut eqs: Vec<Vector> = cone.equations.iter().map(|e| free_rows.transpose().mul_vec(e)).collect();
        let (coker, qmap) = image_group_quotient(p, image);
        let cr = coker.rank();
        let phi = qmap.matrix().mul(&pmat);
        for i in 0..cr {
            eqs.push(phi.row(i));
        }
        let hb = hilbert_basis(k, &ineqs, &eqs);
        hb.elements.iter().all(|c| image.contains_ambient(&g.reduce(&pmat.mul_vec(c))))
    }
}

fn image_group_quotient(p: &EmbeddedMonoid, image: &EmbeddedMonoid) -> (crate::lattice::AbelianGroup, GroupHom) {
    crate::lattice::quotient_group(p.group(), &image.gens_ambient())
}

/// Least n ≥ 1 with n·g in the image, searched up to a fixed cap.
fn density_witness(image: &EmbeddedMonoid, g: &Vector) -> Result<BigInt> {
    let group = image.ambient();
    let mut acc = g.clone();
    for n in 1..=DENSITY_SEARCH_CAP {
        if image.contains_ambient(&acc) {
            return Ok(BigInt::from(n));
        }
        acc = group.add(&acc, g);
    }
    Err(Error::Inconclusive(format!("no multiple of {} found in the image below {}", fmt_vector(g), DENSITY_SEARCH_CAP)))
}

/// The map `A' → B'` induced by `f: A → B` on quotients `A → A'`, `B → B'`.
pub(crate) fn induced_on_quotients(f: &GroupHom, pa: &GroupHom, pb: &GroupHom) -> GroupHom {
    let dom = pa.codomain().clone();
    let cod = pb.codomain().clone();
    let cols: Vec<Vector> = (0..dom.dim())
        .map(|j| {
            let pre = pa.preimage(&dom.generator(j)).expect("quotient map is surjective");
            pb.apply(&f.apply(&pre))
        })
        .collect();
    GroupHom::new(dom, cod.clone(), IntMatrix::from_cols(cod.dim(), &cols)).expect("kernel maps into kernel")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{vector, AbelianGroup};

    fn n() -> EmbeddedMonoid {
        EmbeddedMonoid::free(1)
    }

    #[test]
    fn inclusion_of_numerical_semigroup() {
        let q = EmbeddedMonoid::from_i64(AbelianGroup::free(1), &[&[2], &[3]]).unwrap();
        let h = MonoidHom::from_ambient_images(q, n(), &[vector(&[2]), vector(&[3])]).unwrap();
        let p = h.predicates().unwrap();
        assert!(p.local && !p.strict && p.dense && p.finite);
        assert_eq!(p.module_generators, vec![vector(&[0]), vector(&[1])]);
    }

    #[test]
    fn doubling() {
        let h = MonoidHom::from_ambient_images(n(), n(), &[vector(&[2])]).unwrap();
        let p = h.predicates().unwrap();
        assert!(p.dense && p.finite && !p.strict && !p.saturated, "{:?}", (p.dense, p.finite, p.strict, p.saturated));
        assert!(p.injective && !p.surjective);
    }

    #[test]
    fn identity_all_true() {
        let q = EmbeddedMonoid::from_i64(AbelianGroup::free(2), &[&[2, 0], &[1, 1], &[0, 2]]).unwrap();
        let p = MonoidHom::identity(&q).predicates().unwrap();
        assert!(p.local && p.strict && p.dense && p.finite && p.saturated && p.injective && p.surjective);
    }

    #[test]
    fn bad_image_rejected() {
        let q = n();
        let p = EmbeddedMonoid::from_i64(AbelianGroup::free(1), &[&[2], &[3]]).unwrap();
        assert!(MonoidHom::from_ambient_images(q, p, &[vector(&[1])]).is_err());
    }
}
