//! Finitely presented commutative monoids ℕⁿ/∼ and their integral quotients.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::EmbeddedMonoid;
use crate::lattice::matrix::{add, fmt_vector, is_zero, sub, zero_vector, IntMatrix, Vector};
use crate::lattice::{quotient, AbelianGroup, GroupHom};
use crate::{Error, Result};

/// `⟨e₁,…,eₙ | aⱼ = bⱼ⟩`, with `aⱼ, bⱼ ∈ ℕⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedMonoid {
    generator_count: usize,
    relations: Vec<(Vector, Vector)>,
}

/// Outcome of a bounded word-problem search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordAnswer {
    Yes,
    No,
    Inconclusive,
}

impl PresentedMonoid {
    pub fn new(generator_count: usize, relations: Vec<(Vector, Vector)>) -> Result<Self> {
        for (a, b) in &relations {
            for v in [a, b] {
                if v.len() != generator_count {
                    return Err(Error::Dimension(format!(
                        "relation side {} needs {} entries",
                        fmt_vector(v),
                        generator_count
                    )));
                }
                if v.iter().any(|x| x.is_negative()) {
                    return Err(Error::Invalid(format!("relation side {} has a negative entry", fmt_vector(v))));
                }
            }
        }
        Ok(PresentedMonoid { generator_count, relations })
    }

    /// The free monoid ℕⁿ.
    pub fn free(n: usize) -> Self {
        PresentedMonoid { generator_count: n, relations: Vec::new() }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relations(&self) -> &[(Vector, Vector)] {
        &self.relations
    }

    /// Decides `a = b` by breadth-first rewriting, visiting at most `budget` words.
    ///
    /// Words unequal in the groupification are reported unequal at once.
    pub fn words_equal(&self, a: &[BigInt], b: &[BigInt], budget: usize) -> WordAnswer {
        if a == b {
            return WordAnswer::Yes;
        }
        let int = integralize(self);
        if int.image_of(a) != int.image_of(b) {
            return WordAnswer::No;
        }
        let mut seen: BTreeSet<Vector> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(a.to_vec());
        queue.push_back(a.to_vec());
        while let Some(w) = queue.pop_front() {
            for (l, r) in &self.relations {
                for (from, to) in [(l, r), (r, l)] {
                    if w.iter().zip(from).all(|(x, y)| x >= y) {
                        let next = add(&sub(&w, from), to);
                        if next.as_slice() == b {
                            return WordAnswer::Yes;
                        }
                        if seen.len() >= budget {
                            return WordAnswer::Inconclusive;
                        }
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        WordAnswer::No
    }
}

impl fmt::Display for PresentedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> =
            self.relations.iter().map(|(a, b)| format!("{}={}", fmt_vector(a), fmt_vector(b))).collect();
        write!(f, "<{} gens | {}>", self.generator_count, rels.join(", "))
    }
}

/// A map of presented monoids, given by the images of the domain generators as words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedHom {
    domain: PresentedMonoid,
    codomain: PresentedMonoid,
    images: Vec<Vector>,
}

impl PresentedHom {
    /// Checks that relations map to relations, up to the given search budget.
    pub fn new(domain: PresentedMonoid, codomain: PresentedMonoid, images: Vec<Vector>, budget: usize) -> Result<Self> {
        if images.len() != domain.generator_count {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                domain.generator_count
            )));
        }
        for img in &images {
            if img.len() != codomain.generator_count || img.iter().any(|x| x.is_negative()) {
                return Err(Error::Invalid(format!("image word {} is not in the target", fmt_vector(img))));
            }
        }
        let h = PresentedHom { domain, codomain, images };
        for (a, b) in h.domain.relations.clone() {
            match h.codomain.words_equal(&h.apply(&a), &h.apply(&b), budget) {
                WordAnswer::Yes => {}
                WordAnswer::No => return Err(Error::NotAHom("a relation is not preserved".into())),
                WordAnswer::Inconclusive => {
                    return Err(Error::Inconclusive("could not verify a relation within the budget".into()))
                }
            }
        }
        Ok(h)
    }

    pub fn domain(&self) -> &PresentedMonoid {
        &self.domain
    }

    pub fn codomain(&self) -> &PresentedMonoid {
        &self.codomain
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    /// Image of a word.
    pub fn apply(&self, w: &[BigInt]) -> Vector {
        let mut out = zero_vector(self.codomain.generator_count);
        for (c, img) in w.iter().zip(&self.images) {
            if !c.is_zero() {
                out = add(&out, &crate::lattice::matrix::scale(c, img));
            }
        }
        out
    }
}

/// A presented pushout with its two structure maps.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub monoid: PresentedMonoid,
    pub left: PresentedHom,
    pub right: PresentedHom,
}

/// `P₁ ⊕_Q P₂` presented on the disjoint union of generators.
pub fn pushout(f: &PresentedHom, g: &PresentedHom) -> Result<Pushout> {
    if f.domain != g.domain {
        return Err(Error::Invalid("pushout needs a common source".into()));
    }
    let (n1, n2) = (f.codomain.generator_count, g.codomain.generator_count);
    let n = n1 + n2;
    let left = |v: &Vector| -> Vector { v.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), n2)).collect() };
    let right = |v: &Vector| -> Vector { std::iter::repeat_n(BigInt::zero(), n1).chain(v.iter().cloned()).collect() };
    let mut relations = Vec::new();
    for (a, b) in &f.codomain.relations {
        relations.push((left(a), left(b)));
    }
    for (a, b) in &g.codomain.relations {
        relations.push((right(a), right(b)));
    }
    for (fi, gi) in f.images.iter().zip(&g.images) {
        let pair = (left(fi), right(gi));
        if pair.0 != pair.1 {
            relations.push(pair);
        }
    }
    let monoid = PresentedMonoid { generator_count: n, relations };
    let l_imgs: Vec<Vector> = (0..n1).map(|i| crate::lattice::matrix::unit_vector(n, i)).collect();
    let r_imgs: Vec<Vector> = (0..n2).map(|i| crate::lattice::matrix::unit_vector(n, n1 + i)).collect();
    Ok(Pushout {
        left: PresentedHom { domain: f.codomain.clone(), codomain: monoid.clone(), images: l_imgs },
        right: PresentedHom { domain: g.codomain.clone(), codomain: monoid.clone(), images: r_imgs },
        monoid,
    })
}

/// `P^int`, the image of `P` in `P^gp`, with the images of the presentation generators.
#[derive(Clone, Debug)]
pub struct Integralization {
    pub monoid: EmbeddedMonoid,
    /// `ℤⁿ → P^gp`, sending eᵢ to the class of the i-th generator.
    pub map: GroupHom,
}

impl Integralization {
    pub fn image_of(&self, w: &[BigInt]) -> Vector {
        self.map.apply(w)
    }

    /// Images of the presentation generators.
    pub fn gen_images(&self) -> Vec<Vector> {
        (0..self.map.domain().dim()).map(|i| self.map.apply(&self.map.domain().generator(i))).collect()
    }
}

/// Groupifies the presentation and takes the image of the generators.
pub fn integralize(p: &PresentedMonoid) -> Integralization {
    let n = p.generator_count;
    let cols: Vec<Vector> = p.relations.iter().map(|(a, b)| sub(a, b)).filter(|v| !is_zero(v)).collect();
    let q = quotient(n, &IntMatrix::from_cols(n, &cols));
    let map = GroupHom::new(AbelianGroup::free(n), q.group.clone(), q.proj).expect("free domain");
    let gens: Vec<Vector> = (0..n).map(|i| map.apply(&map.domain().generator(i))).collect();
    let monoid = EmbeddedMonoid::new(q.group.clone(), &gens).expect("generators live in the group");
    // The generators may fail to span P^gp only when some are zero; they always span.
    debug_assert_eq!(monoid.group(), &q.group);
    Integralization { monoid, map }
}

/// A presentation of a monoid of the form `ℤˢ ⊕ ℕʳ`, with the images of its generators.
///
/// Generators: lifts of the irreducibles of `P̄`, then a basis `uᵢ` of `P*`, then `−uᵢ`.
/// Returns `None` when `P*` has torsion or `P̄` is not free.
pub fn free_presentation(p: &EmbeddedMonoid) -> Option<(PresentedMonoid, Vec<Vector>)> {
    let units = p.units();
    if !units.group().is_torsion_free() || !p.is_free() {
        return None;
    }
    let (sharp, smap) = p.sharpen();
    let irr = sharp.irreducibles().ok()?;
    let mut images: Vec<Vector> = Vec::new();
    for x in &irr {
        let pre = smap.group_map().preimage(x)?;
        // Any lift works up to units; pick one lying in P.
        let lift = p
            .gens()
            .iter()
            .find(|g| smap.apply(g) == *x)
            .cloned()
            .unwrap_or(pre);
        images.push(lift);
    }
    let s = units.group().rank();
    let r = irr.len();
    let ub: Vec<Vector> = (0..s).map(|i| units.inclusion().apply(&units.group().generator(i))).collect();
    images.extend(ub.iter().cloned());
    images.extend(ub.iter().map(|u| p.group().neg(u)));
    let n = r + 2 * s;
    let relations = (0..s)
        .map(|i| {
            let mut a = zero_vector(n);
            a[r + i] = BigInt::from(1);
            a[r + s + i] = BigInt::from(1);
            (a, zero_vector(n))
        })
        .collect();
    Some((PresentedMonoid { generator_count: n, relations }, images))
}

/// Writes an element of a free-like monoid as a word in the generators of [`free_presentation`].
pub fn express_in_free_presentation(p: &EmbeddedMonoid, images: &[Vector], x: &[BigInt]) -> Option<Vector> {
    let s2 = images.len();
    let m = IntMatrix::from_cols(p.group().dim(), images).hstack(&p.group().relation_matrix());
    let sol = crate::lattice::solve(&m, x)?;
    let units = p.units().group().rank();
    let r = s2 - 2 * units;
    let mut word: Vector = sol[..s2].to_vec();
    for i in 0..units {
        let net = &word[r + i] - &word[r + units + i];
        word[r + i] = if net.is_positive() { net.clone() } else { BigInt::zero() };
        word[r + units + i] = if net.is_negative() { -net } else { BigInt::zero() };
    }
    if word[..r].iter().any(|c| c.is_negative()) {
        return None;
    }
    Some(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector;

    fn rel(a: &[i64], b: &[i64]) -> (Vector, Vector) {
        (vector(a), vector(b))
    }

    #[test]
    fn integralize_two_x_two_y() {
        let p = PresentedMonoid::new(2, vec![rel(&[2, 0], &[0, 2])]).unwrap();
        let i = integralize(&p);
        assert_eq!(i.monoid.group(), &AbelianGroup::new(1, vec![BigInt::from(2)]));
        let mut g = i.monoid.gens_ambient();
        g.sort();
        assert_eq!(g, vec![vector(&[1, 0]), vector(&[1, 1])]);
    }

    #[test]
    fn integralize_collapses() {
        let p = PresentedMonoid::new(2, vec![rel(&[1, 1], &[0, 2])]).unwrap();
        let i = integralize(&p);
        assert_eq!(i.monoid.group(), &AbelianGroup::free(1));
        assert_eq!(i.monoid.gens().len(), 1);
        assert_eq!(integralize(&PresentedMonoid::free(1)).monoid.gens().len(), 1);
    }

    #[test]
    fn word_problem() {
        let p = PresentedMonoid::new(2, vec![rel(&[2, 0], &[0, 2])]).unwrap();
        assert_eq!(p.words_equal(&vector(&[3, 0]), &vector(&[1, 2]), 100), WordAnswer::Yes);
        assert_eq!(p.words_equal(&vector(&[1, 0]), &vector(&[0, 1]), 100), WordAnswer::No);
    }

    #[test]
    fn pushout_with_group() {
        let q = PresentedMonoid::free(1);
        let p1 = PresentedMonoid::free(1);
        let z = PresentedMonoid::new(2, vec![rel(&[1, 1], &[0, 0])]).unwrap();
        let f = PresentedHom::new(q.clone(), p1, vec![vector(&[2])], 100).unwrap();
        let g = PresentedHom::new(q, z, vec![vector(&[1, 0])], 100).unwrap();
        let po = pushout(&f, &g).unwrap();
        let i = integralize(&po.monoid);
        assert_eq!(i.monoid.group(), &AbelianGroup::free(1));
        assert!(i.monoid.is_group());
    }
}
