//! Ideals of fine monoids given by generators.

use std::fmt;

use num_bigint::BigInt;

use super::EmbeddedMonoid;
use crate::lattice::matrix::{fmt_vector, Vector};
use crate::{Error, Result};

/// The ideal `I = ⋃ (g + P)` generated by finitely many elements of `P`.
///
/// Generators are kept minimal: a generator is dropped when it lies in the ideal generated
/// by an earlier-kept generator.
#[derive(Clone)]
pub struct MonoidIdeal {
    parent: EmbeddedMonoid,
    gens: Vec<Vector>,
}

impl MonoidIdeal {
    /// Generators in canonical coordinates of `P^gp`; each must lie in `P`.
    pub fn new(parent: &EmbeddedMonoid, gens: &[Vector]) -> Result<Self> {
        for g in gens {
            if g.len() != parent.group().dim() {
                return Err(Error::Dimension(format!("ideal generator {} has the wrong length", fmt_vector(g))));
            }
            if !parent.contains(g) {
                return Err(Error::NotInMonoid(format!("ideal generator {}", fmt_vector(&parent.to_ambient(g)))));
            }
        }
        Ok(MonoidIdeal { parent: parent.clone(), gens: prune(parent, gens) })
    }

    /// Generators given in the parent's ambient coordinates.
    pub fn from_ambient(parent: &EmbeddedMonoid, gens: &[Vector]) -> Result<Self> {
        let mut canon = Vec::new();
        for g in gens {
            canon.push(
                parent
                    .from_ambient(g)
                    .ok_or_else(|| Error::NotInMonoid(format!("ideal generator {}", fmt_vector(g))))?,
            );
        }
        Self::new(parent, &canon)
    }

    /// `𝔪_P = P ∖ P*`, generated by the non-unit generators.
    pub fn maximal(parent: &EmbeddedMonoid) -> Self {
        let units = parent.unit_gen_indices();
        let gens: Vec<Vector> = parent
            .gens()
            .iter()
            .enumerate()
            .filter(|(i, _)| !units.contains(i))
            .map(|(_, g)| g.clone())
            .collect();
        MonoidIdeal { parent: parent.clone(), gens: prune(parent, &gens) }
    }

    /// The unit ideal `P`.
    pub fn unit(parent: &EmbeddedMonoid) -> Self {
        MonoidIdeal { parent: parent.clone(), gens: vec![parent.group().zero()] }
    }

    pub fn parent(&self) -> &EmbeddedMonoid {
        &self.parent
    }

    pub fn gens(&self) -> &[Vector] {
        &self.gens
    }

    pub fn gens_ambient(&self) -> Vec<Vector> {
        self.gens.iter().map(|g| self.parent.to_ambient(g)).collect()
    }

    /// Membership `x ∈ I`.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let g = self.parent.group();
        self.gens.iter().any(|i| self.parent.contains(&g.sub(x, i)))
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.parent.group().zero())
    }

    /// Equality of generated ideals.
    pub fn same_ideal(&self, other: &MonoidIdeal) -> bool {
        self.parent.group() == other.parent.group()
            && self.gens.iter().all(|g| other.contains(g))
            && other.gens.iter().all(|g| self.contains(g))
    }

    /// `Iⁿ`, built one factor at a time with pruning after each product.
    pub fn power(&self, n: usize) -> Result<MonoidIdeal> {
        if n == 0 {
            return Err(Error::Invalid("ideal power needs n >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self);
        }
        Ok(acc)
    }

    /// `I + J` in the monoid sense: all sums `i + j`.
    pub fn product(&self, other: &MonoidIdeal) -> MonoidIdeal {
        let g = self.parent.group();
        let mut sums = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                sums.push(g.add(a, b));
            }
        }
        MonoidIdeal { parent: self.parent.clone(), gens: prune(&self.parent, &sums) }
    }

    /// The ideal generated by the images of the generators under a map into another monoid.
    pub fn push_forward(&self, h: &super::MonoidHom) -> MonoidIdeal {
        let imgs: Vec<Vector> = self.gens.iter().map(|g| h.apply(g)).collect();
        MonoidIdeal { parent: h.codomain().clone(), gens: prune(h.codomain(), &imgs) }
    }
}

impl fmt::Debug for MonoidIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens_ambient().iter().map(|g| fmt_vector(g)).collect();
        write!(f, "ideal <{}> of {:?}", gens.join(" "), self.parent)
    }
}

/// Drops duplicates and any generator lying in the ideal of an earlier-kept one.
fn prune(parent: &EmbeddedMonoid, gens: &[Vector]) -> Vec<Vector> {
    let g = parent.group();
    let reduced: Vec<Vector> = gens.iter().map(|x| g.reduce(x)).collect();
    let mut kept: Vec<Vector> = Vec::new();
    for (i, x) in reduced.iter().enumerate() {
        if kept.iter().any(|k| parent.contains(&g.sub(x, k))) {
            continue;
        }
        // A later generator dividing x wins only if x does not divide it back.
        let dominated = reduced.iter().enumerate().any(|(j, y)| {
            j > i && y != x && parent.contains(&g.sub(x, y)) && !parent.contains(&g.sub(y, x))
        });
        if dominated {
            continue;
        }
        kept.push(x.clone());
    }
    kept
}
