//! Presentation-level realizations: binomial presentations of monoid algebras, smoothness of
//! realized maps read off from monoid data, and dimension counts of real and positive points.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::lattice::{fmt_vector, sign_count, Vector};
use crate::monoid::{EmbeddedMonoid, MonoidHom, PresentedMonoid};

/// Coefficient ring of a presentation. Only a label; no coefficient arithmetic is done.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    Rationals,
    Complexes,
}

impl BaseRing {
    pub fn symbol(self) -> &'static str {
        match self {
            BaseRing::Integers => "Z",
            BaseRing::Rationals => "Q",
            BaseRing::Complexes => "C",
        }
    }

    pub fn parse(s: &str) -> Option<BaseRing> {
        match s {
            "Z" | "integers" => Some(BaseRing::Integers),
            "Q" | "rationals" => Some(BaseRing::Rationals),
            "C" | "complexes" => Some(BaseRing::Complexes),
            _ => None,
        }
    }
}

/// `base[x1,…,xn] / (x^a − x^b, …)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub variable_count: usize,
    pub binomial_relations: Vec<(Vector, Vector)>,
    pub base: BaseRing,
}

/// One variable per generator and one binomial per relation.
pub fn ring_presentation(p: &PresentedMonoid, base: BaseRing) -> RingPresentation {
    RingPresentation {
        variable_count: p.generator_count(),
        binomial_relations: p.relations().to_vec(),
        base,
    }
}

fn monomial(e: &[BigInt]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, k)| !k.is_zero())
        .map(|(i, k)| if *k == BigInt::from(1) { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl RingPresentation {
    fn ring(&self) -> String {
        let vars: Vec<String> = (1..=self.variable_count).map(|i| format!("x{i}")).collect();
        format!("{}[{}]", self.base.symbol(), vars.join(","))
    }

    /// The quotient written with ordinary monomials, e.g. `C[x1,x2]/(x1^2 - x2^2)`.
    pub fn polynomial_form(&self) -> String {
        if self.binomial_relations.is_empty() {
            return self.ring();
        }
        let rels: Vec<String> =
            self.binomial_relations.iter().map(|(a, b)| format!("{} - {}", monomial(a), monomial(b))).collect();
        format!("{}/({})", self.ring(), rels.join(", "))
    }
}

/// One line for the ring, then one `x^a = x^b` line per relation.
impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}", self.ring())?;
        for (a, b) in &self.binomial_relations {
            writeln!(f, "x^{} = x^{}", fmt_vector(a), fmt_vector(b))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothness {
    Etale,
    Smooth,
    Unclassified,
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Smoothness::Etale => "etale",
            Smoothness::Smooth => "smooth",
            Smoothness::Unclassified => "unclassified",
        })
    }
}

/// Sufficient criterion: `h̄` an isomorphism with torsion kernel (and torsion cokernel for étale).
/// `Unclassified` makes no claim either way.
pub fn smoothness_class(h: &MonoidHom) -> Smoothness {
    if !h.is_sharp_iso() {
        return Smoothness::Unclassified;
    }
    let g = h.group_map();
    if g.kernel().group().rank() != 0 {
        return Smoothness::Unclassified;
    }
    if g.cokernel().0.rank() == 0 {
        Smoothness::Etale
    } else {
        Smoothness::Smooth
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationProfile {
    /// Dimension of the positive real points `ℝ_{>0}(P^gp)`.
    pub positive_dim: usize,
    /// Dimension of the circle factor `S¹(P^gp)`.
    pub circle_dim: usize,
    /// `|torsion(P^gp)|`.
    pub component_count: BigInt,
    /// `|Hom(P^gp, {±1})|`.
    pub sign_components: BigInt,
}

pub fn realization_profile(p: &EmbeddedMonoid) -> RealizationProfile {
    let g = p.group();
    RealizationProfile {
        positive_dim: g.rank(),
        circle_dim: g.rank(),
        component_count: g.torsion_order(),
        sign_components: sign_count(g),
    }
}

/// Which transfer statements for lifting points along `h` apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurjectivityTransfer {
    /// Complex lifts give nonnegative real lifts; holds for every `h`.
    pub r_plus_surjective_if_complex_surjective: bool,
    /// The same for real lifts; needs `Q` fs and `h^gp` an isomorphism.
    pub r_surjective_criteria: bool,
    pub domain_fs: bool,
    pub group_iso: bool,
}

pub fn surjectivity_transfer(h: &MonoidHom) -> SurjectivityTransfer {
    let domain_fs = h.domain().is_fs();
    let group_iso = h.group_map().is_iso();
    SurjectivityTransfer {
        r_plus_surjective_if_complex_surjective: true,
        r_surjective_criteria: domain_fs && group_iso,
        domain_fs,
        group_iso,
    }
}

#[cfg(test)]
mod tests;
