//! The refinement factorization `Q → R → P` of a monoid map and its classification.

use crate::lattice::GroupHom;
use crate::monoid::{induced_on_quotients, preimage_monoid, EmbeddedMonoid, MonoidHom};
use crate::{Error, Result};

/// `h = p ∘ i` with `R = (h^gp)⁻¹(P) ⊆ Q^gp`.
#[derive(Clone, Debug)]
pub struct RefinementFactorization {
    pub r: EmbeddedMonoid,
    pub i: MonoidHom,
    pub p: MonoidHom,
}

/// `R` shares the groupification of `Q`, so `i^gp` is the identity.
pub fn refinement_factorization(h: &MonoidHom) -> RefinementFactorization {
    let q = h.domain();
    let pulled = preimage_monoid(h.group_map(), h.codomain());
    let r = EmbeddedMonoid::with_embedding(q.embedding().clone(), pulled.gens().to_vec());
    let id = GroupHom::identity(q.group());
    let i = MonoidHom::new(q.clone(), r.clone(), id).expect("Q lies in its preimage monoid");
    let p = MonoidHom::new(r.clone(), h.codomain().clone(), h.group_map().clone()).expect("R maps into P");
    RefinementFactorization { r, i, p }
}

/// Flags of a monoid map together with the witnesses behind them.
#[derive(Clone, Debug)]
pub struct RefinementReport {
    pub input: MonoidHom,
    pub factorization: RefinementFactorization,
    /// `i` is an isomorphism.
    pub exact: bool,
    /// `p` is an isomorphism.
    pub good: bool,
    /// `p̄` is an isomorphism.
    pub strong: bool,
    /// A section `s̄` of `p̄` with `s̄h̄ = ī` exists.
    pub refinement: bool,
    pub sharp_group_surjective: bool,
    /// The section `s̄: P̄ → R̄`.
    pub section: Option<MonoidHom>,
}

/// Decides every flag exactly.
///
/// When `h̄^gp` is surjective its kernel consists of classes of units of `R`, so `ī^gp`
/// factors through it; the factor carries `P̄` into `R̄` and is the unique section. When
/// `h̄^gp` is not surjective no section exists.
pub fn classify(h: &MonoidHom) -> RefinementReport {
    let factorization = refinement_factorization(h);
    let RefinementFactorization { r, i, p } = &factorization;
    let (_, qs) = h.domain().sharpen();
    let (rbar, rs) = r.sharpen();
    let (pbar, ps) = h.codomain().sharpen();
    let hbar = induced_on_quotients(h.group_map(), qs.group_map(), ps.group_map());
    let ibar = induced_on_quotients(i.group_map(), qs.group_map(), rs.group_map());
    let pbar_map = induced_on_quotients(p.group_map(), rs.group_map(), ps.group_map());
    let sharp_group_surjective = hbar.profile().surjective;
    let section = if sharp_group_surjective {
        hbar.factor(&ibar).and_then(|s| MonoidHom::new(pbar.clone(), rbar.clone(), s).ok()).filter(|s| {
            s.group_map().then(&pbar_map).same_as(&GroupHom::identity(pbar.group())) && hbar.then(s.group_map()).same_as(&ibar)
        })
    } else {
        None
    };
    RefinementReport {
        input: h.clone(),
        exact: i.is_iso(),
        good: p.is_iso(),
        strong: p.is_sharp_iso(),
        refinement: section.is_some(),
        sharp_group_surjective,
        section,
        factorization,
    }
}

/// The chart monoid `C ⊕_Q R` (integral pushout) of the space realizing a refinement along
/// `a: Q → C`. Since `i^gp` is an isomorphism this is the submonoid of `C^gp` generated by
/// `C` and `a^gp(R)`.
pub fn realize_refinement_chart(a: &MonoidHom, h: &MonoidHom) -> Result<EmbeddedMonoid> {
    if a.domain().group() != h.domain().group() || !a.domain().same_monoid(h.domain()) {
        return Err(Error::Invalid("both maps must start at the same monoid".into()));
    }
    let report = classify(h);
    if !report.refinement {
        return Err(Error::NotRefinement);
    }
    let c = a.codomain();
    let mut gens = c.gens().to_vec();
    gens.extend(report.factorization.r.gens().iter().map(|v| a.group_map().apply(v)));
    Ok(EmbeddedMonoid::with_embedding(c.embedding().clone(), gens).reduced())
}

#[cfg(test)]
mod tests;
