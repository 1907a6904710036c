//! Preimages of fine monoids under group homomorphisms.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{canonical_order, EmbeddedMonoid};
use crate::lattice::matrix::{neg, IntMatrix, Vector};
use crate::lattice::{hilbert_basis, AbelianGroup, GroupHom};

/// `{a ∈ A : φ(a) ∈ P}` as a monoid in `A`, for `φ: A → P^gp`.
///
/// For saturated `P` this is the lattice-point monoid of the pulled-back cone. In general it
/// is the projection of `{(a, c) ∈ A ⊕ ℕᵏ : φ(a) = Σ cᵢpᵢ}`, whose Hilbert basis is finite.
pub fn preimage_monoid(map: &GroupHom, p: &EmbeddedMonoid) -> EmbeddedMonoid {
    assert_eq!(map.codomain(), p.group(), "map must land in the monoid's group");
    let a = map.domain().clone();
    let gens = if p.is_saturated() { saturated_preimage(map, p) } else { general_preimage(map, p) };
    EmbeddedMonoid::new(a, &gens).expect("generators live in the domain")
}

fn lift(v: &Vector, g: &AbelianGroup) -> Vector {
    let mut out = v.clone();
    out.extend(std::iter::repeat_n(BigInt::zero(), g.torsion().len()));
    out
}

/// Generators of the monoid of free vectors in a cone, lifted to `g` with zero torsion,
/// followed by the torsion generators of `g`.
fn cone_monoid_gens(g: &AbelianGroup, ineqs: &[Vector], eqs: &[Vector]) -> Vec<Vector> {
    let r = g.rank();
    let hb = hilbert_basis(r, ineqs, eqs);
    let mut gens: Vec<Vector> = hb.elements.iter().map(|v| lift(v, g)).collect();
    for l in &hb.lineality {
        gens.push(lift(l, g));
        gens.push(lift(&neg(l), g));
    }
    for k in 0..g.torsion().len() {
        gens.push(g.generator(r + k));
    }
    gens.sort_by(canonical_order);
    gens
}

fn saturated_preimage(map: &GroupHom, p: &EmbeddedMonoid) -> Vec<Vector> {
    let a = map.domain();
    let rp = p.rank();
    let free_cols: Vec<usize> = (0..a.rank()).collect();
    let m = map.matrix().select_rows(&(0..rp).collect::<Vec<_>>()).select_cols(&free_cols);
    let mt = m.transpose();
    let ineqs: Vec<Vector> = p.cone().facets.iter().map(|f| mt.mul_vec(f)).collect();
    let eqs: Vec<Vector> = p.cone().equations.iter().map(|e| mt.mul_vec(e)).collect();
    cone_monoid_gens(a, &ineqs, &eqs)
}

fn general_preimage(map: &GroupHom, p: &EmbeddedMonoid) -> Vec<Vector> {
    let a = map.domain();
    let k = p.gens().len();
    let ds = a.direct_sum(&AbelianGroup::free(k));
    let pg = p.group();
    let neg_gens: Vec<Vector> = p.gens().iter().map(|g| pg.neg(g)).collect();
    let block = map.matrix().hstack(&IntMatrix::from_cols(pg.dim(), &neg_gens));
    let combined = GroupHom::new_reduced(
        ds.group.clone(),
        pg.clone(),
        block.mul(&IntMatrix::from_cols(a.dim() + k, &proj_cols(&ds, a, k))),
    );
    let kernel = combined.kernel();
    let kg = kernel.group();
    // The coefficient part c must be nonnegative.
    let to_coeffs = ds.proj_right.matrix().mul(kernel.inclusion().matrix());
    let free_cols: Vec<usize> = (0..kg.rank()).collect();
    let ineqs: Vec<Vector> = to_coeffs.select_cols(&free_cols).row_vectors();
    let kgens = cone_monoid_gens(kg, &ineqs, &[]);
    kgens
        .iter()
        .map(|v| ds.proj_left.apply(&kernel.inclusion().apply(v)))
        .collect()
}

/// Columns expressing each basis vector of `A ⊕ ℤᵏ` as a pair `(a, c)`.
fn proj_cols(ds: &crate::lattice::DirectSum, a: &AbelianGroup, k: usize) -> Vec<Vector> {
    (0..ds.group.dim())
        .map(|j| {
            let e = ds.group.generator(j);
            let mut v = ds.proj_left.apply(&e);
            v.extend(ds.proj_right.apply(&e));
            debug_assert_eq!(v.len(), a.dim() + k);
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vector;

    #[test]
    fn addition_preimage() {
        let map = GroupHom::new(AbelianGroup::free(2), AbelianGroup::free(1), IntMatrix::from_i64(1, 2, &[1, 1])).unwrap();
        let r = preimage_monoid(&map, &EmbeddedMonoid::free(1));
        assert!(r.contains_ambient(&vector(&[1, -1])));
        assert!(r.contains_ambient(&vector(&[-1, 1])));
        assert!(r.contains_ambient(&vector(&[1, 0])));
        assert!(!r.contains_ambient(&vector(&[-1, 0])));
        assert_eq!(r.units().group().rank(), 1);
    }

    #[test]
    fn non_saturated_target() {
        let p = EmbeddedMonoid::from_i64(AbelianGroup::free(1), &[&[2], &[3]]).unwrap();
        let map = GroupHom::identity(p.group());
        let r = preimage_monoid(&map, &p);
        assert!(r.same_monoid(&p));
        let double = GroupHom::new(AbelianGroup::free(1), AbelianGroup::free(1), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let r2 = preimage_monoid(&double, &p);
        assert!(r2.same_monoid(&EmbeddedMonoid::free(1)));
    }
}
