//! Rational polyhedral cones: double description and Hilbert bases.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{dot, floor_div, is_zero, neg, primitive, rank, scale, sub, unit_vector, IntMatrix, Vector};
use super::smith::{integer_kernel, saturated_span, smith_normal_form, LinearSolver};

/// Generators of a cone: a lineality basis plus extreme rays modulo the lineality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
}

/// Converts `{x : ⟨a,x⟩ ≥ 0 for a in ineqs, ⟨e,x⟩ = 0 for e in eqs}` into generators.
///
/// Motzkin's double description with the algebraic adjacency test.
pub fn cone_generators(dim: usize, ineqs: &[Vector], eqs: &[Vector]) -> ConeGenerators {
    let mut constraints: Vec<Vector> = Vec::new();
    for e in eqs {
        constraints.push(e.clone());
        constraints.push(neg(e));
    }
    constraints.extend(ineqs.iter().cloned());

    let mut lin: Vec<Vector> = (0..dim).map(|i| unit_vector(dim, i)).collect();
    let mut rays: Vec<Vector> = Vec::new();
    let mut done: Vec<Vector> = Vec::new();

    for a in constraints {
        if is_zero(&a) {
            continue;
        }
        if let Some(pos) = lin.iter().position(|l| !dot(&a, l).is_zero()) {
            let mut l = lin.remove(pos);
            if dot(&a, &l).is_negative() {
                l = neg(&l);
            }
            let s = dot(&a, &l);
            for other in lin.iter_mut() {
                let t = dot(&a, other);
                *other = primitive(&sub(&scale(&s, other), &scale(&t, &l)));
            }
            for r in rays.iter_mut() {
                let t = dot(&a, r);
                *r = primitive(&sub(&scale(&s, r), &scale(&t, &l)));
            }
            rays.push(primitive(&l));
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| dot(&a, r)).collect();
            let tight = |r: &Vector| -> BTreeSet<usize> {
                done.iter().enumerate().filter(|(_, c)| dot(c, r).is_zero()).map(|(i, _)| i).collect()
            };
            let needed = dim.saturating_sub(lin.len() + 2);
            let mut next: Vec<Vector> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
            let negs: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
            let tights: Vec<BTreeSet<usize>> = rays.iter().map(tight).collect();
            for &p in &pos {
                for &n in &negs {
                    let common: Vec<usize> = tights[p].intersection(&tights[n]).copied().collect();
                    if common.len() < needed {
                        continue;
                    }
                    let rows: Vec<Vector> = common.iter().map(|&i| done[i].clone()).collect();
                    if rank(dim, &rows) != needed {
                        continue;
                    }
                    let combo = sub(&scale(&values[p], &rays[n]), &scale(&values[n], &rays[p]));
                    next.push(primitive(&combo));
                }
            }
            rays = next;
        }
        done.push(a);
    }
    let mut seen = BTreeSet::new();
    rays.retain(|r| !is_zero(r) && seen.insert(r.clone()));
    ConeGenerators { lineality: lin, rays }
}

/// Inequality description of a cone given by generators: `(facets, equations)`.
///
/// Facets are irredundant primitive normals; equations span the orthogonal complement.
pub fn cone_inequalities(dim: usize, gens: &[Vector]) -> (Vec<Vector>, Vec<Vector>) {
    let dual = cone_generators(dim, gens, &[]);
    let mut facets = dual.rays;
    facets.sort();
    (facets, dual.lineality)
}

/// A full description of a cone: its lattice generators and its facets.
#[derive(Clone, Debug)]
pub struct HilbertBasis {
    /// Basis of the lineality lattice (a sublattice of ℤⁿ, saturated).
    pub lineality: Vec<Vector>,
    /// Minimal generators of the pointed part modulo lineality, lifted to ℤⁿ.
    pub elements: Vec<Vector>,
}

/// Hilbert basis of `{x ∈ ℤⁿ : ⟨a,x⟩ ≥ 0, ⟨e,x⟩ = 0}`.
pub fn hilbert_basis(dim: usize, ineqs: &[Vector], eqs: &[Vector]) -> HilbertBasis {
    let g = cone_generators(dim, ineqs, eqs);
    hilbert_basis_from_generators(dim, &g.lineality, &g.rays)
}

/// Hilbert basis of `(ℚ-span lineality + cone(rays)) ∩ ℤⁿ`.
pub fn hilbert_basis_from_generators(dim: usize, lineality: &[Vector], rays: &[Vector]) -> HilbertBasis {
    let all: Vec<Vector> = lineality.iter().chain(rays).cloned().collect();
    let span = saturated_span(dim, &all);
    let s = span.len();
    if s == 0 {
        return HilbertBasis { lineality: Vec::new(), elements: Vec::new() };
    }
    // Coordinates inside the saturated span.
    let basis = IntMatrix::from_cols(dim, &span);
    let solver = LinearSolver::new(&basis);
    let coords = |v: &Vector| solver.solve(v).expect("vector lies in its own span");
    let lin_c: Vec<Vector> = lineality.iter().map(coords).collect();
    let rays_c: Vec<Vector> = rays.iter().map(coords).collect();

    let lin_lattice = if lin_c.is_empty() { Vec::new() } else { saturated_span(s, &lin_c) };
    let l = lin_lattice.len();
    // Split ℤˢ = Λ ⊕ ℤ^{s-l}: projection and section.
    let (proj, section) = if l == 0 {
        (IntMatrix::identity(s), IntMatrix::identity(s))
    } else {
        let sm = smith_normal_form(&IntMatrix::from_cols(s, &lin_lattice));
        let rows: Vec<usize> = (l..s).collect();
        (sm.u.select_rows(&rows), sm.u_inv.select_cols(&rows))
    };
    let m = s - l;
    let lift = |z: &Vector| -> Vector { basis.mul_vec(&section.mul_vec(z)) };
    let lineality_out: Vec<Vector> = lin_lattice.iter().map(|v| basis.mul_vec(v)).collect();
    if m == 0 {
        return HilbertBasis { lineality: lineality_out, elements: Vec::new() };
    }

    let mut prays: Vec<Vector> = rays_c.iter().map(|r| primitive(&proj.mul_vec(r))).filter(|r| !is_zero(r)).collect();
    prays.sort();
    prays.dedup();
    let (facets, _) = cone_inequalities(m, &prays);
    let elements = pointed_hilbert_basis(m, &prays, &facets);
    HilbertBasis { lineality: lineality_out, elements: elements.iter().map(lift).collect() }
}

/// Hilbert basis of a full-dimensional pointed cone in ℤᵐ given by rays and facets.
fn pointed_hilbert_basis(m: usize, rays: &[Vector], facets: &[Vector]) -> Vec<Vector> {
    let inside = |v: &Vector| facets.iter().all(|f| !dot(f, v).is_negative());
    let grading: Vector = (0..m).map(|i| facets.iter().map(|f| f[i].clone()).sum()).collect();

    let mut candidates: BTreeSet<Vector> = rays.iter().cloned().collect();
    for subset in index_subsets(rays.len(), m) {
        let cols: Vec<Vector> = subset.iter().map(|&i| rays[i].clone()).collect();
        let b = IntMatrix::from_cols(m, &cols);
        if rank(m, &cols) < m {
            continue;
        }
        for p in parallelepiped_points(&b) {
            if !is_zero(&p) {
                candidates.insert(p);
            }
        }
    }
    let mut ordered: Vec<(BigInt, Vector)> = candidates.into_iter().map(|v| (dot(&grading, &v), v)).collect();
    ordered.sort();
    let mut basis: Vec<Vector> = Vec::new();
    for (_, v) in ordered {
        debug_assert!(inside(&v));
        if basis.iter().any(|b| inside(&sub(&v, b))) {
            continue;
        }
        basis.push(v);
    }
    basis
}

/// All k-element subsets of `0..n` in lexicographic order.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Lattice points of `{B λ : λ ∈ [0,1)ᵐ}` for a nonsingular square `B`.
pub fn parallelepiped_points(b: &IntMatrix) -> Vec<Vector> {
    let m = b.rows();
    let sm = smith_normal_form(b);
    let diag: Vec<BigInt> = (0..m).map(|i| sm.s.get(i, i).clone()).collect();
    let big = diag.last().cloned().unwrap_or_else(BigInt::one);
    let mut reps: Vec<Vector> = vec![Vec::new()];
    for d in &diag {
        let mut next = Vec::new();
        for r in &reps {
            let mut x = BigInt::zero();
            while &x < d {
                let mut v = r.clone();
                v.push(x.clone());
                next.push(v);
                x += 1;
            }
        }
        reps = next;
    }
    reps.into_iter()
        .map(|y| {
            let x = sm.u_inv.mul_vec(&y);
            // λ · big = V · (U x scaled by big / dᵢ)
            let ux = sm.u.mul_vec(&x);
            let scaled: Vector = ux.iter().zip(&diag).map(|(v, d)| v * (&big / d)).collect();
            let lam_big = sm.v.mul_vec(&scaled);
            let floors: Vector = lam_big.iter().map(|v| floor_div(v, &big)).collect();
            sub(&x, &b.mul_vec(&floors))
        })
        .collect()
}

/// Extreme rays and facets of the cone spanned by `gens`, with a strictly positive grading.
#[derive(Clone, Debug)]
pub struct PolyhedralCone {
    pub dim: usize,
    pub facets: Vec<Vector>,
    pub equations: Vec<Vector>,
}

impl PolyhedralCone {
    pub fn spanned_by(dim: usize, gens: &[Vector]) -> Self {
        let (facets, equations) = cone_inequalities(dim, gens);
        PolyhedralCone { dim, facets, equations }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.facets.iter().all(|f| !dot(f, v).is_negative()) && self.equations.iter().all(|e| dot(e, v).is_zero())
    }

    /// Indices of the facets on which `v` vanishes.
    pub fn tight_facets(&self, v: &[BigInt]) -> BTreeSet<usize> {
        self.facets.iter().enumerate().filter(|(_, f)| dot(f, v).is_zero()).map(|(i, _)| i).collect()
    }

    /// Sum of the facet normals; positive on the cone away from its lineality space.
    pub fn grading(&self) -> Vector {
        (0..self.dim).map(|i| self.facets.iter().map(|f| f[i].clone()).sum()).collect()
    }
}

/// The dual lattice vectors vanishing on a set of vectors, as rows.
pub fn annihilator(dim: usize, vectors: &[Vector]) -> Vec<Vector> {
    integer_kernel(dim, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::vector;

    fn sorted(mut v: Vec<Vector>) -> Vec<Vector> {
        v.sort();
        v
    }

    #[test]
    fn quadrant_rays() {
        let g = cone_generators(2, &[vector(&[1, 0]), vector(&[0, 1])], &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), vec![vector(&[0, 1]), vector(&[1, 0])]);
    }

    #[test]
    fn half_plane_has_lineality() {
        let g = cone_generators(2, &[vector(&[1, 1])], &[]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
    }

    #[test]
    fn facets_of_a1_cone() {
        let (f, e) = cone_inequalities(2, &[vector(&[2, 0]), vector(&[1, 1]), vector(&[0, 2])]);
        assert!(e.is_empty());
        assert_eq!(f, vec![vector(&[0, 1]), vector(&[1, 0])]);
    }

    #[test]
    fn dual_of_classical_cone() {
        // σ = cone((1,0),(1,2)); σ^∨ ∩ ℤ² has Hilbert basis (0,1),(1,0),(2,-1)
        let (dual_ineqs, _) = (vec![vector(&[1, 0]), vector(&[1, 2])], ());
        let hb = hilbert_basis(2, &dual_ineqs, &[]);
        assert_eq!(sorted(hb.elements), vec![vector(&[0, 1]), vector(&[1, 0]), vector(&[2, -1])]);
    }

    #[test]
    fn saturation_of_two_generators() {
        let (f, _) = cone_inequalities(2, &[vector(&[1, 0]), vector(&[1, 2])]);
        let hb = hilbert_basis(2, &f, &[]);
        assert_eq!(sorted(hb.elements), vec![vector(&[1, 0]), vector(&[1, 1]), vector(&[1, 2])]);
    }

    #[test]
    fn parallelepiped_count_is_determinant() {
        let b = IntMatrix::from_i64(2, 2, &[1, 1, 0, 3]);
        let pts = parallelepiped_points(&b);
        assert_eq!(pts.len(), 3);
        assert!(pts.contains(&vector(&[0, 0])));
    }

    #[test]
    fn lineality_and_rays_mixed() {
        let hb = hilbert_basis(2, &[vector(&[1, 1])], &[]);
        assert_eq!(hb.lineality.len(), 1);
        assert_eq!(hb.elements.len(), 1);
    }
}
