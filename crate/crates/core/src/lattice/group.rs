//! Finitely generated abelian groups in invariant-factor form and maps between them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{is_zero, unit_vector, zero_vector, IntMatrix, Vector};
use super::smith::{smith_normal_form, LinearSolver};

/// ℤʳ ⊕ ℤ/d₁ ⊕ ⋯ ⊕ ℤ/d_k with d₁ | ⋯ | d_k and every dᵢ ≥ 2.
///
/// Elements are vectors of length `r + k`; torsion coordinates live in `[0, dᵢ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Self {
        for d in &torsion {
            assert!(*d >= BigInt::from(2), "invariant factor below 2");
        }
        for w in torsion.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "invariant factors must form a divisibility chain");
        }
        AbelianGroup { rank, torsion }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Length of the coordinate vectors.
    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.dim())
    }

    /// The i-th canonical generator.
    pub fn generator(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    /// Reduces torsion coordinates into `[0, dᵢ)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vector {
        assert_eq!(v.len(), self.dim(), "element has wrong length for {self}");
        let mut out = v.to_vec();
        for (k, d) in self.torsion.iter().enumerate() {
            out[self.rank + k] = out[self.rank + k].mod_floor(d);
        }
        out
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vector {
        self.reduce(&super::matrix::add(a, b))
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vector {
        self.reduce(&super::matrix::sub(a, b))
    }

    pub fn neg(&self, a: &[BigInt]) -> Vector {
        self.reduce(&super::matrix::neg(a))
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> Vector {
        self.reduce(&super::matrix::scale(k, a))
    }

    pub fn is_zero(&self, a: &[BigInt]) -> bool {
        is_zero(&self.reduce(a))
    }

    /// Free part of an element.
    pub fn free_part(&self, a: &[BigInt]) -> Vector {
        a[..self.rank].to_vec()
    }

    /// Columns `dᵢ · e_{r+i}` generating the relations of the torsion part.
    pub fn relation_matrix(&self) -> IntMatrix {
        let cols: Vec<Vector> = self
            .torsion
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let mut v = zero_vector(self.dim());
                v[self.rank + k] = d.clone();
                v
            })
            .collect();
        IntMatrix::from_cols(self.dim(), &cols)
    }

    /// Order of an element, `None` when infinite.
    pub fn order_of(&self, a: &[BigInt]) -> Option<BigInt> {
        let a = self.reduce(a);
        if !is_zero(&a[..self.rank]) {
            return None;
        }
        let mut ord = BigInt::one();
        for (k, d) in self.torsion.iter().enumerate() {
            let x = &a[self.rank + k];
            let o = d / x.gcd(d);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }

    /// Enumerates all elements; only sensible for small finite groups.
    pub fn elements(&self) -> Option<Vec<Vector>> {
        if self.rank > 0 {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let d = d.to_i64()?;
            let mut next = Vec::new();
            for prefix in &out {
                for x in 0..d {
                    let mut v: Vector = prefix.clone();
                    v.push(BigInt::from(x));
                    next.push(v);
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Direct sum with canonical coordinates and the structure maps.
    pub fn direct_sum(&self, other: &AbelianGroup) -> DirectSum {
        let n = self.dim() + other.dim();
        let rel = block_diag(&self.relation_matrix(), &other.relation_matrix());
        let q = quotient(n, &rel);
        let (da, db) = (self.dim(), other.dim());
        let inj = |offset: usize, dom: &AbelianGroup| {
            let mut m = IntMatrix::zeros(n, dom.dim());
            for j in 0..dom.dim() {
                m.set(offset + j, j, BigInt::one());
            }
            GroupHom::new_reduced(dom.clone(), q.group.clone(), q.proj.mul(&m))
        };
        let proj = |offset: usize, len: usize, cod: &AbelianGroup| {
            let rows: Vec<usize> = (offset..offset + len).collect();
            GroupHom::new_reduced(q.group.clone(), cod.clone(), q.section.select_rows(&rows))
        };
        DirectSum {
            inj_left: inj(0, self),
            inj_right: inj(da, other),
            proj_left: proj(0, da, self),
            proj_right: proj(da, db, other),
            group: q.group,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
        }
    }
    m
}

/// Canonical form of a quotient ℤⁿ / (column span of the relations).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: AbelianGroup,
    /// ℤⁿ → group coordinates (reduce afterwards).
    pub proj: IntMatrix,
    /// group coordinates → ℤⁿ, a set-theoretic section of `proj`.
    pub section: IntMatrix,
}

/// Computes ℤⁿ / ⟨relations⟩ in canonical form.
///
/// When the relation lattice is a coordinate lattice ⊕ hᵢℤeᵢ the original coordinates are
/// kept (dropping those with hᵢ = 1); otherwise the Smith transform supplies coordinates.
pub fn quotient(n: usize, relations: &IntMatrix) -> Quotient {
    assert_eq!(relations.rows(), n);
    let cols: Vec<Vector> = relations.col_vectors().into_iter().filter(|c| !is_zero(c)).collect();
    if cols.is_empty() {
        return Quotient {
            group: AbelianGroup::free(n),
            proj: IntMatrix::identity(n),
            section: IntMatrix::identity(n),
        };
    }
    let rel = IntMatrix::from_cols(n, &cols);
    if let Some(q) = coordinate_quotient(n, &rel) {
        return q;
    }
    let s = smith_normal_form(&rel);
    let diag = |i: usize| if i < s.rank { s.s.get(i, i).clone() } else { BigInt::zero() };
    let free: Vec<usize> = (0..n).filter(|&i| diag(i).is_zero()).collect();
    let tors: Vec<usize> = (0..n).filter(|&i| !diag(i).is_zero() && !diag(i).is_one()).collect();
    let order: Vec<usize> = free.iter().chain(&tors).copied().collect();
    let mut proj = s.u.select_rows(&order);
    let mut section = s.u_inv.select_cols(&order);
    for (k, _) in free.iter().enumerate() {
        let row = proj.row(k);
        if row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            proj.negate_row(k);
            section.negate_col(k);
        }
    }
    let torsion = tors.iter().map(|&i| diag(i)).collect();
    Quotient { group: AbelianGroup::new(free.len(), torsion), proj, section }
}

fn coordinate_quotient(n: usize, rel: &IntMatrix) -> Option<Quotient> {
    let h: Vec<BigInt> = (0..n).map(|i| super::matrix::content(&rel.row(i))).collect();
    let solver = LinearSolver::new(rel);
    for (i, hi) in h.iter().enumerate() {
        if hi.is_zero() {
            continue;
        }
        let mut target = zero_vector(n);
        target[i] = hi.clone();
        solver.solve(&target)?;
    }
    let free: Vec<usize> = (0..n).filter(|&i| h[i].is_zero()).collect();
    let mut tors: Vec<usize> = (0..n).filter(|&i| h[i] > BigInt::one()).collect();
    tors.sort_by(|&a, &b| h[a].cmp(&h[b]));
    for w in tors.windows(2) {
        if !h[w[1]].is_multiple_of(&h[w[0]]) {
            return None;
        }
    }
    let order: Vec<usize> = free.iter().chain(&tors).copied().collect();
    let mut proj = IntMatrix::zeros(order.len(), n);
    let mut section = IntMatrix::zeros(n, order.len());
    for (k, &i) in order.iter().enumerate() {
        proj.set(k, i, BigInt::one());
        section.set(i, k, BigInt::one());
    }
    let torsion = tors.iter().map(|&i| h[i].clone()).collect();
    Some(Quotient { group: AbelianGroup::new(free.len(), torsion), proj, section })
}

/// A direct sum with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: AbelianGroup,
    pub inj_left: GroupHom,
    pub inj_right: GroupHom,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
}

impl DirectSum {
    pub fn pair(&self, a: &[BigInt], b: &[BigInt]) -> Vector {
        self.group.add(&self.inj_left.apply(a), &self.inj_right.apply(b))
    }

    /// `f ⊕ g` from this sum to `target`.
    pub fn map_sum(&self, target: &DirectSum, f: &GroupHom, g: &GroupHom) -> GroupHom {
        let cols: Vec<Vector> = (0..self.group.dim())
            .map(|j| {
                let e = self.group.generator(j);
                target.pair(&f.apply(&self.proj_left.apply(&e)), &g.apply(&self.proj_right.apply(&e)))
            })
            .collect();
        GroupHom::new_reduced(self.group.clone(), target.group.clone(), IntMatrix::from_cols(target.group.dim(), &cols))
    }

    /// The map `(a, b) ↦ f(a) + g(b)` into a common group.
    pub fn copair(&self, f: &GroupHom, g: &GroupHom) -> GroupHom {
        self.proj_left.then(f).add(&self.proj_right.then(g))
    }
}

/// Iterated direct sum with all injections and projections.
pub fn direct_sum_all(groups: &[AbelianGroup]) -> (AbelianGroup, Vec<GroupHom>, Vec<GroupHom>) {
    let mut acc = AbelianGroup::trivial();
    let mut inj: Vec<GroupHom> = Vec::new();
    let mut proj: Vec<GroupHom> = Vec::new();
    for g in groups {
        let ds = acc.direct_sum(g);
        inj = inj.iter().map(|i| i.then(&ds.inj_left)).collect();
        proj = proj.iter().map(|p| ds.proj_left.then(p)).collect();
        inj.push(ds.inj_right.clone());
        proj.push(ds.proj_right.clone());
        acc = ds.group;
    }
    (acc, inj, proj)
}

/// A homomorphism between canonical abelian groups given by an integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    domain: AbelianGroup,
    codomain: AbelianGroup,
    matrix: IntMatrix,
}

/// Exact structural flags of a group homomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomProfile {
    pub injective: bool,
    pub surjective: bool,
    pub ker_torsion: bool,
    pub coker_torsion: bool,
}

impl HomProfile {
    pub fn is_iso(&self) -> bool {
        self.injective && self.surjective
    }
}

impl GroupHom {
    /// Checks well-definedness on torsion generators; `None` when ill-defined.
    pub fn new(domain: AbelianGroup, codomain: AbelianGroup, matrix: IntMatrix) -> Option<Self> {
        assert_eq!(matrix.rows(), codomain.dim());
        assert_eq!(matrix.cols(), domain.dim());
        let h = Self::new_reduced(domain, codomain, matrix);
        for (k, d) in h.domain.torsion().iter().enumerate() {
            let img = h.codomain.scale(d, &h.matrix.col(h.domain.rank() + k));
            if !is_zero(&img) {
                return None;
            }
        }
        Some(h)
    }

    /// Builds without checking torsion compatibility; torsion rows are reduced.
    pub(crate) fn new_reduced(domain: AbelianGroup, codomain: AbelianGroup, matrix: IntMatrix) -> Self {
        let cols: Vec<Vector> = matrix.col_vectors().iter().map(|c| codomain.reduce(c)).collect();
        let matrix = IntMatrix::from_cols(codomain.dim(), &cols);
        GroupHom { domain, codomain, matrix }
    }

    pub fn identity(g: &AbelianGroup) -> Self {
        GroupHom { domain: g.clone(), codomain: g.clone(), matrix: IntMatrix::identity(g.dim()) }
    }

    pub fn zero(domain: &AbelianGroup, codomain: &AbelianGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    pub fn domain(&self) -> &AbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, a: &[BigInt]) -> Vector {
        self.codomain.reduce(&self.matrix.mul_vec(a))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.codomain, other.domain, "composition of incompatible maps");
        GroupHom::new_reduced(self.domain.clone(), other.codomain.clone(), other.matrix.mul(&self.matrix))
    }

    /// Relation matrix `[M | D_codomain]` whose integer kernel describes preimages of zero.
    fn extended(&self) -> IntMatrix {
        self.matrix.hstack(&self.codomain.relation_matrix())
    }

    /// Kernel as a subgroup of the domain.
    pub fn kernel(&self) -> Subgroup {
        let ext = self.extended();
        let dim = self.domain.dim();
        let gens: Vec<Vector> = LinearSolver::new(&ext)
            .kernel()
            .into_iter()
            .map(|v| v[..dim].to_vec())
            .collect();
        Subgroup::generated(&self.domain, &gens)
    }

    /// Cokernel in canonical form with the quotient map.
    pub fn cokernel(&self) -> (AbelianGroup, GroupHom) {
        let q = quotient(self.codomain.dim(), &self.extended());
        let map = GroupHom::new_reduced(self.codomain.clone(), q.group.clone(), q.proj);
        (q.group, map)
    }

    /// Preimage of an element, if any.
    pub fn preimage(&self, b: &[BigInt]) -> Option<Vector> {
        let ext = self.extended();
        let x = LinearSolver::new(&ext).solve(b)?;
        Some(self.domain.reduce(&x[..self.domain.dim()]))
    }

    pub fn profile(&self) -> HomProfile {
        let ker = self.kernel();
        let (coker, _) = self.cokernel();
        HomProfile {
            injective: ker.group().is_trivial(),
            surjective: coker.is_trivial(),
            ker_torsion: ker.group().rank() == 0,
            coker_torsion: coker.rank() == 0,
        }
    }

    pub fn is_iso(&self) -> bool {
        self.profile().is_iso()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_iso() {
            return None;
        }
        let solver = LinearSolver::new(&self.extended());
        let dim = self.domain.dim();
        let cols: Vec<Vector> = (0..self.codomain.dim())
            .map(|j| {
                let x = solver.solve(&self.codomain.generator(j)).expect("isomorphism is surjective");
                x[..dim].to_vec()
            })
            .collect();
        Some(GroupHom::new_reduced(self.codomain.clone(), self.domain.clone(), IntMatrix::from_cols(dim, &cols)))
    }

    /// Pointwise sum of two maps with the same domain and codomain.
    pub fn add(&self, other: &GroupHom) -> GroupHom {
        assert!(self.domain == other.domain && self.codomain == other.codomain, "sum of incompatible maps");
        let cols: Vec<Vector> = (0..self.domain.dim())
            .map(|j| self.codomain.add(&self.matrix.col(j), &other.matrix.col(j)))
            .collect();
        GroupHom::new_reduced(self.domain.clone(), self.codomain.clone(), IntMatrix::from_cols(self.codomain.dim(), &cols))
    }

    /// `-self`.
    pub fn negate(&self) -> GroupHom {
        let cols: Vec<Vector> = (0..self.domain.dim()).map(|j| self.codomain.neg(&self.matrix.col(j))).collect();
        GroupHom::new_reduced(self.domain.clone(), self.codomain.clone(), IntMatrix::from_cols(self.codomain.dim(), &cols))
    }

    /// The unique `φ` with `φ ∘ self = g`, when `self` is surjective and its kernel dies under `g`.
    pub fn factor(&self, g: &GroupHom) -> Option<GroupHom> {
        if self.domain != g.domain {
            return None;
        }
        let ker = self.kernel();
        for j in 0..ker.group().dim() {
            let k = ker.inclusion().apply(&ker.group().generator(j));
            if !g.codomain.is_zero(&g.apply(&k)) {
                return None;
            }
        }
        let solver = LinearSolver::new(&self.extended());
        let dim = self.domain.dim();
        let mut cols = Vec::new();
        for j in 0..self.codomain.dim() {
            let x = solver.solve(&self.codomain.generator(j))?;
            cols.push(g.apply(&x[..dim]));
        }
        Some(GroupHom::new_reduced(self.codomain.clone(), g.codomain.clone(), IntMatrix::from_cols(g.codomain.dim(), &cols)))
    }

    /// Whether two maps agree on every canonical generator.
    pub fn same_as(&self, other: &GroupHom) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.matrix == other.matrix
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} via {:?}", self.domain, self.codomain, self.matrix)
    }
}

/// A subgroup of an ambient group with canonical coordinates of its own.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: AbelianGroup,
    inclusion: GroupHom,
    /// Coordinates of the generating family inside `group`.
    gen_coords: Vec<Vector>,
    /// Solver for `[gens | D_ambient]`, used to pull ambient elements back.
    solver: LinearSolver,
    /// Projection ℤ^{#gens} → group coordinates.
    proj: IntMatrix,
    gen_count: usize,
}

impl Subgroup {
    /// The subgroup generated by `gens`; when they span the ambient group its coordinates are kept.
    pub fn generated(ambient: &AbelianGroup, gens: &[Vector]) -> Subgroup {
        let dim = ambient.dim();
        let k = gens.len();
        let g = IntMatrix::from_cols(dim, &gens.iter().map(|v| ambient.reduce(v)).collect::<Vec<_>>());
        let m = g.hstack(&ambient.relation_matrix());
        let solver = LinearSolver::new(&m);
        let spans = {
            let s = solver.smith();
            s.rank == dim && (0..s.rank).all(|i| s.s.get(i, i).is_one())
        };
        if spans {
            let mut proj = IntMatrix::zeros(dim, k);
            for (j, v) in gens.iter().enumerate() {
                for (i, x) in v.iter().enumerate().take(dim) {
                    proj.set(i, j, x.clone());
                }
            }
            return Subgroup {
                group: ambient.clone(),
                inclusion: GroupHom::identity(ambient),
                gen_coords: gens.iter().map(|v| ambient.reduce(v)).collect(),
                solver,
                proj,
                gen_count: k,
            };
        }
        let rel_cols: Vec<Vector> = solver.kernel().into_iter().map(|v| v[..k].to_vec()).collect();
        let rel = IntMatrix::from_cols(k, &rel_cols);
        let q = quotient(k, &rel);
        let incl = GroupHom::new_reduced(q.group.clone(), ambient.clone(), g.mul(&q.section));
        let gen_coords = (0..k).map(|j| q.group.reduce(&q.proj.col(j))).collect();
        Subgroup { group: q.group, inclusion: incl, gen_coords, solver, proj: q.proj, gen_count: k }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn inclusion(&self) -> &GroupHom {
        &self.inclusion
    }

    pub fn gen_coords(&self) -> &[Vector] {
        &self.gen_coords
    }

    /// Coordinates of an ambient element lying in the subgroup.
    pub fn pull_back(&self, a: &[BigInt]) -> Option<Vector> {
        let x = self.solver.solve(a)?;
        Some(self.group.reduce(&self.proj.mul_vec(&x[..self.gen_count])))
    }

    pub fn contains(&self, a: &[BigInt]) -> bool {
        self.solver.solve(a).is_some()
    }
}

/// Quotient of a group by a family of its elements, with the projection.
pub fn quotient_group(g: &AbelianGroup, elems: &[Vector]) -> (AbelianGroup, GroupHom) {
    let rel = g.relation_matrix().hstack(&IntMatrix::from_cols(g.dim(), elems));
    let q = quotient(g.dim(), &rel);
    let map = GroupHom::new_reduced(g.clone(), q.group.clone(), q.proj);
    (q.group, map)
}

/// Number of homomorphisms to ℤ/2: 2^rank times 2 for every even invariant factor.
pub fn sign_count(g: &AbelianGroup) -> BigInt {
    let even = g.torsion().iter().filter(|d| d.is_even()).count();
    BigInt::one() << (g.rank() + even)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::vector;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn cokernel_examples() {
        let zz = AbelianGroup::free(1);
        let double = GroupHom::new(zz.clone(), zz.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let (c, _) = double.cokernel();
        assert_eq!(c, AbelianGroup::new(0, vec![z(2)]));

        let zero_to_z2 = GroupHom::zero(&AbelianGroup::trivial(), &AbelianGroup::free(2));
        assert_eq!(zero_to_z2.cokernel().0, AbelianGroup::free(2));

        let sum = GroupHom::new(AbelianGroup::free(2), zz, IntMatrix::from_i64(1, 2, &[1, 1])).unwrap();
        assert!(sum.cokernel().0.is_trivial());
    }

    #[test]
    fn profiles() {
        let zz = AbelianGroup::free(1);
        let double = GroupHom::new(zz.clone(), zz.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert_eq!(
            double.profile(),
            HomProfile { injective: true, surjective: false, ker_torsion: true, coker_torsion: true }
        );
        let diag = GroupHom::new(zz, AbelianGroup::free(2), IntMatrix::from_i64(2, 1, &[1, 1])).unwrap();
        assert_eq!(
            diag.profile(),
            HomProfile { injective: true, surjective: false, ker_torsion: true, coker_torsion: false }
        );
        let z4 = AbelianGroup::new(0, vec![z(4)]);
        let z2 = AbelianGroup::new(0, vec![z(2)]);
        let red = GroupHom::new(z4, z2, IntMatrix::from_i64(1, 1, &[1])).unwrap();
        assert_eq!(
            red.profile(),
            HomProfile { injective: false, surjective: true, ker_torsion: true, coker_torsion: true }
        );
    }

    #[test]
    fn ill_defined_rejected() {
        let z2 = AbelianGroup::new(0, vec![z(2)]);
        let z4 = AbelianGroup::new(0, vec![z(4)]);
        assert!(GroupHom::new(z2.clone(), z4.clone(), IntMatrix::from_i64(1, 1, &[1])).is_none());
        assert!(GroupHom::new(z2, z4, IntMatrix::from_i64(1, 1, &[2])).is_some());
    }

    #[test]
    fn subgroup_keeps_spanning_coordinates() {
        let g = AbelianGroup::new(1, vec![z(4)]);
        let s = Subgroup::generated(&g, &[vector(&[1, 1]), vector(&[1, 0]), vector(&[0, 2])]);
        assert_eq!(s.group(), &g);
        let u = Subgroup::generated(&g, &[vector(&[0, 2])]);
        assert_eq!(u.group(), &AbelianGroup::new(0, vec![z(2)]));
        assert_eq!(u.inclusion().apply(&vector(&[1])), vector(&[0, 2]));
    }

    #[test]
    fn quotient_keeps_nice_coordinates() {
        let g = AbelianGroup::new(1, vec![z(4)]);
        let (q, map) = quotient_group(&g, &[vector(&[0, 2])]);
        assert_eq!(q, AbelianGroup::new(1, vec![z(2)]));
        assert_eq!(map.apply(&vector(&[1, 3])), vector(&[1, 1]));
    }

    #[test]
    fn direct_sum_orders_free_first() {
        let a = AbelianGroup::new(1, vec![z(2)]);
        let b = AbelianGroup::free(1);
        let s = a.direct_sum(&b);
        assert_eq!(s.group, AbelianGroup::new(2, vec![z(2)]));
        let x = s.pair(&vector(&[3, 1]), &vector(&[5]));
        assert_eq!(s.proj_left.apply(&x), vector(&[3, 1]));
        assert_eq!(s.proj_right.apply(&x), vector(&[5]));
    }

    #[test]
    fn sign_counts() {
        assert_eq!(sign_count(&AbelianGroup::new(1, vec![z(4)])), z(4));
        assert_eq!(sign_count(&AbelianGroup::free(1)), z(2));
        assert_eq!(sign_count(&AbelianGroup::trivial()), z(1));
    }
}
