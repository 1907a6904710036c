//! Smith normal form with transforms, integer solving and kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{is_zero, IntMatrix, Vector};

/// Result of a Smith reduction `u · m · v = s`.
///
/// `u_inv` and `v_inv` are maintained alongside so callers never need to invert.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// The nonzero diagonal entries d₁ | d₂ | ⋯.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[t] += k row[s]
    fn add_row(&mut self, t: usize, s: usize, k: &BigInt) {
        self.a.add_row_multiple(t, s, k);
        self.u.add_row_multiple(t, s, k);
        self.u_inv.add_col_multiple(s, t, &-k);
    }

    /// col[t] += k col[s]
    fn add_col(&mut self, t: usize, s: usize, k: &BigInt) {
        self.a.add_col_multiple(t, s, k);
        self.v.add_col_multiple(t, s, k);
        self.v_inv.add_row_multiple(s, t, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Minimal-absolute-value nonzero entry of the trailing block, first in row-major order.
    fn pivot_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.get(bi, bj).abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Minimal nonzero entry on row t / column t, beyond the diagonal.
    fn pivot_on_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a.get(t, t).abs();
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t).abs();
            if !x.is_zero() && (best_abs.is_zero() || x < best_abs) {
                best = (i, t);
                best_abs = x;
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j).abs();
            if !x.is_zero() && (best_abs.is_zero() || x < best_abs) {
                best = (t, j);
                best_abs = x;
            }
        }
        best
    }

    fn reduce(&mut self) -> usize {
        let (n, k) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < n.min(k) {
            let Some((pi, pj)) = self.pivot_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..n {
                    let x = self.a.get(i, t).clone();
                    if x.is_zero() {
                        continue;
                    }
                    let q = &x / &p;
                    self.add_row(i, t, &-q);
                    if !self.a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..k {
                    let x = self.a.get(t, j).clone();
                    if x.is_zero() {
                        continue;
                    }
                    let q = &x / &p;
                    self.add_col(j, t, &-q);
                    if !self.a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    let (i, j) = self.pivot_on_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let bad_row = (t + 1..n).find(|&i| (t + 1..k).any(|j| !self.a.get(i, j).is_multiple_of(&p)));
                match bad_row {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

/// Computes `u · m · v = s` with `s` diagonal and each diagonal entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(m.rows()),
        u_inv: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
        v_inv: IntMatrix::identity(m.cols()),
    };
    let rank = r.reduce();
    Smith { u: r.u, u_inv: r.u_inv, s: r.a, v: r.v, v_inv: r.v_inv, rank }
}

/// Solves `m · x = b` over the integers, reusing one Smith reduction.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    smith: Smith,
}

impl LinearSolver {
    pub fn new(m: &IntMatrix) -> Self {
        LinearSolver { smith: smith_normal_form(m) }
    }

    pub fn smith(&self) -> &Smith {
        &self.smith
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vector> {
        let s = &self.smith;
        let y = s.u.mul_vec(b);
        let mut z = vec![BigInt::zero(); s.v.rows()];
        for (i, yi) in y.iter().enumerate() {
            if i < s.rank {
                let d = s.s.get(i, i);
                if !yi.is_multiple_of(d) {
                    return None;
                }
                z[i] = yi / d;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(s.v.mul_vec(&z))
    }

    /// A basis of the integer kernel; it is saturated in ℤⁿ.
    pub fn kernel(&self) -> Vec<Vector> {
        let s = &self.smith;
        (s.rank..s.v.cols()).map(|j| s.v.col(j)).collect()
    }
}

/// Returns an integer solution of `m · x = b` if one exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vector> {
    LinearSolver::new(m).solve(b)
}

/// Saturated basis of `{x ∈ ℤⁿ : ⟨r, x⟩ = 0 for every row r}`.
pub fn integer_kernel(n: usize, rows: &[Vector]) -> Vec<Vector> {
    if rows.iter().all(|r| is_zero(r)) {
        return (0..n).map(|i| super::matrix::unit_vector(n, i)).collect();
    }
    LinearSolver::new(&IntMatrix::from_rows(n, rows)).kernel()
}

/// Basis of `span_ℚ(vectors) ∩ ℤⁿ`.
pub fn saturated_span(n: usize, vectors: &[Vector]) -> Vec<Vector> {
    let orth = integer_kernel(n, vectors);
    if orth.is_empty() {
        return (0..n).map(|i| super::matrix::unit_vector(n, i)).collect();
    }
    integer_kernel(n, &orth)
}
