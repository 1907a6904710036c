//! Exact integer linear algebra: matrices, Smith normal form, canonical abelian groups,
//! and rational cones with their Hilbert bases.

pub mod cone;
pub mod group;
pub mod matrix;
pub mod smith;

pub use cone::{cone_generators, cone_inequalities, hilbert_basis, ConeGenerators, HilbertBasis, PolyhedralCone};
pub use group::{direct_sum_all, quotient, quotient_group, sign_count, AbelianGroup, DirectSum, GroupHom, HomProfile, Quotient, Subgroup};
pub use matrix::{fmt_vector, vector, IntMatrix, Vector};
pub use smith::{integer_kernel, saturated_span, smith_normal_form, solve, LinearSolver, Smith};
