//! Exact integer matrices, Smith normal form, and finitely generated abelian groups.

mod group;
mod hom;
mod matrix;
mod snf;

pub use group::{group_from_presentation, FgAbGroup, GroupElement, Order};
pub use hom::{hom_parts, is_exact_at, is_injective, is_surjective, AbHom, HomParts};
pub use matrix::{int_vec, IntMatrix};
pub use snf::{
    elementary_divisors, integer_kernel, lattice_basis, smith, snf_decompose, solve_integer,
    LinearSolver, Smith, SnfTrack,
};
