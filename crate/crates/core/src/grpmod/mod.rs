//! Finite groups, their modules, and the module-level operations built on them.

mod coinv;
mod duality;
mod fingroup;
mod module;
mod resolution;

pub use coinv::{
    coinvariants, coinvariants_group, induced_module, norm_matrix, projection_hom, tate_h_minus1,
    transfer, transfer_hom, transfer_with_section, Coinvariants, TateMinusOne,
};
pub use duality::{dual_pairing, pontryagin_dual, DualPairing, QmodZ};
pub use fingroup::{
    abelian_invariants, all_subgroups, commutator_subgroup, group_analysis, is_sylow_cyclic,
    quotient_group, FinGroup, GroupAnalysis, Subgroup, DEFAULT_MAX_ORDER,
};
pub use module::GModule;
pub use resolution::{free_kernel_resolution, FreeKernelResolution, ResolutionCheck};

use crate::intlat::FgAbGroup;

/// Minimal number of generators of a finitely generated abelian group.
pub fn min_generators(m: &FgAbGroup) -> usize {
    m.min_generators()
}
