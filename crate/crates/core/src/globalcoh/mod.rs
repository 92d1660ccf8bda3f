//! Global-field models: the fiber product of abelianized and archimedean data,
//! power operation, period, gluing, Sha and splitting bounds.

mod bounds;
mod class;
mod glue;
mod model;

pub use bounds::{
    index_bounds_global, index_exponent, per_equals_ind_guarantee, period2_property,
    restrict_global, split_degree_global, GlobalSplitBound, IndexBounds, Period2Report,
    Period2Witness, RestrictedClass,
};
pub use class::{is_compatible, make_global_class, period_global, power_global, GlobalClass};
pub use glue::{
    glue_local_classes, localize_all, sha_kernel, total_localization, GlueOutcome, LocalValue,
    ShaReport, GLUE_RETRY_LIMIT,
};
pub use model::{
    expand_orbits, global_ab_group, ArchFiber, FiberPoint, GlobalAbGroup, Orbit, PlaceModel,
    DEFAULT_MAX_ORBITS,
};
