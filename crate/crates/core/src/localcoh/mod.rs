//! Cohomology over local-field models.

mod bounds;
mod h1;
mod index;
mod place;

pub use bounds::{
    capacity, floor_log2, prime_divisors, split_degree_local, theta_data, LocalSplitBound,
    ThetaData,
};
pub use h1::{
    h1_local, nabla, period_local, power_local, restrict_local, restriction_kills, sigma_module,
    ExtensionModelLocal, LocalClass, LocalH1,
};
pub use index::{
    local_index, quadratic_subextensions, square_class_model, LocalIndexReport, QuadraticLabels,
    SquareClass, SquareClassModel, MAX_LOCAL_DEGREE,
};
pub use place::{PlaceKind, PlaceSpec};
