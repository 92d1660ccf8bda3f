//! Exact Galois-cohomology computations from finite Galois-module data.
//!
//! Everything is built on exact integer linear algebra ([`intlat`]). Finite
//! groups and their lattices live in [`grpmod`]; local and global cohomology
//! sets with the power operation, period and index bounds are in [`localcoh`]
//! and [`globalcoh`]. [`catalog`] holds named worked examples and [`gille`] the
//! mod-5 invariant arithmetic.

pub mod catalog;
pub mod error;
pub mod gille;
pub mod globalcoh;
pub mod grpmod;
pub mod intlat;
pub mod localcoh;

pub use error::{Error, Result};
pub use globalcoh::{FiberPoint, GlobalAbGroup, GlobalClass, PlaceModel};
pub use grpmod::{FinGroup, GModule, Subgroup};
pub use intlat::{AbHom, FgAbGroup, GroupElement, IntMatrix, Order};
pub use localcoh::{LocalClass, LocalH1, PlaceKind, PlaceSpec};
