//! Finite groups with indexed elements, identity at index 0.

pub mod catalog;
mod finite;
mod hom;
mod semidirect;
mod spec;
mod subgroup;

pub use catalog::{catalog_names, named};
pub use finite::{same_group, FiniteGroup, TABLE_LIMIT};
pub use hom::GroupHom;
pub use semidirect::{semidirect_from_parts, semidirect_product, Semidirect};
pub use spec::{build_group, build_group_full, BuiltGroup, GroupSpec};
pub use subgroup::{
    bicyclic_family, conjugacy_data, direct_product, invariants_from_orders, lcm_of_orders, quotient_group, subgroups,
    ConjugacyData, Subgroup,
};
