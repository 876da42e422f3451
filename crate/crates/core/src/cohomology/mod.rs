//! Cohomology of finite groups with coefficients in finite modules.
//!
//! Cochains are stored as full value tables. The cochain vector used by the
//! solver concatenates the values at the non-identity elements in index
//! order.

mod abelian;
pub mod brute;
mod maps;
mod sha;

pub use abelian::{h1, h1_solver_cost, tate_h0, tate_h0_subgroup, AbelianCocycle, CohGroup, CohKind};
pub use maps::{
    connecting_delta, delta_cocycle, pullback_map, restriction_into, restriction_map, ConnectingDelta, LabelMap,
};
pub use sha::{sha_bic_formula, sha_kernel, ShaFormula, ShaKernel};

#[cfg(test)]
mod tests;
