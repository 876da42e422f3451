//! Nonabelian 1-cocycles `a_{στ} = a_σ · σ(a_τ)` and their classes under
//! twisted conjugacy `a ~ (σ -> g a_σ σ(g)⁻¹)`.

mod action;
mod classes;
pub mod extension;
mod twist;

pub use action::NabAction;
pub use classes::{canonical, is_cocycle, nab_cocycles, nab_cocycles_by_tables, nab_h1, NabClass, NabH1};
pub use extension::{split_extension_catalog, Extension, ExtensionInstance, SequenceMaps};
pub use twist::{twist_bijection, twist_cocycle, twist_group, untwist_cocycle, TwistBijection};
