//! Exact computations of finite-group and tame local Galois cohomology.

pub mod caps;
pub mod cohomology;
pub mod error;
pub mod gmodule;
pub mod group;
mod json;
pub mod local;
pub mod nonabelian;
pub mod samples;
pub mod zmod;

pub use caps::Caps;
pub use error::{Error, Result};
