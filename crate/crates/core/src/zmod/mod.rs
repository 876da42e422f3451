//! Exact linear algebra over `Z/m`.
//!
//! Vectors are rows and matrices act on the right: a map `x -> x * M`.
//! Spans are canonicalized with the Howell normal form, which stays unique
//! over moduli with zero divisors. A Smith-style diagonalization is used only
//! to read off invariant factors of quotients.

mod arith;
mod howell;
mod matrix;
mod quotient;
mod smith;

pub use arith::{gcd, lcm, mod_inverse, xgcd};
pub use howell::{canonical_form, howell, howell_with_transform, HowellForm};
pub use matrix::ResidueMatrix;
pub use quotient::{
    hom_kernel, kernel, kernel_basis, kernel_with_relations, quotient_structure, span_order,
    AbelianStructure, CoordinateIter, Quotient,
};
pub(crate) use arith::{add_mod, mul_mod};
pub(crate) use smith::invariant_factors_of_cyclic;
