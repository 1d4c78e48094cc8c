//! Exact arithmetic in the cubic cyclic division algebra
//! `A = (L/K, σ, ζ3)` with `K = Q(ζ3)` and `L = K(ζ7 + ζ7⁻¹)`, together with
//! the machinery that turns it into families of fully diverse 3×3 unitary
//! matrices.
//!
//! Layering, bottom up:
//!
//! - [`kernel`]: rationals, polynomials, cubic discriminants, linear solves.
//! - [`field`]: the number fields `K` and `L`, the Galois generator `σ`,
//!   complex conjugation `α_L`, relative norms and complex embeddings.
//! - [`algebra`]: elements `x0 + e·x1 + e²·x2` of `A`, the involution `α`,
//!   the 3×3 matrix embedding and reduced characteristic polynomials.
//! - [`codebook`]: unitary elements `u·α(u)⁻¹`, subfield enumeration,
//!   codebook assembly, diversity product and norm-witness search.
//! - [`json`]: the on-disk codebook format.

/// Forwards owned operand combinations of binary operators to the
/// `&T op &T` implementation.
macro_rules! forward_binops {
    ($t:ty: $($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                std::ops::$tr::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                std::ops::$tr::$m(self, &rhs)
            }
        }
    )*};
}

pub mod algebra;
pub mod codebook;
pub mod error;
pub mod field;
pub mod json;
pub mod kernel;

pub use algebra::{AlgElem, AlgSpec, MatL};
pub use codebook::{
    Codebook, CoefficientBox, DiversityReport, SubfieldSpec, Table1Row, WitnessSearch,
};
pub use error::{Error, Result};
pub use field::{KElem, LElem};
pub use kernel::{Rat, UPoly};
