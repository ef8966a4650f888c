//! Exact decision procedures for Morita equivalence of symplectic reflection
//! algebra parameters.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, Gaussian rationals, integer vectors and lattice solving.
//! * [`mckay`]: the affine ADE quivers, their Ringel forms and `δ`.
//! * [`roots`]: finite and affine real roots, parameter classification.
//! * [`weyl`]: the extended affine Weyl group, canonical forms and orbit decisions.
//! * [`gwa`]: the `λ ↔ t` dictionary for type A and the generalized Weyl algebra test.
//! * [`repmod`]: matrix representations of deformed preprojective algebras and
//!   reflection functors.
//! * [`cherednik`]: aspherical values, witness primes and the rational Cherednik test.

pub mod cherednik;
pub mod error;
pub mod exact;
pub mod gwa;
pub mod mckay;
pub mod perm;
pub mod primes;
pub mod repmod;
pub mod roots;
pub mod weyl;

pub use error::{Error, Result};
pub use exact::{GaussianRational, IntVector, Rational};
pub use mckay::{Family, ParamVector, QuiverData};
