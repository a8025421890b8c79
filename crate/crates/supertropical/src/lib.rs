//! Exact supertropical (max-plus with ghosts) linear algebra.
//!
//! Scalars live in a supertropical semiring: the tropical max-plus numbers
//! extended by a parallel "ghost" copy that records where additive ties
//! happened. All values are exact rationals in logarithmic notation, so
//! multiplication of scalars is rational addition and every equality test in
//! this crate is bit-exact — there is no tolerance anywhere.
//!
//! On top of the scalars the crate provides:
//!
//! * dense square [`matrix::Matrix`] arithmetic and the special families
//!   (permutation, generalized permutation, diagonal, Gaussian matrices);
//! * the tropical permanent, the even/odd bideterminant, dominant-permutation
//!   analysis, and a subset-DP assignment solver ([`determinant`]);
//! * adjoints, the quasi-inverse `A^∇ = per(A)⁻¹·adj(A)`, quasi-identities,
//!   reversibility, and ∇-regularity ([`nabla`]);
//! * shape classes (definite / normal / strictly normal), the tropical
//!   special linear monoids and their witnesses ([`classify`]);
//! * the semigroups attached to a nonsingular unit and conjugation by it
//!   ([`monoid`]);
//! * elementary-generator words: Steinberg rewriting toward lower·upper
//!   form, singularizing Gaussians, the `E·A = A^∇∇` factorization, and the
//!   four-matrix bridge between two nonsingular matrices ([`elementary`]);
//! * a brute-force oracle, seeded random generators, and a property-run
//!   harness that re-verifies every constructive claim ([`oracle`]).

pub mod classify;
pub mod determinant;
pub mod elementary;
mod error;
pub mod matrix;
pub mod monoid;
pub mod nabla;
pub mod oracle;
pub mod semiring;

pub use error::{Error, Result};
pub use matrix::{GenPerm, Matrix, Perm};
pub use semiring::{Rat, SymPair, TropElem};
