//! Exact certification of nondegeneracy for the norm map
//! `f -> prod_{s in G} s.f` of a finite abelian group representation.
//!
//! The crate decides the question two ways: through the coefficient matrix of
//! the invariant `prod_s s.(sum_i X_i Y_i)` in a permutation basis, and through
//! its diagonal in an eigenbasis. Degenerate cases come with witness monomials
//! whose coefficient is verified to be exactly zero.

pub mod criterion;
pub mod cyclotomic;
pub mod error;
pub mod expansion;
pub mod group;
pub mod monomial;
pub mod witness;

pub use cyclotomic::{cyclotomic_polynomial, reduce_mod_cyclotomic, zeta_pow, CyclotomicInt, IntPolynomial};
pub use error::{Error, Result};
pub use group::{AbelianGroup, Character, GroupElement};
pub use monomial::{Composition, EigenAction, Monomial, OrbitTable, PermAction};
