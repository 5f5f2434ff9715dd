//! Finite-monoid algebra for the join of the varieties of R-trivial and
//! L-trivial monoids.
//!
//! The crate is organised bottom-up:
//!
//! - [`monoid`]: table monoids, Green's R and L relations, products,
//!   enumeration of small monoids, isomorphism and division.
//! - [`omega`]: ω-terms, identities and the varieties **R**, **L**, **W**.
//! - [`words`]: the congruences `≡ₙᴿ`, `≡ₙᴸ`, `≡ₙ` on words and the
//!   quotient monoids they induce.
//! - [`factorization`]: R-/L-factorizations, the alignment of two
//!   `≡ₙ`-equivalent words, the substitution chain between them and the
//!   quotient homomorphism `A*/≡ₙ → M`.
//! - [`languages`]: DFAs, minimization and syntactic monoids.
//! - [`verify`]: the exhaustive and randomized verification suites.

pub mod error;
pub mod factorization;
pub mod languages;
pub mod monoid;
pub mod omega;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use monoid::{Element, FiniteMonoid};
