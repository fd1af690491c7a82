//! Duadic codes over GF(q^2) with Hermitian self-dual parity-check extensions.
//!
//! The crate constructs cyclic and duadic codes of odd length n over GF(q^2),
//! decides which lengths admit splittings by the multiplier mu_{-q} (and hence
//! Hermitian self-dual extended codes), and counts such lengths alongside the
//! related density and quadratic-form census machinery.
//!
//! Modules mirror the layers of the construction:
//!
//! - [`modarith`]: factorization, multiplicative orders, cyclotomic cosets,
//!   multipliers, Jacobi/Kronecker symbols, squares modulo n.
//! - [`gf`]: exact GF(p^d) arithmetic, conjugation, the gamma equation, and
//!   root fields with embeddings.
//! - [`cycodes`]: cyclic codes carried by defining sets, generator polynomials,
//!   idempotents, Euclidean/Hermitian duals, and brute-force oracles.
//! - [`duadic`]: splittings, duadic pairs, the gamma extension, self-duality
//!   verification, and the reference splitting table.
//! - [`lengths`]: arithmetic classification predicates for code lengths.
//! - [`census`]: counting functions, prime-order densities, and the
//!   quadratic-form representability machinery.

pub mod census;
pub mod cycodes;
pub mod duadic;
pub mod error;
pub mod exec;
pub mod gf;
pub mod lengths;
pub mod modarith;

pub use error::{Error, Result};
pub use exec::Exec;
