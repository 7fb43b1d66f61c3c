//! Computational verification of Ramanujan's level-58 series for 1/π,
//!
//! ```text
//! 1/π = (2√2/9801) Σ (26390n + 1103)(4n)! / ((n!)⁴ 396⁴ⁿ)
//! ```
//!
//! and an arbitrary-precision π engine built on it. Every step of the
//! derivation (elliptic integrals, theta functions, hypergeometric identities,
//! the g-invariant g₅₈, Dirichlet L-values, the alternating lattice sum) has a
//! module here with an independent cross-check, and [`verify`] strings the
//! checks together into a report.

pub mod elliptic;
pub mod error;
pub mod exact;
pub mod hyper;
pub mod invariants;
pub mod kernel;
pub mod lattice;
pub mod lseries;
pub mod pi_engine;
pub mod quadrature;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{pi_oracle, Precision, PrecisionReal};
