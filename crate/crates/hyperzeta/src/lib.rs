//! Exact-arithmetic L-polynomials of quadratic characters over F_q(t),
//! their zeros on the critical circle, and the value statistics of
//! log |L| across the family of square-free discriminants.
//!
//! The crate is organized around six layers:
//!
//! * [`field`] / [`poly`] / [`family`] — exact arithmetic in F_q and
//!   F_q[t], extension towers, and enumeration/sampling of the monic,
//!   irreducible, and square-free families.
//! * [`char`] — quadratic residue symbols by Euclidean reciprocity, with
//!   a factoring Euler-criterion oracle as the independent slow path.
//! * [`lpoly`] — the integer L-polynomial built two independent ways,
//!   functional-equation and critical-circle invariants, eigenphases,
//!   central values, and log-derivatives.
//! * [`selberg`] — smoothed von Mangoldt weights, truncated prime sums,
//!   the exact log-derivative residue identity, and the closed-form
//!   identities and inequalities linking log |L| at and near 1/2.
//! * [`stats`] — moment tables against Gaussian references, empirical
//!   averages over the family, low-zero fractions, one-level density
//!   against the symplectic kernel, and the CLT report.
//! * [`cache`] / [`sweep`] / [`cli`] — the JSON-lines result cache with
//!   checkpoint/resume, parallel sweep drivers, and the command-line
//!   front end.

pub mod cache;
pub mod char;
pub mod cli;
pub mod error;
pub mod family;
pub mod field;
pub mod lpoly;
pub mod poly;
pub mod roots;
pub mod selberg;
pub mod stats;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use field::{field_create, FieldSpec};
pub use poly::{parse_poly, Poly};
