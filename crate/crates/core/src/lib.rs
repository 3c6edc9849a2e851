//! Frey–Hellegouarch curves for `x² − q^(2k+1) = yⁿ` (`y` even) and the
//! newform elimination sieve built on them.
//!
//! The crate is `no_std` (it needs `alloc`) and does no IO. It covers:
//!
//! - [`quadfield`]: exact arithmetic in the ring of integers of `ℚ(√q)`,
//!   prime ideals, valuations and residue maps.
//! - [`residue`] and [`curve`]: residue fields `𝔽_p`, `𝔽_{p²}`, Weierstrass
//!   invariants, point counting and reduction types.
//! - [`frey`]: the rational Frey curve `G` and the ℚ-curve `E`, both globally
//!   and reduced at auxiliary primes.
//! - [`newform`] and [`poly`]: coefficient data of newform classes and the
//!   exact norms the sieve needs.
//! - [`sieve`]: trace sets, `B_f`, the multi-Frey step and the auxiliary
//!   arguments (Hasse bound at 3, power-of-two search, tuple verification).
//!
//! Supported fields are `q ∈ {17, 41, 89, 97}`.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod curve;
pub mod error;
pub mod frey;
pub mod newform;
pub mod poly;
pub mod quadfield;
pub mod reference;
pub mod residue;
pub mod ring;
pub mod sieve;

pub use error::{Error, Result};
pub use quadfield::{FieldConstants, PrimeIdealM, QuadInt, Splitting};
pub use residue::{ResidueElt, ResidueField};
