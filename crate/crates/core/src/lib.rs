//! Exact enumeration and identity checking for the numerator polynomial
//! `N_{B_n}(y, t)` of the coarse flag Hilbert–Poincaré series of the braid
//! arrangement.
//!
//! The numerator is computed three independent ways:
//!
//! * [`cfhp::numerator_via_chains`] sums chain Poincaré polynomials over all
//!   chains of the partition lattice `Π_n`,
//! * [`cfhp::numerator_via_rlabeling`] sums over maximal chains of `Π_n` and
//!   sign patterns of their edge labels,
//! * [`cfhp::numerator_via_statistic`] sums `y^{ino(w,σ)} t^{des(σ)}` over
//!   `S_{n+1} × Sym(n)`.
//!
//! The supporting modules build the posets involved ([`braid`], [`pwy`]),
//! the signed labeling of pairs `(w, σ)`, and truncated quasisymmetric
//! functions ([`qsym`]). [`verify`] runs every identity exhaustively for a
//! given `n`.

pub mod braid;
pub mod cfhp;
pub mod cli;
pub mod error;
pub mod perms;
pub mod poly;
pub mod poset;
pub mod pwy;
pub mod qsym;
pub mod verify;

pub use error::{Error, Result};
pub use perms::{Permutation, PositionSet, SignedWord, ValueSet};
pub use poly::{Monomial, MultiPoly, Variable};
pub use poset::FinitePoset;
