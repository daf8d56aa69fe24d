//! Vacuum mixed moments of creation and annihilation operators on discrete and
//! continuous monotone / anti-monotone Fock spaces.
//!
//! The crate has three layers:
//!
//! - combinatorics: Dyck words, non-crossing pair partitions and mode maps
//!   ([`partitions`]);
//! - an exact sparse simulator for the discrete creation/annihilation
//!   operators, used as the brute-force oracle ([`discrete_fock`]);
//! - moment evaluation: discrete delta/nabla products, finite-N weighted sums,
//!   exact simplex integrals and Monte Carlo estimates ([`moment_engine`]),
//!   plus experiment drivers for the central-limit, arcsine and invariance
//!   studies ([`clt_harness`]).
//!
//! Everything is parametric in the ordering convention: [`OrderFlag::Monotone`]
//! admits strictly increasing mode sequences, [`OrderFlag::AntiMonotone`]
//! strictly decreasing ones ([`anti_monotone`] holds the mirror-specific
//! helpers).
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `monotone-fock` binary exposes the same experiments as subcommands.

pub mod anti_monotone;
pub mod cli;
pub mod clt_harness;
pub mod discrete_fock;
pub mod moment_engine;
pub mod partitions;
pub mod test_function;

pub use discrete_fock::{BasisVector, FockVector, OperatorLetter, OrderFlag};
pub use moment_engine::MomentSpec;
pub use partitions::{PairMap, PairPartition, Sign, SignWord};
pub use test_function::TestFunction;
