//! Exact-arithmetic toolkit for Stirling partition counts, a record-time
//! weighted-sum representation of them, and the polynomial and probabilistic
//! identities connecting the two.
//!
//! The crate computes the same quantities along deliberately independent
//! routes — exhaustive enumeration, alternating sums, weighted tuple sums,
//! dynamic programs, polynomial expansions, inclusion–exclusion, and Monte
//! Carlo simulation — and ships a verification suite that cross-checks every
//! route against the others with exact rational arithmetic.  Floating point
//! appears only in Monte Carlo estimates and timings, never in an identity
//! check.
//!
//! Module map:
//!
//! * [`exact`] — big integers, big rationals, binomials, factorials, exact
//!   powers, and the strict `p/q` wire format.
//! * [`partitions`] — ground truth: exhaustive set-partition enumeration and
//!   the classical two-term recurrence.
//! * [`stirling`] — the independent closed-form and DP routes to `S(n, d)`,
//!   instrumented for multiplication counts, plus monomial and reciprocal
//!   sum forms.
//! * [`poly`] — dense exact-coefficient polynomials and the two polynomial
//!   families whose coefficientwise equality drives most identity checks.
//! * [`sim`] — the covering-probability model: exact formulas, brute-force
//!   evaluation over all outcome sequences, and a deterministic
//!   parallel Monte Carlo sampler.
//! * [`suite`] — the registry of identity checks and the grid runner behind
//!   `verify`.
//! * [`report`] — the output envelope shared by every CLI command, with JSON
//!   and CSV renderings of the same payload.
//! * [`commands`] — typed entry points for the CLI binary and the C ABI.

pub mod commands;
pub mod error;
pub mod exact;
pub mod partitions;
pub mod poly;
pub mod report;
pub mod sim;
pub mod stirling;
pub mod suite;

pub use error::{Error, Result};
