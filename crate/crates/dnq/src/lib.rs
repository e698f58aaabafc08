//! # dnq — D(n) quadruples in real quadratic rings
//!
//! Exact-arithmetic machinery for the ring `Z[√d]` with `d ≡ 2 (mod 4)`
//! square-free, aimed at one task: constructing sets of four ring elements
//! whose pairwise products shifted by `n` are all perfect squares in the
//! ring (a *D(n) quadruple*), and certifying rings in which such an `n`
//! exists that is *not* a difference of two squares.
//!
//! Everything is computed over arbitrary-precision integers; there is no
//! floating point anywhere and every search that reports a negative result
//! carries the exhausted bound as a certificate.
//!
//! ## Modules
//!
//! - [`quadring`] — elements `a + b√d`, ring operations, norms, exact
//!   division, ring square roots, residue classification mod `(4, 4)` and
//!   the norm-form classification for norms `±1`, `±6`.
//! - [`pell`] — continued fractions of `√d`, fundamental units, complete
//!   solution sets of `x² − d·y² = N` with exhaustion certificates, and
//!   deterministic solution streams.
//! - [`builder`] — the quadruple factory: factorization of `3n`, the
//!   seed-driven assembly engine, printed closed forms for cross-checking,
//!   scaling, and full six-pair verification.
//! - [`counterexample`] — difference-of-two-squares decisions, norm `±2`
//!   impossibility certificates, prime-witness search, counterexample
//!   records, and the radicand family hunt `d = 2(24t(3t ± 2) + 5)`.
//! - [`primes`] — Miller–Rabin primality (deterministic below 2⁶⁴).
//!
//! The `dnq` binary exposes the same operations as scriptable subcommands
//! with JSON-lines output; see the crate examples for library usage.

pub mod builder;
pub mod counterexample;
pub mod pell;
pub mod primes;
pub mod quadring;

pub use builder::{CaseId, Factorization, Quadruple, VerifyReport};
pub use counterexample::{CounterexampleRecord, DCandidate, Representability};
pub use pell::{CFExpansion, HypothesisReport, PellSolutionSet, Solvability};
pub use quadring::{classify_mod4, ClassTag, Family, NormForm, RingCtx, RingElt, RingError};
