//! Exact Schubert calculus on Grassmannians, with the surrounding machinery
//! needed to study stretched Littlewood-Richardson numbers:
//!
//! * [`partitions`] — partitions, index sets, and the dictionary between them;
//! * [`lr`] — Littlewood-Richardson coefficients by tableau enumeration,
//!   products of Schubert classes, intersection numbers, tensor invariant
//!   dimensions, and stretched-coefficient sequences;
//! * [`horn`] — the recursive Horn criterion for non-vanishing of a product
//!   of Schubert classes, plus assorted dimension ledgers;
//! * [`parabolic`] — slopes and generic semistability for parabolic weights;
//! * [`linalg`] — dense exact linear algebra and flags over a prime field;
//! * [`complexes`] — two-step complexes attached to flagged `Hom` spaces,
//!   sampled over a prime field;
//! * [`harness`] — corpus enumeration and the verification scans used by the
//!   command-line front end and the acceptance suite;
//! * [`cache`] — an append-only on-disk cache of computed LR coefficients.
//!
//! All arithmetic is exact: coefficients are non-negative integers counted by
//! enumeration, slopes are rationals, and linear algebra is performed over a
//! configurable prime field.  Randomized routines are deterministic functions
//! of an explicit 64-bit seed.
//!
//! The `parallel` feature (on by default) lets the corpus scans in
//! [`harness`] fan out over rayon; disabling it degrades every scan to the
//! sequential code path without changing any result.

pub mod cache;
pub mod complexes;
pub mod error;
pub mod exec;
pub mod harness;
pub mod horn;
pub mod linalg;
pub mod lr;
pub mod parabolic;
pub mod partitions;

pub use error::{Error, Result};

/// Clear every in-process memo table (LR coefficients and Horn decisions).
///
/// Results are unaffected; this only exists so benchmarks and cache tests can
/// measure cold-start behaviour inside one process.
pub fn reset_memo_tables() {
    lr::clear_memo();
    horn::clear_memo();
}
