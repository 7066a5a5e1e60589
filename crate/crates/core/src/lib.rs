//! Radii of Ma-Minda starlikeness for three classes of quotient functions
//! with a fixed second coefficient.
//!
//! * [`regions`]: the twelve target regions, membership and disk bounds.
//! * [`envelope`]: class parameters, the growth envelope of `zf'/f`, and the
//!   radius solvers.
//! * [`rootfind`]: polynomials and smallest-root isolation on `(0, 1)`.
//! * [`oracle`]: extremal functions and brute-force verification.
//! * [`cli`]: the `starlike-radius` command-line front end.

// Negated comparisons are used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod envelope;
pub mod oracle;
pub mod regions;
pub mod rootfind;
