//! Cost models for quantum factoring and discrete-logarithm algorithms,
//! measured in calls to a black-box modular multiplication circuit.
//!
//! Everything here counts one thing: invocations of a circuit computing
//! `(t + u·v) mod N` for an n-bit modulus `N`. Regev-style multidimensional
//! algorithms (with Ekerå–Gärtner's extensions and Ragavan's generalized
//! Fibonacci exponentiation) are compared against Ekerå–Håstad and Ekerå
//! variations of Shor's algorithm with windowed exponentiation.
//!
//! The crate is organized as follows:
//!
//! * [`lattice`] — reduction-quality models (LLL, BKZ, perfect, explicit δ)
//!   and the GSA slope γ = δ² they induce.
//! * [`numbers`] — exact big-integer support: prime products, the `d_max`
//!   validity bound, generalized Fibonacci sequences and digit decomposition.
//! * [`regev`] — the C lower bound, feasibility inequality, Ragavan's
//!   `f(r, s)` cost and the (d, m, r, s, C) parameter optimizer.
//! * [`shor`] — Ekerå–Håstad (EHS) and Ekerå (ES) call counts, with the
//!   built-in tradeoff parameter table and file overrides.
//! * [`schedule`] — desk-scale emulation of the exponentiation schedules
//!   against a call-counting multiplication oracle.
//! * [`report`] — comparison rows, table reproduction, crossover search.
//! * [`config`] — flat key-value scenario files and the tradeoff table
//!   wire format.

pub mod config;
pub mod error;
pub mod lattice;
pub mod numbers;
pub mod regev;
pub mod report;
pub mod schedule;
pub mod shor;

pub use error::{Error, Result};
