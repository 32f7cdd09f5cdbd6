//! Almost Golomb sequences of order `r` and their verification toolkit.
//!
//! An almost Golomb sequence of order `r >= 2` is the nondecreasing sequence
//! of positive integers `a(1), a(2), ...` with `a(k) = 0` for `k <= 0` that
//! satisfies the implicit window identity
//!
//! ```text
//! a(a(n) + a(n-1) + ... + a(n-r+1)) = n        for all n >= 1,
//! ```
//!
//! each `a(n)` chosen minimally. For `r = 2` this is the classical
//! self-describing construction related to Golomb's sequence; higher orders
//! replace the two-term anchor by an `r`-term sliding window sum.
//!
//! The crate provides:
//!
//! - fast run-based generators plus an independent definition-level oracle
//!   ([`seq`]),
//! - the base-`r` correction sequences (interval, recurrence, automaton and
//!   definition evaluators) for orders 3, 4 and 5 ([`correctors`]),
//! - DFAO tables and evaluation, geometric orbits, and reconstruction of
//!   minimal automata from the recurrence systems ([`dfao`]),
//! - identity check suites producing machine-readable reports
//!   ([`identities`], [`report`]),
//! - ratio/Cesàro/meta-structure analysis ([`analysis`]),
//! - a thin command line front end ([`cli`]).

pub mod analysis;
pub mod cli;
pub mod correctors;
pub mod dfao;
pub mod identities;
pub mod report;
pub mod seq;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order must be at least 2, got {0}")]
    InvalidOrder(u32),
    #[error("sequence too short: need at least {need} terms, have {have}")]
    TooShort { need: u64, have: u64 },
    #[error("greedy search exceeded the safety cap at position {n}")]
    GreedyCapExceeded { n: u64 },
    #[error("forced value {value} at position {n} is infeasible")]
    ForcedInfeasible { n: u64, value: u64 },
    #[error("difference a({n}+1)-a({n}) = {diff} outside {{0,1}} for a unit-increment family")]
    NonUnitIncrement { n: u64, diff: i64 },
    #[error("run length of value {value} is {observed}, window identity predicts {predicted}")]
    RunCrossCheck {
        value: u64,
        observed: u64,
        predicted: u64,
    },
    #[error("window key exceeds 64 bits for order {0}")]
    WindowTooWide(u32),
    #[error("corrector transition ({0},{1})->({2},{3}) is outside the five listed transitions")]
    UnlistedTransition(u8, u8, u8, u8),
    #[error("unknown automaton name: {0}")]
    UnknownDfao(String),
    #[error("automaton reconstruction disagrees with the recurrence at n={0}")]
    KernelMismatch(u64),
    #[error("gap parameter must be at least 1, got {0}")]
    InvalidGap(u32),
    #[error("invalid worker count: {0}")]
    InvalidWorkerCount(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("invalid b-file line {0}: {1}")]
    BFileParse(usize, String),
}

pub type Result<T> = std::result::Result<T, Error>;
