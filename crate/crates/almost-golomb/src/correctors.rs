//! Correction sequences for orders 3, 4 and 5, each computable by several
//! independent methods (interval membership, recurrence, automaton, and
//! extraction from a generated sequence).
//!
//! Order 3: `ε(n) = 1` iff `n` lies in one of the intervals
//! `I_k = [(11·3^k - 1)/2, (13·3^k - 3)/2]`.
//!
//! Order 4: four bits `ε₀..ε₃` defined by sixteen mutually recursive
//! base-4 identities over an initial table for `5 <= n <= 23`.
//!
//! Order 5: the pair `U(n) = (ε(n), η(n))` with ten base-5 identities valid
//! for `m >= 4`, seeded by the tabulated values for `n <= 19`; the residue-3
//! and residue-4 correctors `θ` and `ε₄` are lookup functions of
//! consecutive `U` values, with tabulated seeds below their validity floor.

use crate::dfao::{build_dfao, reconstruct_msd_dfao, Dfao, DfaoName, DfaoOutput};
use crate::seq::Sequence;
use crate::{Error, Result};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::OnceLock;

/// Evaluation strategy for a corrector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Interval,
    Recurrence,
    Dfao,
    Definition,
}

// ---------------------------------------------------------------- order 3

/// Bounds of the interval `I_k`.
pub fn eps3_interval_bounds(k: u32) -> (u64, u64) {
    let p = 3u64.pow(k);
    ((11 * p - 1) / 2, (13 * p - 3) / 2)
}

/// Interval method: membership of `n` in the unique candidate `I_k`.
pub fn eps3_interval(n: u64) -> u8 {
    let mut k = 0;
    loop {
        let (lo, hi) = eps3_interval_bounds(k);
        if lo > n {
            return 0;
        }
        if n <= hi {
            return 1;
        }
        k += 1;
    }
}

/// Recurrence method: `ε(3m) = ε(m-1)`, `ε(3m+1) = ε(3m+2) = ε(m)`, with
/// base values `ε(n) = 0` for `n < 5` and `ε(5) = 1`. Depth is `O(log n)`.
pub fn eps3_recurrence(n: u64) -> u8 {
    match n {
        0..=4 => 0,
        5 => 1,
        _ => {
            let (m, d) = (n / 3, n % 3);
            if d == 0 {
                eps3_recurrence(m - 1)
            } else {
                eps3_recurrence(m)
            }
        }
    }
}

fn r3_dfao() -> &'static Dfao {
    static DFAO: OnceLock<Dfao> = OnceLock::new();
    DFAO.get_or_init(|| build_dfao(DfaoName::R3Eps))
}

/// Automaton method for `ε` at order 3.
pub fn eps3_dfao(n: u64) -> u8 {
    match r3_dfao().eval(n) {
        DfaoOutput::Bit(b) => b,
        _ => unreachable!(),
    }
}

/// `ε(n)` by the chosen method (order 3; `Definition` is not applicable,
/// the interval description is the definition here).
pub fn eps3(n: u64, method: Method) -> u8 {
    match method {
        Method::Interval | Method::Definition => eps3_interval(n),
        Method::Recurrence => eps3_recurrence(n),
        Method::Dfao => eps3_dfao(n),
    }
}

/// Explicit construction of `I_k` as a sorted set (for small `k`).
pub fn eps3_interval_set(k: u32) -> Vec<u64> {
    let (lo, hi) = eps3_interval_bounds(k);
    (lo..=hi).collect()
}

// ---------------------------------------------------------------- order 4

/// Initial table of `(ε₀, ε₁, ε₂, ε₃)` for `5 <= n <= 23`.
pub const R4_INITIAL: [[u8; 4]; 19] = [
    [0, 1, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [1, 0, 0, 1],
];

fn xor(x: u8, y: u8) -> u8 {
    x + y - 2 * x * y
}

fn xnor(x: u8, y: u8) -> u8 {
    1 + 2 * x * y - x - y
}

/// Apply the sixteen base-4 identities once: the quadruples at `m-1`, `m`,
/// `m+1` determine the quadruple at `4m + d`.
pub fn r4_step(d: u64, prev: [u8; 4], cur: [u8; 4], next: [u8; 4]) -> [u8; 4] {
    let [f0, f1, f2, f3] = prev;
    let [e0, e1, e2, e3] = cur;
    let [g0, g1, _, _] = next;
    match d {
        0 => [
            (1 - e0) * g0 + e0 * f0,
            e2 * xor(f1, g1),
            (1 - f0) * f1 + f0 * (1 - f1) * e2,
            f2 * xnor(e2, e1),
        ],
        1 => [(1 - e0) * f0 + e0 * g0, 1 - e2, f2, f3],
        2 => [e0, e1, e2, e3],
        3 => [g0, g1, 1 - e1, (1 - g1) * xnor(e2, e1)],
        _ => unreachable!(),
    }
}

/// Memoized recurrence evaluator for the order-4 corrector quadruple.
/// Valid for `n >= 5`; smaller arguments yield the zero quadruple.
#[derive(Default)]
pub struct R4Eval {
    memo: RefCell<HashMap<u64, [u8; 4]>>,
}

impl R4Eval {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&self, n: u64) -> [u8; 4] {
        if n < 5 {
            return [0; 4];
        }
        if n < 24 {
            return R4_INITIAL[(n - 5) as usize];
        }
        if let Some(v) = self.memo.borrow().get(&n) {
            return *v;
        }
        let (m, d) = (n / 4, n % 4);
        let value = r4_step(d, self.eval(m - 1), self.eval(m), self.eval(m + 1));
        debug_assert!(value.iter().all(|&b| b <= 1));
        self.memo.borrow_mut().insert(n, value);
        value
    }
}

/// Dense bottom-up table of the order-4 quadruples for `n <= n_max`.
pub fn build_r4_table(n_max: u64) -> Vec<[u8; 4]> {
    let mut t = vec![[0u8; 4]; n_max as usize + 2];
    for (i, row) in R4_INITIAL.iter().enumerate() {
        let n = i + 5;
        if n <= n_max as usize + 1 {
            t[n] = *row;
        }
    }
    for n in 24..=(n_max as usize + 1) {
        let (m, d) = (n / 4, n % 4);
        t[n] = r4_step(d as u64, t[m - 1], t[m], t[m + 1]);
        assert!(t[n].iter().all(|&b| b <= 1), "bit closure fails at {n}");
    }
    t.truncate(n_max as usize + 1);
    t
}

/// Definition method: extract `ε_i(n)` from a generated order-4 sequence by
/// rearranging the four denesting formulas.
pub fn r4_definition(seq: &Sequence, n: u64) -> [i64; 4] {
    let n = n as i64;
    let x: i64 = seq.window_sum(n, 4) as i64;
    let y = x - seq.get(n - 3) as i64 + seq.get(n + 1) as i64;
    let z = y - seq.get(n - 2) as i64 + seq.get(n + 2) as i64;
    [
        seq.term(4 * n as u64) as i64 - x - 1,
        seq.term(4 * n as u64 + 1) as i64 - y,
        seq.term(4 * n as u64 + 2) as i64 - y,
        seq.term(4 * n as u64 + 3) as i64 - z + 1,
    ]
}

/// `ε_i(n)` by the chosen method. `seq` is required for the definition
/// method only.
pub fn r4_eps(i: usize, n: u64, method: Method, seq: Option<&Sequence>) -> Result<u8> {
    assert!(n >= 5, "order-4 correctors are defined for n >= 5");
    match method {
        Method::Recurrence | Method::Interval => Ok(R4Eval::new().eval(n)[i]),
        Method::Dfao => {
            let name = [
                DfaoName::R4Eps0,
                DfaoName::R4Eps1,
                DfaoName::R4Eps2,
                DfaoName::R4Eps3,
            ][i];
            match build_dfao(name).eval(n) {
                DfaoOutput::Bit(b) => Ok(b),
                _ => unreachable!(),
            }
        }
        Method::Definition => {
            let seq = seq.expect("definition method needs a sequence");
            let v = r4_definition(seq, n)[i];
            assert!((0..=1).contains(&v), "extracted bit out of range");
            Ok(v as u8)
        }
    }
}

/// Reconstruct the exact minimal automaton for `ε_i` from the recurrences.
pub fn reconstruct_r4_dfao(i: usize, verify_to: u64) -> Result<Dfao> {
    let eval = R4Eval::new();
    reconstruct_msd_dfao(
        &format!("r4-eps{i}-reconstructed"),
        4,
        move |n| DfaoOutput::Bit(eval.eval(n)[i]),
        8,
        verify_to,
    )
}

// ---------------------------------------------------------------- order 5

/// Tabulated `(ε(n), η(n))` for `1 <= n <= 19`; the ten recurrences only
/// reach `n >= 20` (they are stated for `m >= 4`).
pub const R5_SEED: [(u8, u8); 19] = [
    (0, 0),
    (0, 0),
    (0, 1),
    (1, 0),
    (0, 0),
    (0, 0),
    (0, 0),
    (0, 0),
    (0, 0),
    (0, 0),
    (0, 0),
    (0, 1),
    (1, 0),
    (0, 1),
    (1, 0),
    (0, 1),
    (1, 0),
    (0, 1),
    (1, 0),
];

/// Apply the ten quinary identities once: `U(m-1)` and `U(m)` determine
/// `U(5m + d)`.
pub fn r5_step(d: u64, prev: (u8, u8), cur: (u8, u8)) -> (u8, u8) {
    let (em, hm) = cur;
    match d {
        0 => (prev.0 * (1 - em), em),
        1 | 3 => (em, hm),
        2 | 4 => (hm, em),
        _ => unreachable!(),
    }
}

/// Memoized recurrence evaluator for `U(n) = (ε(n), η(n))`; `U(k) = (0,0)`
/// for `k <= 0` by zero extension.
#[derive(Default)]
pub struct R5Eval {
    memo: RefCell<HashMap<u64, (u8, u8)>>,
}

impl R5Eval {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&self, n: u64) -> (u8, u8) {
        if n == 0 {
            return (0, 0);
        }
        if n < 20 {
            return R5_SEED[(n - 1) as usize];
        }
        if let Some(v) = self.memo.borrow().get(&n) {
            return *v;
        }
        let (m, d) = (n / 5, n % 5);
        let value = r5_step(d, self.eval(m - 1), self.eval(m));
        self.memo.borrow_mut().insert(n, value);
        value
    }
}

/// Dense bottom-up table of `U(n)` for `n <= n_max`.
pub fn build_r5_table(n_max: u64) -> Vec<(u8, u8)> {
    let mut t = vec![(0u8, 0u8); n_max as usize + 1];
    for (i, v) in R5_SEED.iter().enumerate() {
        if i < n_max as usize {
            t[i + 1] = *v;
        }
    }
    for n in 20..=n_max as usize {
        let (m, d) = (n / 5, n % 5);
        t[n] = r5_step(d as u64, t[m - 1], t[m]);
    }
    t
}

/// The five transitions `(U(m-1), U(m))` that occur for `m >= 3`.
pub const R5_TRANSITIONS: [((u8, u8), (u8, u8)); 5] = [
    ((0, 0), (0, 0)),
    ((1, 0), (0, 0)),
    ((0, 0), (0, 1)),
    ((1, 0), (0, 1)),
    ((0, 1), (1, 0)),
];

/// Any source of `U(n)` values (recurrence evaluator, automaton, table).
pub trait USource {
    /// `U(n)`, with `U(k) = (0, 0)` for `k = 0` (zero extension).
    fn u(&self, n: u64) -> (u8, u8);
}

impl USource for R5Eval {
    fn u(&self, n: u64) -> (u8, u8) {
        self.eval(n)
    }
}

/// Row of the `θ` table for a transition, indexed by the residue `d`.
fn theta_row(key: ((u8, u8), (u8, u8))) -> Result<[u8; 5]> {
    Ok(match key {
        ((0, 0), (0, 0)) | ((1, 0), (0, 0)) => [1, 1, 1, 1, 1],
        ((0, 0), (0, 1)) | ((1, 0), (0, 1)) => [0, 1, 0, 1, 0],
        ((0, 1), (1, 0)) => [1, 0, 1, 0, 1],
        ((a, b), (c, d)) => return Err(Error::UnlistedTransition(a, b, c, d)),
    })
}

/// Tabulated `ε₄(n)` for `3 <= n <= 14`; the lookup table below is valid
/// for `m >= 3`, i.e. `n >= 15`.
pub const R5_EPS4_SEED: [i8; 12] = [-3, -2, -2, -2, -2, -2, -2, -3, -3, -4, -3, -4];

/// Tabulated `θ(n)` for `3 <= n <= 14`; the transition table is valid for
/// `m >= 3`, i.e. `n >= 15`.
pub const R5_THETA_SEED: [u8; 12] = [1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1];

/// `θ(n)` for `n >= 3`: below `n = 15` from the tabulated seeds, above from
/// the transition table keyed on `(U(m-1), U(m))` and `d` where `n = 5m + d`.
pub fn theta_from_u(u: &impl USource, n: u64) -> Result<u8> {
    assert!(n >= 3);
    if n < 15 {
        return Ok(R5_THETA_SEED[(n - 3) as usize]);
    }
    let (m, d) = (n / 5, n % 5);
    Ok(theta_row((u.u(m - 1), u.u(m)))?[d as usize])
}

/// `ε₄(n)` for `n >= 3`: below `n = 15` from the tabulated seeds, above via
/// `-2 - σ(m) - ε(m)` (residues 0, 2), `-2 - σ(m) - η(m)` (residues 1, 3),
/// and the `(U(m), U(m+1))` table for residue 4.
pub fn eps4_from_u(u: &impl USource, n: u64) -> Result<i8> {
    assert!(n >= 3);
    if n < 15 {
        return Ok(R5_EPS4_SEED[(n - 3) as usize]);
    }
    let (m, d) = (n / 5, n % 5);
    let (e, h) = u.u(m);
    let sigma = (e + h) as i8;
    Ok(match d {
        0 | 2 => -2 - sigma - e as i8,
        1 | 3 => -2 - sigma - h as i8,
        4 => {
            let key = (u.u(m), u.u(m + 1));
            match key {
                ((0, 0), (0, 0)) => -2,
                ((0, 0), (0, 1)) | ((0, 1), (1, 0)) | ((1, 0), (0, 0)) => -3,
                ((1, 0), (0, 1)) => -4,
                ((a, b), (c, dd)) => return Err(Error::UnlistedTransition(a, b, c, dd)),
            }
        }
        _ => unreachable!(),
    })
}

/// Definition method: `(ε, η, θ, ε₄)` at `n >= 3` extracted from a
/// generated order-5 sequence through the five denesting formulas.
pub fn r5_definition(seq: &Sequence, n: u64) -> (i64, i64, i64, i64) {
    let t5 = |m: i64| seq.window_sum(m, 5) as i64;
    let n_i = n as i64;
    (
        seq.term(5 * n) as i64 - t5(n_i) - 2,
        t5(n_i + 2) - 1 - seq.term(5 * n + 2) as i64,
        seq.term(5 * n + 3) as i64 - t5(n_i + 3) + 4,
        seq.term(5 * n + 4) as i64 - t5(n_i + 4) + 2,
    )
}

/// `(ε, η, θ, ε₄)` at `n >= 3` by the chosen method. Disjointness
/// `ε·η = 0` is asserted on every evaluation.
pub fn r5_correctors(n: u64, method: Method, seq: Option<&Sequence>) -> Result<(u8, u8, u8, i8)> {
    assert!(n >= 3, "order-5 correctors are defined for n >= 3");
    let out = match method {
        Method::Recurrence | Method::Interval => {
            let u = R5Eval::new();
            let (e, h) = u.eval(n);
            (e, h, theta_from_u(&u, n)?, eps4_from_u(&u, n)?)
        }
        Method::Dfao => {
            let eval = R5FromDfao {
                dfao: r5_u_reconstructed()?,
            };
            let (e, h) = eval.u(n);
            (e, h, theta_from_u(&eval, n)?, eps4_from_u(&eval, n)?)
        }
        Method::Definition => {
            let seq = seq.expect("definition method needs a sequence");
            let (e, h, t, e4) = r5_definition(seq, n);
            assert!((0..=1).contains(&e) && (0..=1).contains(&h) && (0..=1).contains(&t));
            assert!((-4..=-2).contains(&e4));
            (e as u8, h as u8, t as u8, e4 as i8)
        }
    };
    assert_eq!(out.0 * out.1, 0, "disjointness fails at {n}");
    Ok(out)
}

struct R5FromDfao {
    dfao: &'static Dfao,
}

impl USource for R5FromDfao {
    fn u(&self, n: u64) -> (u8, u8) {
        if n == 0 {
            return (0, 0);
        }
        match self.dfao.eval(n) {
            DfaoOutput::Pair(e, h) => (e, h),
            _ => unreachable!(),
        }
    }
}

/// Reconstruct the exact minimal automaton for `U` from the recurrences.
pub fn reconstruct_r5_dfao(verify_to: u64) -> Result<Dfao> {
    let u = R5Eval::new();
    reconstruct_msd_dfao(
        "r5-U-reconstructed",
        5,
        move |n| {
            let (e, h) = if n == 0 { (0, 0) } else { u.eval(n) };
            DfaoOutput::Pair(e, h)
        },
        7,
        verify_to,
    )
}

fn r5_u_reconstructed() -> Result<&'static Dfao> {
    static DFAO: OnceLock<Dfao> = OnceLock::new();
    if DFAO.get().is_none() {
        let built = reconstruct_r5_dfao(100_000)?;
        let _ = DFAO.set(built);
    }
    Ok(DFAO.get().unwrap())
}
