//! Deterministic finite automata with output (DFAOs) for the correction
//! sequences, read most-significant-digit first.
//!
//! Two sources of automata coexist:
//!
//! - [`build_dfao`] returns the published transition tables verbatim. The
//!   base-3 table is exact; the base-4 and base-5 tables are depth-truncated
//!   exports that are exact only for inputs with at most 6 (base 4) resp. 5
//!   (base 5) digits, after which their all-zero "exit" rows discard state.
//!   [`Dfao::exact_through`] exposes that bound; disagreement beyond it is a
//!   reported finding, the tables are never patched.
//! - [`reconstruct_msd_dfao`] derives a minimal automaton directly from any
//!   exact evaluator (in practice the recurrence systems) by signature
//!   search, and verifies it against the evaluator before returning.

use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Output symbol of a DFAO state: a single bit, or the pair `(ε, η)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DfaoOutput {
    Bit(u8),
    Pair(u8, u8),
}

impl fmt::Display for DfaoOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DfaoOutput::Bit(b) => write!(f, "{b}"),
            DfaoOutput::Pair(e, h) => write!(f, "({e},{h})"),
        }
    }
}

/// A deterministic finite automaton with output, input read MSD-first.
#[derive(Debug, Clone)]
pub struct Dfao {
    pub name: String,
    pub base: u8,
    pub initial: usize,
    /// `transitions[state][digit]`.
    pub transitions: Vec<Vec<usize>>,
    pub outputs: Vec<DfaoOutput>,
    /// Largest `n` up to which the table is known exact (`u64::MAX` when the
    /// automaton is exact everywhere it was verified).
    pub exact_through: u64,
}

impl Dfao {
    pub fn n_states(&self) -> usize {
        self.transitions.len()
    }

    fn self_check(&self) -> &Self {
        assert_eq!(self.outputs.len(), self.n_states());
        for row in &self.transitions {
            assert_eq!(row.len(), self.base as usize);
            for &t in row {
                assert!(t < self.n_states(), "dangling transition in {}", self.name);
            }
        }
        self
    }

    /// Run the automaton over explicit digits.
    pub fn run(&self, digits: &[u8]) -> DfaoOutput {
        let mut state = self.initial;
        for &d in digits {
            state = self.transitions[state][d as usize];
        }
        self.outputs[state]
    }

    /// Evaluate at `n >= 1` via its base-`b` expansion.
    pub fn eval(&self, n: u64) -> DfaoOutput {
        debug_assert!(n >= 1);
        self.run(&digits_msd(n, self.base))
    }
}

/// Base-`b` digits of `n`, most significant first. `digits_msd(0, b)` is
/// empty (the empty word).
pub fn digits_msd(n: u64, base: u8) -> Vec<u8> {
    let b = base as u64;
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push((m % b) as u8);
        m /= b;
    }
    digits.reverse();
    digits
}

/// Names of the published automata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DfaoName {
    R3Eps,
    R4Eps0,
    R4Eps1,
    R4Eps2,
    R4Eps3,
    R5U,
}

impl std::str::FromStr for DfaoName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "r3-eps" => DfaoName::R3Eps,
            "r4-eps0" => DfaoName::R4Eps0,
            "r4-eps1" => DfaoName::R4Eps1,
            "r4-eps2" => DfaoName::R4Eps2,
            "r4-eps3" => DfaoName::R4Eps3,
            "r5-U" => DfaoName::R5U,
            other => return Err(Error::UnknownDfao(other.to_string())),
        })
    }
}

impl DfaoName {
    pub const ALL: [DfaoName; 6] = [
        DfaoName::R3Eps,
        DfaoName::R4Eps0,
        DfaoName::R4Eps1,
        DfaoName::R4Eps2,
        DfaoName::R4Eps3,
        DfaoName::R5U,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            DfaoName::R3Eps => "r3-eps",
            DfaoName::R4Eps0 => "r4-eps0",
            DfaoName::R4Eps1 => "r4-eps1",
            DfaoName::R4Eps2 => "r4-eps2",
            DfaoName::R4Eps3 => "r4-eps3",
            DfaoName::R5U => "r5-U",
        }
    }
}

// 10-state base-3 automaton for the order-3 corrector ε.
// States: 0=q0 1=q1 2=q2 3=c= 4=c< 5=c> 6=e= 7=e< 8=e> 9=reject.
const R3_EPS_T: [[usize; 3]; 10] = [
    [9, 1, 2],
    [9, 9, 3],
    [6, 9, 9],
    [4, 3, 5],
    [4, 4, 4],
    [5, 5, 5],
    [7, 6, 8],
    [7, 7, 7],
    [8, 8, 8],
    [9, 9, 9],
];
const R3_EPS_O: [u8; 10] = [0, 0, 0, 1, 0, 1, 0, 1, 0, 0];

const R4_EPS0_T: [[usize; 4]; 30] = [
    [0, 1, 2, 2],
    [3, 4, 14, 18],
    [18, 18, 18, 18],
    [22, 6, 25, 5],
    [15, 22, 6, 25],
    [16, 23, 7, 26],
    [16, 23, 7, 27],
    [17, 24, 8, 28],
    [29, 29, 13, 29],
    [12, 28, 10, 12],
    [13, 29, 13, 13],
    [28, 10, 12, 28],
    [29, 13, 13, 29],
    [0, 0, 0, 0],
    [5, 15, 19, 19],
    [7, 16, 20, 20],
    [8, 17, 21, 21],
    [13, 29, 29, 29],
    [19, 19, 19, 19],
    [20, 20, 20, 20],
    [21, 21, 21, 21],
    [29, 29, 29, 29],
    [23, 7, 26, 7],
    [24, 8, 28, 8],
    [29, 13, 29, 13],
    [9, 11, 26, 7],
    [10, 12, 28, 8],
    [10, 12, 28, 10],
    [13, 13, 29, 13],
    [0, 0, 0, 0],
];

const R4_EPS1_T: [[usize; 4]; 30] = [
    [0, 6, 1, 1],
    [2, 2, 2, 2],
    [3, 3, 3, 3],
    [4, 4, 4, 4],
    [5, 5, 5, 5],
    [21, 21, 21, 21],
    [9, 22, 15, 2],
    [20, 28, 8, 20],
    [21, 29, 21, 21],
    [10, 25, 12, 23],
    [11, 26, 13, 24],
    [14, 28, 14, 28],
    [19, 27, 13, 24],
    [20, 28, 14, 28],
    [21, 29, 21, 29],
    [23, 16, 3, 3],
    [24, 17, 4, 4],
    [28, 18, 5, 5],
    [29, 21, 21, 21],
    [28, 8, 20, 28],
    [29, 21, 21, 29],
    [0, 0, 0, 0],
    [16, 10, 25, 12],
    [17, 11, 26, 13],
    [18, 14, 28, 14],
    [17, 11, 26, 7],
    [18, 14, 28, 8],
    [8, 20, 28, 8],
    [21, 21, 29, 21],
    [0, 0, 0, 0],
];

const R4_EPS2_T: [[usize; 4]; 29] = [
    [0, 1, 2, 2],
    [3, 12, 17, 20],
    [20, 20, 20, 20],
    [4, 14, 7, 13],
    [5, 15, 8, 15],
    [6, 16, 10, 16],
    [11, 28, 11, 28],
    [24, 26, 8, 15],
    [25, 27, 10, 16],
    [25, 27, 10, 25],
    [28, 28, 11, 28],
    [0, 0, 0, 0],
    [18, 4, 14, 7],
    [19, 5, 15, 8],
    [19, 5, 15, 9],
    [23, 6, 16, 10],
    [28, 11, 28, 11],
    [13, 18, 21, 21],
    [15, 19, 22, 22],
    [16, 23, 23, 23],
    [21, 21, 21, 21],
    [22, 22, 22, 22],
    [23, 23, 23, 23],
    [28, 28, 28, 28],
    [27, 10, 25, 27],
    [28, 11, 28, 28],
    [10, 25, 27, 10],
    [11, 28, 28, 11],
    [0, 0, 0, 0],
];

const R4_EPS3_T: [[usize; 4]; 30] = [
    [0, 5, 1, 1],
    [2, 2, 2, 2],
    [3, 3, 3, 3],
    [4, 4, 4, 4],
    [9, 9, 9, 9],
    [10, 11, 6, 2],
    [12, 7, 3, 3],
    [13, 8, 4, 4],
    [16, 9, 9, 9],
    [19, 19, 19, 19],
    [20, 14, 22, 12],
    [7, 20, 14, 22],
    [8, 21, 15, 23],
    [9, 24, 16, 24],
    [8, 21, 15, 25],
    [9, 24, 16, 26],
    [19, 29, 19, 29],
    [26, 28, 18, 26],
    [29, 29, 19, 29],
    [0, 0, 0, 0],
    [21, 15, 23, 13],
    [24, 16, 24, 16],
    [27, 17, 23, 13],
    [28, 18, 24, 16],
    [29, 19, 29, 19],
    [28, 18, 26, 28],
    [29, 19, 29, 29],
    [18, 26, 28, 18],
    [19, 29, 29, 19],
    [0, 0, 0, 0],
];

const R5_U_T: [[usize; 5]; 23] = [
    [0, 1, 5, 10, 18],
    [6, 2, 2, 2, 2],
    [3, 3, 3, 3, 3],
    [4, 4, 4, 4, 4],
    [9, 9, 9, 9, 9],
    [2, 2, 14, 19, 11],
    [20, 7, 3, 3, 3],
    [21, 8, 4, 4, 4],
    [22, 9, 9, 9, 9],
    [0, 0, 0, 0, 0],
    [19, 11, 19, 11, 19],
    [20, 12, 20, 12, 20],
    [21, 13, 21, 13, 21],
    [22, 17, 22, 17, 22],
    [3, 15, 20, 12, 20],
    [4, 16, 21, 13, 21],
    [9, 17, 22, 17, 22],
    [0, 0, 0, 0, 0],
    [11, 19, 11, 19, 11],
    [12, 20, 12, 20, 12],
    [13, 21, 13, 21, 13],
    [17, 22, 17, 22, 17],
    [0, 0, 0, 0, 0],
];
// outputs: states 0..9 -> (0,0), 10..17 -> (0,1), 18..22 -> (1,0)

fn bit_outputs(ones: &[usize], n: usize) -> Vec<DfaoOutput> {
    let mut out = vec![DfaoOutput::Bit(0); n];
    for &s in ones {
        out[s] = DfaoOutput::Bit(1);
    }
    out
}

/// Build one of the published automata, transcribed verbatim. A static
/// self-check asserts the state counts (10, 30, 30, 29, 30, 23) and
/// transition totality.
pub fn build_dfao(name: DfaoName) -> Dfao {
    let (base, transitions, outputs, exact_through): (u8, Vec<Vec<usize>>, Vec<DfaoOutput>, u64) =
        match name {
            DfaoName::R3Eps => (
                3,
                R3_EPS_T.iter().map(|r| r.to_vec()).collect(),
                R3_EPS_O.iter().map(|&b| DfaoOutput::Bit(b)).collect(),
                u64::MAX,
            ),
            DfaoName::R4Eps0 => (
                4,
                R4_EPS0_T.iter().map(|r| r.to_vec()).collect(),
                bit_outputs(&(14..30).collect::<Vec<_>>(), 30),
                4095,
            ),
            DfaoName::R4Eps1 => (
                4,
                R4_EPS1_T.iter().map(|r| r.to_vec()).collect(),
                bit_outputs(&(22..30).collect::<Vec<_>>(), 30),
                4095,
            ),
            DfaoName::R4Eps2 => (
                4,
                R4_EPS2_T.iter().map(|r| r.to_vec()).collect(),
                bit_outputs(&(12..29).collect::<Vec<_>>(), 29),
                4095,
            ),
            DfaoName::R4Eps3 => (
                4,
                R4_EPS3_T.iter().map(|r| r.to_vec()).collect(),
                bit_outputs(&(20..30).collect::<Vec<_>>(), 30),
                4095,
            ),
            DfaoName::R5U => (
                5,
                R5_U_T.iter().map(|r| r.to_vec()).collect(),
                (0..23)
                    .map(|s| {
                        if s < 10 {
                            DfaoOutput::Pair(0, 0)
                        } else if s < 18 {
                            DfaoOutput::Pair(0, 1)
                        } else {
                            DfaoOutput::Pair(1, 0)
                        }
                    })
                    .collect(),
                3124,
            ),
        };
    let expected_states = match name {
        DfaoName::R3Eps => 10,
        DfaoName::R4Eps0 | DfaoName::R4Eps1 | DfaoName::R4Eps3 => 30,
        DfaoName::R4Eps2 => 29,
        DfaoName::R5U => 23,
    };
    assert_eq!(transitions.len(), expected_states);
    let dfao = Dfao {
        name: name.as_str().to_string(),
        base,
        initial: 0,
        transitions,
        outputs,
        exact_through,
    };
    dfao.self_check();
    dfao
}

/// Orbit of a DFAO over the one-parameter family `[P 0^k Q]_b`.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    /// Outputs for `k = 0..=k_max`.
    pub outputs: Vec<DfaoOutput>,
    /// Steps before the 0-transition orbit becomes periodic.
    pub preperiod: u64,
    /// Period of the 0-transition orbit (of states after `P 0^k`).
    pub period: u64,
    /// One full cycle of outputs (after appending `Q` from each cycle state).
    pub cycle: Vec<DfaoOutput>,
}

/// Evaluate `u([P 0^k Q]_b)` for `k = 0..=k_max` and detect the eventual
/// periodicity of the state after `P 0^k`, which is guaranteed because the
/// 0-transition map acts on a finite state set.
pub fn geometric_orbit(dfao: &Dfao, p: &[u8], q: &[u8], k_max: u64) -> OrbitReport {
    assert!(
        !p.is_empty() && p[0] != 0,
        "P must have a nonzero lead digit"
    );
    let mut state = dfao.initial;
    for &d in p {
        state = dfao.transitions[state][d as usize];
    }
    let finish = |s: usize| -> DfaoOutput {
        let mut t = s;
        for &d in q {
            t = dfao.transitions[t][d as usize];
        }
        dfao.outputs[t]
    };
    // walk the 0-transition map, recording first-visit times
    let mut first_visit: Vec<Option<u64>> = vec![None; dfao.n_states()];
    let mut orbit_states = Vec::new();
    let mut s = state;
    let (preperiod, period) = loop {
        if let Some(t0) = first_visit[s] {
            break (t0, orbit_states.len() as u64 - t0);
        }
        first_visit[s] = Some(orbit_states.len() as u64);
        orbit_states.push(s);
        s = dfao.transitions[s][0];
    };
    let outputs = (0..=k_max)
        .map(|k| {
            let idx = if k < preperiod + period {
                k
            } else {
                preperiod + (k - preperiod) % period
            };
            finish(orbit_states[idx as usize])
        })
        .collect();
    let cycle = (preperiod..preperiod + period)
        .map(|t| finish(orbit_states[t as usize]))
        .collect();
    OrbitReport {
        outputs,
        preperiod,
        period,
        cycle,
    }
}

/// Reconstruct the minimal MSD automaton of an exact evaluator by signature
/// search: two digit prefixes are identified when the evaluator agrees on
/// every suffix of length at most `depth` below them. The result is
/// verified against the evaluator for all `1 <= n <= verify_to` before
/// being returned.
pub fn reconstruct_msd_dfao<F>(
    name: &str,
    base: u8,
    out: F,
    depth: u32,
    verify_to: u64,
) -> Result<Dfao>
where
    F: Fn(u64) -> DfaoOutput,
{
    let b = base as u64;
    let signature = |v: u64| -> Vec<DfaoOutput> {
        let mut sig = vec![out(v)];
        let mut layer = vec![v];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(layer.len() * base as usize);
            for &w in &layer {
                for d in 0..b {
                    next.push(w * b + d);
                }
            }
            sig.extend(next.iter().map(|&w| out(w)));
            layer = next;
        }
        sig
    };
    let mut sig_to_id: HashMap<Vec<DfaoOutput>, usize> = HashMap::new();
    let mut reps: Vec<u64> = Vec::new();
    // state 0 is the initial state (empty prefix)
    reps.push(0);
    sig_to_id.insert(signature(0), 0);
    let mut transitions: Vec<Option<Vec<usize>>> = vec![None];
    let mut outputs = vec![out(0)];
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if transitions[i].is_some() {
            continue;
        }
        let v = reps[i];
        let mut row = Vec::with_capacity(base as usize);
        for d in 0..b {
            // leading zeros keep the initial state
            if v == 0 && d == 0 {
                row.push(0);
                continue;
            }
            let child = v * b + d;
            let sig = signature(child);
            let id = *sig_to_id.entry(sig).or_insert_with(|| {
                reps.push(child);
                transitions.push(None);
                outputs.push(out(child));
                queue.push_back(reps.len() - 1);
                reps.len() - 1
            });
            row.push(id);
        }
        transitions[i] = Some(row);
    }
    let dfao = Dfao {
        name: name.to_string(),
        base,
        initial: 0,
        transitions: transitions.into_iter().map(Option::unwrap).collect(),
        outputs,
        exact_through: u64::MAX,
    };
    dfao.self_check();
    for n in 1..=verify_to {
        if dfao.eval(n) != out(n) {
            return Err(Error::KernelMismatch(n));
        }
    }
    Ok(dfao)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_examples() {
        assert_eq!(digits_msd(5, 3), vec![1, 2]);
        assert_eq!(digits_msd(3, 5), vec![3]);
        assert_eq!(digits_msd(0, 2), Vec::<u8>::new());
    }

    #[test]
    fn state_counts() {
        assert_eq!(build_dfao(DfaoName::R3Eps).n_states(), 10);
        assert_eq!(build_dfao(DfaoName::R4Eps0).n_states(), 30);
        assert_eq!(build_dfao(DfaoName::R4Eps1).n_states(), 30);
        assert_eq!(build_dfao(DfaoName::R4Eps2).n_states(), 29);
        assert_eq!(build_dfao(DfaoName::R4Eps3).n_states(), 30);
        assert_eq!(build_dfao(DfaoName::R5U).n_states(), 23);
    }

    #[test]
    fn published_examples() {
        let r3 = build_dfao(DfaoName::R3Eps);
        assert_eq!(r3.eval(5), DfaoOutput::Bit(1));
        assert_eq!(r3.eval(4), DfaoOutput::Bit(0));
        for n in 16..=18 {
            assert_eq!(r3.eval(n), DfaoOutput::Bit(1));
        }
        let e0 = build_dfao(DfaoName::R4Eps0);
        assert_eq!(e0.transitions[1][2], 14);
        assert_eq!(e0.outputs[14], DfaoOutput::Bit(1));
        assert_eq!(e0.eval(6), DfaoOutput::Bit(1));
        let u = build_dfao(DfaoName::R5U);
        assert_eq!(u.transitions[0][3], 10);
        assert_eq!(u.outputs[10], DfaoOutput::Pair(0, 1));
        assert_eq!(u.eval(4), DfaoOutput::Pair(1, 0));
        assert_eq!(u.eval(13), DfaoOutput::Pair(1, 0));
    }

    #[test]
    fn trivial_orbit() {
        let r3 = build_dfao(DfaoName::R3Eps);
        let orbit = geometric_orbit(&r3, &[1], &[1], 0);
        assert_eq!(orbit.outputs.len(), 1);
        assert!(orbit.period >= 1);
    }
}
