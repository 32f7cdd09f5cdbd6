//! Automaton queries: evaluation, geometric orbits, and reconstruction.
//!
//! The embedded base-4 and base-5 tables are depth-truncated: they are
//! exact for n < 4096 (base 4) and n < 3125 (base 5) and lose state
//! beyond that. This example prints the first disagreement and compares
//! against the exact automata reconstructed from the recurrence systems.
//!
//! Run with: cargo run --release --example automata

use almost_golomb::correctors::{r5_correctors, reconstruct_r5_dfao, Method};
use almost_golomb::dfao::{build_dfao, geometric_orbit, DfaoName, DfaoOutput};

fn main() {
    for name in DfaoName::ALL {
        let dfao = build_dfao(name);
        println!(
            "{}: base {}, {} states, exact through n = {}",
            dfao.name,
            dfao.base,
            dfao.n_states(),
            if dfao.exact_through == u64::MAX {
                "unbounded".to_string()
            } else {
                dfao.exact_through.to_string()
            }
        );
    }

    let r3 = build_dfao(DfaoName::R3Eps);
    println!(
        "r3-eps at 5, 16, 17, 18, 19: {} {} {} {} {}",
        r3.eval(5),
        r3.eval(16),
        r3.eval(17),
        r3.eval(18),
        r3.eval(19)
    );

    // orbit along 5^k: the embedded table is only exact for k <= 4, so the
    // orbit is taken on the reconstructed automaton
    let r5 = reconstruct_r5_dfao(100_000).unwrap();
    println!("reconstructed r5 automaton: {} states", r5.n_states());
    let orbit = geometric_orbit(&r5, &[1], &[], 12);
    println!(
        "U(5^k) for k=0..12: preperiod {}, period {}, cycle {:?}",
        orbit.preperiod,
        orbit.period,
        orbit
            .cycle
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
    );

    // first index where the embedded r5 table diverges from the recurrences
    let table = build_dfao(DfaoName::R5U);
    let first = (1..20_000u64).find(|&n| {
        let (e, h, _, _) = r5_correctors(n.max(3), Method::Recurrence, None).unwrap();
        n >= 3 && table.eval(n) != DfaoOutput::Pair(e, h)
    });
    println!("embedded r5-U table first diverges at n = {first:?}");
}
