//! Ratio limit points along geometric families, and the tail oscillation
//! of a(n)/n.
//!
//! Run with: cargo run --release --example ratios

use almost_golomb::analysis::{oscillation_profile, ratio_pivots};
use almost_golomb::seq::generate_almost_golomb;

fn main() {
    for r in 2..=5 {
        let seq = generate_almost_golomb(r, 1_000_000).unwrap();
        let report = ratio_pivots(r, &seq).unwrap();
        println!("order {r}:");
        for f in &report.families {
            let last = f.ratios.last().copied().unwrap_or(f64::NAN);
            println!(
                "  {:40} k={}..{} {} (last ratio {:.6})",
                f.family,
                f.k_range.0,
                f.k_range.1,
                if f.pass { "pass" } else { "FAIL" },
                last
            );
        }
        let profile = oscillation_profile(&seq, 16);
        println!(
            "  tail oscillation: a(n)/n in [{:.6}, {:.6}]",
            profile.min(),
            profile.max()
        );
    }
}
