//! Meta-structure sweep: maximal multiplicities M(r), the thresholds j_k
//! where a new multiplicity first appears, and the conjectures tying them
//! back to Golomb's sequence.
//!
//! Run with: cargo run --release --example meta_table
//! Worker count can be pinned with ALMOST_GOLOMB_WORKERS.

use almost_golomb::analysis::meta_structure;

fn main() {
    let report = meta_structure(50, 4).unwrap();
    print!("{}", report.render_table());
    println!();
    print!("{}", report.to_csv());
}
