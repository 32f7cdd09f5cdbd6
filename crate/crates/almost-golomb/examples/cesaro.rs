//! Cesaro means of a(n)/n for the order-2 sequence: two distinct limit
//! points along N = 2^k and N = 3*2^(k-1).
//!
//! Run with: cargo run --release --example cesaro

use almost_golomb::analysis::cesaro_r2;
use almost_golomb::seq::generate_almost_golomb;

fn main() {
    let k_max = 22;
    let seq = generate_almost_golomb(2, 3 * (1u64 << (k_max - 1))).unwrap();
    let report = cesaro_r2(&seq, k_max).unwrap();
    println!(
        "L1 = {:.9}   L2 = {:.9}   L1-L2 = {:.3e}",
        report.l1,
        report.l2,
        report.l1 - report.l2
    );
    for row in &report.rows {
        println!(
            "k={:2}  C(2^k)={:.9} err={:.2e}   C(3*2^(k-1))={:.9} err={:.2e}",
            row.k, row.c_pow, row.err_pow, row.c_mid, row.err_mid
        );
    }
    println!("within tolerance at every k: {}", report.pass);
}
