//! Run every identity suite and print one summary line per identity.
//!
//! Run with: cargo run --release --example verify_identities

use almost_golomb::correctors::{build_r4_table, build_r5_table, eps3, Method};
use almost_golomb::identities::{check_gap2, check_r2, check_r3, check_r4, check_r5};
use almost_golomb::seq::{generate_almost_golomb, generate_gap_variant};

fn main() {
    let n = 200_000u64;

    let r2 = generate_almost_golomb(2, n).unwrap();
    for report in &check_r2(&r2).unwrap().reports {
        println!("{}", report.summary_line());
    }

    let r3 = generate_almost_golomb(3, n).unwrap();
    let eps: Vec<u8> = (0..=(n / 3 + 3))
        .map(|k| if k == 0 { 0 } else { eps3(k, Method::Interval) })
        .collect();
    for report in &check_r3(&r3, &eps).unwrap().reports {
        println!("{}", report.summary_line());
    }

    let r4 = generate_almost_golomb(4, n).unwrap();
    for report in &check_r4(&r4, &build_r4_table(n / 4 + 2)).unwrap().reports {
        println!("{}", report.summary_line());
    }

    let r5 = generate_almost_golomb(5, n).unwrap();
    for report in &check_r5(&r5, &build_r5_table(n / 5 + 3)).unwrap().reports {
        println!("{}", report.summary_line());
    }

    // the singleton set recursion is expected to fail from k = 4 on; the
    // shifted-pair form is the corrected recursion
    let gap2 = generate_gap_variant(2, n).unwrap();
    for report in &check_gap2(&gap2).unwrap().reports {
        println!("{}", report.summary_line());
    }
}
