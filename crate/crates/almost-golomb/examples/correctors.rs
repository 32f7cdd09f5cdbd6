//! Evaluate the correction sequences by every available method and show
//! that the methods agree.
//!
//! Run with: cargo run --release --example correctors

use almost_golomb::correctors::{
    eps3, eps3_interval_set, r4_eps, r5_correctors, Method, R5_TRANSITIONS,
};
use almost_golomb::seq::generate_almost_golomb;

fn main() {
    // order 3: indicator of a union of geometric intervals
    println!("order-3 support intervals I_k:");
    for k in 0..4 {
        println!("  I_{k} = {:?}", eps3_interval_set(k));
    }
    let mut agree = true;
    for n in 1..=100_000u64 {
        let v = eps3(n, Method::Interval);
        agree &= v == eps3(n, Method::Recurrence) && v == eps3(n, Method::Dfao);
    }
    println!("order-3 interval/recurrence/automaton agreement to 1e5: {agree}");

    // order 4: four mutually recursive bit sequences
    let seq4 = generate_almost_golomb(4, 400_010).unwrap();
    let mut agree = true;
    for n in 5..=100_000u64 {
        for i in 0..4 {
            let v = r4_eps(i, n, Method::Recurrence, None).unwrap();
            agree &= v == r4_eps(i, n, Method::Definition, Some(&seq4)).unwrap();
        }
    }
    println!("order-4 recurrence/definition agreement to 1e5: {agree}");
    let quad: Vec<u8> = (0..4)
        .map(|i| r4_eps(i, 16, Method::Recurrence, None).unwrap())
        .collect();
    println!("order-4 corrector quadruple at n=16: {quad:?}");

    // order 5: the pair U(n) plus the two derived tables
    let seq5 = generate_almost_golomb(5, 500_010).unwrap();
    let mut agree = true;
    for n in 3..=100_000u64 {
        let v = r5_correctors(n, Method::Recurrence, None).unwrap();
        agree &= v == r5_correctors(n, Method::Definition, Some(&seq5)).unwrap();
    }
    println!("order-5 recurrence/definition agreement to 1e5: {agree}");
    println!("order-5 transitions allowed: {R5_TRANSITIONS:?}");
    for n in [12, 13, 15, 20] {
        let (e, h, t, e4) = r5_correctors(n, Method::Recurrence, None).unwrap();
        println!("  n={n:2}: eps={e} eta={h} theta={t} eps4={e4}");
    }
}
