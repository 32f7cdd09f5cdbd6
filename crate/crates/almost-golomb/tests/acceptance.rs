//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with --nocapture).
//!
//! Two sub-checks document known discrepancies instead of passing:
//! the displayed gap-2 prefix contradicts its own defining rule, and the
//! embedded base-4/base-5 automaton tables are exact only up to a depth
//! bound. Both are asserted in their documented (failing) direction so
//! drift in either is caught.

use almost_golomb::analysis::{cesaro_r2, meta_structure, ratio_pivots};
use almost_golomb::correctors::{
    build_r4_table, build_r5_table, eps3, r4_definition, r4_step, r5_definition, r5_step,
    reconstruct_r4_dfao, reconstruct_r5_dfao, Method,
};
use almost_golomb::dfao::{build_dfao, DfaoName, DfaoOutput};
use almost_golomb::identities::{check_r2, check_r3, check_r4, check_r5};
use almost_golomb::report::ReportBundle;
use almost_golomb::seq::{
    generate_almost_golomb, generate_gap_variant, generate_golomb, verify_defining_property,
    window_determinism_check,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(criterion: &str, ok: bool) -> bool {
    println!(
        "criterion {:55} {}",
        criterion,
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn bundle_ok(bundle: &ReportBundle) -> bool {
    for r in &bundle.reports {
        if !r.pass {
            println!("  {}", r.summary_line());
        }
    }
    bundle.pass()
}

#[test]
fn criterion_01_oracle_equivalence() {
    let mut ok = true;
    for r in 2..=10 {
        let seq = generate_almost_golomb(r, 10_000).unwrap();
        let report = verify_defining_property(&seq, r);
        ok &= report.pass();
    }
    assert!(line("1: oracle equivalence, r=2..10, N=1e4", ok));
}

#[test]
fn criterion_02_known_prefixes() {
    let r2 = generate_almost_golomb(2, 24).unwrap();
    let ok2 = r2.terms()
        == [
            1, 2, 2, 3, 4, 4, 5, 6, 7, 7, 8, 8, 9, 10, 11, 12, 13, 13, 14, 14, 15, 15, 16, 16,
        ];
    let r3 = generate_almost_golomb(3, 24).unwrap();
    let ok3 = r3.terms()
        == [
            1, 2, 2, 2, 3, 4, 5, 5, 6, 6, 6, 7, 7, 8, 8, 9, 10, 11, 12, 13, 13, 14, 15, 15,
        ];
    let r4 = generate_almost_golomb(4, 24).unwrap();
    let ok4 = r4.terms()
        == [
            1, 2, 2, 2, 3, 3, 4, 4, 5, 6, 6, 7, 7, 8, 8, 9, 9, 9, 10, 10, 11, 11, 11, 12,
        ];
    let golomb = generate_golomb(12).unwrap();
    let okg = golomb.g[1..] == [1, 2, 2, 3, 3, 4, 4, 4, 5, 5, 5, 6];
    assert!(line(
        "2a: known prefixes r=2,3,4 and Golomb",
        ok2 && ok3 && ok4 && okg
    ));

    // The displayed gap-2 prefix 1,2,2,3,3,4,5,6,6,7,7,8,8 contradicts the
    // defining rule a(a(n)+a(n-2)) = n it is attributed to: with those
    // values, a(a(3)+a(1)) = a(3) = 2 != 3, and so on for every checkable
    // index. The rule-faithful generator therefore cannot reproduce it.
    // This sub-check is reported as the FAIL it is, and the erratum is
    // pinned: the displayed list must keep violating the rule, and the
    // generated sequence must keep satisfying it.
    let displayed: [u64; 13] = [1, 2, 2, 3, 3, 4, 5, 6, 6, 7, 7, 8, 8];
    let gap2 = generate_gap_variant(2, 13).unwrap();
    let matches_displayed = gap2.terms() == displayed;
    line(
        "2b: gap-2 displayed prefix (known erratum)",
        matches_displayed,
    );
    assert!(!matches_displayed);
    let a = |n: i64| -> u64 {
        if n >= 1 {
            displayed[n as usize - 1]
        } else {
            0
        }
    };
    let mut displayed_violates = false;
    for n in 3..=11i64 {
        let p = a(n) + a(n - 2);
        if (1..=13).contains(&(p as i64)) && a(p as i64) != n as u64 {
            displayed_violates = true;
        }
    }
    assert!(
        displayed_violates,
        "displayed gap-2 prefix now satisfies the rule"
    );
    let long = generate_gap_variant(2, 100_000).unwrap();
    let mut rule_ok = true;
    for n in 3..=100_000i64 {
        let g = |k: i64| -> u64 {
            if k >= 1 {
                long.term(k as u64)
            } else {
                0
            }
        };
        let p = g(n) + g(n - 2);
        if p <= 100_000 && g(p as i64) != n as u64 {
            rule_ok = false;
        }
    }
    assert!(line(
        "2c: gap-2 generated sequence satisfies its rule",
        rule_ok
    ));
}

#[test]
fn criterion_03_denesting_suites() {
    let n23 = 1_000_000u64;
    let n45 = 400_000u64;

    let r2 = generate_almost_golomb(2, n23).unwrap();
    let ok2 = bundle_ok(&check_r2(&r2).unwrap());

    let r3 = generate_almost_golomb(3, n23).unwrap();
    let eps: Vec<u8> = (0..=(n23 / 3 + 3))
        .map(|k| if k == 0 { 0 } else { eps3(k, Method::Interval) })
        .collect();
    let ok3 = bundle_ok(&check_r3(&r3, &eps).unwrap());

    let r4 = generate_almost_golomb(4, n45).unwrap();
    let ok4 = bundle_ok(&check_r4(&r4, &build_r4_table(n45 / 4 + 2)).unwrap());

    let r5 = generate_almost_golomb(5, n45).unwrap();
    let ok5 = bundle_ok(&check_r5(&r5, &build_r5_table(n45 / 5 + 3)).unwrap());

    assert!(line(
        "3: denesting suites, N=1e6 (r=2,3) / 4e5 (r=4,5)",
        ok2 && ok3 && ok4 && ok5
    ));
}

#[test]
fn criterion_04_corrector_agreement() {
    let hi = 100_000u64;

    // order 3: the embedded automaton is exact everywhere
    let seq3 = generate_almost_golomb(3, 3 * hi + 10).unwrap();
    let mut ok3 = true;
    for n in 2..=hi {
        let v = eps3(n, Method::Interval);
        ok3 &= v == eps3(n, Method::Recurrence) && v == eps3(n, Method::Dfao);
        // definition leg: a(3m) = a(m-2)+a(m-1)+a(m) + 1 + eps(m-1) at m = n+1
        ok3 &=
            v as i64 == seq3.term(3 * (n + 1)) as i64 - seq3.window_sum(n as i64 + 1, 3) as i64 - 1;
    }
    assert!(line(
        "4a: r=3 interval/recurrence/automaton/definition",
        ok3
    ));

    // order 4 and 5: recurrence and definition agree on the full range;
    // the embedded tables agree on their exact domain only, and the
    // automata reconstructed from the recurrences agree everywhere
    let table4 = build_r4_table(hi + 2);
    let seq4 = generate_almost_golomb(4, 4 * hi + 10).unwrap();
    let verbatim4: Vec<_> = (0..4)
        .map(|i| {
            build_dfao(
                [
                    DfaoName::R4Eps0,
                    DfaoName::R4Eps1,
                    DfaoName::R4Eps2,
                    DfaoName::R4Eps3,
                ][i],
            )
        })
        .collect();
    let rebuilt4: Vec<_> = (0..4)
        .map(|i| reconstruct_r4_dfao(i, hi).unwrap())
        .collect();
    let mut ok4 = true;
    let mut truncated4 = false;
    for n in 5..=hi {
        let def = r4_definition(&seq4, n);
        for i in 0..4 {
            let v = table4[n as usize][i];
            ok4 &= def[i] == v as i64;
            ok4 &= rebuilt4[i].eval(n) == DfaoOutput::Bit(v);
            let emb = verbatim4[i].eval(n);
            if n <= verbatim4[i].exact_through {
                ok4 &= emb == DfaoOutput::Bit(v);
            } else if emb != DfaoOutput::Bit(v) {
                truncated4 = true;
            }
        }
    }
    assert!(line("4b: r=4 recurrence/definition/automata", ok4));

    let table5 = build_r5_table(hi + 2);
    let seq5 = generate_almost_golomb(5, 5 * hi + 10).unwrap();
    let verbatim5 = build_dfao(DfaoName::R5U);
    let rebuilt5 = reconstruct_r5_dfao(hi).unwrap();
    let mut ok5 = true;
    let mut disjoint = true;
    let mut truncated5 = false;
    for n in 3..=hi {
        let (e, h) = table5[n as usize];
        let (de, dh, _, _) = r5_definition(&seq5, n);
        ok5 &= (de, dh) == (e as i64, h as i64);
        ok5 &= rebuilt5.eval(n) == DfaoOutput::Pair(e, h);
        let emb = verbatim5.eval(n);
        if n <= verbatim5.exact_through {
            ok5 &= emb == DfaoOutput::Pair(e, h);
        } else if emb != DfaoOutput::Pair(e, h) {
            truncated5 = true;
        }
        disjoint &= e * h == 0;
    }
    assert!(line("4c: r=5 recurrence/definition/automata", ok5));
    assert!(line("4d: r=5 disjointness eps*eta = 0 to 1e5", disjoint));

    // pin the depth truncation of the embedded tables: they must keep
    // disagreeing beyond their exact domain, or the bound is stale
    line("4e: embedded r4/r5 tables exact beyond depth bound", false);
    assert!(
        truncated4 && truncated5,
        "embedded tables now exact beyond their bound"
    );
}

#[test]
fn criterion_05_substitution_sweeps() {
    let m_hi = 20_000u64;
    let table4 = build_r4_table(4 * m_hi + 5);
    let mut ok4 = true;
    for m in 6..=m_hi {
        for d in 0..4u64 {
            ok4 &= table4[(4 * m + d) as usize]
                == r4_step(
                    d,
                    table4[m as usize - 1],
                    table4[m as usize],
                    table4[m as usize + 1],
                );
        }
    }
    let table5 = build_r5_table(5 * m_hi + 6);
    let mut ok5 = true;
    for m in 4..=m_hi {
        for d in 0..5u64 {
            ok5 &= table5[(5 * m + d) as usize]
                == r5_step(d, table5[m as usize - 1], table5[m as usize]);
        }
    }
    assert!(line(
        "5: 16 + 10 recurrence substitutions, m <= 2e4",
        ok4 && ok5
    ));
}

#[test]
fn criterion_06_ratio_identities() {
    let mut ok = true;
    for r in 2..=5 {
        let seq = generate_almost_golomb(r, 1_000_000).unwrap();
        let report = ratio_pivots(r, &seq).unwrap();
        for f in &report.families {
            if !f.pass {
                println!("  order {r} family {}: {}", f.family, f.detail);
            }
            ok &= f.pass;
        }
    }
    assert!(line("6: exact ratio families, N=1e6, r=2..5", ok));
}

#[test]
fn criterion_07_cesaro() {
    let k_max = 22u32;
    let seq = generate_almost_golomb(2, 3 * (1u64 << (k_max - 1))).unwrap();
    let report = cesaro_r2(&seq, k_max).unwrap();
    let last = report.rows.last().unwrap();
    let mut ok = last.err_pow <= 5e-4 && last.err_mid <= 5e-4;
    for row in &report.rows {
        if (16..=22).contains(&row.k) {
            ok &= row.c_pow > row.c_mid;
        }
    }
    assert!(line(
        "7: Cesaro means at k=22 within 5e-4, signs 16..22",
        ok
    ));
}

#[test]
fn criterion_08_meta_table() {
    let report = meta_structure(200, 4).unwrap();
    let ok = report.unstabilized.is_empty() && report.pass();
    if !ok {
        print!("{}", report.render_table());
    }
    assert!(line(
        "8: meta table, thresholds, and conjectures to r=200",
        ok
    ));
}

#[test]
fn criterion_09_window_determinism() {
    let mut ok = true;
    for r in 2..=6 {
        let seq = generate_almost_golomb(r, 100_000).unwrap();
        ok &= window_determinism_check(&seq, r).unwrap().pass();
    }
    assert!(line("9: window determinism, r=2..6, N=1e5", ok));
}

#[test]
fn criterion_10_perturbation_sensitivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let n = 20_000u64;
    let eps: Vec<u8> = (0..=(n / 3 + 3))
        .map(|k| if k == 0 { 0 } else { eps3(k, Method::Interval) })
        .collect();
    let table4 = build_r4_table(n / 4 + 2);
    let table5 = build_r5_table(n / 5 + 3);
    let mut ok = true;
    for r in 2..=5u32 {
        let clean = generate_almost_golomb(r, n).unwrap();
        for _ in 0..100 {
            let idx = rng.gen_range(3..n / 2);
            let mut seq = clean.clone();
            let old = seq.term(idx);
            let delta: i64 = if old > 1 && rng.gen_bool(0.5) { -1 } else { 1 };
            seq.set_term(idx, (old as i64 + delta) as u64);
            // the definition oracle catches nearly every flip; the few it
            // cannot see (probes past the generated range) must trip the
            // denesting suite instead
            let mut detected = !verify_defining_property(&seq, r).pass();
            if !detected {
                detected = match r {
                    2 => check_r2(&seq).map(|b| !b.pass()).unwrap_or(true),
                    3 => check_r3(&seq, &eps).map(|b| !b.pass()).unwrap_or(true),
                    4 => check_r4(&seq, &table4).map(|b| !b.pass()).unwrap_or(true),
                    _ => check_r5(&seq, &table5).map(|b| !b.pass()).unwrap_or(true),
                };
            }
            if !detected {
                println!(
                    "  undetected flip: r={r} n={idx} {old} -> {}",
                    seq.term(idx)
                );
                ok = false;
            }
        }
    }
    assert!(line("10: 100 random flips per order all detected", ok));
}
