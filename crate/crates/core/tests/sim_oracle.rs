//! Monte Carlo estimates checked against exhaustive per-weight decoding
//! statistics on the [15,7] cyclic EG code.

use aqecc_core::css::asymmetric_bch_ldpc;
use aqecc_core::decoder::{BitFlipConfig, BitFlipDecoder};
use aqecc_core::sim::{simulate_z, StopRule};

fn binom(n: usize, k: usize) -> f64 {
    let mut c = 1.0;
    for j in 0..k {
        c = c * (n - j) as f64 / (j + 1) as f64;
    }
    c
}

/// Exhaustive failure fraction of the bit-flipping decoder over all
/// weight-w error patterns.
fn fail_fraction(dec: &BitFlipDecoder, n: usize, w: usize) -> f64 {
    let cfg = BitFlipConfig::default();
    let mut failures = 0usize;
    let mut total = 0usize;
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        let mut e = vec![0u8; n];
        for &i in &idx {
            e[i] = 1;
        }
        let out = dec.decode(&e, &cfg).unwrap();
        if !out.converged || out.estimate != e {
            failures += 1;
        }
        total += 1;
        // next combination
        let mut i = w;
        loop {
            if i == 0 {
                assert_eq!(total, binom(n, w) as usize);
                return failures as f64 / total as f64;
            }
            i -= 1;
            if idx[i] < n - (w - i) {
                idx[i] += 1;
                for j in (i + 1)..w {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[test]
fn monte_carlo_matches_weight_enumeration() {
    let code = asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap();
    let dec = BitFlipDecoder::new(code.c_z().parity_sparse());
    let n = 15;
    let eps = 0.05f64;
    let trials = 100_000u64;

    // predicted block error rate: sum over weights of the binomial mass
    // times the exhaustively measured per-weight failure fraction; the
    // truncated tail (w > 5) is bounded by its total mass.
    let mut predicted = 0.0;
    let mut mass = 0.0;
    for w in 0..=5usize {
        let pw = binom(n, w) * eps.powi(w as i32) * (1.0 - eps).powi((n - w) as i32);
        mass += pw;
        if w > 0 {
            predicted += pw * fail_fraction(&dec, n, w);
        }
    }
    let tail = 1.0 - mass;

    let out = simulate_z(&code, eps, trials, 99, StopRule::fixed(trials)).unwrap();
    let sigma = (predicted.max(1e-9) * (1.0 - predicted) / trials as f64).sqrt();
    let diff = (out.pe_z - predicted).abs();
    assert!(
        diff <= 3.0 * sigma + tail,
        "simulated {} vs predicted {predicted} (3 sigma = {}, tail = {tail})",
        out.pe_z,
        3.0 * sigma
    );
}

/// Weight-1 and weight-2 patterns on the [15,7,5] code decode perfectly
/// under the all-maximal rule; the counts are pinned as regression values.
#[test]
fn exhaustive_low_weight_decoding() {
    let code = asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap();
    let dec = BitFlipDecoder::new(code.c_z().parity_sparse());
    assert_eq!(fail_fraction(&dec, 15, 1), 0.0);
    assert_eq!(fail_fraction(&dec, 15, 2), 0.0); // all 105 patterns corrected
}

/// Two disjoint seeds agree within overlapping confidence intervals.
#[test]
fn disjoint_seeds_consistent() {
    let code = asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap();
    let eps = 0.08;
    let trials = 40_000;
    let a = simulate_z(&code, eps, trials, 1001, StopRule::fixed(trials)).unwrap();
    let b = simulate_z(&code, eps, trials, 2002, StopRule::fixed(trials)).unwrap();
    assert!(
        a.ci_low <= b.ci_high && b.ci_low <= a.ci_high,
        "intervals [{}, {}] and [{}, {}] do not overlap",
        a.ci_low,
        a.ci_high,
        b.ci_low,
        b.ci_high
    );
}
