//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line. Run with `cargo test -p aqecc-cli --test acceptance`
//! (add `-- --nocapture` to see the lines for passing tests).

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;

use aqecc_core::codes::{cyclic_eg_dual_root_set, cyclic_eg_root_set, CyclicCode};
use aqecc_core::css::{asymmetric_bch_ldpc, asymmetric_eg_ldpc, closed_form_2d_params};
use aqecc_core::decoder::{BitFlipConfig, BitFlipDecoder};
use aqecc_core::fields::{Field, FieldTower};
use aqecc_core::geometry::{a_eg, n_eg, Geometry, DEFAULT_FLAT_BUDGET};
use aqecc_core::grm::grm_cyclic;
use aqecc_core::poly::GfpPoly;
use aqecc_core::rng::SplitMix64;
use aqecc_core::sim::{combine_error_rates, SimPlan, StopRule};
use aqecc_core::{
    asymmetry_approx, asymmetry_exact, bounded_distance_block_error, kraus_ops,
    pauli_twirl_closed, pauli_twirl_numeric, sweep, AsymmetricCssCode, LinearCode,
    RelaxationParams,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aqecc"))
}

/// Criterion 1: the s = 4 table prints n = 255, the seven dimensions, and
/// rates matching 0.467 ... 0.655 to three decimals, exactly.
#[test]
fn c01_table_reproduction() {
    let out = bin().arg("table1").output().expect("binary runs");
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let expected: [(u64, usize, &str); 7] = [
        (15, 119, "0.467"),
        (13, 127, "0.498"),
        (11, 135, "0.529"),
        (9, 143, "0.561"),
        (7, 151, "0.592"),
        (5, 159, "0.624"),
        (3, 167, "0.655"),
    ];
    for (delta, k, rate) in expected {
        let line = stdout
            .lines()
            .find(|l| l.trim_start().starts_with(&format!("{delta} ")))
            .unwrap_or_else(|| panic!("criterion 1: FAIL - no row for delta = {delta}\n{stdout}"));
        assert!(
            line.contains(&format!("[[255,{k},")),
            "criterion 1: FAIL - row {delta} lacks [[255,{k},..: {line}"
        );
        assert!(
            line.trim_end().ends_with(rate),
            "criterion 1: FAIL - row {delta} rate is not {rate}: {line}"
        );
    }
    println!("criterion 1: PASS - table rows match n = 255, k in {{119..167}}, rates to 3 decimals");
}

/// Criterion 2: the length-15 instance reproduces the root sets and the
/// [[15,3,3/5]] parameters with exact, pure distances.
#[test]
fn c02_example_reproduction() {
    let z = cyclic_eg_root_set(2, 1, 2, 2).unwrap();
    assert_eq!(z, vec![1, 2, 3, 4, 6, 8, 9, 12], "criterion 2: FAIL - Z");
    let (zperp, delta0) = cyclic_eg_dual_root_set(2, 1, 2, 2).unwrap();
    assert_eq!(zperp, vec![0, 1, 2, 4, 5, 8, 10], "criterion 2: FAIL - dual set");
    assert_eq!(delta0, 3);
    let code = asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap();
    assert_eq!(code.summary(), "[[15,3,3/5]]_2");
    assert_eq!(code.d_x().exact, Some(3));
    assert_eq!(code.d_z().exact, Some(5));
    assert_eq!(code.pure(), Some(true));
    println!("criterion 2: PASS - root sets and [[15,3,3/5]] with pure exact distances");
}

/// Criterion 3: construction parameters equal the closed form
/// [[2^{2s}−1, 2^{2s}−3^s−s(δ−1), δ/2^s+1]] for s in {2,3,4}, all odd δ.
#[test]
fn c03_closed_form_consistency() {
    let mut checked = 0;
    for s in [2usize, 3, 4] {
        let mut delta = 3u64;
        while delta < (1 << s) {
            let (n, k, dx, dz) = closed_form_2d_params(s, delta).unwrap();
            let code = asymmetric_bch_ldpc(2, 1, s, 2, delta).unwrap();
            assert_eq!(
                (code.n(), code.k()),
                (n, k),
                "criterion 3: FAIL - [[n,k]] at s={s}, delta={delta}"
            );
            assert_eq!(
                (code.d_x().value(), code.d_z().value()),
                (Some(dx), Some(dz)),
                "criterion 3: FAIL - distances at s={s}, delta={delta}"
            );
            checked += 1;
            delta += 2;
        }
    }
    println!("criterion 3: PASS - {checked} (s, delta) instances match the closed form");
}

/// Criterion 4a: the numeric twirl equals the closed form within 1e-12
/// across at least 1000 parameter triples.
#[test]
fn c04a_twirl_numeric_vs_closed() {
    let mut count = 0;
    let mut worst = 0.0f64;
    for &t1 in &[0.5, 1.0, 2.0, 5.0, 10.0] {
        for i in 1..=20 {
            let t2 = t1 * (i as f64) / 10.0; // T2/T1 in (0, 2]
            for &x in &[0.001, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0] {
                let params = RelaxationParams::new(t1, t2, t1 * x).unwrap();
                let closed = pauli_twirl_closed(&params).unwrap();
                let numeric = pauli_twirl_numeric(&kraus_ops(&params).unwrap()).unwrap();
                for (a, b) in [
                    (numeric.p_x, closed.p_x),
                    (numeric.p_y, closed.p_y),
                    (numeric.p_z, closed.p_z),
                ] {
                    worst = worst.max((a - b).abs());
                }
                count += 1;
            }
        }
    }
    assert!(count >= 1000, "criterion 4a: FAIL - only {count} triples");
    assert!(
        worst <= 1e-12,
        "criterion 4a: FAIL - worst deviation {worst:e} exceeds 1e-12"
    );
    println!("criterion 4a: PASS - {count} triples, worst twirl deviation {worst:e}");
}

/// Criterion 4b: A = 1 exactly when T1 = T2.
#[test]
fn c04b_unit_asymmetry() {
    for &(t1, t) in &[(1.0, 0.1), (3.0, 2.0), (0.25, 0.01)] {
        let params = RelaxationParams::new(t1, t1, t).unwrap();
        let a = asymmetry_exact(&params).unwrap();
        assert_eq!(a, 1.0, "criterion 4b: FAIL - A = {a} at T1 = T2 = {t1}");
    }
    println!("criterion 4b: PASS - A = 1 exactly at T1 = T2");
}

/// Criterion 4c: A_exact within 1% of 2·T1/T2 − 1 at t = T1/1000 for
/// T1/T2 in {1, 2, 5, 10, 50, 100}.
///
/// The first-order form 2·T1/T2 − 1 needs t small against T2, not just
/// against T1. At t = T1/1000 with T1/T2 = 50 the exposure is T2/20 and the
/// exact ratio sits 2.4% below the approximation; at T1/T2 = 100 it is 4.8%
/// below. Those two ratios therefore cannot meet the 1% tolerance at this
/// operating point, and this check records that fact by failing.
#[test]
fn c04c_asymmetry_approximation() {
    let mut failures = Vec::new();
    for &ratio in &[1.0f64, 2.0, 5.0, 10.0, 50.0, 100.0] {
        let t1 = 1.0;
        let t2 = t1 / ratio;
        let params = RelaxationParams::new(t1, t2, t1 / 1000.0).unwrap();
        let exact = asymmetry_exact(&params).unwrap();
        let approx = asymmetry_approx(t1, t2);
        let rel = (exact - approx).abs() / approx;
        println!(
            "criterion 4c: T1/T2 = {ratio:>5}: A_exact = {exact:.4}, 2T1/T2-1 = {approx}, \
             deviation {:.3}%",
            rel * 100.0
        );
        if rel > 0.01 {
            failures.push((ratio, rel));
        }
    }
    if failures.is_empty() {
        println!("criterion 4c: PASS - approximation within 1% at every listed ratio");
    } else {
        println!(
            "criterion 4c: FAIL - deviation exceeds 1% at T1/T2 = {:?}",
            failures.iter().map(|f| f.0).collect::<Vec<_>>()
        );
    }
    assert!(
        failures.is_empty(),
        "A_exact deviates more than 1% from 2*T1/T2 - 1 at t = T1/1000 for T1/T2 in {:?} \
         (the approximation additionally requires t << T2)",
        failures.iter().map(|f| f.0).collect::<Vec<_>>()
    );
}

/// Criterion 5: the counting formulas agree with brute-force enumeration on
/// every geometry with at most 256 points.
#[test]
fn c05_counting_formulas_brute_force() {
    let mut instances = 0;
    for (p, max_ms) in [(2u32, 8usize), (3, 5), (5, 3), (7, 2)] {
        for m in 1..=max_ms {
            for s in 1..=max_ms / m {
                let tower = Arc::new(FieldTower::new(p, s, m).unwrap());
                let g = Geometry::new(tower);
                // standard flats: spans of the first d unit vectors
                let n_pts = g.point_count() as usize;
                let standard: Vec<Vec<usize>> = (0..=m)
                    .map(|d| {
                        let basis: Vec<Vec<u32>> = (0..d)
                            .map(|i| {
                                let mut v = vec![0u32; m];
                                v[i] = 1;
                                v
                            })
                            .collect();
                        let flat = g.canonicalize(&basis, &vec![0u32; m]).unwrap();
                        g.flat_points(&flat)
                    })
                    .collect();
                let masks: Vec<[u64; 4]> = standard
                    .iter()
                    .map(|pts| {
                        let mut mask = [0u64; 4];
                        for &i in pts {
                            mask[i / 64] |= 1 << (i % 64);
                        }
                        mask
                    })
                    .collect();
                assert!(n_pts <= 256);

                // counters indexed by the other dimension
                for mu in 0..=m {
                    let mut inside = vec![0u128; m + 1]; // inside[mu2] for mu2 > mu
                    let mut containing = vec![0u128; m + 1]; // containing standard mu1 < mu
                    g.visit_flats(mu, false, |_, points| {
                        let mut fmask = [0u64; 4];
                        for &i in points {
                            fmask[i / 64] |= 1 << (i % 64);
                        }
                        for mu2 in (mu + 1)..=m {
                            if subset(&fmask, &masks[mu2]) {
                                inside[mu2] += 1;
                            }
                        }
                        for mu1 in 0..mu {
                            if subset(&masks[mu1], &fmask) {
                                containing[mu1] += 1;
                            }
                        }
                    })
                    .unwrap();
                    for mu2 in (mu + 1)..=m {
                        assert_eq!(
                            inside[mu2],
                            n_eg(m, mu2, mu, s, p).unwrap(),
                            "criterion 5: FAIL - n_eg(m={m}, mu2={mu2}, mu1={mu}, s={s}, p={p})"
                        );
                        instances += 1;
                    }
                    for mu1 in 0..mu {
                        assert_eq!(
                            containing[mu1],
                            a_eg(m, mu, mu1, s, p).unwrap(),
                            "criterion 5: FAIL - a_eg(m={m}, mu2={mu}, mu1={mu1}, s={s}, p={p})"
                        );
                    }
                }
            }
        }
    }
    println!("criterion 5: PASS - formulas match enumeration on {instances} (geometry, mu1, mu2) cases");
}

fn subset(a: &[u64; 4], b: &[u64; 4]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Criterion 6: H_z · H_x^T = 0 on every constructed code from criteria
/// 1-3, and the deliberately corrupted descriptor fails verification.
#[test]
fn c06_nesting_invariant() {
    let mut codes: Vec<AsymmetricCssCode> = Vec::new();
    for delta in [15u64, 13, 11, 9, 7, 5, 3] {
        codes.push(asymmetric_bch_ldpc(2, 1, 4, 2, delta).unwrap());
    }
    codes.push(asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap());
    for s in [2usize, 3] {
        let mut delta = 3u64;
        while delta < (1 << s) {
            codes.push(asymmetric_bch_ldpc(2, 1, s, 2, delta).unwrap());
            delta += 2;
        }
    }
    codes.push(asymmetric_eg_ldpc(5, 4, 3, 1, 2).unwrap());
    codes.push(asymmetric_eg_ldpc(4, 3, 3, 1, 2).unwrap());
    let count = codes.len();
    for code in &codes {
        assert!(
            code.c_z().parity().orthogonal_to(code.c_x().parity()).unwrap(),
            "criterion 6: FAIL - product nonzero for {}",
            code.summary()
        );
        assert_eq!(code.k() + code.n(), code.c_x().k() + code.c_z().k());
    }

    // tamper detection through the CLI surface
    let dir = std::env::temp_dir().join(format!("aqecc-acc6-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let desc = dir.join("code.json");
    let out = bin()
        .args(["construct", "bch-ldpc", "--m", "2", "--mu", "1", "--s", "2", "--delta", "3"])
        .arg("--out")
        .arg(&desc)
        .output()
        .unwrap();
    assert!(out.status.success());
    // flip one bit of H_z: drop one index from the first check row
    let hz = dir.join("code_hz.alist");
    let h = aqecc_core::read_alist(&hz).unwrap();
    let mut rows: Vec<Vec<u32>> = (0..h.rows()).map(|r| h.row(r).to_vec()).collect();
    rows[0].remove(1);
    let tampered = aqecc_core::linalg::Csr::from_rows(h.cols(), &rows);
    aqecc_core::write_alist(&hz, &tampered).unwrap();
    let out = bin().arg("verify").arg(&desc).output().unwrap();
    assert!(!out.status.success(), "criterion 6: FAIL - tampered verify succeeded");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("nesting    FAIL"),
        "criterion 6: FAIL - nesting did not fail:\n{stdout}"
    );
    let _ = std::fs::remove_dir_all(&dir);
    println!("criterion 6: PASS - product zero on {count} codes; tampered descriptor rejected");
}

/// Criterion 7: for every cyclic EG instance with n <= 1023 whose flat
/// family fits the enumeration budget, the row space of the origin-free
/// incidence matrix equals the parity space of the cyclic code from Z.
///
/// The row set is confirmed closed under the cyclic shift; its span is then
/// the polynomial ideal generated by the gcd of orbit representatives, which
/// must equal the generator of the dual cyclic code.
#[test]
fn c07_structural_identity() {
    let mut verified = 0;
    let mut skipped = 0;
    for (p, pairs) in [
        (2u32, vec![(2usize, 1usize), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1), (9, 1), (10, 1), (2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (2, 4), (2, 5)]),
        (3, vec![(2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (2, 2), (3, 2), (2, 3)]),
        (5, vec![(2, 1), (3, 1), (4, 1), (2, 2)]),
        (7, vec![(2, 1), (3, 1)]),
    ] {
        for (m, s) in pairs {
            for mu in 1..m {
                let tower = Arc::new(FieldTower::new(p, s, m).unwrap());
                let g = Geometry::new(tower);
                let count = g.flat_count(mu, true).unwrap();
                if count > DEFAULT_FLAT_BUDGET {
                    println!(
                        "criterion 7: note - skipping (p={p}, m={m}, s={s}, mu={mu}): \
                         {count} flats exceed the enumeration budget"
                    );
                    skipped += 1;
                    continue;
                }
                verify_structural_identity(&g, m, mu, s, p);
                verified += 1;
            }
        }
    }
    println!("criterion 7: PASS - {verified} instances verified ({skipped} beyond the flat budget)");
}

fn verify_structural_identity(g: &Geometry, m: usize, mu: usize, s: usize, p: u32) {
    let n = g.point_count() as usize - 1;
    // collect incidence rows as sorted point lists
    let mut rows: Vec<Vec<u16>> = Vec::new();
    g.visit_flats(mu, true, |_, points| {
        rows.push(points.iter().map(|&i| i as u16).collect());
    })
    .unwrap();
    let mut order: Vec<u32> = (0..rows.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| rows[a as usize].cmp(&rows[b as usize]));
    let find = |row: &[u16]| -> Option<usize> {
        order
            .binary_search_by(|&i| rows[i as usize].as_slice().cmp(row))
            .ok()
    };
    let rotate = |row: &[u16]| -> Vec<u16> {
        let mut out: Vec<u16> = Vec::with_capacity(row.len());
        if row.last() == Some(&((n - 1) as u16)) {
            out.push(0);
            out.extend(row[..row.len() - 1].iter().map(|&x| x + 1));
        } else {
            out.extend(row.iter().map(|&x| x + 1));
        }
        out
    };

    // orbit representatives: gcd their polynomials while traversing orbits,
    // which simultaneously proves the row set is shift closed
    let mut done = vec![false; rows.len()];
    let mut gcd_poly = GfpPoly::x_n_minus_one(p, n);
    let mut covered = 0usize;
    for start in 0..rows.len() {
        if done[start] {
            continue;
        }
        done[start] = true;
        covered += 1;
        let row_poly = |row: &[u16]| {
            let mut coeffs = vec![0u8; n];
            for &i in row {
                coeffs[i as usize] = 1;
            }
            GfpPoly::new(p, coeffs)
        };
        gcd_poly = gcd_poly.gcd(&row_poly(&rows[start]));
        let mut cur = rotate(&rows[start]);
        while cur != rows[start] {
            let pos = find(&cur).unwrap_or_else(|| {
                panic!(
                    "criterion 7: FAIL - (p={p}, m={m}, s={s}, mu={mu}): row set is not \
                     closed under the cyclic shift"
                )
            });
            let idx = order[pos] as usize;
            assert!(!done[idx], "orbit revisits a consumed row");
            done[idx] = true;
            covered += 1;
            cur = rotate(&cur);
        }
    }
    assert_eq!(covered, rows.len());

    // expected generator: the dual of the cyclic code from Z
    let z = cyclic_eg_root_set(m, mu, s, p).unwrap();
    let field = Arc::new(Field::new(p, m * s).unwrap());
    let z_code = CyclicCode::with_field(field.clone(), &z).unwrap();
    let dual = CyclicCode::with_field(field, &z_code.dual_defining_set()).unwrap();
    assert_eq!(
        &gcd_poly,
        dual.generator_poly(),
        "criterion 7: FAIL - (p={p}, m={m}, s={s}, mu={mu}): incidence row space differs \
         from the cyclic code's parity space"
    );
}

/// Criterion 8: simulating the bounded-distance rule at (n=15, t=1,
/// eps=0.01) over 1e5 trials agrees with the closed form within three
/// Monte Carlo standard errors.
#[test]
fn c08_closed_form_vs_monte_carlo() {
    let (n, t, eps) = (15usize, 1usize, 0.01f64);
    let trials = 100_000u64;
    let closed = bounded_distance_block_error(n, t, eps).unwrap();
    assert!((closed - 0.00963).abs() < 5e-6);
    let mut failures = 0u64;
    for trial in 0..trials {
        let mut rng = SplitMix64::keyed(8, 0, trial);
        let weight = (0..n).filter(|_| rng.next_f64() < eps).count();
        if weight > t {
            failures += 1;
        }
    }
    let est = failures as f64 / trials as f64;
    let sigma = (closed * (1.0 - closed) / trials as f64).sqrt();
    assert!(
        (est - closed).abs() <= 3.0 * sigma,
        "criterion 8: FAIL - estimate {est} vs closed form {closed} (3 sigma = {})",
        3.0 * sigma
    );
    println!(
        "criterion 8: PASS - estimate {est} within 3 sigma ({:.2e}) of closed form {closed:.5}",
        3.0 * sigma
    );
}

/// Criterion 9: for the [[255,159,5/17]] code at p = 0.03 (each cell inside
/// the 10..=1000 block-error window at 1e4 trials), the combined error rate
/// falls strictly as the asymmetry grows through 1, 10, 100, and the 95%
/// intervals at A = 1 and A = 100 do not overlap.
#[test]
fn c09_asymmetry_trend() {
    let code = asymmetric_bch_ldpc(2, 1, 4, 2, 5).unwrap();
    assert_eq!(code.summary(), "[[255,159,5/17]]_2");
    let trials = 10_000u64;
    let plan = SimPlan::new(&code, vec![0.03], vec![1.0, 10.0, 100.0], trials, 42)
        .unwrap()
        .with_stop(StopRule::fixed(trials));
    let result = sweep(&plan).unwrap();
    assert_eq!(result.cells.len(), 3);
    for cell in &result.cells {
        assert!(
            (10..=1000).contains(&cell.block_errors),
            "criterion 9: FAIL - A = {}: {} block errors outside 10..=1000",
            cell.asymmetry,
            cell.block_errors
        );
    }
    let pe: Vec<f64> = result.cells.iter().map(|c| c.pe).collect();
    assert!(
        pe[0] > pe[1] && pe[1] > pe[2],
        "criterion 9: FAIL - combined rates not strictly decreasing: {pe:?}"
    );
    // combined-interval separation between A = 1 and A = 100
    let lo_a1 = combine_error_rates(result.cells[0].pe_x, result.cells[0].pe_z_ci_low);
    let hi_a100 = combine_error_rates(result.cells[2].pe_x, result.cells[2].pe_z_ci_high);
    assert!(
        hi_a100 < lo_a1,
        "criterion 9: FAIL - intervals overlap: A=100 high {hi_a100} vs A=1 low {lo_a1}"
    );
    println!(
        "criterion 9: PASS - P_e = {:.4} / {:.4} / {:.4} at A = 1 / 10 / 100, intervals separated",
        pe[0], pe[1], pe[2]
    );
}

/// Criterion 10: every weight-1 error on the [15,7,5] code is corrected,
/// and the subfield/trace identities hold on the desk-scale instances.
#[test]
fn c10_decoder_and_identities() {
    let code = asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap();
    let dec = BitFlipDecoder::new(code.c_z().parity_sparse());
    let cfg = BitFlipConfig::default();
    for b in 0..15 {
        let mut e = vec![0u8; 15];
        e[b] = 1;
        let out = dec.decode(&e, &cfg).unwrap();
        assert!(
            out.converged && out.estimate == e,
            "criterion 10: FAIL - weight-1 error at bit {b} not corrected"
        );
    }

    // subfield subcode within trace code, and the trace identity, per
    // desk-scale instance
    for (m, mu, s, p) in [(2usize, 1usize, 2usize, 2u32), (2, 1, 3, 2), (3, 2, 1, 2), (2, 1, 2, 3)] {
        let field = Arc::new(Field::new(p, m * s).unwrap());
        let q = (p as u64).pow(s as u32);
        let nu = mu as u64 * (q - 1) - 1;
        let grm = grm_cyclic(&field, s, nu).unwrap();
        let sub = grm.subfield_subcode(1).unwrap();
        let tr = grm.trace_code(1).unwrap();
        assert!(
            tr.contains_code(&sub),
            "criterion 10: FAIL - subfield subcode not inside trace code at (m={m}, mu={mu}, s={s}, p={p})"
        );
        // Delsarte: tr(C^perp) = (C|_p)^perp
        let lhs = grm.dual().trace_code(1).unwrap();
        let rhs = grm.subfield_subcode(1).unwrap().dual();
        assert!(
            lhs.same_code(&rhs),
            "criterion 10: FAIL - trace/subfield duality at (m={m}, mu={mu}, s={s}, p={p})"
        );
        // the trace of the GRM code is the cyclic EG code
        let z = cyclic_eg_root_set(m, mu, s, p).unwrap();
        let eg = aqecc_core::code_from_defining_set(
            &CyclicCode::with_field(field, &z).unwrap(),
        )
        .unwrap();
        let tr_lc = LinearCode::from_generator(tr.prime_generator().unwrap());
        assert!(
            tr_lc.same_code(&eg),
            "criterion 10: FAIL - trace identity at (m={m}, mu={mu}, s={s}, p={p})"
        );
    }
    println!("criterion 10: PASS - weight-1 correction and trace/subfield identities hold");
}

/// The dual root set from its own weight condition matches the cyclic dual
/// of the primal root set on every instance used above (supports criteria
/// 2 and 7).
#[test]
fn dual_root_sets_consistent() {
    for (m, mu, s, p) in [(2usize, 1usize, 2usize, 2u32), (2, 1, 4, 2), (3, 2, 2, 2), (2, 1, 2, 3)] {
        let z = cyclic_eg_root_set(m, mu, s, p).unwrap();
        let (zperp, _) = cyclic_eg_dual_root_set(m, mu, s, p).unwrap();
        let n = (p as u64).pow((m * s) as u32) - 1;
        let complement: BTreeSet<u64> = (0..n).filter(|h| z.binary_search(h).is_err()).collect();
        let negated: BTreeSet<u64> = complement.iter().map(|&h| (n - h) % n).collect();
        assert_eq!(negated.into_iter().collect::<Vec<_>>(), zperp);
    }
}
