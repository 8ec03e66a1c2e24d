//! Hard-decision bit-flipping decoding for the Z channel and the
//! bounded-distance block error rate used for the X channel.

use crate::error::{Error, Result};
use crate::linalg::Csr;
use crate::rng::SplitMix64;

/// Tie-breaking policy when several bits share the maximal count of failed
/// checks. `AllMaximal` flips every such bit in one pass and is fully
/// deterministic; `SingleRandom` flips one of them chosen uniformly from a
/// stream seeded per decode call, and exists because some error patterns
/// oscillate under the all-maximal rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipRule {
    AllMaximal,
    SingleRandom { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitFlipConfig {
    pub max_iterations: usize,
    pub flip_rule: FlipRule,
}

impl Default for BitFlipConfig {
    fn default() -> BitFlipConfig {
        BitFlipConfig {
            max_iterations: 50,
            flip_rule: FlipRule::AllMaximal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// Estimated error vector (received minus the decoded codeword).
    pub estimate: Vec<u8>,
    /// True iff a zero syndrome was reached.
    pub converged: bool,
    pub iterations_used: usize,
}

/// Bit-flipping decoder with the check/bit adjacency prebuilt; reusable
/// across many decode calls over a shared parity-check matrix.
pub struct BitFlipDecoder {
    checks: Vec<Vec<u32>>,
    bit_checks: Vec<Vec<u32>>,
    n: usize,
}

impl BitFlipDecoder {
    pub fn new(h: &Csr) -> BitFlipDecoder {
        let n = h.cols();
        let mut checks = Vec::with_capacity(h.rows());
        let mut bit_checks: Vec<Vec<u32>> = vec![Vec::new(); n];
        for r in 0..h.rows() {
            let row = h.row(r).to_vec();
            for &b in &row {
                bit_checks[b as usize].push(r as u32);
            }
            checks.push(row);
        }
        BitFlipDecoder {
            checks,
            bit_checks,
            n,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn decode(&self, received: &[u8], cfg: &BitFlipConfig) -> Result<DecodeOutcome> {
        if received.len() != self.n {
            return Err(Error::invalid(format!(
                "received word length {} does not match {} bits",
                received.len(),
                self.n
            )));
        }
        if cfg.max_iterations == 0 {
            return Err(Error::invalid("max_iterations must be at least 1"));
        }
        let mut rng = match cfg.flip_rule {
            FlipRule::AllMaximal => None,
            FlipRule::SingleRandom { seed } => Some(SplitMix64::new(seed)),
        };
        let mut v: Vec<u8> = received.iter().map(|&b| b & 1).collect();
        let mut syndrome: Vec<bool> = self
            .checks
            .iter()
            .map(|row| row.iter().fold(0u8, |acc, &b| acc ^ v[b as usize]) == 1)
            .collect();
        let mut counts = vec![0u32; self.n];
        let mut iterations_used = 0;
        let mut converged = !syndrome.iter().any(|&s| s);

        while !converged && iterations_used < cfg.max_iterations {
            counts.iter_mut().for_each(|c| *c = 0);
            let mut fmax = 0;
            for (ci, row) in self.checks.iter().enumerate() {
                if syndrome[ci] {
                    for &b in row {
                        let c = &mut counts[b as usize];
                        *c += 1;
                        if *c > fmax {
                            fmax = *c;
                        }
                    }
                }
            }
            debug_assert!(fmax > 0);
            let flips: Vec<usize> = match &mut rng {
                None => (0..self.n).filter(|&b| counts[b] == fmax).collect(),
                Some(rng) => {
                    let cands: Vec<usize> =
                        (0..self.n).filter(|&b| counts[b] == fmax).collect();
                    vec![cands[rng.below(cands.len() as u64) as usize]]
                }
            };
            for &b in &flips {
                v[b] ^= 1;
                for &ci in &self.bit_checks[b] {
                    syndrome[ci as usize] = !syndrome[ci as usize];
                }
            }
            iterations_used += 1;
            converged = !syndrome.iter().any(|&s| s);
        }

        let estimate: Vec<u8> = received.iter().zip(&v).map(|(&r, &c)| (r ^ c) & 1).collect();
        if converged {
            // residual syndrome of the codeword estimate is exactly zero, so
            // the error estimate reproduces the received word's syndrome
            debug_assert!(self
                .checks
                .iter()
                .map(|row| row.iter().fold(0u8, |acc, &b| acc ^ v[b as usize]))
                .all(|s| s == 0));
        }
        Ok(DecodeOutcome {
            estimate,
            converged,
            iterations_used,
        })
    }
}

/// One-shot convenience wrapper around [`BitFlipDecoder`].
pub fn bit_flip_decode(h: &Csr, received: &[u8], cfg: &BitFlipConfig) -> Result<DecodeOutcome> {
    BitFlipDecoder::new(h).decode(received, cfg)
}

/// Block error probability of a bounded-distance decoder correcting t
/// errors on a length-n BSC with crossover ε:
/// 1 − Σ_{i=0}^{t} C(n,i) ε^i (1−ε)^{n−i}, accumulated in the log domain
/// over the complementary tail for stability.
pub fn bounded_distance_block_error(n: usize, t: usize, eps: f64) -> Result<f64> {
    if t > n {
        return Err(Error::invalid(format!("t = {t} exceeds n = {n}")));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::invalid(format!("crossover {eps} outside [0, 1]")));
    }
    if t == n || eps == 0.0 {
        return Ok(0.0);
    }
    if eps == 1.0 {
        return Ok(1.0);
    }
    let ln_fact = ln_factorials(n);
    let ln_eps = eps.ln();
    let ln_1m = (-eps).ln_1p();
    // log-sum-exp over the failing tail i = t+1 ..= n
    let mut max_term = f64::NEG_INFINITY;
    let mut terms = Vec::with_capacity(n - t);
    for i in (t + 1)..=n {
        let ln_c = ln_fact[n] - ln_fact[i] - ln_fact[n - i];
        let term = ln_c + i as f64 * ln_eps + (n - i) as f64 * ln_1m;
        max_term = max_term.max(term);
        terms.push(term);
    }
    let sum: f64 = terms.iter().map(|&t| (t - max_term).exp()).sum();
    Ok((max_term + sum.ln()).exp().clamp(0.0, 1.0))
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n + 1];
    for i in 1..=n {
        v[i] = v[i - 1] + (i as f64).ln();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::eg_ldpc_type1;

    fn eg_15_7_h() -> Csr {
        eg_ldpc_type1(2, 1, 2, 2, true).unwrap().parity_sparse().clone()
    }

    #[test]
    fn codeword_passes_through() {
        let h = eg_15_7_h();
        let zero = vec![0u8; 15];
        let out = bit_flip_decode(&h, &zero, &BitFlipConfig::default()).unwrap();
        assert!(out.converged);
        assert_eq!(out.iterations_used, 0);
        assert_eq!(out.estimate, zero);
    }

    #[test]
    fn all_single_errors_corrected() {
        let h = eg_15_7_h();
        let dec = BitFlipDecoder::new(&h);
        let cfg = BitFlipConfig::default();
        for b in 0..15 {
            let mut e = vec![0u8; 15];
            e[b] = 1;
            let out = dec.decode(&e, &cfg).unwrap();
            assert!(out.converged, "bit {b}");
            assert_eq!(out.estimate, e, "bit {b}");
        }
    }

    #[test]
    fn dimension_mismatch() {
        let h = eg_15_7_h();
        assert!(bit_flip_decode(&h, &[0u8; 14], &BitFlipConfig::default()).is_err());
    }

    #[test]
    fn single_random_rule_is_seeded() {
        let h = eg_15_7_h();
        let dec = BitFlipDecoder::new(&h);
        let cfg = BitFlipConfig {
            max_iterations: 50,
            flip_rule: FlipRule::SingleRandom { seed: 11 },
        };
        let mut e = vec![0u8; 15];
        e[3] = 1;
        e[9] = 1;
        let a = dec.decode(&e, &cfg).unwrap();
        let b = dec.decode(&e, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tail_probability_edges() {
        assert_eq!(bounded_distance_block_error(15, 1, 0.0).unwrap(), 0.0);
        assert_eq!(bounded_distance_block_error(15, 15, 0.7).unwrap(), 0.0);
        assert_eq!(bounded_distance_block_error(15, 1, 1.0).unwrap(), 1.0);
        assert!(bounded_distance_block_error(15, 16, 0.1).is_err());
        assert!(bounded_distance_block_error(15, 1, 1.5).is_err());
    }

    #[test]
    fn tail_probability_against_direct_sum() {
        // direct linear-domain oracle at modest n
        let direct = |n: usize, t: usize, eps: f64| -> f64 {
            let mut keep = 0.0;
            for i in 0..=t {
                let mut c = 1.0;
                for j in 0..i {
                    c = c * (n - j) as f64 / (j + 1) as f64;
                }
                keep += c * eps.powi(i as i32) * (1.0 - eps).powi((n - i) as i32);
            }
            1.0 - keep
        };
        let got = bounded_distance_block_error(15, 1, 0.01).unwrap();
        let want = direct(15, 1, 0.01);
        assert!((got - want).abs() < 1e-12);
        // three significant figures of the reference value
        assert!((got - 0.00963).abs() < 5e-6, "{got}");
        for (n, t, eps) in [(255, 2, 0.004), (63, 3, 0.02), (31, 7, 0.3)] {
            let got = bounded_distance_block_error(n, t, eps).unwrap();
            let want = direct(n, t, eps);
            assert!((got - want).abs() < 1e-10 * want.max(1e-30), "{got} vs {want}");
        }
    }

    #[test]
    fn tail_monotonicity() {
        // nondecreasing in eps, nonincreasing in t
        let mut prev = 0.0;
        for k in 0..50 {
            let eps = k as f64 / 50.0;
            let v = bounded_distance_block_error(63, 4, eps).unwrap();
            assert!(v + 1e-12 >= prev);
            prev = v;
        }
        let mut prev = 1.0;
        for t in 0..=63 {
            let v = bounded_distance_block_error(63, t, 0.05).unwrap();
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }
}
