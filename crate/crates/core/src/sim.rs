//! Monte Carlo estimation of the Z-channel block error rate, the closed-form
//! X-channel rate, and their combination into (p, A) sweeps.
//!
//! Every trial draws its noise from a counter-based stream keyed by
//! (seed, cell index, trial index), and trials are committed in fixed-size
//! batches, so results are bit-identical regardless of worker count. The
//! transmitted codeword is the zero word (the code is linear and the channel
//! symmetric), so the decoder sees the raw error vector.

use rayon::prelude::*;

use crate::channel::{bsc_crossovers, pauli_from_total};
use crate::css::{AsymmetricCssCode, ConstructionTag};
use crate::decoder::{bounded_distance_block_error, BitFlipConfig, BitFlipDecoder};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Batch granularity for the deterministic early-stop check.
const BATCH: u64 = 1024;

/// 95% normal quantile for the Wilson interval.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub max_trials: u64,
    /// Stop once this many block errors have been seen (checked at batch
    /// boundaries). The conventional frame-error-rate practice is 100.
    pub min_block_errors: u64,
}

impl StopRule {
    pub fn fixed(max_trials: u64) -> StopRule {
        StopRule {
            max_trials,
            min_block_errors: u64::MAX,
        }
    }

    pub fn standard(max_trials: u64) -> StopRule {
        StopRule {
            max_trials,
            min_block_errors: 100,
        }
    }
}

/// How the 4-ary Pauli channel is sampled. The default models it as two
/// independent binary symmetric channels with crossovers (p_x + p_y,
/// p_y + p_z), a slight overestimate of the joint failure rate. The
/// correlated variant draws one Pauli per qubit so that the X and Z error
/// indicators share the Y component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChannelModel {
    #[default]
    IndependentBsc,
    Correlated4ary,
}

#[derive(Debug, Clone)]
pub struct SimPlan<'a> {
    pub code: &'a AsymmetricCssCode,
    pub p_grid: Vec<f64>,
    pub asymmetries: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub stop: StopRule,
    pub channel_model: ChannelModel,
}

impl<'a> SimPlan<'a> {
    pub fn new(
        code: &'a AsymmetricCssCode,
        p_grid: Vec<f64>,
        asymmetries: Vec<f64>,
        trials: u64,
        seed: u64,
    ) -> Result<SimPlan<'a>> {
        if p_grid.is_empty() || asymmetries.is_empty() {
            return Err(Error::invalid("p grid and asymmetry list must be nonempty"));
        }
        if trials == 0 {
            return Err(Error::invalid("at least one trial is required"));
        }
        Ok(SimPlan {
            code,
            p_grid,
            asymmetries,
            trials,
            seed,
            stop: StopRule::standard(trials),
            channel_model: ChannelModel::IndependentBsc,
        })
    }

    pub fn with_stop(mut self, stop: StopRule) -> SimPlan<'a> {
        self.stop = stop;
        self
    }

    pub fn with_channel_model(mut self, model: ChannelModel) -> SimPlan<'a> {
        self.channel_model = model;
        self
    }
}

/// One (p, A) cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SimCell {
    pub p: f64,
    pub asymmetry: f64,
    pub eps_x: f64,
    pub eps_z: f64,
    pub pe_x: f64,
    pub pe_z: f64,
    pub pe_z_ci_low: f64,
    pub pe_z_ci_high: f64,
    pub pe: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub nonconverged: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub cells: Vec<SimCell>,
}

pub const CSV_HEADER: &str =
    "p,A,eps_x,eps_z,pe_x,pe_z,pe_z_ci_low,pe_z_ci_high,pe,trials,block_errors,nonconverged";

impl SimResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                c.p,
                c.asymmetry,
                c.eps_x,
                c.eps_z,
                c.pe_x,
                c.pe_z,
                c.pe_z_ci_low,
                c.pe_z_ci_high,
                c.pe,
                c.trials,
                c.block_errors,
                c.nonconverged
            ));
        }
        out
    }
}

/// Tallies of one Z-channel simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZOutcome {
    pub pe_z: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials_run: u64,
    pub block_errors: u64,
    pub nonconverged: u64,
}

/// Wilson 95% score interval; always brackets the point estimate.
pub fn wilson_interval(errors: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0);
    let n = trials as f64;
    let phat = errors as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Estimate the Z-channel block error rate of `code` by drawing
/// Bernoulli(ε_z) error vectors and decoding them against C_z's sparse
/// parity check with hard-decision bit flipping. A block error is either a
/// non-convergence or a convergence to the wrong error vector; the two are
/// tallied separately.
pub fn simulate_z(
    code: &AsymmetricCssCode,
    eps_z: f64,
    trials: u64,
    seed: u64,
    stop: StopRule,
) -> Result<ZOutcome> {
    let decoder = BitFlipDecoder::new(code.c_z().parity_sparse());
    simulate_z_cell(&decoder, eps_z, trials, seed, 0, stop)
}

fn simulate_z_cell(
    decoder: &BitFlipDecoder,
    eps_z: f64,
    trials: u64,
    seed: u64,
    cell: u64,
    stop: StopRule,
) -> Result<ZOutcome> {
    if !(0.0..=1.0).contains(&eps_z) {
        return Err(Error::invalid(format!("crossover {eps_z} outside [0, 1]")));
    }
    let max_trials = trials.min(stop.max_trials);
    if max_trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    let cfg = BitFlipConfig::default();
    let n = decoder.n();

    let mut block_errors = 0u64;
    let mut nonconverged = 0u64;
    let mut trials_run = 0u64;
    while trials_run < max_trials {
        let batch_end = (trials_run + BATCH).min(max_trials);
        let outcomes: Vec<(bool, bool)> = (trials_run..batch_end)
            .into_par_iter()
            .map(|trial| {
                let mut rng = SplitMix64::keyed(seed, cell, trial);
                let mut error = vec![0u8; n];
                for bit in error.iter_mut() {
                    *bit = (rng.next_f64() < eps_z) as u8;
                }
                let out = decoder.decode(&error, &cfg).expect("length matches");
                let bad = !out.converged || out.estimate != error;
                (bad, !out.converged)
            })
            .collect();
        for (bad, nonconv) in outcomes {
            block_errors += bad as u64;
            nonconverged += nonconv as u64;
        }
        trials_run = batch_end;
        if block_errors >= stop.min_block_errors {
            break;
        }
    }
    let (ci_low, ci_high) = wilson_interval(block_errors, trials_run);
    Ok(ZOutcome {
        pe_z: block_errors as f64 / trials_run as f64,
        ci_low,
        ci_high,
        trials_run,
        block_errors,
        nonconverged,
    })
}

fn bounded_distance_t(code: &AsymmetricCssCode) -> Result<usize> {
    match code.construction() {
        ConstructionTag::BchLdpc { delta, .. } => Ok(((delta - 1) / 2) as usize),
        tag => Err(Error::invalid(format!(
            "construction '{}' has no bounded-distance X decoder model; simulate the X channel instead",
            tag.name()
        ))),
    }
}

/// Closed-form X-channel block error rate of a BCH-decoded code: the
/// binomial tail beyond t = ⌊(δ−1)/2⌋. Codes without a bounded-distance X
/// model (the EG-EG construction) are rejected; their X side would have to
/// be simulated instead.
pub fn pe_x_closed(code: &AsymmetricCssCode, eps_x: f64) -> Result<f64> {
    let t = bounded_distance_t(code)?;
    bounded_distance_block_error(code.n(), t, eps_x)
}

/// Tallies of one correlated 4-ary cell: both error indicators are drawn
/// from the same per-qubit Pauli, so X and Z failures share the Y events.
struct JointTallies {
    z_block_errors: u64,
    z_nonconverged: u64,
    joint_block_errors: u64,
    trials_run: u64,
}

fn simulate_joint_cell(
    decoder: &BitFlipDecoder,
    t: usize,
    p: f64,
    asymmetry: f64,
    trials: u64,
    seed: u64,
    cell: u64,
    stop: StopRule,
) -> Result<JointTallies> {
    let ch = pauli_from_total(p, asymmetry)?;
    let (thr_x, thr_y, thr_z) = (ch.p_x, ch.p_x + ch.p_y, ch.p_x + ch.p_y + ch.p_z);
    let max_trials = trials.min(stop.max_trials);
    if max_trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    let cfg = BitFlipConfig::default();
    let n = decoder.n();

    let mut tallies = JointTallies {
        z_block_errors: 0,
        z_nonconverged: 0,
        joint_block_errors: 0,
        trials_run: 0,
    };
    while tallies.trials_run < max_trials {
        let batch_end = (tallies.trials_run + BATCH).min(max_trials);
        let outcomes: Vec<(bool, bool, bool)> = (tallies.trials_run..batch_end)
            .into_par_iter()
            .map(|trial| {
                let mut rng = SplitMix64::keyed(seed, cell, trial);
                let mut x_err = vec![0u8; n];
                let mut z_err = vec![0u8; n];
                let mut x_weight = 0usize;
                for i in 0..n {
                    let u = rng.next_f64();
                    if u < thr_x {
                        x_err[i] = 1;
                    } else if u < thr_y {
                        x_err[i] = 1;
                        z_err[i] = 1;
                    } else if u < thr_z {
                        z_err[i] = 1;
                    }
                    x_weight += x_err[i] as usize;
                }
                let x_fail = x_weight > t;
                let out = decoder.decode(&z_err, &cfg).expect("length matches");
                let z_fail = !out.converged || out.estimate != z_err;
                (z_fail, !out.converged, x_fail || z_fail)
            })
            .collect();
        for (z_fail, nonconv, joint) in outcomes {
            tallies.z_block_errors += z_fail as u64;
            tallies.z_nonconverged += nonconv as u64;
            tallies.joint_block_errors += joint as u64;
        }
        tallies.trials_run = batch_end;
        if tallies.z_block_errors >= stop.min_block_errors {
            break;
        }
    }
    Ok(tallies)
}

/// Combine independent X and Z failure probabilities.
pub fn combine_error_rates(pe_x: f64, pe_z: f64) -> f64 {
    pe_x + pe_z - pe_x * pe_z
}

/// Run the full (p, A) sweep in deterministic row order (p outer, A inner).
///
/// Under the default independent-BSC model each cell combines the
/// closed-form X rate with the simulated Z rate. Under the correlated 4-ary
/// model the combined rate is instead estimated jointly from the shared
/// per-qubit Pauli draws (the `pe` column then carries the joint estimate
/// while `pe_z` and its interval keep the Z-marginal tallies).
pub fn sweep(plan: &SimPlan) -> Result<SimResult> {
    let decoder = BitFlipDecoder::new(plan.code.c_z().parity_sparse());
    let mut cells = Vec::with_capacity(plan.p_grid.len() * plan.asymmetries.len());
    for (pi, &p) in plan.p_grid.iter().enumerate() {
        for (ai, &a) in plan.asymmetries.iter().enumerate() {
            let (eps_x, eps_z) = bsc_crossovers(p, a)?;
            let pe_x = pe_x_closed(plan.code, eps_x)?;
            let cell_index = (pi * plan.asymmetries.len() + ai) as u64;
            let cell = match plan.channel_model {
                ChannelModel::IndependentBsc => {
                    let z = simulate_z_cell(
                        &decoder, eps_z, plan.trials, plan.seed, cell_index, plan.stop,
                    )?;
                    SimCell {
                        p,
                        asymmetry: a,
                        eps_x,
                        eps_z,
                        pe_x,
                        pe_z: z.pe_z,
                        pe_z_ci_low: z.ci_low,
                        pe_z_ci_high: z.ci_high,
                        pe: combine_error_rates(pe_x, z.pe_z),
                        trials: z.trials_run,
                        block_errors: z.block_errors,
                        nonconverged: z.nonconverged,
                    }
                }
                ChannelModel::Correlated4ary => {
                    let t = bounded_distance_t(plan.code)?;
                    let j = simulate_joint_cell(
                        &decoder, t, p, a, plan.trials, plan.seed, cell_index, plan.stop,
                    )?;
                    let (ci_low, ci_high) = wilson_interval(j.z_block_errors, j.trials_run);
                    SimCell {
                        p,
                        asymmetry: a,
                        eps_x,
                        eps_z,
                        pe_x,
                        pe_z: j.z_block_errors as f64 / j.trials_run as f64,
                        pe_z_ci_low: ci_low,
                        pe_z_ci_high: ci_high,
                        pe: j.joint_block_errors as f64 / j.trials_run as f64,
                        trials: j.trials_run,
                        block_errors: j.z_block_errors,
                        nonconverged: j.z_nonconverged,
                    }
                }
            };
            cells.push(cell);
        }
    }
    Ok(SimResult { cells })
}
