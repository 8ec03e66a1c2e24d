//! Command-line interface: construct asymmetric CSS codes, verify persisted
//! descriptors, print the s = 4 code table, inspect the twirled channel, and
//! run logical-error-rate sweeps.
//!
//! Exit codes: 0 on success, 2 on validation errors, 3 on internal
//! assertion failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use aqecc_core::css::{asymmetric_bch_ldpc_with_poly, asymmetric_eg_ldpc_with_poly};
use aqecc_core::error::Error;
use aqecc_core::io::persist_code;
use aqecc_core::sim::{ChannelModel, SimPlan, StopRule, CSV_HEADER};
use aqecc_core::{
    asymmetry_approx, asymmetry_exact, bsc_crossovers, pauli_from_total, pauli_twirl_closed,
    sweep, AsymmetricCssCode, CodeDescriptor, RelaxationParams,
};

#[derive(Parser)]
#[command(
    name = "aqecc",
    version,
    about = "Asymmetric CSS codes from BCH and finite-geometry LDPC codes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pauli channel parameters, from relaxation times or from (p, A)
    Channel(ChannelArgs),
    /// Construct a code and write its descriptor and alist files
    Construct {
        #[command(subcommand)]
        family: ConstructCmd,
    },
    /// Recheck a stored descriptor against its matrices
    Verify {
        /// Path to the descriptor JSON
        descriptor: PathBuf,
    },
    /// Print the family of length-255 BCH-LDPC codes (s = 4)
    Table1,
    /// Monte Carlo sweep of logical error rates over (p, A)
    Simulate(SimArgs),
}

#[derive(Args)]
struct ChannelArgs {
    /// Relaxation time T1 (seconds)
    #[arg(long, requires = "t2", requires = "t")]
    t1: Option<f64>,
    /// Dephasing time T2 (seconds)
    #[arg(long)]
    t2: Option<f64>,
    /// Exposure time t (seconds)
    #[arg(long)]
    t: Option<f64>,
    /// Total error probability (alternative parameterization)
    #[arg(long, requires = "asymmetry", conflicts_with = "t1")]
    p: Option<f64>,
    /// Channel asymmetry A = p_z / p_x
    #[arg(long)]
    asymmetry: Option<f64>,
}

#[derive(Args)]
struct ConstructShared {
    /// Geometry dimension m
    #[arg(long)]
    m: usize,
    /// Subfield extension degree s (q = p^s)
    #[arg(long)]
    s: usize,
    /// Field characteristic
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Output descriptor JSON path
    #[arg(long)]
    out: PathBuf,
    /// Directory for the alist files (default: the descriptor's directory)
    #[arg(long)]
    alist_dir: Option<PathBuf>,
    /// Override the primitive polynomial of GF(p^{ms}); comma-separated
    /// coefficients, lowest degree first (e.g. "1,1,0,0,1")
    #[arg(long)]
    primitive_poly: Option<String>,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// BCH (X side) paired with the cyclic EG-LDPC code (Z side)
    BchLdpc {
        /// Flat dimension of the Z-side code
        #[arg(long)]
        mu: usize,
        /// BCH design distance
        #[arg(long)]
        delta: u64,
        #[command(flatten)]
        shared: ConstructShared,
    },
    /// Two EG-LDPC codes over the full point set
    EgLdpc {
        /// Flat dimension of the X-side code
        #[arg(long)]
        mu_x: usize,
        /// Flat dimension of the Z-side code
        #[arg(long)]
        mu_z: usize,
        #[command(flatten)]
        shared: ConstructShared,
    },
}

#[derive(Args)]
struct SimArgs {
    /// Path to a descriptor JSON produced by `construct`
    descriptor: PathBuf,
    /// Comma-separated total error probabilities
    #[arg(long = "p-grid", value_delimiter = ',', required = true)]
    p_grid: Vec<f64>,
    /// Comma-separated channel asymmetries
    #[arg(long, value_delimiter = ',', required = true)]
    asymmetry: Vec<f64>,
    /// Trials per (p, A) cell
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// RNG seed; falls back to the AQC_SEED environment variable, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// Stop a cell early once this many block errors accumulate
    #[arg(long, default_value_t = 100)]
    min_block_errors: u64,
    /// Channel sampling: two independent BSCs (default) or the exact
    /// correlated per-qubit Pauli draw
    #[arg(long, value_enum, default_value_t = ChannelModelArg::Independent)]
    channel_model: ChannelModelArg,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ChannelModelArg {
    Independent,
    Correlated,
}

impl From<ChannelModelArg> for ChannelModel {
    fn from(a: ChannelModelArg) -> ChannelModel {
        match a {
            ChannelModelArg::Independent => ChannelModel::IndependentBsc,
            ChannelModelArg::Correlated => ChannelModel::Correlated4ary,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Channel(args) => cmd_channel(args),
        Cmd::Construct { family } => cmd_construct(family),
        Cmd::Verify { descriptor } => cmd_verify(&descriptor),
        Cmd::Table1 => cmd_table1(),
        Cmd::Simulate(args) => cmd_simulate(args),
    }
}

fn cmd_channel(args: ChannelArgs) -> Result<(), Error> {
    let json = match (args.t1, args.t2, args.t, args.p, args.asymmetry) {
        (Some(t1), Some(t2), Some(t), None, None) => {
            let params = RelaxationParams::new(t1, t2, t)?;
            let ch = pauli_twirl_closed(&params)?;
            let a_exact = asymmetry_exact(&params)?;
            let p_total = ch.p_x + ch.p_y + ch.p_z;
            let (eps_x, eps_z) = bsc_crossovers(p_total, a_exact)?;
            serde_json::json!({
                "p_x": ch.p_x,
                "p_y": ch.p_y,
                "p_z": ch.p_z,
                "p_i": ch.p_i(),
                "A_exact": a_exact,
                "A_approx": asymmetry_approx(t1, t2),
                "eps_x": eps_x,
                "eps_z": eps_z,
            })
        }
        (None, None, None, Some(p), Some(a)) => {
            let ch = pauli_from_total(p, a)?;
            let (eps_x, eps_z) = bsc_crossovers(p, a)?;
            serde_json::json!({
                "p_x": ch.p_x,
                "p_y": ch.p_y,
                "p_z": ch.p_z,
                "p_i": ch.p_i(),
                "A": a,
                "eps_x": eps_x,
                "eps_z": eps_z,
            })
        }
        _ => {
            return Err(Error::invalid(
                "pass either --t1 --t2 --t or --p --asymmetry",
            ))
        }
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&json).expect("serializable")
    );
    Ok(())
}

fn parse_poly(text: &Option<String>) -> Result<Option<Vec<u8>>, Error> {
    match text {
        None => Ok(None),
        Some(t) => {
            let coeffs: Result<Vec<u8>, _> = t.split(',').map(|x| x.trim().parse::<u8>()).collect();
            coeffs
                .map(Some)
                .map_err(|e| Error::invalid(format!("bad polynomial coefficient list: {e}")))
        }
    }
}

fn cmd_construct(family: ConstructCmd) -> Result<(), Error> {
    let (code, shared) = match family {
        ConstructCmd::BchLdpc { mu, delta, shared } => {
            let poly = parse_poly(&shared.primitive_poly)?;
            let code = asymmetric_bch_ldpc_with_poly(
                shared.m,
                mu,
                shared.s,
                shared.p,
                delta,
                poly.as_deref(),
            )?;
            (code, shared)
        }
        ConstructCmd::EgLdpc { mu_x, mu_z, shared } => {
            let poly = parse_poly(&shared.primitive_poly)?;
            let code = asymmetric_eg_ldpc_with_poly(
                shared.m,
                mu_x,
                mu_z,
                shared.s,
                shared.p,
                poly.as_deref(),
            )?;
            (code, shared)
        }
    };
    if code.k() == 0 {
        eprintln!("warning: the constructed code encodes k = 0 logical qudits");
    }
    let alist_dir = shared
        .alist_dir
        .clone()
        .or_else(|| {
            shared
                .out
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .map(Path::to_path_buf)
        })
        .unwrap_or_else(|| PathBuf::from("."));
    persist_code(&code, &shared.out, &alist_dir)?;
    println!("{}", code.summary());
    Ok(())
}

fn cmd_verify(descriptor: &Path) -> Result<(), Error> {
    let report = aqecc_core::verify_descriptor(descriptor)?;
    for check in &report.checks {
        println!(
            "{:10} {}  ({})",
            check.name,
            if check.pass { "PASS" } else { "FAIL" },
            check.detail
        );
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Error::invalid("one or more verification checks failed"))
    }
}

fn cmd_table1() -> Result<(), Error> {
    println!("asymmetric BCH-LDPC codes, s = 4 (n = 255)");
    println!(
        "{:>5}  {:<22} {:>8} {:>7}",
        "delta", "code", "d_z/d_x", "rate"
    );
    for delta in [15u64, 13, 11, 9, 7, 5, 3] {
        let code = aqecc_core::asymmetric_bch_ldpc(2, 1, 4, 2, delta)?;
        let dx = code.d_x().value().expect("bound recorded");
        let dz = code.d_z().value().expect("bound recorded");
        let ratio = dz as f64 / dx as f64;
        let rate = code.k() as f64 / code.n() as f64;
        println!(
            "{:>5}  {:<22} {:>8.3} {:>7.3}",
            delta,
            code.summary(),
            ratio,
            rate
        );
    }
    Ok(())
}

fn cmd_simulate(args: SimArgs) -> Result<(), Error> {
    let desc = CodeDescriptor::load(&args.descriptor)?;
    let code: AsymmetricCssCode = desc.reconstruct()?;
    let seed = match args.seed {
        Some(s) => s,
        None => std::env::var("AQC_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0),
    };
    let plan = SimPlan::new(&code, args.p_grid, args.asymmetry, args.trials, seed)?
        .with_stop(StopRule {
            max_trials: args.trials,
            min_block_errors: args.min_block_errors,
        })
        .with_channel_model(args.channel_model.into());
    let result = sweep(&plan)?;
    let csv = result.to_csv();
    debug_assert!(csv.starts_with(CSV_HEADER));
    match args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
