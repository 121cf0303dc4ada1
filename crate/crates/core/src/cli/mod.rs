//! Command-line front end. Every command prints one JSON document.

mod output;
mod verify;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::PrimeField;
use crate::compression::{asymptotic_profile, mrk_tensor_power, CompressionParams};
use crate::error::Error;
use crate::matspace::{MatrixSpace, SizeGuard};
use crate::rank::{max_rank_greedy, max_rank_with_retry, rank_exact, RandomizedConfig};
use crate::shrunk::{has_shrunk_subspace, ncrk_bounds, verify_blowup_certificate, ShrunkDecision};
use crate::slocc::{can_convert, rate_bounds, TripartiteState};

pub use output::{normalize_floats, render};
pub use verify::{run_suite, Check, SUITES};

/// Settings shared by all commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: u32,
    pub prime: Option<u64>,
    pub size_guard: u64,
    pub certify: bool,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 0, trials: 16, prime: None, size_guard: SizeGuard::default().0, certify: false, jobs: 1 }
    }
}

impl RunConfig {
    pub fn randomized(&self) -> Result<RandomizedConfig, Error> {
        if self.trials == 0 {
            return Err(Error::InvalidParams("--trials must be at least 1".into()));
        }
        let field = match self.prime {
            Some(p) => PrimeField::new(p)?,
            None => PrimeField::default(),
        };
        Ok(RandomizedConfig { trials: self.trials, seed: self.seed, field, jobs: self.jobs.max(1) })
    }

    pub fn guard(&self) -> SizeGuard {
        SizeGuard(self.size_guard)
    }

    /// Echoed in every output; `jobs` is left out because it never changes results.
    fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "prime": self.prime.unwrap_or(crate::arith::DEFAULT_PRIME),
            "size_guard": self.size_guard,
            "certify": self.certify,
        })
    }
}

#[derive(Parser, Debug)]
#[command(name = "matslocc", version, about = "Maximal ranks of matrix spaces and SLOCC convertibility")]
pub struct Cli {
    /// Seed for all randomized rank computations.
    #[arg(long, global = true, env = "MATSLOCC_SEED", default_value_t = 0)]
    seed: u64,
    /// Independent samples per randomized rank estimate.
    #[arg(long, global = true, env = "MATSLOCC_TRIALS", default_value_t = 16)]
    trials: u32,
    /// Prime p ≡ 1 (mod 4) for sampling; defaults to 2147483629.
    #[arg(long, global = true, env = "MATSLOCC_PRIME")]
    prime: Option<u64>,
    /// Maximum number of matrix entries any tensor power or blow-up may have.
    #[arg(long, global = true, env = "MATSLOCC_SIZE_GUARD", default_value_t = SizeGuard::default().0)]
    size_guard: u64,
    /// Re-verify witnesses in exact arithmetic.
    #[arg(long, global = true, env = "MATSLOCC_CERTIFY")]
    certify: bool,
    /// Worker threads for randomized trials.
    #[arg(long, global = true, env = "MATSLOCC_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Indent the JSON output.
    #[arg(long, global = true, env = "MATSLOCC_PRETTY")]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ranks, image, kernel, shrunk-subspace decision and ncrk bounds of a matrix space.
    Analyze {
        /// Matrix-space JSON file.
        file: PathBuf,
    },
    /// Whether n copies of a state convert to a bipartite state of given Schmidt rank.
    Convert {
        /// State JSON file.
        file: PathBuf,
        /// Number of copies of the state.
        #[arg(long, default_value_t = 1)]
        copies: u32,
        /// Schmidt rank of the bipartite target.
        #[arg(long)]
        target: usize,
    },
    /// Bounds on the asymptotic conversion rate.
    Rate {
        /// State JSON file.
        file: PathBuf,
        /// Schmidt rank of the bipartite target, at least 2.
        #[arg(long)]
        target: usize,
        /// Largest number of copies evaluated for the finite-copy lower bound.
        #[arg(long)]
        max_copies: Option<u32>,
    },
    /// Closed-form ranks of maximal-compression spaces.
    #[command(group(ArgGroup::new("mode").required(true).args(["copies", "asymptotic"])))]
    Compression {
        /// Number of full rows.
        #[arg(long)]
        p: usize,
        /// Number of full columns.
        #[arg(long)]
        q: usize,
        /// Matrix size.
        #[arg(long)]
        d: usize,
        /// Exact maximal rank of this tensor power.
        #[arg(long)]
        copies: Option<u32>,
        /// Growth rate of the maximal rank over tensor powers.
        #[arg(long)]
        asymptotic: bool,
    },
    /// Run a built-in check suite.
    Verify {
        /// One of paper-values, formulas-vs-oracle, invariants.
        #[arg(long)]
        suite: String,
    },
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const SIZE_GUARD: i32 = 3;
}

/// Maps library errors onto exit codes.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuardExceeded { .. } | Error::BlowupSizeGuard { .. } => exit::SIZE_GUARD,
        Error::InconsistentEvidence(_) => exit::FAILED,
        _ => exit::CONFIG,
    }
}

/// Result of one invocation: the JSON document and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub body: Value,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn analyze(space: &MatrixSpace, cfg: &RunConfig) -> Result<Value, Error> {
    let rc = cfg.randomized()?;
    let guard = cfg.guard();
    let report = max_rank_with_retry(space, &rc)?;
    let greedy = rank_exact(&max_rank_greedy(space, None)?);
    let mut out = json!({
        "rows": space.rows(),
        "cols": space.cols(),
        "dim": space.dim(),
        "mrk": {
            "rank": report.rank,
            "failure_bound": report.failure_bound.to_string(),
            "trials": report.trials,
            "witness": report.witness,
        },
        "greedy_mrk": greedy,
        "image_dim": space.image().dim(),
        "kernel_dim": space.kernel().dim(),
    });
    if cfg.certify {
        out["mrk"]["certified_rank"] = json!(report.certify(space)?.1);
    }
    if space.is_square() {
        let decision = has_shrunk_subspace(space, &rc, guard)?;
        let mut dj = decision.to_json();
        if cfg.certify {
            if let ShrunkDecision::NoShrunk { certificate, .. } = &decision {
                dj["verified"] = json!(verify_blowup_certificate(space, certificate, guard)?);
            }
        }
        let ncrk = ncrk_bounds(space, &[], &rc, guard)?;
        out["shrunk"] = dj;
        out["ncrk"] = json!({"lower": ncrk.lower, "upper": ncrk.upper});
    } else {
        out["shrunk"] = Value::Null;
        out["ncrk"] = Value::Null;
    }
    Ok(out)
}

pub fn compression(p: usize, q: usize, d: usize, copies: Option<u32>) -> Result<Value, Error> {
    let params = CompressionParams::square(p, q, d)?;
    params.require_maximal()?;
    Ok(match copies {
        Some(n) => {
            let v = mrk_tensor_power(p, q, d, n)?;
            let mrk = u64::try_from(&v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string()));
            json!({"p": p, "q": q, "d": d, "copies": n, "mrk": mrk})
        }
        None => serde_json::to_value(asymptotic_profile(p, q, d)?).expect("profile serializes"),
    })
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Outcome, Error> {
    let guard = cfg.guard();
    let (name, body) = match &cli.command {
        Command::Analyze { file } => ("analyze", analyze(&MatrixSpace::from_json(&read(file)?)?, cfg)?),
        Command::Convert { file, copies, target } => {
            let state = TripartiteState::from_json(&read(file)?)?;
            let v = can_convert(&state, *copies, *target, &cfg.randomized()?, guard, cfg.certify)?;
            ("convert", v.to_json())
        }
        Command::Rate { file, target, max_copies } => {
            let state = TripartiteState::from_json(&read(file)?)?;
            ("rate", rate_bounds(&state, *target, *max_copies, &cfg.randomized()?, guard)?.to_json())
        }
        Command::Compression { p, q, d, copies, asymptotic } => {
            ("compression", compression(*p, *q, *d, if *asymptotic { None } else { *copies })?)
        }
        Command::Verify { suite } => {
            let checks = run_suite(suite, cfg)?;
            let passed = checks.iter().all(|c| c.pass);
            let body = json!({
                "suite": suite,
                "passed": passed,
                "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            });
            let code = if passed { exit::OK } else { exit::FAILED };
            return Ok(Outcome { body: wrap("verify", cfg, body), code });
        }
    };
    Ok(Outcome { body: wrap(name, cfg, body), code: exit::OK })
}

fn wrap(name: &str, cfg: &RunConfig, result: Value) -> Value {
    normalize_floats(json!({"command": name, "config": cfg.to_json(), "result": result}))
}

/// Parses `args`, runs the command and returns what should be printed and
/// the exit code. Argument errors are returned as clap errors.
pub fn run<I, T>(args: I) -> Result<(String, i32), clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let cfg = RunConfig {
        seed: cli.seed,
        trials: cli.trials,
        prime: cli.prime,
        size_guard: cli.size_guard,
        certify: cli.certify,
        jobs: cli.jobs,
    };
    let (body, code) = match dispatch(&cli, &cfg) {
        Ok(o) => (o.body, o.code),
        Err(e) => (json!({"error": e.to_string(), "exit_code": exit_code(&e)}), exit_code(&e)),
    };
    Ok((render(&body, cli.pretty), code))
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run(args) {
        Ok((text, code)) => {
            println!("{text}");
            code
        }
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::OK };
            let _ = e.print();
            code
        }
    }
}
