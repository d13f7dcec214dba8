mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "rampw",
    version,
    about = "Ramp secret sharing, generalized Hamming weights and AG code bounds"
)]
pub struct Cli {
    /// Cap on exhaustive enumerations; larger jobs exit with code 4.
    #[arg(long, global = true, env = "RAMPW_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Code file for the larger code C1.
    #[arg(long)]
    pub c1: PathBuf,
    /// Code file for the subcode C2.
    #[arg(long)]
    pub c2: PathBuf,
}

type Positive = u64;

fn positive() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generalized Hamming weights d_m(C).
    Ghw {
        #[arg(long)]
        code: PathBuf,
        /// Orders to report; all of 1..=k when omitted.
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = positive())]
        m: Vec<Positive>,
    },
    /// Relative generalized Hamming weights M_m(C1, C2).
    Rghw {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = positive())]
        m: Vec<Positive>,
    },
    /// Relative dimension/length profile K_d(C1, C2).
    Rdlp {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = positive())]
        d: Vec<Positive>,
    },
    /// Privacy and reconstruction thresholds of the scheme from C1 ⊋ C2.
    Thresholds {
        #[command(flatten)]
        pair: PairArgs,
        /// Cross-check against exhaustively measured mutual information.
        #[arg(long)]
        verify: bool,
    },
    /// I(X_I; M) in q-bits for a set of 1-based share indices.
    Mi {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_delimiter = ',', num_args = 0.., value_parser = positive())]
        set: Vec<Positive>,
    },
    /// Shares of a secret.
    Share {
        #[command(flatten)]
        pair: PairArgs,
        /// Space-separated packed field elements.
        #[arg(long, allow_hyphen_values = true)]
        secret: String,
        /// Coefficients of the C2 codeword; drawn from --seed when omitted.
        #[arg(long)]
        randomness: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recovers the secret, or what is known about it, from some shares.
    Reconstruct {
        #[command(flatten)]
        pair: PairArgs,
        /// 1-based share indices.
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = positive())]
        indices: Vec<Positive>,
        /// Space-separated share values, in the order of --indices.
        #[arg(long)]
        shares: String,
    },
    /// Semigroup lower bound on M_m for one-point codes C_L(D, mu1 Q) ⊋ C_L(D, mu2 Q).
    SemigroupBound {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long, allow_hyphen_values = true)]
        mu1: i64,
        #[arg(long, allow_hyphen_values = true)]
        mu2: i64,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, value_parser = positive())]
        m: Positive,
        /// Bound M_m(C2⊥, C1⊥) instead.
        #[arg(long)]
        dual: bool,
    },
    /// One-point Hermitian code C_L(D, mu Q) over GF(q0^2).
    Hermitian {
        #[arg(long)]
        q0: u64,
        #[arg(long, allow_hyphen_values = true)]
        mu: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reed-Solomon code of dimension k.
    Rs {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Evaluation points; 0..n-1 when omitted.
        #[arg(long, value_delimiter = ',')]
        points: Vec<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Genus, conductor and place count at level i of the second Garcia-Stichtenoth tower.
    GsParams {
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        i: u32,
    },
    /// Exact subspace counts.
    Counts {
        #[command(subcommand)]
        which: CountsCommand,
    },
    /// Exact existence inequality for code pairs, optionally with a random witness.
    Existence {
        #[command(flatten)]
        query: ExistenceArgs,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prefix for writing the witness pair as <prefix>.c1.txt and <prefix>.c2.txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rate conditions and the smallest length where the existence inequality holds.
    Feasible {
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        delta_perp: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        tau_perp: f64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 64)]
        nmax: u64,
    },
    /// CSV of every asymptotic bound over an (R, rho, V) grid.
    AsymptoticSweep {
        #[arg(long)]
        q: u64,
        /// start:stop:step or a single value.
        #[arg(long)]
        r: String,
        #[arg(long)]
        rho: String,
        #[arg(long, default_value = "0")]
        v: String,
        /// A(q) for non-square q.
        #[arg(long)]
        ihara: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intervals where the semigroup-based asymptotic bounds win.
    CompareRegions {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: String,
        #[arg(long)]
        v: Option<String>,
    },
    /// Deficiencies of ramp scheme sequences from AG code pairs.
    FinalParams {
        /// Construction 1-4.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        theorem: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
        /// Sets both eps1 and eps2.
        #[arg(long, conflicts_with_all = ["eps1", "eps2"])]
        eps: Option<String>,
        #[arg(long)]
        eps1: Option<String>,
        #[arg(long)]
        eps2: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        ihara: Option<f64>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ExistenceArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k1: u64,
    #[arg(long)]
    pub k2: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub d_perp: u64,
    #[arg(long)]
    pub s: u64,
    #[arg(long)]
    pub s_perp: u64,
    #[arg(long)]
    pub q: u64,
}

#[derive(Subcommand, Debug)]
pub enum CountsCommand {
    /// u-dimensional subspaces of a w-dimensional space over GF(q).
    N1 {
        #[arg(long)]
        w: i64,
        #[arg(long)]
        u: i64,
        #[arg(long)]
        q: u64,
    },
    /// v-dimensional subspaces meeting a fixed u-dimensional subspace trivially.
    N2 {
        #[arg(long)]
        w: i64,
        #[arg(long)]
        u: i64,
        #[arg(long)]
        v: i64,
        #[arg(long)]
        q: u64,
    },
    /// v-dimensional subspaces meeting a fixed u-dimensional subspace in dimension a.
    N3 {
        #[arg(long)]
        w: i64,
        #[arg(long)]
        u: i64,
        #[arg(long)]
        v: i64,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        q: u64,
    },
    /// Nested pairs whose relative intersection with a fixed d-support has dimension s.
    N4 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k1: i64,
        #[arg(long)]
        k2: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        q: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli
        .budget
        .unwrap_or_else(|| commands::default_budget(&cli.command));
    match commands::run(cli.command, budget) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
