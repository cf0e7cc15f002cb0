use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use doublefield::pairing::{Side, DEFAULT_SHIFT_BOUND};

#[derive(Debug, Parser)]
#[command(name = "doublefield", version, about = "Divisors, residues and pairings on Q(x, y)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Emit a JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Requested working precision in bits for floating-point stages.
    #[arg(long, global = true, value_name = "BITS", default_value_t = 53)]
    pub precision: u32,
    /// Tolerance for real-valued identities.
    #[arg(long, global = true, value_name = "REAL", default_value_t = 1e-6)]
    pub tol: f64,
    /// Largest |c| tried for the Mobius chart shift.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_SHIFT_BOUND)]
    pub shift_bound: i64,
    /// Accept binary primes whose irreducibility cannot be certified.
    #[arg(long, global = true)]
    pub assume_irreducible: bool,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "Kprime", alias = "kprime")]
    Kprime,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::K => Side::K,
            SideArg::Kprime => Side::Kprime,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Principal divisor of a polynomial or a quotient NUM/DEN.
    Divisor {
        #[arg(value_name = "EXPR")]
        expr: String,
    },
    /// Residue of a divisor modulo a prime.
    Residue {
        #[arg(long = "A", value_name = "SPEC")]
        a: String,
        #[arg(long, value_name = "PRIME")]
        n: String,
    },
    /// Correspondence image of a divisor at a place of Q(x) or Q(y).
    Correspond {
        #[arg(long = "A", value_name = "SPEC")]
        a: String,
        #[arg(long, value_name = "PRIME")]
        p: String,
    },
    /// Norm pairing of two coprime divisors.
    Pair {
        #[arg(long, value_name = "SPEC")]
        a: String,
        #[arg(long, value_name = "SPEC")]
        b: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Self-pairing of a prime of degree one in x.
    Selfpair {
        #[arg(long, value_name = "PRIME")]
        m: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Arakelov degree of a divisor of Q(y).
    ArakelovDeg {
        #[arg(long, value_name = "DIVISOR")]
        d: String,
    },
    /// Residue scalar product of two coprime divisors.
    Rsp {
        #[arg(long, value_name = "SPEC")]
        a: String,
        #[arg(long, value_name = "SPEC")]
        b: String,
    },
    /// Search random divisors for negative self-products.
    Explore {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Run one acceptance suite, or all of them.
    Verify {
        #[arg(long, value_name = "NAME")]
        suite: Option<String>,
    },
}
