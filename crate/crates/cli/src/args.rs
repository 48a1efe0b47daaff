use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "uniratio", version, about = "Limit ratios of nonunimodular roots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Limit ratio (and limit Mahler measure) of a spec or named family.
    LimitRatio(LimitRatioArgs),
    /// Compare C(P) of concrete members with the limit ratio.
    Verify(VerifyArgs),
    /// Recompute the transcribed table of limit points.
    Table2(OutputArgs),
    /// The T family built from powers of a Salem number.
    Salem(SalemArgs),
    /// Bounds on the limit ratio of the H family.
    Hbounds(HboundsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Riemann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Spec as inline JSON `{"k","l","a","b"}` or a path to a JSON file.
    #[arg(long)]
    pub spec: Option<String>,
    /// Family as inline JSON `{"family","a","b","epsilon","m"}` or a path.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct LimitRatioArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "exact")]
    pub method: MethodArg,
    /// Sample points for the Riemann method.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub points: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Sequence indices n (for bivariate families: the substitution y = x^N).
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub n_list: Vec<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MRange {
    #[arg(long, conflicts_with = "m_range")]
    pub m: Option<u32>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub m_range: Option<(u32, u32)>,
}

#[derive(Debug, Args)]
pub struct SalemArgs {
    #[command(flatten)]
    pub range: MRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HboundsArgs {
    #[command(flatten)]
    pub range: MRange,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

impl MRange {
    /// The requested values, or `default` when neither flag is given.
    pub fn values(&self, default: (u32, u32)) -> Vec<u32> {
        match (self.m, self.m_range) {
            (Some(m), _) => vec![m],
            (None, Some((a, b))) => (a..=b).collect(),
            (None, None) => (default.0..=default.1).collect(),
        }
    }
}
