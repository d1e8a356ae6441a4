//! `sdigits`: digit-sum sets, Bernoulli denominators and polygonal forms.

mod config;
mod output;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sdigits_core::berndenom::denominator_row;
use sdigits_core::enumerate::{
    count_sets, count_sets_resumable, first_occurrence, s_members, Hit, EXTENDED_MAX_LIMIT,
};
use sdigits_core::factorint::factorize;
use sdigits_core::numbersets::{
    is_carmichael_digit_of, is_primary_carmichael_of, membership_report, SetTag,
};
use sdigits_core::polygon::{polygonal_decomposition, sharp_alpha, PolygonalShape};
use sdigits_core::verify::{self, Profile};
use sdigits_core::Error;
use serde::Serialize;

use config::{ConfigLayer, OutputFormat, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "sdigits", version, about)]
struct Cli {
    /// TOML file with any of max_limit, segment_size, threads, oracle_bound, output_format.
    #[arg(long, global = true, env = "SDIGITS_CONFIG")]
    config: Option<PathBuf>,
    #[command(flatten)]
    layer: ConfigLayer,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Membership report for m, or a yes/no exit status with --set.
    Check {
        m: u64,
        /// One of SF, S, S_even, C, Cprime, Sd=<d>, Kd=<d>; exit 0 if m is a member, 1 if not.
        #[arg(long, value_parser = parse_set)]
        set: Option<SetTag>,
    },
    /// Denominators of B_n, of B_n(x) - B_n and of B_n(x), with the parts.
    Denom {
        n: u64,
        /// Emit every row from n through this index.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Polygonal form of a member of S (null when none).
    Polygonal { m: u64 },
    /// Stream the members of a set up to a limit.
    Enumerate {
        #[arg(long, value_parser = parse_set, default_value = "S")]
        set: SetTag,
        #[arg(long)]
        limit: u64,
        #[arg(long, conflicts_with = "csv")]
        jsonl: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Counts of C', C and S below each power of ten up to the limit.
    Count {
        #[arg(long)]
        limit: u64,
        /// Raise the size cap to 10^12.
        #[arg(long)]
        extended: bool,
        /// Resume from, and periodically save to, this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Least member of a set with the given shape.
    First {
        #[arg(long, value_parser = parse_shape)]
        shape: PolygonalShape,
        #[arg(long, value_parser = parse_set)]
        set: SetTag,
        #[arg(long)]
        bound: u64,
    },
    /// Sharp constant alpha with P(m) > alpha * sqrt(m), checked up to the bound.
    Alpha {
        #[arg(long, value_parser = parse_set)]
        set: SetTag,
        #[arg(long)]
        bound: u64,
    },
    /// Regenerate the published tables and checks.
    Verify {
        #[arg(value_parser = parse_profile, default_value = "quick")]
        profile: Profile,
    },
}

fn parse_set(s: &str) -> Result<SetTag, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_shape(s: &str) -> Result<PolygonalShape, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Core(Error),
    Usage(String),
    /// A predicate answered no, or a verification check failed.
    Negative,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

#[derive(Serialize)]
struct SetAnswer {
    m: u64,
    set: String,
    member: bool,
}

#[derive(Serialize)]
struct FirstAnswer {
    shape: PolygonalShape,
    set: String,
    bound: u64,
    m: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve_config(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &cfg, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            let report = ErrorReport {
                error: e.kind(),
                message: e.to_string(),
            };
            eprintln!("{}", serde_json::to_string(&report).expect("plain struct"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, String> {
    let file = match &cli.config {
        Some(path) => ConfigLayer::from_file(path)?,
        None => ConfigLayer::default(),
    };
    cli.layer.clone().over(file).resolve()
}

fn run(command: Command, cfg: &RunConfig, out: &mut impl Write) -> Result<(), Failure> {
    let format = |default| cfg.output_format.unwrap_or(default);
    match command {
        Command::Check { m, set: None } => output::object(out, &membership_report(m)?)?,
        Command::Check { m, set: Some(set) } => {
            let member = set.contains(m)?;
            output::object(
                out,
                &SetAnswer {
                    m,
                    set: set.to_string(),
                    member,
                },
            )?;
            if !member {
                return Err(Failure::Negative);
            }
        }
        Command::Denom { n, to: None } => match format(OutputFormat::Json) {
            OutputFormat::Json => output::object(out, &denominator_row(n)?)?,
            f => output::records(out, f, [denominator_row(n)?])?,
        },
        Command::Denom { n, to: Some(to) } => {
            if to < n {
                return Err(Failure::Usage(format!("--to {to} is below n = {n}")));
            }
            let rows = (n..=to)
                .map(denominator_row)
                .collect::<Result<Vec<_>, _>>()?;
            output::records(out, format(OutputFormat::Json), rows)?;
        }
        Command::Polygonal { m } => output::object(out, &polygonal_decomposition(m)?)?,
        Command::Enumerate {
            set,
            limit,
            jsonl,
            csv,
        } => {
            let f = if csv {
                OutputFormat::Csv
            } else if jsonl {
                OutputFormat::Jsonl
            } else {
                format(OutputFormat::Jsonl)
            };
            enumerate(out, f, set, limit, cfg)?;
        }
        Command::Count {
            limit,
            extended,
            checkpoint,
        } => {
            let mut enum_cfg = cfg.enum_config();
            if extended {
                enum_cfg.max_limit = enum_cfg.max_limit.max(EXTENDED_MAX_LIMIT);
            }
            let rows = match checkpoint {
                Some(path) => count_sets_resumable(limit, &enum_cfg, &path)?,
                None => count_sets(limit, &enum_cfg)?,
            };
            output::records(out, format(OutputFormat::Json), rows)?;
        }
        Command::First { shape, set, bound } => {
            let m = first_occurrence(shape, set, bound)?;
            output::object(
                out,
                &FirstAnswer {
                    shape,
                    set: set.to_string(),
                    bound,
                    m,
                },
            )?;
        }
        Command::Alpha { set, bound } => {
            output::object(out, &sharp_alpha(set, bound, &cfg.enum_config())?)?
        }
        Command::Verify { profile } => {
            let f = format(OutputFormat::Table);
            let outcomes = verify::run_with(profile, &cfg.enum_config(), cfg.oracle_bound, |o| {
                if f == OutputFormat::Table {
                    // Progress matters on the long profiles.
                    let _ = writeln!(out, "{o}").and_then(|()| out.flush());
                }
            });
            if f != OutputFormat::Table {
                output::records(out, f, &outcomes)?;
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            if let Some(first) = outcomes.iter().find(|o| !o.passed) {
                out.flush()?;
                eprintln!(
                    "verify {profile}: {passed}/{} passed; first failure: {}",
                    outcomes.len(),
                    first.name
                );
                return Err(Failure::Negative);
            }
            eprintln!("verify {profile}: {passed}/{} passed", outcomes.len());
        }
    }
    Ok(())
}

fn enumerate(
    out: &mut impl Write,
    format: OutputFormat,
    set: SetTag,
    limit: u64,
    cfg: &RunConfig,
) -> Result<(), Failure> {
    let enum_cfg = cfg.enum_config();
    let mut err = None;
    if set.is_subset_of_s() {
        let mut hits = s_members(limit, &enum_cfg)?;
        let rows = std::iter::from_fn(|| loop {
            let hit = hits.next()?;
            let keep = match set {
                SetTag::S => Ok(true),
                SetTag::SEven => Ok(hit.m % 2 == 0),
                SetTag::C => Ok(hit.in_c),
                SetTag::Cprime => Ok(hit.in_cprime),
                _ => set.contains(hit.m),
            };
            match keep {
                Ok(true) => return Some(hit),
                Ok(false) => {}
                Err(e) => {
                    err = Some(e);
                    return None;
                }
            }
        });
        output::records(out, format, rows)?;
    } else {
        // SF and K_d are not inside S, so the sieve does not apply; walk every m.
        if limit > enum_cfg.max_limit {
            let msg = format!(
                "limit {limit} exceeds the configured maximum {}",
                enum_cfg.max_limit
            );
            return Err(Error::Resource(msg).into());
        }
        let mut candidates = 2..=limit;
        let rows = std::iter::from_fn(|| loop {
            let m = candidates.next()?;
            let hit = factorize(m).and_then(|f| {
                Ok(set.contains_factored(&f)?.then(|| Hit {
                    m,
                    greatest_prime: f.greatest_prime(),
                    in_c: is_carmichael_digit_of(&f),
                    in_cprime: is_primary_carmichael_of(&f),
                }))
            });
            match hit {
                Ok(Some(hit)) => return Some(hit),
                Ok(None) => {}
                Err(e) => {
                    err = Some(e);
                    return None;
                }
            }
        });
        output::records(out, format, rows)?;
    }
    err.map_or(Ok(()), |e| Err(e.into()))
}
