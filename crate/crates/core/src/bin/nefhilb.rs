use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nefhilb::bridgeland::{gieseker_wall, SliceKind};
use nefhilb::coneconj::{coverage_experiment, DEFAULT_THRESHOLD_FACTOR};
use nefhilb::hilb::theorem1_check;
use nefhilb::report::{emit, run_campaign, Campaign, ExitStatus, DEFAULT_MAX_N};
use nefhilb::surface::{ample_decision_a1, ample_decision_a2, is_nef_up_to_degree};
use nefhilb::weyl::{counts_by_degree, weyl_orbit};
use nefhilb::{DivisorClass, Error};

/// Exact certificates for nef cones of Hilbert schemes of points on a rational
/// elliptic surface.
#[derive(Parser, Debug)]
#[command(name = "nefhilb", version)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized experiments.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weyl group orbits of divisor classes.
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Nefness and ampleness on the surface.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Duality checks on the Hilbert scheme.
    #[command(subcommand)]
    Hilb(HilbCmd),
    /// Bridgeland walls.
    #[command(subcommand)]
    Walls(WallsCmd),
    /// Translations by sections.
    #[command(subcommand)]
    Coneconj(ConeconjCmd),
    /// Run every check over a range of n.
    #[command(subcommand)]
    Campaign(CampaignCmd),
}

#[derive(Subcommand, Debug)]
enum WeylCmd {
    /// Orbit of a class up to an H-degree bound.
    Orbit {
        /// JSON class or one of H, F, K, E1..E9.
        #[arg(long, default_value = "E9")]
        start: String,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        max_degree: i64,
    },
}

#[derive(Subcommand, Debug)]
enum SurfaceCmd {
    /// Check nefness against (−1)-classes up to a degree bound.
    Nef {
        #[arg(long)]
        divisor: String,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        max_degree: i64,
    },
    /// Ampleness of the polarization used for a stability slice.
    AmpleFamily {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_parser = parse_slice)]
        which: SliceKind,
    },
}

#[derive(Subcommand, Debug)]
enum HilbCmd {
    /// Pair every nef generator with every curve generator.
    CheckTheorem(NDegree),
}

#[derive(Args, Debug)]
struct NDegree {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    max_degree: i64,
}

#[derive(Subcommand, Debug)]
enum WallsCmd {
    /// Certify the largest wall for the ideal sheaf of n points.
    Gieseker {
        #[arg(long, value_parser = parse_slice)]
        slice: SliceKind,
        #[command(flatten)]
        nd: NDegree,
    },
}

#[derive(Subcommand, Debug)]
enum ConeconjCmd {
    /// Reduce random nef classes by translations and decompose them.
    Cover {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        max_degree: i64,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD_FACTOR)]
        threshold_factor: i64,
    },
}

#[derive(Subcommand, Debug)]
enum CampaignCmd {
    Run {
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        n_min: i64,
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        n_max: i64,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        max_degree: i64,
        #[arg(long, value_delimiter = ',', value_parser = parse_slice, default_values = ["A1", "A2"])]
        slices: Vec<SliceKind>,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: i64,
    },
}

fn parse_slice(s: &str) -> Result<SliceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Serialize)]
struct OrbitReport {
    start: DivisorClass,
    max_degree: i64,
    count: usize,
    counts_by_degree: std::collections::BTreeMap<String, usize>,
    classes: Vec<DivisorClass>,
}

fn output<T: Serialize>(cli: &Cli, value: &T, status: ExitStatus) -> ExitStatus {
    match emit(value, cli.out.as_deref()) {
        Ok(()) => status,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            ExitStatus::Usage
        }
    }
}

fn certified(ok: bool) -> ExitStatus {
    if ok {
        ExitStatus::Certified
    } else {
        ExitStatus::Falsified
    }
}

fn run(cli: &Cli) -> Result<ExitStatus, Error> {
    match &cli.command {
        Command::Weyl(WeylCmd::Orbit { start, max_degree }) => {
            let start: DivisorClass = start.parse()?;
            let classes = weyl_orbit(&start, *max_degree)?;
            let report = OrbitReport {
                counts_by_degree: counts_by_degree(&classes),
                count: classes.len(),
                start,
                max_degree: *max_degree,
                classes,
            };
            Ok(output(cli, &report, ExitStatus::Certified))
        }
        Command::Surface(SurfaceCmd::Nef {
            divisor,
            max_degree,
        }) => {
            let cert = is_nef_up_to_degree(&divisor.parse()?, *max_degree)?;
            Ok(output(cli, &cert, certified(cert.is_nef())))
        }
        Command::Surface(SurfaceCmd::AmpleFamily { n, which }) => {
            let dec = match which {
                SliceKind::A1 => ample_decision_a1(*n)?,
                SliceKind::A2 => ample_decision_a2(*n)?,
            };
            Ok(output(cli, &dec, certified(dec.ample)))
        }
        Command::Hilb(HilbCmd::CheckTheorem(nd)) => {
            let report = theorem1_check(nd.n, nd.max_degree)?;
            Ok(output(cli, &report, certified(report.certified())))
        }
        Command::Walls(WallsCmd::Gieseker { slice, nd }) => {
            let cert = gieseker_wall(*slice, nd.n, nd.max_degree)?;
            Ok(output(cli, &cert, ExitStatus::Certified))
        }
        Command::Coneconj(ConeconjCmd::Cover {
            n,
            samples,
            max_degree,
            threshold_factor,
        }) => {
            let report =
                coverage_experiment(*n, *samples, *max_degree, cli.seed, *threshold_factor)?;
            Ok(output(cli, &report, certified(report.all_succeeded())))
        }
        Command::Campaign(CampaignCmd::Run {
            n_min,
            n_max,
            max_degree,
            slices,
            max_n,
        }) => {
            let campaign = Campaign {
                n_min: *n_min,
                n_max: *n_max,
                max_h_degree: *max_degree,
                slices: slices.clone(),
                max_n: *max_n,
            };
            let outcome = run_campaign(&campaign);
            if let Some(e) = &outcome.error {
                eprintln!("error: {e}");
            }
            match &outcome.report {
                Some(r) => {
                    for f in &r.failures {
                        eprintln!("falsified: {f}");
                    }
                    Ok(output(cli, r, outcome.status))
                }
                None => Ok(outcome.status),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(ExitStatus::Usage.code() as u8);
        }
    }
    let status = run(&cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitStatus::of_error(&e)
    });
    ExitCode::from(status.code() as u8)
}
