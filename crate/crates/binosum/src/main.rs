use std::process::ExitCode;

use clap::{Parser, Subcommand};

use binosum::cli::{
    bounds_report, default_points, limit_report, render_bounds, render_limit, render_rm,
    render_table1, render_table2, render_verify, rm_report, run_verify, table1_rows,
    table2_entries, Format, LimitKind, RunConfig, VerifyTarget,
};
use binosum::enclosure::resolve_precision_cap;

/// Inclusive `A..B` range with both endpoints required.
fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected an inclusive range like 4..40, got `{s}`"))?;
    let lo = lo
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("bad range start `{lo}`: {e}"))?;
    let hi = hi
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("bad range end `{hi}`: {e}"))?;
    Ok((lo, hi))
}

#[derive(Parser)]
#[command(
    name = "binosum",
    version,
    about = "Exact scans and certified bounds for f_m(r) = 2^-r * sum_{i<=r} C(m,i)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the floor table of f_m(r) with peak markers
    Table1 {
        /// Inclusive row range, written A..B
        #[arg(long = "m-range", alias = "m", value_parser = parse_range, default_value = "6..15", value_name = "A..B")]
        m_range: (u64, u64),
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Print the exact peak pairs f_m(r0-1), f_m(r0) for m = 0..12
    Table2 {
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Run one verification sweep; exits 1 if any check fails
    Verify {
        /// What to verify
        #[arg(value_enum)]
        target: VerifyTarget,
        /// m sweep range (theorem1, lower, upper, strat, bounds)
        #[arg(long = "m-range", alias = "m", value_parser = parse_range, value_name = "A..B")]
        m_range: Option<(u64, u64)>,
        /// i sweep range (lemma3)
        #[arg(long = "i-range", alias = "i", value_parser = parse_range, value_name = "A..B")]
        i_range: Option<(u64, u64)>,
        /// j sweep range (lemma_l2)
        #[arg(long = "j-range", alias = "j", value_parser = parse_range, value_name = "A..B")]
        j_range: Option<(u64, u64)>,
        /// s sweep range (ash, limits)
        #[arg(long = "s-range", alias = "s", value_parser = parse_range, value_name = "A..B")]
        s_range: Option<(u64, u64)>,
        /// Worker threads for the scan (default: all cores)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
        /// Highest enclosure precision to try, in bits
        #[arg(long = "precision-cap", value_name = "BITS")]
        precision_cap: Option<u32>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Show the sandwich and transcendental peak bounds at one m
    Bounds {
        /// Row to bound (m must avoid 0, 1, 3, 6, 9, 12)
        #[arg(long)]
        m: u64,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Show Reed-Muller parameters [n, k, d] and the merit kd/n
    Rm {
        /// Code length exponent: n = 2^m
        #[arg(long)]
        m: u64,
        /// Order; defaults to every merit-maximizing order
        #[arg(long)]
        r: Option<u64>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Limit diagnostics for the scaled peak and the head-to-center ratio
    Limit {
        /// Which limit to evaluate
        #[arg(value_enum)]
        kind: LimitKind,
        /// Evaluation points, comma separated
        #[arg(long, value_delimiter = ',', value_name = "m1,m2,...")]
        points: Option<Vec<u64>>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let default_workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match cli.command {
        Command::Table1 { m_range, format } => {
            let cap = resolve_precision_cap(None)?;
            let mut cfg = RunConfig::new("table1", format, default_workers, cap);
            cfg.m_range = Some(m_range);
            let rows = table1_rows(m_range.0, m_range.1).map_err(|e| e.to_string())?;
            print!("{}", render_table1(&cfg, &rows));
            Ok(ExitCode::SUCCESS)
        }
        Command::Table2 { format } => {
            let cap = resolve_precision_cap(None)?;
            let cfg = RunConfig::new("table2", format, default_workers, cap);
            print!("{}", render_table2(&cfg, &table2_entries()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            target,
            m_range,
            i_range,
            j_range,
            s_range,
            workers,
            precision_cap,
            format,
        } => {
            let cap = resolve_precision_cap(precision_cap)?;
            let workers = workers.map(|w| w as usize).unwrap_or(default_workers);
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build_global();
            let mut cfg = RunConfig::new("verify", format, workers, cap);
            cfg.target = Some(target);
            cfg.m_range = m_range;
            cfg.i_range = i_range;
            cfg.j_range = j_range;
            cfg.s_range = s_range;
            let report = run_verify(&mut cfg, target).map_err(|e| e.to_string())?;
            print!("{}", render_verify(&cfg, &report));
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bounds { m, format } => {
            let cap = resolve_precision_cap(None)?;
            let mut cfg = RunConfig::new("bounds", format, default_workers, cap);
            cfg.m = Some(m);
            let report = bounds_report(m, cfg.precision()).map_err(|e| e.to_string())?;
            print!("{}", render_bounds(&cfg, &report));
            Ok(ExitCode::SUCCESS)
        }
        Command::Rm { m, r, format } => {
            let cap = resolve_precision_cap(None)?;
            let mut cfg = RunConfig::new("rm", format, default_workers, cap);
            cfg.m = Some(m);
            cfg.r = r;
            let report = rm_report(m, r).map_err(|e| e.to_string())?;
            print!("{}", render_rm(&cfg, &report));
            Ok(ExitCode::SUCCESS)
        }
        Command::Limit {
            kind,
            points,
            format,
        } => {
            let cap = resolve_precision_cap(None)?;
            let mut cfg = RunConfig::new("limit", format, default_workers, cap);
            cfg.kind = Some(kind);
            let points = points.unwrap_or_else(|| default_points(kind));
            cfg.points = Some(points.clone());
            let report = limit_report(kind, &points, cfg.precision()).map_err(|e| e.to_string())?;
            print!("{}", render_limit(&cfg, &report));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
