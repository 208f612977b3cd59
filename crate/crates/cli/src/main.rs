use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use fockr::suites::{run_suite, Golden, SuiteOptions, SuiteReport, SUITES};
use fockr::{Error, Params, Scalar};

/// Run exact verification suites and report the checks.
#[derive(Parser, Debug)]
#[command(name = "fockr", version, group(ArgGroup::new("format").args(["json", "table"])))]
struct Args {
    /// Suite to run: heisenberg, virasoro, rmatrix, yangbaxter, jack, quantum,
    /// spectrum, grassmann, gamma, screening or all.
    #[arg(long)]
    suite: String,
    /// Seed for parameter sampling and random test points.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Override the suite's default degree cap.
    #[arg(long)]
    degree_cap: Option<usize>,
    /// Rank of the sampled parameters; also the largest rank looped over.
    #[arg(long)]
    rank: Option<usize>,
    /// Kähler parameter as a rational, e.g. 2/7.
    #[arg(long)]
    q: Option<String>,
    /// JSON file with explicit parameters {t1, t2, a, q, seed}.
    #[arg(long)]
    params_file: Option<PathBuf>,
    /// Print the JSON report.
    #[arg(long)]
    json: bool,
    /// Print a table (default).
    #[arg(long)]
    table: bool,
    /// Compare against golden files in this directory.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// With --golden: write the golden files instead of comparing.
    #[arg(long, requires = "golden")]
    record: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn options(args: &Args) -> Result<SuiteOptions, String> {
    let q = args.q.as_deref().map(str::parse::<Scalar>).transpose().map_err(|e| format!("--q: {e}"))?;
    let params = match &args.params_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Some(serde_json::from_str::<Params>(&text).map_err(|e| format!("{}: {e}", path.display()))?)
        }
        None => None,
    };
    let golden = match (&args.golden, args.record) {
        (None, _) => Golden::Off,
        (Some(d), false) => Golden::Compare(d.clone()),
        (Some(d), true) => Golden::Record(d.clone()),
    };
    Ok(SuiteOptions { seed: args.seed, params, degree_cap: args.degree_cap, rank: args.rank, q, golden })
}

fn print_table(report: &SuiteReport) {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    println!(
        "suite {}  seed {}  t1 {}  t2 {}  q {}",
        report.suite, report.seed, report.params.t1, report.params.t2, report.params.q
    );
    for c in &report.checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        println!("  {status}  {:width$}", c.name);
    }
    let failed = report.failures().count();
    println!("{} checks, {} failed, {} ms", report.checks.len(), failed, report.duration_ms);
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = match options(&args) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(&args.suite, &opts) {
        Ok(r) => r,
        Err(e @ Error::UnknownSuite(_)) => {
            eprintln!("error: {e}; expected one of {}", SUITES.join(", "));
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    if let Some(path) = &args.output {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if args.json {
        println!("{json}");
    } else {
        print_table(&report);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
