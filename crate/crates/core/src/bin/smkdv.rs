use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use smkdv::charges::Charge;
use smkdv::report::{self, Context, Options, Selection, Suite};
use smkdv::Flow;

#[derive(Parser)]
#[command(name = "smkdv", version, about = "Exact verification of the supersymmetric mKdV hierarchy, its defects and charges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite of checks and print one report per check.
    Verify {
        suite: Suite,
        /// Keep only checks along this flow (t-1, t1, t3, t5).
        #[arg(long, value_parser = parse_flow)]
        flow: Option<Flow>,
        /// Keep only checks on this charge (P or E).
        #[arg(long, value_parser = parse_charge)]
        charge: Option<Charge>,
        /// Also verify the generated charges I(-n/2); give n/2.
        #[arg(long, value_parser = parse_order)]
        order: Option<i32>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Seeds for the numeric oracle campaign.
        #[arg(long, default_value_t = 100)]
        oracle_seeds: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads; all cores when omitted.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write canonical dumps of the derived expressions into this directory.
        #[arg(long)]
        dump_golden: Option<PathBuf>,
    },
}

fn parse_flow(s: &str) -> Result<Flow, String> {
    Flow::from_label(s).ok_or_else(|| format!("unknown flow {s:?}: expected t-1, t1, t3 or t5"))
}

fn parse_charge(s: &str) -> Result<Charge, String> {
    report::parse_charge(s).map_err(|e| e.to_string())
}

fn parse_order(s: &str) -> Result<i32, String> {
    report::parse_order(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let Command::Verify { suite, flow, charge, order, seed, oracle_seeds, format, jobs, dump_golden } = Cli::parse().command;
    let ctx = Context::new(Options { seed, order, oracle_seeds, ..Options::default() });
    let sel = Selection { suite, flow, charge };
    let reports = match report::run_checks(sel, &ctx, jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    if reports.is_empty() {
        eprintln!("no checks match suite {suite} with the given filters");
        return ExitCode::FAILURE;
    }
    match format {
        Format::Text => print!("{}", report::to_text(&reports)),
        Format::Json => match report::to_json(&reports) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        },
    }
    if let Some(dir) = dump_golden {
        let written = report::golden_entries(&ctx)
            .map_err(|e| e.to_string())
            .and_then(|entries| report::write_golden(&dir, &entries).map_err(|e| e.to_string()));
        if let Err(e) = written {
            eprintln!("error: cannot dump golden files: {e}");
            return ExitCode::FAILURE;
        }
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
