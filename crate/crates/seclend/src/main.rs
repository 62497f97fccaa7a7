//! `seclend` command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use seclend::commands::{cmd_bid, cmd_report, cmd_simulate, cmd_value, resolve_config, Overrides};
use seclend::report::status_name;
use seclend::{Error, Format};

/// Exclusive securities-lending valuation and auction bidding.
#[derive(Debug, Parser)]
#[command(name = "seclend", version)]
struct Cli {
    /// JSON run configuration; defaults apply to omitted fields.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Simulation seed.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate a portfolio history and write it as CSV.
    Simulate,
    /// Value a portfolio history (simulated unless --input is given).
    Value {
        /// Dataset CSV.
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Bid for the exclusive in every auction setting.
    Bid {
        /// Bidder's value as an annualized fraction (0.004 = 40 bps).
        #[arg(long)]
        value: Option<f64>,
        /// Valuation report to take the value from.
        #[arg(long, value_name = "PATH")]
        valuation: Option<PathBuf>,
        /// Dataset CSV to value when no value or valuation is given.
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
    },
    /// Write plot data from valuation and bid reports.
    Report {
        /// Reports written by `value` and `bid` (JSON format).
        artifacts: Vec<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    let mut o = Overrides {
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
        ..Overrides::default()
    };
    let files = match cli.command {
        Command::Simulate => {
            let c = resolve_config(cli.config.as_deref(), &o)?;
            let (report, files) = cmd_simulate(&c)?;
            println!("{} securities x {} days", report.n_securities, report.n_days);
            println!("{:<4}{:>12}{:>12}", "var", "drift", "vol");
            for s in &report.series {
                let cell = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
                println!("{:<4}{:>12}{:>12}", s.variable, cell(s.drift_mean), cell(s.vol_mean));
            }
            files
        }
        Command::Value { input } => {
            o.input = input;
            let c = resolve_config(cli.config.as_deref(), &o)?;
            let (report, files) = cmd_value(&c)?;
            for row in report.summary_rows() {
                println!("{:<16}{:>10} bps", row[0], row[2]);
            }
            println!("pecking order ok: {}", report.pecking_order_ok);
            files
        }
        Command::Bid { value, valuation, input } => {
            o.input = input;
            o.value = value;
            let c = resolve_config(cli.config.as_deref(), &o)?;
            let (report, files) = cmd_bid(&c, valuation.as_deref())?;
            println!("value {:.2} bps ({})", report.value_bps, report.value_source);
            for r in &report.rows {
                let m = r.bidders.map_or("-".to_string(), |m| m.to_string());
                let bid = r.bid_bps.map_or(status_name(r.status).to_string(), |b| format!("{b:.2} bps"));
                println!("{:<24}{:<10}{:>4}  {bid}", r.setting, r.method, m);
            }
            files
        }
        Command::Report { artifacts } => {
            let c = resolve_config(cli.config.as_deref(), &o)?;
            cmd_report(&c, &artifacts)?
        }
    };
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
