use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ksforms::suite::{self, Format, SuiteConfig, SuiteName, DEFAULT_SPINOR_CAP};
use ksforms::Error;

const CAP_VAR: &str = "KILLING_SPINOR_CAP";

#[derive(Parser)]
#[command(name = "ksforms", version, about = "Exact verification of Killing spinor-valued forms on quadrics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and print a report.
    Verify(Common),
    /// Print the table of family ranks against maximal dimensions.
    Dimensions(Common),
    /// Show the anchor and formula behind a check.
    Explain { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 3)]
    n_plus: usize,
    #[arg(long, default_value_t = 0)]
    n_minus: usize,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    eps: i8,
    /// Form degree to check; repeat or comma separate. Default: all.
    #[arg(long = "degree", value_delimiter = ',')]
    degrees: Vec<usize>,
    /// Comma separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suites: String,
    #[arg(long, default_value_t = 3)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Fmt::Text)]
    format: Fmt,
    /// Record wall-clock time per check (breaks byte-identical output).
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn config(&self) -> Result<SuiteConfig, Error> {
        let spinor_cap = match std::env::var(CAP_VAR) {
            Ok(v) => v.trim().parse().map_err(|_| Error::Usage(format!("{CAP_VAR} must be a positive integer")))?,
            Err(_) => DEFAULT_SPINOR_CAP,
        };
        Ok(SuiteConfig {
            n_plus: self.n_plus,
            n_minus: self.n_minus,
            eps: self.eps,
            degrees: self.degrees.clone(),
            suites: SuiteName::parse_list(&self.suites)?,
            points: self.points,
            seed: self.seed,
            format: match self.format {
                Fmt::Text => Format::Text,
                Fmt::Json => Format::Json,
            },
            timings: self.timings,
            spinor_cap,
        })
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Usage(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.cmd {
        Cmd::Verify(c) => {
            let report = match c.config().and_then(|cfg| suite::run(&cfg)) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            match report.config.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.exit_code())
        }
        Cmd::Dimensions(c) => {
            let cfg = match c.config() {
                Ok(cfg) => cfg,
                Err(e) => return fail(e),
            };
            let rows = match suite::table_dimensions(&cfg) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            match cfg.format {
                Format::Json => {
                    let v = serde_json::json!({ "spec_version": suite::SPEC_VERSION, "rows": rows });
                    println!("{}", serde_json::to_string_pretty(&v).expect("rows serialize"));
                }
                Format::Text => print!("{}", suite::dimensions_text(&rows)),
            }
            if rows.iter().all(|r| r.rank == r.bound) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Cmd::Explain { name } => match suite::explain(&name) {
            Ok(s) => {
                print!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
    }
}
