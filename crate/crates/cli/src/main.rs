use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pgc::{
    cmd_count, cmd_embed, cmd_info, cmd_sweep, cmd_verify, write_atomic, CliError, CliResult,
};

#[derive(Parser)]
#[command(
    name = "pgc",
    version,
    about = "Cycle embeddings in finite projective spaces PG(n,q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Point, line and maximum cycle counts of PG(n,q)
    Info {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a k-cycle and write its certificate
    Embed {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Certificate path; stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Anchor the cycle at the hyperplane x_n = 0 (k ≤ q^n + 2)
        #[arg(long)]
        anchored: bool,
    },
    /// Check a certificate
    Verify {
        certificate: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Embed and verify every length 3..=|PG(n,q)|
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Summary JSON path
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count k-cycles by exhaustive enumeration (small geometries only)
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
    },
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Info { n, q, format } => {
            let info = cmd_info(n, q)?;
            match format {
                Format::Json => println!("{}", json(&info)),
                Format::Text => {
                    println!(
                        "PG({n},{q}) over GF({}^{}), modulus {:?}",
                        info.p, info.e, info.modulus
                    );
                    println!("points: {}", info.points);
                    println!("lines: {}", info.lines);
                    println!("points per line: {}", info.points_per_line);
                    println!("max k: {}", info.max_k);
                }
            }
        }
        Command::Embed {
            n,
            q,
            k,
            seed,
            out,
            anchored,
        } => {
            let text = cmd_embed(n, q, k, seed, anchored)?.to_json();
            match out {
                Some(path) => write_atomic(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Verify {
            certificate,
            format,
        } => {
            let text = fs::read_to_string(&certificate)
                .map_err(|e| CliError::BadInput(format!("{}: {e}", certificate.display())))?;
            let report = match cmd_verify(&text) {
                Ok(r) => r,
                Err(CliError::Invalid(r)) if format == Format::Json => {
                    println!("{}", json(&r));
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e),
            };
            match format {
                Format::Json => println!("{}", json(&report)),
                Format::Text => print!("{report}"),
            }
        }
        Command::Sweep {
            n,
            q,
            seed,
            out,
            format,
        } => {
            let summary = cmd_sweep(n, q, seed)?;
            if let Some(path) = out {
                write_atomic(&path, &(json(&summary) + "\n"))?;
            }
            match format {
                Format::Json => println!("{}", json(&summary)),
                Format::Text => {
                    for r in &summary.results {
                        let detail = r.detail.as_deref().unwrap_or("");
                        println!(
                            "k={:<5} {:<9} {:>10.2} ms {detail}",
                            r.k, r.status, r.millis
                        );
                    }
                    println!("{}/{} verified", summary.verified, summary.total);
                }
            }
            if !summary.all_verified() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Count { n, q, k } => println!("{}", cmd_count(n, q, k)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pgc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
