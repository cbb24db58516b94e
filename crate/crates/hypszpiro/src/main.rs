use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hypszpiro::artin::BraidWord;
use hypszpiro::cover::{displacement_angle_elliptic, elliptic_log_angles, lift_word, PolarContext};
use hypszpiro::symprep::sigma;
use hypszpiro::szpiro::{example_fibrations, verify, FibrationSpec, Verdict};

#[derive(Parser)]
#[command(name = "hypszpiro", version, about = "Symplectic braid monodromy and the hyperelliptic Szpiro bound")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a fibration file: bound, sigma identity, winding identity
    Verify {
        /// Fibration JSON file
        file: PathBuf,
        /// Winding tolerance
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Winding and displacement angles of a braid word
    Angle {
        /// Braid word, e.g. "t1 t2 t3"
        word: String,
        #[arg(long)]
        genus: u32,
    },
    /// Integral symplectic matrix of a braid word
    Rep {
        word: String,
        #[arg(long)]
        genus: u32,
    },
    /// Write example fibration files
    Examples {
        #[arg(long)]
        genus: u32,
        /// Output directory (default: current directory)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_word(text: &str, genus: u32) -> Result<BraidWord, String> {
    if genus < 1 {
        return Err("genus must be at least 1".to_string());
    }
    BraidWord::parse(text, 2 * genus + 2).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify { file, tol, json } => {
            let spec = FibrationSpec::from_path(&file).map_err(|e| e.to_string())?;
            let report = verify(&spec, tol).map_err(|e| e.to_string())?;
            if json {
                println!("{}", report.to_json_string());
            } else {
                println!("{report}");
            }
            Ok(match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
            })
        }
        Command::Angle { word, genus } => {
            let w = parse_word(&word, genus)?;
            let ctx = PolarContext::new(genus);
            let lifted = lift_word(&w, genus, &ctx).map_err(|e| e.to_string())?;
            println!("winding: {:+.9}", lifted.winding());
            let m = sigma(&w, genus).map_err(|e| e.to_string())?;
            match elliptic_log_angles(&m, &ctx) {
                Ok(angles) => {
                    let list: Vec<String> = angles.iter().map(|a| format!("{a:+.9}")).collect();
                    println!("elliptic plane angles: [{}]", list.join(", "));
                    let da = displacement_angle_elliptic(&m, &ctx).map_err(|e| e.to_string())?;
                    println!("displacement angle: {da:+.9}");
                }
                Err(err) => {
                    println!("displacement angle: not defined ({err})");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rep { word, genus } => {
            let w = parse_word(&word, genus)?;
            let m = sigma(&w, genus).map_err(|e| e.to_string())?;
            println!("{m}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Examples { genus, out } => {
            let dir = out.unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
            let specs = example_fibrations(genus).map_err(|e| e.to_string())?;
            let names = ["singletons", "grouped"];
            for (spec, name) in specs.iter().zip(names) {
                let path = dir.join(format!("ex_g{genus}_{name}.json"));
                std::fs::write(&path, spec.to_json_string()).map_err(|e| e.to_string())?;
                println!("{}", path.display());
            }
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
