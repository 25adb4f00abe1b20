use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zk_parafermion_cli::commands::{self, CommandError, InterfereArgs, Settings};
use zk_parafermion_cli::document::{Body, OutputDocument};

#[derive(Parser)]
#[command(name = "zkpf", version, about = "Modular data of Z_k parafermion and Read–Rezayi theories")]
struct Cli {
    /// Numerical tolerance for unitarity and verification checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,

    /// Largest k for which the Weyl group is enumerated (k! elements).
    #[arg(long, global = true, default_value_t = zk_parafermion::lie::DEFAULT_WEYL_CAP)]
    weyl_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Su2k,
    Suk2Oracle,
    Suk2Compact,
    Coset,
    CosetLm,
    U1,
    FullProduct,
    FullCompact,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theory {
    Su2k,
    Coset,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeTheory {
    Coset,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Emit an S matrix.
    Smatrix {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verlinde fusion coefficients.
    Fusion {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "coset")]
        theory: Theory,
    },
    /// Conformal and quantum dimensions.
    Dims {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "coset")]
        theory: Theory,
    },
    /// Sectors of the full theory allowed by the pairing rule.
    Sectors {
        #[arg(long)]
        k: usize,
    },
    /// Run verification checks; exits 3 if any fails.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "targets")]
        all: bool,
        /// Comma-separated subset of oracle, equivalence, modular, fusion, full, lattice.
        #[arg(long, value_delimiter = ',')]
        targets: Vec<String>,
    },
    /// Simulate a Fabry–Pérot interference curve.
    Interfere {
        #[arg(long)]
        k: usize,
        /// Bulk label, "mu,nu" (coset) or "l,rho" (full).
        #[arg(long, allow_hyphen_values = true)]
        bulk: String,
        /// Probe label.
        #[arg(long, allow_hyphen_values = true)]
        probe: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t1: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t2: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, value_enum, default_value = "coset")]
        theory: ProbeTheory,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn which_name(w: Which) -> &'static str {
    match w {
        Which::Su2k => "su2k",
        Which::Suk2Oracle => "suk2-oracle",
        Which::Suk2Compact => "suk2-compact",
        Which::Coset => "coset",
        Which::CosetLm => "coset-lm",
        Which::U1 => "u1",
        Which::FullProduct => "full-product",
        Which::FullCompact => "full-compact",
    }
}

fn theory_name(t: Theory) -> &'static str {
    match t {
        Theory::Su2k => "su2k",
        Theory::Coset => "coset",
        Theory::Full => "full",
    }
}

fn emit(doc: &OutputDocument, format: Format) -> Result<(), CommandError> {
    let text = match format {
        Format::Json => doc.to_json()?,
        Format::Csv => doc.to_csv()?,
    };
    let mut out = std::io::stdout().lock();
    let written = out
        .write_all(text.as_bytes())
        .and_then(|_| if text.ends_with('\n') { Ok(()) } else { out.write_all(b"\n") });
    match written {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CommandError::Document(e.into())),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), CommandError> {
    if cli.tolerance.is_nan() || cli.tolerance <= 0.0 {
        return Err(CommandError::Usage("--tolerance must be positive".into()));
    }
    let settings = Settings {
        tolerance: cli.tolerance,
        weyl_cap: cli.weyl_cap,
    };
    match cli.command {
        Command::Smatrix { k, which, format } => emit(&commands::smatrix(k, which_name(which), settings)?, format),
        Command::Fusion { k, theory } => emit(&commands::fusion(k, theory_name(theory), settings)?, Format::Json),
        Command::Dims { k, theory } => emit(&commands::dims(k, theory_name(theory), settings)?, Format::Json),
        Command::Sectors { k } => emit(&commands::sectors(k)?, Format::Json),
        Command::Verify { k, all, targets } => {
            let targets = if all || targets.is_empty() {
                commands::VERIFY_TARGETS.iter().map(|s| s.to_string()).collect()
            } else {
                targets
            };
            let doc = commands::verify(k, &targets, settings)?;
            emit(&doc, Format::Json)?;
            if let Body::Verify(p) = &doc.body {
                if !p.passed {
                    return Err(CommandError::Verification(format!(
                        "failing checks: {}",
                        p.failing().join(", ")
                    )));
                }
            }
            Ok(())
        }
        Command::Interfere {
            k,
            bulk,
            probe,
            t1,
            t2,
            samples,
            theory,
            format,
        } => {
            let args = InterfereArgs {
                k,
                theory: match theory {
                    ProbeTheory::Coset => "coset",
                    ProbeTheory::Full => "full",
                },
                bulk: &bulk,
                probe: &probe,
                t1: commands::parse_complex(&t1)?,
                t2: commands::parse_complex(&t2)?,
                samples,
            };
            emit(&commands::interfere(&args, settings)?, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zkpf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
