use clap::{Args, Parser, Subcommand, ValueEnum};
use schmidt_scope_cli::*;
use std::path::PathBuf;
use std::process::ExitCode;

/// Schmidt-number certification for bipartite quantum states via
/// GSIC-POVM correlation matrices, with SIC/CCNR comparison baselines.
#[derive(Parser)]
#[command(name = "schmidt-scope", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a state family and write the detection margin per grid point as CSV.
    Scan(ScanArgs),
    /// Certify the Schmidt number of a density matrix loaded from JSON.
    Certify(CertifyArgs),
    /// Generate, validate, or query the parameter range of POVMs.
    Povm(PovmArgs),
    /// Emit the critical-visibility comparison table as CSV.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// 3x3 bound entangled family mixed with white noise (parameter x).
    BoundEntangled,
    /// Isotropic states (parameter v).
    Isotropic,
    /// Werner states (parameter f).
    Werner,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    /// Trace-norm criterion with the basis-built GSIC (requires --t).
    Gsic,
    /// Trace-norm criterion with the built-in SIC (d = 2, 3).
    Sic,
    /// Realignment criterion.
    Ccnr,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    /// Conjugate POVM on subsystem B.
    Conjugate,
    /// Same POVM on both subsystems.
    Direct,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_enum)]
    criterion: CriterionArg,
    /// GSIC strength parameter (gsic criterion only).
    #[arg(long)]
    t: Option<f64>,
    /// White-noise mixing for the bound-entangled family.
    #[arg(long, default_value_t = 0.995)]
    q: f64,
    /// Local dimension for the isotropic and werner families.
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Grid start (family default when omitted).
    #[arg(long)]
    min: Option<f64>,
    /// Grid end (family default when omitted).
    #[arg(long)]
    max: Option<f64>,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Seed for --rotate (default: SCHMIDT_SCOPE_SEED, else 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Rotate the operator basis by a seeded random orthogonal matrix.
    #[arg(long)]
    rotate: bool,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Density-matrix JSON file.
    #[arg(long)]
    input: PathBuf,
    /// GSIC strength parameter.
    #[arg(long, conflicts_with = "sic")]
    t: Option<f64>,
    /// Use the built-in SIC instead of a GSIC.
    #[arg(long)]
    sic: bool,
    #[arg(long, value_enum, default_value = "conjugate")]
    pairing: PairingArg,
    /// Certificate JSON path (printed to stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PovmArgs {
    #[command(subcommand)]
    action: PovmAction,
}

#[derive(Subcommand)]
enum PovmAction {
    /// Construct a POVM and write it as JSON.
    Gen {
        #[arg(long)]
        d: usize,
        /// GSIC strength parameter.
        #[arg(long, conflicts_with_all = ["sic", "fiducial"])]
        t: Option<f64>,
        /// Use the built-in SIC fiducial (d = 2, 3).
        #[arg(long, conflicts_with = "fiducial")]
        sic: bool,
        /// Path to a user-supplied fiducial (JSON list of [re, im]).
        #[arg(long)]
        fiducial: Option<PathBuf>,
        /// Rotate the operator basis by a seeded orthogonal matrix first.
        #[arg(long)]
        rotate_seed: Option<u64>,
        /// Output JSON path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a POVM JSON file against the GSIC conditions.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Print the valid t interval of the basis construction.
    Range {
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Number of mutually unbiased bases in the MUB rows.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Number of elements in the EAM rows (default d^2).
    #[arg(long)]
    n: Option<usize>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::malformed(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::malformed(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Scan(args) => {
            let family = match args.family {
                FamilyArg::BoundEntangled => {
                    if args.d != 3 {
                        return Err(CliError::malformed(
                            "the bound-entangled family is defined for d = 3",
                        ));
                    }
                    if !(0.0..=1.0).contains(&args.q) {
                        return Err(CliError::malformed(format!(
                            "q = {} outside [0, 1]",
                            args.q
                        )));
                    }
                    Family::BoundEntangled { q: args.q }
                }
                FamilyArg::Isotropic => Family::Isotropic { d: args.d },
                FamilyArg::Werner => Family::Werner { d: args.d },
            };
            let criterion = match args.criterion {
                CriterionArg::Gsic => Criterion::Gsic {
                    t: args
                        .t
                        .ok_or_else(|| CliError::malformed("the gsic criterion requires --t"))?,
                },
                CriterionArg::Sic => Criterion::Sic,
                CriterionArg::Ccnr => Criterion::Ccnr,
            };
            let mut cfg = ScanConfig::new(family, criterion);
            if let Some(min) = args.min {
                cfg.min = min;
            }
            if let Some(max) = args.max {
                cfg.max = max;
            }
            cfg.steps = args.steps;
            if let Some(seed) = args.seed {
                cfg.seed = seed;
            }
            cfg.rotate = args.rotate;
            let csv = run_scan(&cfg)?;
            emit(&csv, args.output.as_ref())
        }
        Command::Certify(args) => {
            let choice = match (args.t, args.sic) {
                (Some(t), false) => MeasurementChoice::Gsic { t },
                (None, true) => MeasurementChoice::Sic,
                _ => return Err(CliError::malformed("pass exactly one of --t or --sic")),
            };
            let pairing = match args.pairing {
                PairingArg::Conjugate => Pairing::Conjugate,
                PairingArg::Direct => Pairing::Direct,
            };
            let state_json = read_file(&args.input)?;
            let (summary, cert_json) = run_certify(&state_json, choice, pairing)?;
            print!("{summary}");
            match args.output {
                Some(path) => std::fs::write(&path, cert_json).map_err(|e| {
                    CliError::malformed(format!("cannot write {}: {e}", path.display()))
                }),
                None => {
                    println!("{cert_json}");
                    Ok(())
                }
            }
        }
        Command::Povm(povm) => match povm.action {
            PovmAction::Gen {
                d,
                t,
                sic,
                fiducial,
                rotate_seed,
                output,
            } => {
                let json = match (t, sic, fiducial) {
                    (Some(t), false, None) => {
                        run_povm_gen(d, MeasurementChoice::Gsic { t }, rotate_seed)?
                    }
                    (None, true, None) => run_povm_gen(d, MeasurementChoice::Sic, rotate_seed)?,
                    (None, false, Some(path)) => {
                        if rotate_seed.is_some() {
                            return Err(CliError::malformed(
                                "--rotate-seed applies to the basis-built GSIC only",
                            ));
                        }
                        run_povm_gen_fiducial(d, &read_file(&path)?)?
                    }
                    _ => {
                        return Err(CliError::malformed(
                            "pass exactly one of --t, --sic, or --fiducial",
                        ))
                    }
                };
                emit(&json, output.as_ref())
            }
            PovmAction::Validate { input, tol } => {
                let (report, passed) = run_povm_validate(&read_file(&input)?, tol)?;
                print!("{report}");
                if passed {
                    Ok(())
                } else {
                    Err(CliError {
                        message: String::new(),
                        code: 1,
                    })
                }
            }
            PovmAction::Range { d } => {
                print!("{}", run_povm_range(d)?);
                Ok(())
            }
        },
        Command::Compare(args) => {
            let n = args.n.unwrap_or(args.d * args.d);
            let csv = run_compare(args.d, args.m, n)?;
            emit(&csv, args.output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code)
        }
    }
}
