//! `pptes`: construct, verify and classify three-qubit rank-four PPT entangled states.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid
//! parameters, 3 the state is not a rank-four PPT entangled state.

mod statefile;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use pptes::classify::{classify_with, compare_reports, Partition};
use pptes::constructors::example10_state;
use pptes::qmat::{kernel_basis, range_basis, DEFAULT_RANK_TOL};
use pptes::{
    bipartite_products_in_subspace, conjecture_state, lorentz_invariant, qp_state, type2_state,
    upb_state, verify_rank4_pptes, AlphaFormula, ClassificationReport, Execution, MultiQubitState,
    QpSpec, Type2Spec, UpbSpec,
};
use serde::Serialize;
use serde_json::{json, Map, Value};

use statefile::StateFile;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Parameter(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 1,
            CliError::Parameter(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

fn param(e: pptes::Error) -> CliError {
    CliError::Parameter(e.to_string())
}

#[derive(Parser)]
#[command(name = "pptes", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Indent the JSON and print a human-readable summary on stderr.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Args)]
struct Input {
    file: PathBuf,
    /// Hermiticity/positivity tolerance; defaults to the file's `tolerance` field (1e-10 if absent).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a state from one of the parametrized families.
    Construct {
        #[command(subcommand)]
        family: Family,
        /// Tolerance recorded in the state file.
        #[arg(long, global = true, default_value_t = pptes::qmat::DEFAULT_STATE_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Full classification report.
    Classify {
        /// State file; omit when using --batch.
        #[arg(required_unless_present = "batch")]
        file: Option<PathBuf>,
        /// Classify every *.json file in a directory.
        #[arg(long, conflicts_with = "file")]
        batch: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Lorentz invariant of the trace-normalized state.
    Invariant {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// SLOCC comparison of two states.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Check every defining property of a three-qubit rank-four PPT entangled state.
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Bipartite product vectors in the range or kernel.
    ProductVectors {
        #[command(flatten)]
        input: Input,
        /// Qubit held alone in the bipartition.
        #[arg(long, value_enum, default_value_t = Local::A)]
        local: Local,
        #[arg(long, value_enum, default_value_t = Subspace::Range)]
        subspace: Subspace,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Unextendible-product-basis state from three angles in (0, π/2).
    Upb {
        #[arg(long, num_args = 3, allow_negative_numbers = true, required = true)]
        theta: Vec<f64>,
    },
    /// Zero-invariant family built from Bell states; `t` is a complex number such as `2`, `-0.5+1.2j`.
    Type2 {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        t: Complex64,
    },
    /// Six-term product mixture with weights p₁..p₅.
    Qp {
        #[arg(long, num_args = 5, allow_negative_numbers = true, required = true)]
        p: Vec<f64>,
        #[arg(long, value_enum, default_value_t = AlphaArg::Ex17)]
        alpha_formula: AlphaArg,
    },
    /// Explicit one-parameter family with a closed-form connecting transform.
    Example10 {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        t: Complex64,
    },
    /// Equal mixture of `m` pure states with invariant −1/2 on `n` (odd) qubits.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphaArg {
    Ex13,
    Ex17,
}

#[derive(Clone, Copy, ValueEnum)]
enum Local {
    A,
    B,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum Subspace {
    Range,
    Kernel,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|e| format!("not a complex number `{s}`: {e}"))
}

fn emit<T: Serialize>(value: &T, output: &Output) -> Result<(), CliError> {
    let text = if output.pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .map_err(|e| CliError::Io(e.to_string()))?;
    match &output.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Io(e.to_string()))
                }
                _ => Ok(()),
            }
        }
    }
}

fn load(path: &Path, tol: Option<f64>) -> Result<MultiQubitState, CliError> {
    StateFile::read(path)?.to_state(tol)
}

fn construct(family: &Family, tol: f64) -> Result<StateFile, CliError> {
    let mut meta = Map::new();
    let state = match family {
        Family::Upb { theta } => {
            meta.insert("theta".into(), json!(theta));
            upb_state(&UpbSpec::new([theta[0], theta[1], theta[2]]).map_err(param)?)
                .map_err(param)?
        }
        Family::Type2 { t } => {
            meta.insert("t".into(), json!(t));
            type2_state(&Type2Spec::new(*t).map_err(param)?, true).map_err(param)?
        }
        Family::Qp { p, alpha_formula } => {
            let formula = match alpha_formula {
                AlphaArg::Ex13 => AlphaFormula::Example13,
                AlphaArg::Ex17 => AlphaFormula::Example17,
            };
            let spec = QpSpec::new([p[0], p[1], p[2], p[3], p[4]], formula).map_err(param)?;
            meta.insert("p".into(), json!(p));
            meta.insert("alpha".into(), json!(spec.alpha()));
            meta.insert("alpha_formula".into(), json!(format!("{formula:?}")));
            qp_state(&spec).map_err(param)?
        }
        Family::Example10 { t } => {
            meta.insert("t".into(), json!(t));
            example10_state(*t).map_err(param)?
        }
        Family::Conjecture { n, m } => {
            meta.insert("n".into(), json!(n));
            meta.insert("m".into(), json!(m));
            conjecture_state(*n, *m, None).map_err(param)?
        }
    };
    let name = match family {
        Family::Upb { .. } => "upb",
        Family::Type2 { .. } => "type2",
        Family::Qp { .. } => "qp",
        Family::Example10 { .. } => "example10",
        Family::Conjecture { .. } => "conjecture",
    };
    meta.insert("family".into(), json!(name));
    let mut file = StateFile::from_state(&state, meta);
    file.tolerance = tol;
    Ok(file)
}

fn summary(report: &ClassificationReport) -> String {
    let mut lines = vec![
        format!(
            "type {:?}, invariant {:.6e}",
            report.state_type, report.invariant
        ),
        format!("UPB verdict {:?}", report.upb_verdict),
        format!(
            "characteristic set representative {:.9}",
            report.characteristic_set.representative
        ),
    ];
    if let Some(t) = report.t_triple {
        lines.push(format!(
            "kernel cross-ratios {:.9}, {:.9}, {:.9}",
            t[0], t[1], t[2]
        ));
    }
    lines.extend(report.diagnostics.iter().map(|d| format!("note: {d}")));
    lines.join("\n")
}

fn classify_state(state: &MultiQubitState) -> Result<ClassificationReport, Value> {
    let verification = verify_rank4_pptes(state);
    if !verification.entangled {
        return Err(json!({ "verification": verification }));
    }
    classify_with(state, Execution::Sequential).map_err(|e| json!({ "error": e.to_string() }))
}

fn run_classify(
    file: Option<&Path>,
    batch: Option<&Path>,
    tol: Option<f64>,
    output: &Output,
) -> Result<(), CliError> {
    if let Some(dir) = batch {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| CliError::Parse(format!("{}: {e}", dir.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let loaded: Vec<Result<MultiQubitState, CliError>> =
            paths.iter().map(|p| load(p, tol)).collect();
        let states: Vec<MultiQubitState> = loaded
            .iter()
            .filter_map(|r| r.as_ref().ok().cloned())
            .collect();
        let mut reports = pptes::classify_many(&states, Execution::Parallel).into_iter();
        let (mut parse_failed, mut verify_failed) = (false, false);
        let mut entries = Vec::new();
        for (path, state) in paths.iter().zip(&loaded) {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned());
            let entry = match state {
                Err(e) => {
                    parse_failed = true;
                    json!({ "file": name, "error": e.to_string() })
                }
                Ok(s) => match reports.next().expect("one report per loaded state") {
                    Ok(report) => {
                        if output.pretty {
                            eprintln!("{}:\n{}", name.as_deref().unwrap_or("?"), summary(&report));
                        }
                        json!({ "file": name, "report": report })
                    }
                    Err(_) => {
                        verify_failed = true;
                        json!({ "file": name, "verification": verify_rank4_pptes(s) })
                    }
                },
            };
            entries.push(entry);
        }
        emit(&entries, output)?;
        return if parse_failed {
            Err(CliError::Parse("some files could not be read".into()))
        } else if verify_failed {
            Err(CliError::Verification(
                "some states failed verification".into(),
            ))
        } else {
            Ok(())
        };
    }
    let state = load(file.expect("clap requires a file without --batch"), tol)?;
    match classify_state(&state) {
        Ok(report) => {
            emit(&report, output)?;
            if output.pretty {
                eprintln!("{}", summary(&report));
            }
            Ok(())
        }
        Err(detail) => {
            emit(&detail, output)?;
            Err(CliError::Verification(
                "state is not a three-qubit rank-four PPT entangled state".into(),
            ))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct {
            family,
            tol,
            output,
        } => {
            let file = construct(&family, tol)?;
            emit(&file, &output)
        }
        Command::Classify {
            file,
            batch,
            tol,
            output,
        } => run_classify(file.as_deref(), batch.as_deref(), tol, &output),
        Command::Invariant { input, output } => {
            let state = load(&input.file, input.tol)?;
            let inv = lorentz_invariant(&state.normalized());
            if output.pretty {
                eprintln!(
                    "I = {:.12} (imaginary residual {:.1e})",
                    inv.value, inv.imag_residual
                );
            }
            emit(&inv, &output)
        }
        Command::Compare { a, b, tol, output } => {
            let (sa, sb) = (load(&a, tol)?, load(&b, tol)?);
            let (ra, rb) = match (classify_state(&sa), classify_state(&sb)) {
                (Ok(ra), Ok(rb)) => (ra, rb),
                (ra, rb) => {
                    let detail = json!({ "a": ra.err(), "b": rb.err() });
                    emit(&detail, &output)?;
                    return Err(CliError::Verification("both states must verify".into()));
                }
            };
            let cmp = compare_reports(&ra, &rb);
            if output.pretty {
                eprintln!("{:?}: {}", cmp.verdict, cmp.reason);
            }
            emit(&cmp, &output)
        }
        Command::Verify { input, output } => {
            let report = verify_rank4_pptes(&load(&input.file, input.tol)?);
            if output.pretty {
                for c in &report.checks {
                    eprintln!(
                        "{} {}: {}",
                        if c.passed { "ok  " } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
            }
            emit(&report, &output)?;
            if report.entangled {
                Ok(())
            } else {
                Err(CliError::Verification(report.failures().join("; ")))
            }
        }
        Command::ProductVectors {
            input,
            local,
            subspace,
            output,
        } => {
            let state = load(&input.file, input.tol)?;
            if state.qubits() != 3 {
                return Err(CliError::Parameter(format!(
                    "product vectors need 3 qubits, got {}",
                    state.qubits()
                )));
            }
            let partition = match local {
                Local::A => Partition::ABC,
                Local::B => Partition::BAC,
                Local::C => Partition::CAB,
            };
            let basis = match subspace {
                Subspace::Range => range_basis(state.matrix(), DEFAULT_RANK_TOL),
                Subspace::Kernel => kernel_basis(state.matrix(), DEFAULT_RANK_TOL),
            }
            .map_err(param)?;
            let records = bipartite_products_in_subspace(&basis, partition).map_err(param)?;
            if output.pretty {
                eprintln!(
                    "{} product vectors in a {}-dimensional subspace",
                    records.len(),
                    basis.len()
                );
            }
            emit(&records, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
