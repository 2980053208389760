//! so3five: verifier for irreducible SO(3)-structures on ℝ⁵.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use so3five_core::analysis::analyze;
use so3five_core::examples::{self, StructureData};
use so3five_core::identities::{run_suite, SuiteOptions};
use so3five_core::structure::{psi_decompose, psi_inverse};
use so3five_core::{Field, Mode, QuadSurd, Scalar};

use report::{render, DecomposeDocument, Header, ReportDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    /// A check failed; `output` is still emitted.
    #[error("{message}")]
    Verification { output: String, message: String },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Input(_) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl ModeArg {
    fn mode(self) -> Mode {
        match self {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExampleName {
    /// T = 0, 𝒦 = 0.
    Flat,
    /// T = 0, 𝒦 = λ𝒫: a stand-in for the Einstein symmetric spaces, which
    /// shares their decomposition (A = ρ⁻ = η = 0) but not their actual curvature.
    Symmetric,
    /// The homogeneous space (SO(3)×SO(1,2))/SO(2) with parameter t.
    So12,
}

#[derive(Parser)]
#[command(name = "so3five", version, about = "Exact verifier for irreducible SO(3)-structures on R^5")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Zero threshold in float mode.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full identity suite.
    VerifyIdentities {
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = 5)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_sign_error: bool,
    },
    /// Analyze a built-in structure.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Parameter of so12 (nonzero).
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
        /// Scale of the symmetric curvature λ𝒫.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
    },
    /// Analyze a structure file.
    Analyze {
        file: PathBuf,
        /// Must match the file's scalar_mode when given.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Decompose the curvature of a structure file.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
}

const DEFAULT_TOLERANCE: f64 = 1e-9;

fn tolerance(mode: Mode, flag: Option<f64>) -> Result<f64, CliError> {
    match (mode, flag) {
        (Mode::Exact, Some(_)) => Err(CliError::Input("--tolerance applies to float mode only".into())),
        (Mode::Exact, None) => Ok(0.0),
        (Mode::Float, Some(t)) if !(t >= 0.0 && t.is_finite()) => {
            Err(CliError::Input(format!("invalid tolerance {t}")))
        }
        (Mode::Float, t) => Ok(t.unwrap_or(DEFAULT_TOLERANCE)),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_for<F: Field>(data: &StructureData<F>, mode: Mode, tol: f64) -> Result<String, CliError> {
    let r = analyze(&data.torsion, &data.curvature, tol).map_err(|e| CliError::Input(e.to_string()))?;
    let text = render(&ReportDocument::new(Header::new(mode, tol), &data.torsion, &r));
    if !r.probe_agrees {
        return Err(CliError::Verification {
            output: text,
            message: "Nijenhuis probe disagrees with the normality verdict".into(),
        });
    }
    Ok(text)
}

fn decompose_for<F: Field>(data: &StructureData<F>, mode: Mode, tol: f64) -> Result<String, CliError> {
    let d = psi_decompose(&data.curvature, tol).map_err(|e| CliError::Input(e.to_string()))?;
    let back = psi_inverse(&d, tol).map_err(|e| CliError::Verification {
        output: String::new(),
        message: e.to_string(),
    })?;
    let diff = back.sub(&data.curvature);
    let residual = diff.inner(&diff);
    let text = render(&DecomposeDocument::new(Header::new(mode, tol), &d, &residual));
    if !residual.near_zero(tol) {
        return Err(CliError::Verification {
            output: text,
            message: "reconstruction residual is nonzero".into(),
        });
    }
    Ok(text)
}

fn parameter<F: Field>(text: &str, mode: Mode, flag: &str) -> Result<F, CliError> {
    Scalar::parse(text, mode)
        .and_then(|s| s.to_field::<F>())
        .map_err(|e| CliError::Input(format!("--{flag}: {e}")))
}

fn example<F: Field>(name: ExampleName, t: &str, lambda: &str, tol: f64) -> Result<String, CliError> {
    let data = match name {
        ExampleName::Flat => examples::flat::<F>(),
        ExampleName::Symmetric => examples::symmetric(&parameter::<F>(lambda, F::MODE, "lambda")?),
        ExampleName::So12 => examples::so12(&parameter::<F>(t, F::MODE, "t")?)
            .map_err(|e| CliError::Input(e.to_string()))?,
    };
    report_for(&data, F::MODE, tol)
}

fn from_file<F: Field>(input: &input::StructureInput, decompose: bool, tol: f64) -> Result<String, CliError> {
    let data = input::load::<F>(input, tol)?;
    if decompose {
        decompose_for(&data, F::MODE, tol)
    } else {
        report_for(&data, F::MODE, tol)
    }
}

fn file_command(path: &Path, mode: Option<ModeArg>, flag: Option<f64>, decompose: bool) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let input = input::parse_input(&text)?;
    let declared = input.scalar_mode.mode();
    if let Some(m) = mode {
        if m.mode() != declared {
            return Err(CliError::Input(format!(
                "mixed scalar modes: --mode {} but the file declares {}",
                m.mode(),
                declared
            )));
        }
    }
    let tol = tolerance(declared, flag)?;
    match declared {
        Mode::Exact => from_file::<QuadSurd>(&input, decompose, tol),
        Mode::Float => from_file::<f64>(&input, decompose, tol),
    }
}

fn verify(mode: Mode, tol: f64, opts: &SuiteOptions) -> Result<String, CliError> {
    let checks = match mode {
        Mode::Exact => run_suite::<QuadSurd>(opts, tol),
        Mode::Float => run_suite::<f64>(opts, tol),
    };
    let mut text = String::new();
    let mut max = 0.0f64;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        match mode {
            Mode::Exact => text.push_str(&format!("{}: {status}\n", c.name)),
            Mode::Float => text.push_str(&format!("{}: {status} (residual {:.3e})\n", c.name, c.residual)),
        }
        max = max.max(c.residual);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    text.push_str(&format!("{passed}/{} checks passed ({mode} mode", checks.len()));
    if mode == Mode::Float {
        text.push_str(&format!(", max residual {max:.3e}, tolerance {tol:e}"));
    }
    text.push_str(")\n");
    match checks.iter().find(|c| !c.passed) {
        None => Ok(text),
        Some(c) => Err(CliError::Verification {
            output: text,
            message: format!(
                "first failure: {} ({})",
                c.name,
                c.failure.as_deref().unwrap_or("no detail")
            ),
        }),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::VerifyIdentities {
            mode,
            seed,
            inject_sign_error,
        } => {
            let tol = tolerance(mode.mode(), cli.tolerance)?;
            verify(mode.mode(), tol, &SuiteOptions { seed, inject_sign_error })
        }
        Command::Example { name, mode, t, lambda } => {
            let tol = tolerance(mode.mode(), cli.tolerance)?;
            match mode.mode() {
                Mode::Exact => example::<QuadSurd>(name, &t, &lambda, tol),
                Mode::Float => example::<f64>(name, &t, &lambda, tol),
            }
        }
        Command::Analyze { file, mode } => file_command(&file, mode, cli.tolerance, false),
        Command::Decompose { file, mode } => file_command(&file, mode, cli.tolerance, true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|text| emit(&text, out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Verification { output, .. } = &e {
                if let Err(w) = emit(output, out.as_deref()) {
                    eprintln!("error: {w}");
                }
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
